//! Command-line front end: problem ingestion, pipeline orchestration and
//! golden-file emission.
//!
//! Exit codes: 0 success, 1 parse error, 2 precondition violation,
//! 3 mathematical failure (failed verification, ideal not stable, ...),
//! 4 resource cap (truncation or degree cap too low).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nambu::connection::{curvature_vanishes, mc_check, mc_defect};
use nambu::ideal::{compute_z, IdealError, IdealPresentation, ZTensor};
use nambu::nambu::{NambuError, NambuTensor, VerifyMode};
use nambu::parse::parse_poly;
use nambu::perturb::{PerturbError, PerturbationState};
use nambu::poly::SuperPolynomial;
use nambu::resolvent::ResolventError;

mod examples;
mod problem;

use problem::Problem;

#[derive(Parser)]
#[command(name = "nambu", version, about = "Exact Nambu-Poisson structure engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the fundamental identity (and scan the ideal generators for
    /// Casimirs).
    Verify {
        problem: PathBuf,
        /// Check the identity modulo the attached ideal instead of exactly.
        #[arg(long)]
        mod_ideal: bool,
        /// Checks to run (fi, mc, linfty).
        #[arg(long, value_delimiter = ',', default_value = "fi")]
        check: Vec<String>,
    },
    /// Compute the cofactor tensor of the ideal under the bracket.
    Z {
        problem: PathBuf,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Maurer-Cartan defect, containment in the ideal square, and the
    /// curvature cross-check.
    Mc { problem: PathBuf },
    /// Build a resolvent truncation: Koszul level plus Tate extension.
    Resolve {
        problem: PathBuf,
        /// Target truncation level.
        #[arg(long)]
        level: u32,
        /// Internal-degree cap for the homology search.
        #[arg(long)]
        cap: Option<i64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the perturbation recursion and emit the correction stages.
    Perturb {
        problem: PathBuf,
        /// Number of stages to produce (stage 1 is the tensor).
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        cap: Option<i64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate brackets on explicit arguments.
    Brackets {
        problem: PathBuf,
        /// Comma-separated polynomial arguments.
        #[arg(long, value_delimiter = ',')]
        args: Vec<String>,
        /// Use the derived bracket of the perturbed structure instead of
        /// the plain tensor bracket.
        #[arg(long)]
        derived: bool,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Replay a built-in example problem and report pass/fail.
    Examples {
        /// One of: ci-monomial, non-ci-monomial, angular-momentum, torus,
        /// abelian24, groupE108, all.
        name: String,
    },
}

fn main() -> ExitCode {
    if let Some(v) = std::env::var_os("NAMBU_THREADS") {
        match v.to_str().and_then(|s| s.parse::<u32>().ok()) {
            Some(n) if n >= 1 => {} // single-threaded engine honors any cap
            _ => {
                eprintln!("error: NAMBU_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
    fn math(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
    fn cap(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }
}

impl From<NambuError> for Failure {
    fn from(e: NambuError) -> Self {
        match e {
            NambuError::MissingIdeal | NambuError::OddArity(_) | NambuError::ArityTooSmall(_) => {
                Failure::precondition(e.to_string())
            }
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<IdealError> for Failure {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::NotNambuIdeal { .. } | IdealError::NotInIdeal => Failure::math(e.to_string()),
            IdealError::NoPreimage => Failure::cap(e.to_string()),
            _ => Failure::precondition(e.to_string()),
        }
    }
}

impl From<ResolventError> for Failure {
    fn from(e: ResolventError) -> Self {
        match e {
            ResolventError::CapTooLow { .. } => Failure::cap(e.to_string()),
            ResolventError::MissingGrading(_) => Failure::precondition(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<PerturbError> for Failure {
    fn from(e: PerturbError) -> Self {
        match e {
            PerturbError::TruncationTooShallow { .. } => Failure::cap(e.to_string()),
            PerturbError::Ideal(inner) => inner.into(),
            PerturbError::Tensor(inner) => inner.into(),
            PerturbError::NotNambuTensor | PerturbError::ClosednessFailure { .. } => {
                Failure::math(e.to_string())
            }
            _ => Failure::precondition(e.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Verify { problem, mod_ideal, check } => {
            let p = Problem::load(problem)?;
            cmd_verify(&p, *mod_ideal, check, cli.format)
        }
        Command::Z { problem, out } => {
            let p = Problem::load(problem)?;
            cmd_z(&p, out.as_deref())
        }
        Command::Mc { problem } => {
            let p = Problem::load(problem)?;
            cmd_mc(&p, cli.format)
        }
        Command::Resolve { problem, level, cap, out } => {
            let p = Problem::load(problem)?;
            cmd_resolve(&p, *level, *cap, out.as_deref())
        }
        Command::Perturb { problem, depth, cap, out } => {
            let p = Problem::load(problem)?;
            cmd_perturb(&p, *depth, *cap, out.as_deref())
        }
        Command::Brackets { problem, args, derived, depth, cap } => {
            let p = Problem::load(problem)?;
            cmd_brackets(&p, args, *derived, *depth, *cap)
        }
        Command::Examples { name } => examples::run(name),
    }
}

fn cmd_verify(p: &Problem, mod_ideal: bool, checks: &[String], format: Format) -> Result<ExitCode, Failure> {
    let tensor = p.tensor()?;
    let mode = if mod_ideal { VerifyMode::ModuloIdeal } else { VerifyMode::Exact };
    let mut pass = true;
    let mut lines: Vec<String> = Vec::new();
    for check in checks {
        match check.as_str() {
            "fi" => {
                let report = tensor.check_fundamental_identity(mode)?;
                let ok = report.is_empty();
                pass &= ok;
                lines.push(format!(
                    "fi: {} ({} identity violations, {} decomposability violations{})",
                    if ok { "pass" } else { "FAIL" },
                    report.fix_violations.len(),
                    report.decomposability_violations.len(),
                    if report.decomposability_checked { "" } else { "; decomposability vacuous for arity 2" },
                ));
                if let Some(ideal) = &tensor.ideal {
                    let all_zero = tensor
                        .entries()
                        .map(|(_, p)| p)
                        .all(|p| p.is_zero());
                    if all_zero {
                        lines.push("fi: all brackets vanish identically".into());
                    }
                    // the generator scan uses the exact notion (all
                    // cofactors zero), not membership in the ideal itself
                    let mut detached = tensor.clone();
                    detached.ideal = None;
                    for (i, f) in ideal.generators().iter().enumerate() {
                        let cas = detached.is_casimir(f)?;
                        lines.push(format!("casimir f{}: {}", i + 1, cas));
                    }
                }
            }
            "mc" => {
                let (ok, line) = mc_summary(p, &tensor)?;
                pass &= ok;
                lines.push(line);
            }
            "linfty" => {
                let (ok, line) = linfty_summary(p, &tensor)?;
                pass &= ok;
                lines.push(line);
            }
            other => return Err(Failure::precondition(format!("unknown check '{other}'"))),
        }
    }
    emit_report(&lines, pass, format);
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn mc_summary(p: &Problem, tensor: &NambuTensor) -> Result<(bool, String), Failure> {
    let ideal = tensor
        .ideal
        .clone()
        .ok_or_else(|| Failure::precondition("mc check needs an ideal"))?;
    let z = compute_z(tensor, &ideal)?;
    let defect = mc_defect(tensor, &z).map_err(|e| Failure::precondition(e.to_string()))?;
    let contained = mc_check(tensor, &z, &ideal).map_err(|e| Failure::precondition(e.to_string()))?;
    let _ = p;
    Ok((
        contained,
        format!(
            "mc: {} (defect {} on the nose, containment in the ideal square: {})",
            if contained { "pass" } else { "FAIL" },
            if defect.is_zero() { "zero" } else { "nonzero" },
            contained
        ),
    ))
}

fn linfty_summary(p: &Problem, tensor: &NambuTensor) -> Result<(bool, String), Failure> {
    let depth = p.depth.unwrap_or(tensor.m + 1);
    let mut state = build_state(p, tensor.clone(), depth, p.cap)?;
    state.run(depth).map_err(Failure::from)?;
    let samples = coordinate_samples(&state);
    let report = state.check_linfty(tensor.m + 1, &samples).map_err(Failure::from)?;
    Ok((
        report.is_clean(),
        format!(
            "linfty: {} ({} identities checked, {} nonzero residuals)",
            if report.is_clean() { "pass" } else { "FAIL" },
            report.checked,
            report.failures.len()
        ),
    ))
}

/// Coordinate tuples for the homotopy-Jacobi spot checks: arities 1..=m+1
/// over mixed-level generators.
fn coordinate_samples(state: &PerturbationState) -> Vec<Vec<SuperPolynomial>> {
    let mut gens: Vec<SuperPolynomial> = (1..=state.tensor.n)
        .map(|i| SuperPolynomial::var(nambu::poly::Variable::coord(i)))
        .collect();
    if let Some(level1) = state.resolvent.level(1) {
        for v in level1.vars.iter().take(2) {
            gens.push(SuperPolynomial::var(nambu::poly::Variable::x(v.index, 1)));
        }
    }
    let mut out = Vec::new();
    let m = state.tensor.m as usize;
    for n in 1..=m + 1 {
        // a sliding window keeps the tuple count small but mixes levels
        for start in 0..gens.len().saturating_sub(n - 1).min(4) {
            out.push(gens[start..start + n].to_vec());
        }
    }
    out
}

fn cmd_z(p: &Problem, out: Option<&std::path::Path>) -> Result<ExitCode, Failure> {
    let tensor = p.tensor()?;
    let ideal = tensor
        .ideal
        .clone()
        .ok_or_else(|| Failure::precondition("z command needs an ideal"))?;
    let z = compute_z(&tensor, &ideal)?;
    let rendered = render_z(&z);
    write_out(out, &rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn render_z(z: &ZTensor) -> String {
    let entries: Vec<serde_json::Value> = z
        .entries()
        .map(|((t, mu, nu), poly)| {
            serde_json::json!({
                "tuple": t,
                "mu": mu,
                "nu": nu,
                "value": poly.canonical_text(),
            })
        })
        .collect();
    let doc = serde_json::json!({
        "n": z.n,
        "m": z.m,
        "k": z.k,
        "note": "cofactors are one deterministic choice; they are not unique",
        "entries": entries,
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn cmd_mc(p: &Problem, format: Format) -> Result<ExitCode, Failure> {
    let tensor = p.tensor()?;
    let ideal = tensor
        .ideal
        .clone()
        .ok_or_else(|| Failure::precondition("mc command needs an ideal"))?;
    let z = compute_z(&tensor, &ideal)?;
    let defect = mc_defect(&tensor, &z).map_err(|e| Failure::precondition(e.to_string()))?;
    let contained = mc_check(&tensor, &z, &ideal).map_err(|e| Failure::precondition(e.to_string()))?;
    let gens = ideal.generators().len();
    let mut curvature_ok = true;
    for mu in 0..gens {
        let mut v = vec![SuperPolynomial::zero(); gens];
        v[mu] = SuperPolynomial::one();
        curvature_ok &=
            curvature_vanishes(&tensor, &z, &ideal, &v).map_err(|e| Failure::precondition(e.to_string()))?;
    }
    let lines = vec![
        format!("defect zero on the nose: {}", defect.is_zero()),
        format!("defect applied to generators lies in the ideal square: {contained}"),
        format!("curvature vanishes modulo the ideal square on all generators: {curvature_ok}"),
        format!("cross-check (containment iff curvature vanishes): {}", contained == curvature_ok),
    ];
    let pass = contained && (contained == curvature_ok);
    emit_report(&lines, pass, format);
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn cmd_resolve(
    p: &Problem,
    level: u32,
    cap: Option<i64>,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, Failure> {
    let resolvent = match p.resolvent()? {
        Some(r) => r,
        None => p.koszul()?,
    };
    let cap = cap.or(p.cap).ok_or_else(|| Failure::precondition("resolve needs --cap"))?;
    let (ext, report) = resolvent.tate_extend(level, cap)?;
    let check = ext.check()?;
    let mut doc = ext.to_json();
    doc["report"] = serde_json::json!({
        "added": report.added,
        "minimal": report.minimal,
        "vars_per_level": check.vars_per_level,
    });
    write_out(out, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn build_state(
    p: &Problem,
    tensor: NambuTensor,
    depth: u32,
    cap: Option<i64>,
) -> Result<PerturbationState, Failure> {
    let base = match p.resolvent()? {
        Some(r) => r,
        None => p.koszul()?,
    };
    let resolvent = if base.max_level() >= depth {
        base
    } else {
        let cap = cap.or(p.cap).ok_or_else(|| {
            Failure::precondition("resolvent shallower than the requested depth; provide --cap to extend")
        })?;
        base.tate_extend(depth, cap)?.0
    };
    PerturbationState::init(tensor, resolvent, false).map_err(Failure::from)
}

fn cmd_perturb(
    p: &Problem,
    depth: Option<u32>,
    cap: Option<i64>,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, Failure> {
    let tensor = p.tensor()?;
    let depth = depth.or(p.depth).ok_or_else(|| Failure::precondition("perturb needs --depth"))?;
    let mut state = build_state(p, tensor, depth.max(1), cap)?;
    state.run(depth).map_err(Failure::from)?;
    let mut text = String::new();
    for l in 1..=depth {
        text.push_str(&format!("pi{l} = {}\n", state.stage(l).unwrap().canonical_text()));
    }
    let report = state.report();
    text.push_str(&format!(
        "# arity {}, gamma mode {:?}, zero tail {}\n",
        report.arity, report.gamma, report.zero_tail
    ));
    for s in &report.stages {
        text.push_str(&format!(
            "# stage {}: {} terms, fd {}, cohomological degrees {:?}\n",
            s.index,
            s.terms,
            s.fd.map_or("-".to_string(), |f| f.to_string()),
            s.cohdegs
        ));
    }
    write_out(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_brackets(
    p: &Problem,
    args: &[String],
    derived: bool,
    depth: Option<u32>,
    cap: Option<i64>,
) -> Result<ExitCode, Failure> {
    let tensor = p.tensor()?;
    let polys: Vec<SuperPolynomial> = args
        .iter()
        .map(|s| parse_poly(s).map_err(|e| Failure::parse(format!("argument '{s}': {e}"))))
        .collect::<Result<_, _>>()?;
    let value = if derived {
        let depth = depth.or(p.depth).unwrap_or(tensor.m + 1);
        let mut state = build_state(p, tensor, depth, cap)?;
        state.run(depth).map_err(Failure::from)?;
        state.derived_bracket(&polys).map_err(Failure::from)?
    } else {
        tensor.bracket_eval(&polys)?
    };
    println!("{}", value.canonical_text());
    Ok(ExitCode::SUCCESS)
}

fn emit_report(lines: &[String], pass: bool, format: Format) {
    match format {
        Format::Text => {
            for l in lines {
                println!("{l}");
            }
            println!("result: {}", if pass { "pass" } else { "FAIL" });
        }
        Format::Json => {
            let doc = serde_json::json!({ "lines": lines, "pass": pass });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
}

fn write_out(path: Option<&std::path::Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, contents)
            .map_err(|e| Failure::precondition(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

// re-exported for the problem module
pub(crate) fn build_ideal(n: u32, gens: &[String]) -> Result<IdealPresentation, Failure> {
    let polys: Vec<SuperPolynomial> = gens
        .iter()
        .map(|s| parse_poly(s).map_err(|e| Failure::parse(format!("ideal generator '{s}': {e}"))))
        .collect::<Result<_, _>>()?;
    IdealPresentation::new(n, polys).map_err(Failure::from)
}

