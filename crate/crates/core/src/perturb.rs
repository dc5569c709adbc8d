//! The homological-perturbation recursion and the derived brackets it
//! induces.
//!
//! Starting from `pi_1 = Pi` (the tensor as a multivector) over a resolvent
//! truncation, each step extracts the lowest filtration component of the
//! self-bracket of the accumulated sum and solves the graded preimage
//! problem for the next correction. The corrections satisfy
//! `pi_l in F^{l+m-1} h_{<= l-1}`; the step fails loudly if a window or
//! closedness invariant breaks.


use crate::ideal::{compute_z, graded_preimage, IdealError};
use crate::nambu::{NambuError, NambuTensor};
use crate::poly::{ratio, Homogeneity, InternalGrading, Parity, SuperPolynomial, VarKind, Variable};
use crate::resolvent::ResolventTruncation;
use crate::schouten::schouten;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PerturbError {
    #[error("the recursion requires even arity, got {0}")]
    OddArity(u32),
    #[error("not a Nambu-Poisson tensor: the self-bracket [[Pi,Pi]] is nonzero")]
    NotNambuTensor,
    #[error("resolvent truncated at level {have}, step {need} needs that level")]
    TruncationTooShallow { have: u32, need: u32 },
    #[error("internal grading required for the preimage solve")]
    MissingGrading,
    #[error("closedness failure at stage {stage}: {what}")]
    ClosednessFailure { stage: u32, what: String },
    #[error("stage {stage} violates the cohomological degree spread")]
    DegreeSpread { stage: u32 },
    #[error("derived brackets need homogeneous-parity arguments")]
    MixedParity,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Tensor(#[from] NambuError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMode {
    /// Integer grading (binary case `m = 2`).
    Z,
    /// Parity grading only (even `m > 2`).
    Z2,
}

#[derive(Debug, Clone)]
pub struct PerturbationState {
    pub tensor: NambuTensor,
    pub resolvent: ResolventTruncation,
    pub gamma: GammaMode,
    /// `stages[i]` is `pi_{i+1}`; `stages[0] = pi_1` is the tensor itself.
    stages: Vec<SuperPolynomial>,
}

#[derive(Debug, Clone)]
pub struct StageInfo {
    pub index: u32,
    pub terms: usize,
    pub fd: Option<i64>,
    pub cohdegs: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct StateReport {
    pub arity: u32,
    pub gamma: GammaMode,
    pub stages: Vec<StageInfo>,
    /// Number of zero stages at the end of the computed range.
    pub zero_tail: usize,
}

impl PerturbationState {
    /// Installs `pi_1`. Unless `trusted`, verifies that the tensor
    /// self-bracket vanishes and (when an ideal is attached) that the ideal
    /// is stable under the bracket.
    pub fn init(
        tensor: NambuTensor,
        resolvent: ResolventTruncation,
        trusted: bool,
    ) -> Result<Self, PerturbError> {
        if !tensor.m.is_multiple_of(2) {
            return Err(PerturbError::OddArity(tensor.m));
        }
        let pi1 = tensor.as_multivector();
        if !trusted {
            if !schouten(&pi1, &pi1).is_zero() {
                return Err(PerturbError::NotNambuTensor);
            }
            if let Some(ideal) = &tensor.ideal {
                compute_z(&tensor, ideal)?;
            }
        }
        let gamma = if tensor.m == 2 { GammaMode::Z } else { GammaMode::Z2 };
        Ok(PerturbationState { tensor, resolvent, gamma, stages: vec![pi1] })
    }

    pub fn arity(&self) -> u32 {
        self.tensor.m
    }

    pub fn depth(&self) -> u32 {
        self.stages.len() as u32
    }

    pub fn stage(&self, l: u32) -> Option<&SuperPolynomial> {
        if l == 0 {
            return None;
        }
        self.stages.get(l as usize - 1)
    }

    pub fn stages(&self) -> &[SuperPolynomial] {
        &self.stages
    }

    /// `pi0^{<=r} + pi_1 + ... + pi_depth` for the given truncation level.
    pub fn total(&self, r: u32) -> SuperPolynomial {
        let mut t = self.resolvent.pi0_le(r);
        for s in &self.stages {
            t = &t + s;
        }
        t
    }

    fn grading(&self) -> Result<&InternalGrading, PerturbError> {
        self.resolvent.grading.as_ref().ok_or(PerturbError::MissingGrading)
    }

    /// Cohomological degrees allowed at stage `l` for this arity.
    fn allowed_cohdegs(&self, l: u32) -> Vec<i64> {
        let m = self.tensor.m as i64;
        match self.gamma {
            GammaMode::Z => vec![2],
            GammaMode::Z2 => {
                let top = (l as i64 - m - 1).div_euclid(m - 1) + 2;
                (1..=top.max(1)).map(|r| r * m - 2 * (r - 1)).collect()
            }
        }
    }

    /// Computes the next correction `pi_{l+1}` where `l` is the current
    /// depth.
    pub fn step(&mut self) -> Result<(), PerturbError> {
        let l = self.depth();
        let m = self.tensor.m as i64;
        if self.resolvent.max_level() < l {
            return Err(PerturbError::TruncationTooShallow {
                have: self.resolvent.max_level(),
                need: l,
            });
        }
        let total = self.total(l);
        let bracket = schouten(&total, &total);

        // window invariant: the self-bracket sits in F^{l+m}
        if !bracket.in_filtration(l as i64 + m) {
            return Err(PerturbError::ClosednessFailure {
                stage: l + 1,
                what: format!(
                    "self-bracket has filtration degree {} below the window {}",
                    bracket.min_fd().unwrap(),
                    l as i64 + m
                ),
            });
        }
        let obstruction = bracket.fd_part(l as i64 + m);
        if !self.resolvent.differential(&obstruction).is_zero() {
            return Err(PerturbError::ClosednessFailure {
                stage: l + 1,
                what: "extracted source term is not closed".into(),
            });
        }
        let target = obstruction.scale(&ratio(-1, 2));

        // the first correction admits the cofactor route, which pins the
        // same choice as the Z tensors; every other stage (and any source
        // the route cannot handle) goes through the sliced linear solver
        let special = if l == 1 { self.first_correction(&target)? } else { None };
        let next = match special {
            Some(n) => n,
            None => {
                let grading = self.grading()?.clone();
                let mut next = SuperPolynomial::zero();
                for c in target.cohdeg_support() {
                    let part = target.cohdeg_part(c);
                    let mut internal_degs: Vec<i64> = Vec::new();
                    for (mono, _) in part.terms() {
                        match grading.monomial_degree(mono) {
                            Some(d) => {
                                if !internal_degs.contains(&d) {
                                    internal_degs.push(d);
                                }
                            }
                            None => return Err(PerturbError::MissingGrading),
                        }
                    }
                    internal_degs.sort_unstable();
                    for d in internal_degs {
                        let slice = part.internal_part(&grading, d);
                        let sol = graded_preimage(&slice, &self.resolvent, &grading, l)?;
                        next = &next + &sol;
                    }
                }
                next
            }
        };

        // stage invariants
        debug_assert!(next.in_filtration(l as i64 + m));
        debug_assert!(next.max_level() <= l);
        let allowed = self.allowed_cohdegs(l + 1);
        if !next.cohdeg_support().iter().all(|c| allowed.contains(c)) {
            return Err(PerturbError::DegreeSpread { stage: l + 1 });
        }
        self.stages.push(next);
        Ok(())
    }

    /// Solves `d(pi_2) = target` by the cofactor route. Each xi-block of
    /// the source is proportional to a bracket of coordinates with one
    /// level-1 image, so the Z tensors provide the preimage directly; this
    /// pins the same choice the Z tensors make. Falls back to the generic
    /// solver when the source does not have that shape.
    fn first_correction(&self, target: &SuperPolynomial) -> Result<Option<SuperPolynomial>, PerturbError> {
        let Some(level1) = self.resolvent.level(1) else {
            return Err(PerturbError::TruncationTooShallow { have: 0, need: 1 });
        };
        let images: Vec<SuperPolynomial> = level1.vars.iter().map(|v| v.image.clone()).collect();
        let lifter = match &self.tensor.ideal {
            Some(ideal) if ideal.generators() == &images[..] => ideal.clone(),
            _ => match crate::ideal::IdealPresentation::new(self.tensor.n, images) {
                Ok(i) => i,
                Err(_) => return Ok(None),
            },
        };
        let z = match compute_z(&self.tensor, &lifter) {
            Ok(z) => z,
            Err(_) => return Ok(None),
        };

        // split the target into S-coefficients keyed by the xi-skeleton
        let mut blocks: std::collections::BTreeMap<crate::poly::SuperMonomial, SuperPolynomial> =
            Default::default();
        for (mono, c) in target.terms() {
            let mut skeleton = crate::poly::SuperMonomial::unit();
            let mut body = crate::poly::SuperMonomial::unit();
            for (v, e) in &mono.even {
                if v.kind == VarKind::Odd {
                    skeleton.even.insert(*v, *e);
                } else {
                    body.even.insert(*v, *e);
                }
            }
            skeleton.odd = mono.odd.clone();
            if body.even.keys().any(|v| v.level > 0)
                || skeleton.odd.iter().any(|v| v.kind == VarKind::Even)
            {
                return Ok(None);
            }
            blocks
                .entry(skeleton)
                .or_insert_with(SuperPolynomial::zero)
                .add_term(body, c.clone());
        }

        let mut next = SuperPolynomial::zero();
        for (skeleton, coeff) in blocks {
            // the skeleton must consist of level-0 xi's and exactly one
            // level-1 xi naming the generator the block came from
            let mut mus: Vec<u32> = skeleton
                .even
                .iter()
                .filter(|(v, _)| v.level == 1)
                .map(|(v, _)| v.index)
                .collect();
            mus.extend(skeleton.odd.iter().filter(|v| v.level == 1).map(|v| v.index));
            if mus.len() != 1
                || skeleton.even.keys().any(|v| v.level > 1)
                || skeleton.odd.iter().any(|v| v.level > 1)
            {
                return Ok(None);
            }
            let mu = mus[0];
            let tuple: Vec<u32> = skeleton.odd.iter().filter(|v| v.level == 0).map(|v| v.index).collect();
            let mut args: Vec<SuperPolynomial> =
                tuple.iter().map(|&i| SuperPolynomial::var(Variable::coord(i))).collect();
            args.push(lifter.generators()[mu as usize - 1].clone());
            let bracket = self.tensor.bracket_eval_raw(&args)?;
            // proportionality factor between the block and the bracket
            let Some(scale) = proportionality(&coeff, &bracket) else {
                return Ok(None);
            };
            let skel = SuperPolynomial::monomial(skeleton.clone(), crate::poly::rat(1));
            for nu in 1..=z.k {
                let g = z.entry_sorted(&tuple, mu, nu).scale(&scale);
                if g.is_zero() {
                    continue;
                }
                let index = level1.vars[nu as usize - 1].index;
                let xvar = SuperPolynomial::var(Variable::x(index, 1));
                next = &next + &g.mul(&xvar).mul(&skel);
            }
        }
        if self.resolvent.differential(&next) != *target {
            return Ok(None);
        }
        Ok(Some(next))
    }

    /// Runs the recursion until `depth` stages are present.
    pub fn run(&mut self, depth: u32) -> Result<(), PerturbError> {
        while self.depth() < depth {
            self.step()?;
        }
        Ok(())
    }

    pub fn report(&self) -> StateReport {
        let stages: Vec<StageInfo> = self
            .stages
            .iter()
            .enumerate()
            .map(|(i, s)| StageInfo {
                index: i as u32 + 1,
                terms: s.num_terms(),
                fd: s.min_fd(),
                cohdegs: s.cohdeg_support(),
            })
            .collect();
        let zero_tail = self.stages.iter().rev().take_while(|s| s.is_zero()).count();
        StateReport { arity: self.tensor.m, gamma: self.gamma, stages, zero_tail }
    }

    /// The derived bracket `{phi_1,...,phi_j}` on the resolvent: iterated
    /// Schouten brackets against the accumulated structure, projected along
    /// the augmentation that kills all `xi` symbols, with the sign that
    /// converts the symmetric brackets to their antisymmetric form.
    pub fn derived_bracket(&self, args: &[SuperPolynomial]) -> Result<SuperPolynomial, PerturbError> {
        let mut acc = self.total(self.resolvent.max_level());
        let mut sign_exp = 0u64;
        let j = args.len() as u64;
        for (i, phi) in args.iter().enumerate() {
            let parity = match phi.degrees().parity {
                Homogeneity::Value(p) => p,
                Homogeneity::Any => Parity::Even,
                Homogeneity::Mixed => return Err(PerturbError::MixedParity),
            };
            if parity == Parity::Odd {
                sign_exp += j - 1 - i as u64;
            }
            acc = schouten(&acc, phi);
            if acc.is_zero() {
                break;
            }
        }
        let projected = acc.kill_vars(|v| v.kind == VarKind::Odd);
        Ok(if sign_exp % 2 == 1 { -&projected } else { projected })
    }

    /// Evaluates the generalized Jacobi identity of arity `n` on one
    /// argument tuple; the result must vanish.
    pub fn jacobi_residual(&self, args: &[SuperPolynomial]) -> Result<SuperPolynomial, PerturbError> {
        let n = args.len();
        let parities: Vec<Parity> = args
            .iter()
            .map(|a| match a.degrees().parity {
                Homogeneity::Value(p) => Ok(p),
                Homogeneity::Any => Ok(Parity::Even),
                Homogeneity::Mixed => Err(PerturbError::MixedParity),
            })
            .collect::<Result<_, _>>()?;
        let mut residual = SuperPolynomial::zero();
        for q in 1..=n {
            let p = n + 1 - q;
            for chosen in crate::nambu::sorted_tuples(n as u32, q as u32) {
                let chosen: Vec<usize> = chosen.iter().map(|&i| i as usize - 1).collect();
                let rest: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
                // permutation sign and Koszul sign of the unshuffle
                let mut perm_sign = 1i32;
                let mut koszul = 0u64;
                for &c in &chosen {
                    for &r in &rest {
                        if r < c {
                            perm_sign = -perm_sign;
                            if parities[c] == Parity::Odd && parities[r] == Parity::Odd {
                                koszul += 1;
                            }
                        }
                    }
                }
                let inner_args: Vec<SuperPolynomial> =
                    chosen.iter().map(|&i| args[i].clone()).collect();
                let inner = self.derived_bracket(&inner_args)?;
                if inner.is_zero() {
                    continue;
                }
                let mut outer_args = vec![inner];
                outer_args.extend(rest.iter().map(|&i| args[i].clone()));
                let mut term = self.derived_bracket(&outer_args)?;
                let mut sign = perm_sign;
                if koszul % 2 == 1 {
                    sign = -sign;
                }
                if (q * (p - 1)) % 2 == 1 {
                    sign = -sign;
                }
                if sign < 0 {
                    term = -&term;
                }
                residual = &residual + &term;
            }
        }
        Ok(residual)
    }

    /// The anchor evaluated on `(d phi_1, ..., d phi_{m-1}, a)`: the image
    /// of the derived `m`-bracket in the quotient algebra. Nonzero only
    /// when every form argument descends to the quotient.
    pub fn anchor(
        &self,
        phis: &[SuperPolynomial],
        a: &SuperPolynomial,
    ) -> Result<SuperPolynomial, PerturbError> {
        if phis.len() != self.tensor.m as usize - 1 {
            return Err(PerturbError::Tensor(NambuError::ArityMismatch {
                expected: self.tensor.m - 1,
                got: phis.len() as u32,
            }));
        }
        let mut args = phis.to_vec();
        args.push(a.clone());
        let value = self.derived_bracket(&args)?;
        // project along R -> S (kill adjoined variables), then reduce mod I
        let in_s = value.kill_vars(|v| v.level >= 1);
        Ok(match &self.tensor.ideal {
            Some(ideal) => ideal.normal_form(&in_s),
            None => in_s,
        })
    }

    /// Evaluates the generalized Jacobi identities of all arities up to
    /// `max_arity` on the sample tuples (those no longer than the arity
    /// bound); residuals must vanish.
    pub fn check_linfty(
        &self,
        max_arity: u32,
        samples: &[Vec<SuperPolynomial>],
    ) -> Result<IdentityReport, PerturbError> {
        let mut report = IdentityReport::default();
        for args in samples {
            if args.is_empty() || args.len() > max_arity as usize {
                continue;
            }
            let residual = self.jacobi_residual(args)?;
            report.checked += 1;
            if !residual.is_zero() {
                report.failures.push((args.clone(), residual));
            }
        }
        Ok(report)
    }

    /// Checks the anchor against the plain bracket: on all-quotient form
    /// arguments it must reduce to the bracket, on anything else it must
    /// vanish.
    pub fn check_algebroid_anchor(
        &self,
        samples: &[(Vec<SuperPolynomial>, SuperPolynomial)],
    ) -> Result<IdentityReport, PerturbError> {
        let mut report = IdentityReport::default();
        for (phis, a) in samples {
            let got = self.anchor(phis, a)?;
            let descends = phis.iter().all(|phi| phi.max_level() == 0);
            let expected = if descends {
                let mut args = phis.clone();
                args.push(a.clone());
                self.tensor.bracket_eval(&args)?
            } else {
                SuperPolynomial::zero()
            };
            report.checked += 1;
            if got != expected {
                let mut args = phis.clone();
                args.push(a.clone());
                report.failures.push((args, &got - &expected));
            }
        }
        Ok(report)
    }
}

/// Result of an identity sweep: every failure carries the argument tuple
/// and the nonzero residual.
#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<(Vec<SuperPolynomial>, SuperPolynomial)>,
}

impl IdentityReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}


/// The scalar `t` with `a == t * b` for nonzero `b`, if one exists.
fn proportionality(a: &SuperPolynomial, b: &SuperPolynomial) -> Option<crate::poly::Rational> {
    use num_traits::Zero;
    if b.is_zero() {
        return a.is_zero().then(|| crate::poly::rat(0));
    }
    if a.is_zero() {
        return Some(crate::poly::rat(0));
    }
    let (mono, cb) = b.terms().next().expect("nonzero");
    let ca = a.coeff(mono);
    if ca.is_zero() {
        return None;
    }
    let t = ca / cb;
    (*a == b.scale(&t)).then_some(t)
}
