//! Commutative Gröbner-basis engine over `S = Q[x_1..x_n]` (Buchberger,
//! graded-reverse-lexicographic order) with exact lift tracking, the Z
//! tensors of a Nambu-Poisson ideal, and the graded differential-preimage
//! solver used by the perturbation recursion.
//!
//! The monomial order is fixed to grevlex and the basis is kept reduced,
//! monic and sorted with the largest leading monomial first, so normal
//! forms, lifts and everything downstream of them are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::linalg::solve_particular;
use crate::nambu::{sorted_tuples, NambuError, NambuTensor};
use crate::poly::{InternalGrading, Homogeneity, Parity, Rational, SuperMonomial, SuperPolynomial, Variable};
use crate::resolvent::ResolventTruncation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("polynomial is not a member of the ideal")]
    NotInIdeal,
    #[error("not a Nambu-Poisson ideal: bracket of {tuple:?} with generator {mu} does not lie in the ideal")]
    NotNambuIdeal { tuple: Vec<u32>, mu: u32 },
    #[error("generators must be nonzero polynomials in the level-0 coordinates")]
    BadGenerators,
    #[error("internal grading is missing a weight for {0}")]
    MissingGrading(Variable),
    #[error("preimage target is not homogeneous in (cohomological, internal, filtration) degree")]
    InhomogeneousTarget,
    #[error("no differential preimage exists in the admissible degree slice")]
    NoPreimage,
    #[error(transparent)]
    Bracket(#[from] NambuError),
}

/// Graded-reverse-lexicographic comparison of commutative monomials.
pub fn grevlex_cmp(a: &SuperMonomial, b: &SuperMonomial) -> Ordering {
    let da: u64 = a.even.values().map(|&e| e as u64).sum();
    let db: u64 = b.even.values().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    // equal total degree: the last variable at which the exponents differ
    // decides, smaller exponent there means larger monomial
    let keys: std::collections::BTreeSet<&Variable> = a.even.keys().chain(b.even.keys()).collect();
    for v in keys.into_iter().rev() {
        let ea = a.even.get(v).copied().unwrap_or(0);
        let eb = b.even.get(v).copied().unwrap_or(0);
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

fn leading_term(p: &SuperPolynomial) -> Option<(SuperMonomial, Rational)> {
    p.terms()
        .max_by(|(ma, _), (mb, _)| grevlex_cmp(ma, mb))
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn mono_divides(a: &SuperMonomial, b: &SuperMonomial) -> bool {
    a.even.iter().all(|(v, e)| b.even.get(v).is_some_and(|f| f >= e))
}

fn mono_div(a: &SuperMonomial, b: &SuperMonomial) -> SuperMonomial {
    let mut out = SuperMonomial::unit();
    for (v, e) in &a.even {
        let f = e - b.even.get(v).copied().unwrap_or(0);
        if f > 0 {
            out.even.insert(*v, f);
        }
    }
    out
}

fn mono_lcm(a: &SuperMonomial, b: &SuperMonomial) -> SuperMonomial {
    let mut out = a.clone();
    for (v, e) in &b.even {
        let cur = out.even.entry(*v).or_insert(0);
        *cur = (*cur).max(*e);
    }
    out
}

/// Full multivariate division: `p = sum_i q_i b_i + r` with no monomial of
/// `r` divisible by any basis leading monomial. Reducers are tried in
/// basis order, so the result is deterministic.
fn divide(p: &SuperPolynomial, basis: &[GbElement]) -> (Vec<SuperPolynomial>, SuperPolynomial) {
    let mut quotients = vec![SuperPolynomial::zero(); basis.len()];
    let mut rem = SuperPolynomial::zero();
    let mut h = p.clone();
    'outer: while let Some((lm, lc)) = leading_term(&h) {
        for (i, b) in basis.iter().enumerate() {
            if mono_divides(&b.lead_mono, &lm) {
                let t = mono_div(&lm, &b.lead_mono);
                let coeff = &lc / &b.lead_coeff;
                let factor = SuperPolynomial::monomial(t, coeff);
                h = &h - &factor.mul(&b.poly);
                quotients[i] = &quotients[i] + &factor;
                continue 'outer;
            }
        }
        let lead = SuperPolynomial::monomial(lm, lc);
        rem = &rem + &lead;
        h = &h - &lead;
    }
    (quotients, rem)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct GbElement {
    poly: SuperPolynomial,
    lead_mono: SuperMonomial,
    lead_coeff: Rational,
    /// Expression of `poly` in the original generators.
    lift: Vec<SuperPolynomial>,
}

impl GbElement {
    fn new(poly: SuperPolynomial, lift: Vec<SuperPolynomial>) -> Option<Self> {
        let (lead_mono, lead_coeff) = leading_term(&poly)?;
        Some(GbElement { poly, lead_mono, lead_coeff, lift })
    }

    fn make_monic(&mut self) {
        if self.lead_coeff.is_one() {
            return;
        }
        let inv = self.lead_coeff.recip();
        self.poly = self.poly.scale(&inv);
        for l in &mut self.lift {
            *l = l.scale(&inv);
        }
        self.lead_coeff = Rational::one();
    }
}

/// A finitely generated ideal with its cached reduced Gröbner basis and
/// the lift matrix expressing each basis element in the input generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    n: u32,
    gens: Vec<SuperPolynomial>,
    basis: Vec<GbElement>,
}

impl IdealPresentation {
    /// Runs Buchberger on the generators and reduces the result.
    pub fn new(n: u32, gens: Vec<SuperPolynomial>) -> Result<Self, IdealError> {
        for g in &gens {
            let ok = !g.is_zero()
                && g.terms().all(|(m, _)| m.odd.is_empty() && m.even.keys().all(|v| v.level == 0 && v.index <= n));
            if !ok {
                return Err(IdealError::BadGenerators);
            }
        }
        let mut basis: Vec<GbElement> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut lift = vec![SuperPolynomial::zero(); gens.len()];
            lift[i] = SuperPolynomial::one();
            let mut el = GbElement::new(g.clone(), lift).expect("nonzero generator");
            el.make_monic();
            basis.push(el);
        }

        let mut pairs: std::collections::VecDeque<(usize, usize)> = Default::default();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                pairs.push_back((i, j));
            }
        }
        while let Some((i, j)) = pairs.pop_front() {
            let (bi, bj) = (&basis[i], &basis[j]);
            let lcm = mono_lcm(&bi.lead_mono, &bj.lead_mono);
            // coprime leading monomials: S-polynomial reduces to zero
            let prod = bi.lead_mono.mul(&bj.lead_mono).map(|(_, m)| m);
            if prod.as_ref() == Some(&lcm) {
                continue;
            }
            let ti = SuperPolynomial::monomial(mono_div(&lcm, &bi.lead_mono), Rational::one());
            let tj = SuperPolynomial::monomial(mono_div(&lcm, &bj.lead_mono), Rational::one());
            let spoly = &ti.mul(&bi.poly) - &tj.mul(&bj.poly);
            let mut lift: Vec<SuperPolynomial> = Vec::with_capacity(gens.len());
            for g in 0..gens.len() {
                lift.push(&ti.mul(&bi.lift[g]) - &tj.mul(&bj.lift[g]));
            }
            let (q, rem) = divide(&spoly, &basis);
            if rem.is_zero() {
                continue;
            }
            for (qi, b) in q.iter().zip(basis.iter()) {
                if !qi.is_zero() {
                    for (lg, bg) in lift.iter_mut().zip(&b.lift) {
                        *lg = &*lg - &qi.mul(bg);
                    }
                }
            }
            let mut el = GbElement::new(rem, lift).expect("nonzero remainder");
            el.make_monic();
            basis.push(el);
            let newi = basis.len() - 1;
            for i in 0..newi {
                pairs.push_back((i, newi));
            }
        }

        // minimalize: drop elements whose leading monomial is divisible by
        // another's
        let mut keep = vec![true; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j
                    && keep[i]
                    && keep[j]
                    && mono_divides(&basis[j].lead_mono, &basis[i].lead_mono)
                    && (basis[j].lead_mono != basis[i].lead_mono || j < i)
                {
                    keep[i] = false;
                }
            }
        }
        let mut minimal: Vec<GbElement> = basis
            .into_iter()
            .zip(keep)
            .filter_map(|(b, k)| k.then_some(b))
            .collect();
        minimal.sort_by(|a, b| grevlex_cmp(&b.lead_mono, &a.lead_mono));

        // tail-reduce each element against the others
        for i in 0..minimal.len() {
            let others: Vec<GbElement> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| b.clone())
                .collect();
            let (q, rem) = divide(&minimal[i].poly.clone(), &others);
            if rem != minimal[i].poly {
                let mut lift = minimal[i].lift.clone();
                for (qj, b) in q.iter().zip(others.iter()) {
                    if !qj.is_zero() {
                        for (lg, bg) in lift.iter_mut().zip(&b.lift) {
                            *lg = &*lg - &qj.mul(bg);
                        }
                    }
                }
                let mut el = GbElement::new(rem, lift).expect("reduced basis element");
                el.make_monic();
                minimal[i] = el;
            }
        }
        minimal.sort_by(|a, b| grevlex_cmp(&b.lead_mono, &a.lead_mono));

        Ok(IdealPresentation { n, gens, basis: minimal })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[SuperPolynomial] {
        &self.gens
    }

    pub fn basis_polys(&self) -> Vec<SuperPolynomial> {
        self.basis.iter().map(|b| b.poly.clone()).collect()
    }

    /// Expression of each basis element in the generators.
    pub fn basis_lifts(&self) -> Vec<Vec<SuperPolynomial>> {
        self.basis.iter().map(|b| b.lift.clone()).collect()
    }

    /// The unique normal form of `p` modulo the ideal.
    pub fn normal_form(&self, p: &SuperPolynomial) -> SuperPolynomial {
        divide(p, &self.basis).1
    }

    pub fn member(&self, p: &SuperPolynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Cofactors `(c_1..c_k)` with `p = sum c_mu f_mu`.
    pub fn lift(&self, p: &SuperPolynomial) -> Result<Vec<SuperPolynomial>, IdealError> {
        let (q, rem) = divide(p, &self.basis);
        if !rem.is_zero() {
            return Err(IdealError::NotInIdeal);
        }
        let mut out = vec![SuperPolynomial::zero(); self.gens.len()];
        for (qi, b) in q.iter().zip(self.basis.iter()) {
            if !qi.is_zero() {
                for (og, bg) in out.iter_mut().zip(&b.lift) {
                    *og = &*og + &qi.mul(bg);
                }
            }
        }
        Ok(out)
    }

    /// Like [`lift`](Self::lift), but divides by the generator `preferred`
    /// (1-based) as far as possible before falling back to the basis. The
    /// cofactor lands on that generator whenever it can, which is the
    /// diagonal choice for monomial ideals.
    pub fn lift_preferring(
        &self,
        p: &SuperPolynomial,
        preferred: u32,
    ) -> Result<Vec<SuperPolynomial>, IdealError> {
        let idx = preferred as usize - 1;
        let f = &self.gens[idx];
        let mut lift = vec![SuperPolynomial::zero(); self.gens.len()];
        lift[idx] = SuperPolynomial::one();
        let single = [GbElement::new(f.clone(), lift).expect("nonzero generator")];
        let (q, rem) = divide(p, &single);
        let mut out = self.lift(&rem)?;
        out[idx] = &out[idx] + &q[0];
        Ok(out)
    }

    /// The ideal generated by all pairwise products of the generators.
    pub fn square(&self) -> Result<IdealPresentation, IdealError> {
        let mut gens = Vec::new();
        for i in 0..self.gens.len() {
            for j in i..self.gens.len() {
                gens.push(self.gens[i].mul(&self.gens[j]));
            }
        }
        IdealPresentation::new(self.n, gens)
    }
}

/// The cofactor tensor of a Nambu-Poisson ideal:
/// `{x_{i_1},...,x_{i_{m-1}}, f_mu} = sum_nu Z^nu_{i...,mu} f_nu`,
/// stored on sorted tuples and extended antisymmetrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZTensor {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    entries: BTreeMap<(Vec<u32>, u32, u32), SuperPolynomial>,
}

impl ZTensor {
    pub fn entry_sorted(&self, tuple: &[u32], mu: u32, nu: u32) -> SuperPolynomial {
        self.entries
            .get(&(tuple.to_vec(), mu, nu))
            .cloned()
            .unwrap_or_else(SuperPolynomial::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<u32>, u32, u32), &SuperPolynomial)> {
        self.entries.iter()
    }
}

/// Solves the cofactor problem for every sorted tuple and generator.
/// Fails with the first bracket that leaves the ideal. The lift prefers
/// the generator the bracket was taken with, which reproduces the diagonal
/// cofactors of monomial ideals.
pub fn compute_z(tensor: &NambuTensor, ideal: &IdealPresentation) -> Result<ZTensor, IdealError> {
    let k = ideal.generators().len() as u32;
    let mut entries = BTreeMap::new();
    for t in sorted_tuples(tensor.n, tensor.m - 1) {
        for (mu0, f) in ideal.generators().iter().enumerate() {
            let mut args: Vec<SuperPolynomial> =
                t.iter().map(|&i| SuperPolynomial::var(Variable::coord(i))).collect();
            args.push(f.clone());
            let bracket = tensor.bracket_eval_raw(&args)?;
            let cof = ideal.lift_preferring(&bracket, mu0 as u32 + 1).map_err(|e| match e {
                IdealError::NotInIdeal => IdealError::NotNambuIdeal { tuple: t.clone(), mu: mu0 as u32 + 1 },
                other => other,
            })?;
            for (nu0, z) in cof.into_iter().enumerate() {
                if !z.is_zero() {
                    entries.insert((t.clone(), mu0 as u32 + 1, nu0 as u32 + 1), z);
                }
            }
        }
    }
    Ok(ZTensor { n: tensor.n, m: tensor.m, k, entries })
}

/// Enumerates the monomials over `vars` with the exact degree triple
/// `(cohomological, filtration, internal)`.
pub fn enumerate_slice(
    vars: &[Variable],
    cohdeg: i64,
    fd: i64,
    internal: i64,
    grading: &InternalGrading,
) -> Result<Vec<SuperMonomial>, IdealError> {
    // phase 1: parity-odd variables (exponent <= 1)
    // phase 2: parity-even xi variables (bounded by filtration degree)
    // phase 3: parity-even x variables of level >= 2 (bounded by cohdeg)
    // phase 4: level-0 x variables (bounded by internal degree)
    let mut phase: Vec<(u8, Variable)> = Vec::with_capacity(vars.len());
    for v in vars {
        if grading.weight(v).is_none() {
            return Err(IdealError::MissingGrading(*v));
        }
        let ph = match (v.parity(), v.kind, v.level) {
            (Parity::Odd, _, _) => 0u8,
            (Parity::Even, crate::poly::VarKind::Odd, _) => 1,
            (Parity::Even, crate::poly::VarKind::Even, 0) => 3,
            (Parity::Even, crate::poly::VarKind::Even, _) => 2,
        };
        phase.push((ph, *v));
    }
    phase.sort();
    let ordered: Vec<(u8, Variable)> = phase;

    let mut out = Vec::new();
    let mut cur = SuperMonomial::unit();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ordered: &[(u8, Variable)],
        at: usize,
        rc: i64,
        rf: i64,
        rd: i64,
        grading: &InternalGrading,
        cur: &mut SuperMonomial,
        out: &mut Vec<SuperMonomial>,
    ) {
        if at == ordered.len() {
            if rc == 0 && rf == 0 && rd == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let (ph, v) = ordered[at];
        // filtration weight only lives on phase-0/1 variables
        if ph >= 2 && rf != 0 {
            return;
        }
        // positive cohdeg only comes from xi's; x's can only lower it
        if ph == 3 && rc != 0 {
            return;
        }
        let w = grading.weight(&v).expect("checked");
        let c = v.cohdeg();
        let f = v.fd();
        let e_max: i64 = match ph {
            0 => {
                if f > 0 && rf / f < 1 {
                    0
                } else {
                    1
                }
            }
            1 => {
                debug_assert!(f > 0);
                rf / f
            }
            2 => {
                debug_assert!(c < 0);
                if rc > 0 {
                    return;
                }
                rc / c
            }
            3 => {
                debug_assert!(w > 0);
                if rd < 0 {
                    return;
                }
                rd / w
            }
            _ => unreachable!(),
        };
        for e in 0..=e_max.max(0) {
            if e > 0 {
                match v.parity() {
                    Parity::Odd => cur.odd.push(v),
                    Parity::Even => {
                        cur.even.insert(v, e as u32);
                    }
                }
            }
            rec(ordered, at + 1, rc - e * c, rf - e * f, rd - e * w, grading, cur, out);
            if e > 0 {
                match v.parity() {
                    Parity::Odd => {
                        cur.odd.pop();
                    }
                    Parity::Even => {
                        cur.even.remove(&v);
                    }
                }
            }
        }
    }
    rec(&ordered, 0, cohdeg, fd, internal, grading, &mut cur, &mut out);
    // parity-odd variables are visited in storage order, so each odd list is
    // already canonical
    debug_assert!(out.iter().all(|m| m.odd.windows(2).all(|w| w[0] < w[1])));
    out.sort();
    out.dedup();
    Ok(out)
}

/// Finds `p` with `d p = target`, where `d` is the resolvent differential,
/// by exact Gaussian elimination on the tri-degree slice of candidates over
/// variables of level `<= max_level`. Free variables are set to zero under
/// the pivot order induced by the canonical monomial order.
pub fn graded_preimage(
    target: &SuperPolynomial,
    res: &ResolventTruncation,
    grading: &InternalGrading,
    max_level: u32,
) -> Result<SuperPolynomial, IdealError> {
    if target.is_zero() {
        return Ok(SuperPolynomial::zero());
    }
    let degs = target.degrees();
    let (Homogeneity::Value(c), Homogeneity::Value(f)) = (degs.cohomological, degs.filtration) else {
        return Err(IdealError::InhomogeneousTarget);
    };
    if target.fd_support().len() != 1 {
        return Err(IdealError::InhomogeneousTarget);
    }
    let d = match target.internal_degree(grading) {
        Some(Homogeneity::Value(d)) => d,
        Some(Homogeneity::Any) => 0,
        Some(Homogeneity::Mixed) => return Err(IdealError::InhomogeneousTarget),
        None => {
            // locate a variable without weight for the error message
            for (m, _) in target.terms() {
                for (v, _) in m.vars() {
                    if grading.weight(&v).is_none() {
                        return Err(IdealError::MissingGrading(v));
                    }
                }
            }
            unreachable!("internal degree failed without a missing weight")
        }
    };

    let vars = res.alphabet(max_level);
    let mut candidates = enumerate_slice(&vars, c - 1, f, d, grading)?;
    candidates.sort_by(|a, b| a.render_lex_cmp(b));

    // the differential never touches xi symbols, so the system is block
    // diagonal over the xi-content of the monomials; blocks with no target
    // component contribute nothing (free variables are zero)
    let mut blocks: BTreeMap<SuperMonomial, Vec<SuperMonomial>> = BTreeMap::new();
    for m in candidates {
        blocks.entry(xi_content(&m)).or_default().push(m);
    }
    let mut target_blocks: BTreeMap<SuperMonomial, SuperPolynomial> = BTreeMap::new();
    for (m, cf) in target.terms() {
        target_blocks
            .entry(xi_content(m))
            .or_insert_with(SuperPolynomial::zero)
            .add_term(m.clone(), cf.clone());
    }

    let mut out = SuperPolynomial::zero();
    for (key, part) in target_blocks {
        let Some(cands) = blocks.get(&key) else {
            return Err(IdealError::NoPreimage);
        };
        let mut row_index: BTreeMap<SuperMonomial, usize> = BTreeMap::new();
        let mut images: Vec<SuperPolynomial> = Vec::with_capacity(cands.len());
        for m in cands {
            let image = res.differential(&SuperPolynomial::monomial(m.clone(), Rational::one()));
            for (mm, _) in image.terms() {
                debug_assert_eq!(xi_content(mm), key);
                let next = row_index.len();
                row_index.entry(mm.clone()).or_insert(next);
            }
            images.push(image);
        }
        for (mm, _) in part.terms() {
            let next = row_index.len();
            row_index.entry(mm.clone()).or_insert(next);
        }
        let nrows = row_index.len();
        let to_vec = |p: &SuperPolynomial| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); nrows];
            for (m, cf) in p.terms() {
                v[row_index[m]] = cf.clone();
            }
            v
        };
        let columns: Vec<Vec<Rational>> = images.iter().map(&to_vec).collect();
        let rhs = to_vec(&part);
        let solution = solve_particular(&columns, &rhs).ok_or(IdealError::NoPreimage)?;
        for (coeff, mono) in solution.into_iter().zip(cands) {
            if !coeff.is_zero() {
                out.add_term(mono.clone(), coeff);
            }
        }
    }
    debug_assert_eq!(res.differential(&out), *target);
    Ok(out)
}

/// The xi-part of a monomial, used as a block key.
fn xi_content(m: &SuperMonomial) -> SuperMonomial {
    let mut key = SuperMonomial::unit();
    for (v, e) in &m.even {
        if v.kind == crate::poly::VarKind::Odd {
            key.even.insert(*v, *e);
        }
    }
    key.odd = m.odd.iter().copied().filter(|v| v.kind == crate::poly::VarKind::Odd).collect();
    key
}

/// Convenience: true when the coefficient `c` is a nonnegative integer.
pub fn is_nonneg_integer(c: &Rational) -> bool {
    c.denom().is_one() && !c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::rat;

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s).unwrap()
    }

    fn mono(s: &str) -> SuperMonomial {
        let poly = p(s);
        let (m, _) = poly.terms().next().unwrap();
        m.clone()
    }

    #[test]
    fn grevlex_examples() {
        // deg wins first
        assert_eq!(grevlex_cmp(&mono("x1^3"), &mono("x1*x2")), Ordering::Greater);
        // same degree: smaller exponent in the last differing variable wins
        assert_eq!(grevlex_cmp(&mono("x1*x2"), &mono("x3^2")), Ordering::Greater);
        assert_eq!(grevlex_cmp(&mono("x1^2"), &mono("x1*x2")), Ordering::Greater);
    }

    #[test]
    fn monomial_ideal_normal_form() {
        let ideal = IdealPresentation::new(4, vec![p("x1*x2"), p("x3*x4")]).unwrap();
        assert!(ideal.member(&p("x1*x2*x3 + x1*x3*x4")));
        assert_eq!(ideal.normal_form(&p("x1*x2 + x1")), p("x1"));
        assert!(!ideal.member(&p("x1 + x2")));
    }

    #[test]
    fn lift_roundtrip() {
        let ideal = IdealPresentation::new(4, vec![p("x1*x2"), p("x3*x4")]).unwrap();
        let target = p("x3*x1*x2");
        let cof = ideal.lift(&target).unwrap();
        let mut back = SuperPolynomial::zero();
        for (c, f) in cof.iter().zip(ideal.generators()) {
            back = &back + &c.mul(f);
        }
        assert_eq!(back, target);
        assert_eq!(cof[0], p("x3"));
        assert!(cof[1].is_zero());
        assert!(ideal.lift(&p("0")).is_ok());
        assert!(ideal.lift(&p("x1")).is_err());
    }

    #[test]
    fn buchberger_finds_syzygy_basis() {
        // (x1^2 - x2, x1*x2 - x3): classic example with a nontrivial basis
        let ideal = IdealPresentation::new(3, vec![p("x1^2 - x2"), p("x1*x2 - x3")]).unwrap();
        // x2^2 - x1*x3 = x2*(x1^2 - x2)*(-1) + x1*(x1*x2 - x3) reduced
        assert!(ideal.member(&p("x2^2 - x1*x3")));
        // basis elements reproduce through their lifts
        for (b, lift) in ideal.basis_polys().iter().zip(ideal.basis_lifts()) {
            let mut back = SuperPolynomial::zero();
            for (c, f) in lift.iter().zip(ideal.generators()) {
                back = &back + &c.mul(f);
            }
            assert_eq!(&back, b);
        }
    }

    #[test]
    fn spolys_of_final_basis_reduce_to_zero() {
        let ideal = IdealPresentation::new(3, vec![p("x1^2 - x2"), p("x1*x2 - x3")]).unwrap();
        let basis = ideal.basis_polys();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (mi, _) = leading_term(&basis[i]).unwrap();
                let (mj, _) = leading_term(&basis[j]).unwrap();
                let l = mono_lcm(&mi, &mj);
                let ti = SuperPolynomial::monomial(mono_div(&l, &mi), rat(1));
                let tj = SuperPolynomial::monomial(mono_div(&l, &mj), rat(1));
                let s = &ti.mul(&basis[i]) - &tj.mul(&basis[j]);
                assert!(ideal.member(&s));
            }
        }
    }

    #[test]
    fn z_tensor_for_monomial_ci() {
        let mut c = BTreeMap::new();
        c.insert(vec![1, 2, 3, 4], rat(1));
        let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
        let ideal = IdealPresentation::new(4, vec![p("x1*x2"), p("x3*x4")]).unwrap();
        let z = compute_z(&tensor, &ideal).unwrap();
        // {x2,x3,x4, f1} = -x2*x3*x4 * f1, and the lift lands on f1
        assert_eq!(z.entry_sorted(&[2, 3, 4], 1, 1), p("-x2*x3*x4"));
        assert!(z.entry_sorted(&[2, 3, 4], 1, 2).is_zero());
        // defining property
        for ((t, mu, _), _) in z.entries() {
            let mut args: Vec<SuperPolynomial> =
                t.iter().map(|&i| SuperPolynomial::var(Variable::coord(i))).collect();
            args.push(ideal.generators()[*mu as usize - 1].clone());
            let bracket = tensor.bracket_eval_raw(&args).unwrap();
            let mut rhs = SuperPolynomial::zero();
            for nu in 1..=z.k {
                rhs = &rhs + &z.entry_sorted(t, *mu, nu).mul(&ideal.generators()[nu as usize - 1]);
            }
            assert_eq!(bracket, rhs);
        }
    }

    #[test]
    fn non_nambu_ideal_is_reported() {
        let mut c = BTreeMap::new();
        c.insert(vec![1, 2, 3, 4], rat(1));
        let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
        // (x1 + x3) is not stable under the diagonal bracket
        let ideal = IdealPresentation::new(4, vec![p("x1 + x3")]).unwrap();
        let err = compute_z(&tensor, &ideal).unwrap_err();
        assert!(matches!(err, IdealError::NotNambuIdeal { .. }));
    }

    #[test]
    fn single_generator_diagonal_z() {
        let mut c = BTreeMap::new();
        c.insert(vec![1, 2, 3, 4], rat(1));
        let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
        let ideal = IdealPresentation::new(4, vec![p("x1")]).unwrap();
        let z = compute_z(&tensor, &ideal).unwrap();
        // Z^1_{(i1,i2,i3),1} = c_{i1 i2 i3 1} x_{i1} x_{i2} x_{i3}
        assert_eq!(z.entry_sorted(&[2, 3, 4], 1, 1), p("-x2*x3*x4"));
        assert!(z.entry_sorted(&[1, 2, 3], 1, 1).is_zero());
    }
}
