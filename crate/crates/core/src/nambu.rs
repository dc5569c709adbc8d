//! Nambu-Poisson tensors of arity `m >= 2`: construction, bracket
//! evaluation, fundamental-identity verification, Hamiltonian vector
//! fields and Casimir detection.
//!
//! Coefficients are stored on sorted index tuples only; the full
//! antisymmetric family is recovered through permutation signs. Odd arity
//! is accepted here (the invariant-ring examples need `m = 3`); the
//! perturbation layer rejects it.

use std::collections::BTreeMap;


use crate::ideal::IdealPresentation;
use crate::poly::{permutation_sign, rat, Rational, SuperMonomial, SuperPolynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NambuError {
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(u32),
    #[error("diagonal brackets need even arity, got {0}")]
    OddArity(u32),
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: u32, got: u32 },
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(u32, u32),
    #[error("index tuple {0:?} is not strictly increasing")]
    UnsortedTuple(Vec<u32>),
    #[error("coefficients must be polynomials in the level-0 coordinates")]
    NotCommutative,
    #[error("derivations must be distinct coordinate indices")]
    RepeatedDerivation,
    #[error("need k + m <= n, got k={k}, m={m}, n={n}")]
    TooManyRows { k: u32, m: u32, n: u32 },
    #[error("verification modulo the ideal requires an attached ideal")]
    MissingIdeal,
}

/// Checks that a polynomial lives in `S`, i.e. uses only level-0 `x`s.
fn is_level0_commutative(p: &SuperPolynomial) -> bool {
    p.terms().all(|(m, _)| m.odd.is_empty() && m.even.keys().all(|v| v.level == 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NambuTensor {
    pub n: u32,
    pub m: u32,
    coeffs: BTreeMap<Vec<u32>, SuperPolynomial>,
    pub ideal: Option<IdealPresentation>,
}

/// A Hamiltonian vector field, given by its coefficient on each coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianField {
    pub coeffs: BTreeMap<u32, SuperPolynomial>,
}

impl HamiltonianField {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies the field to a function.
    pub fn apply(&self, g: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (r, c) in &self.coeffs {
            out = &out + &c.mul(&g.left_deriv(&Variable::coord(*r)));
        }
        out
    }
}

/// One violated instance of the coordinate fundamental identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiViolation {
    pub i_tuple: Vec<u32>,
    pub j_tuple: Vec<u32>,
    pub residual: SuperPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiReport {
    pub fix_violations: Vec<FiViolation>,
    pub decomposability_violations: Vec<FiViolation>,
    pub decomposability_checked: bool,
}

impl FiReport {
    pub fn is_empty(&self) -> bool {
        self.fix_violations.is_empty() && self.decomposability_violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exact,
    ModuloIdeal,
}

impl NambuTensor {
    pub fn explicit(
        n: u32,
        m: u32,
        coeffs: BTreeMap<Vec<u32>, SuperPolynomial>,
        ideal: Option<IdealPresentation>,
    ) -> Result<Self, NambuError> {
        if m < 2 {
            return Err(NambuError::ArityTooSmall(m));
        }
        let mut clean = BTreeMap::new();
        for (t, p) in coeffs {
            if t.len() != m as usize || t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(NambuError::UnsortedTuple(t));
            }
            if let Some(&bad) = t.iter().find(|&&i| i < 1 || i > n) {
                return Err(NambuError::IndexOutOfRange(bad, n));
            }
            if !is_level0_commutative(&p) {
                return Err(NambuError::NotCommutative);
            }
            if !p.is_zero() {
                clean.insert(t, p);
            }
        }
        Ok(NambuTensor { n, m, coeffs: clean, ideal })
    }

    pub fn attach_ideal(mut self, ideal: IdealPresentation) -> Self {
        self.ideal = Some(ideal);
        self
    }

    /// The diagonal bracket built from a totally antisymmetric scalar
    /// tensor `c` given on sorted tuples.
    pub fn diagonal(n: u32, m: u32, c: &BTreeMap<Vec<u32>, Rational>) -> Result<Self, NambuError> {
        if !m.is_multiple_of(2) {
            return Err(NambuError::OddArity(m));
        }
        let mut coeffs = BTreeMap::new();
        for (t, scalar) in c {
            let mut p = SuperPolynomial::constant(scalar.clone());
            for &i in t {
                p = p.mul(&SuperPolynomial::var(Variable::coord(i)));
            }
            coeffs.insert(t.clone(), p);
        }
        Self::explicit(n, m, coeffs, None)
    }

    /// Determinantal bracket `{a_1,...,a_m} = g * Det(X^nu(f_mu))` with the
    /// rows `f_1..f_k, a_1..a_m` and pairwise-commuting coordinate
    /// derivations `d/dx_{c_1},...,d/dx_{c_{k+m}}`.
    pub fn determinantal(
        n: u32,
        m: u32,
        g: &SuperPolynomial,
        casimirs: &[SuperPolynomial],
        derivations: &[u32],
    ) -> Result<Self, NambuError> {
        if m < 2 {
            return Err(NambuError::ArityTooSmall(m));
        }
        let k = casimirs.len() as u32;
        if k + m > n {
            return Err(NambuError::TooManyRows { k, m, n });
        }
        if derivations.len() != (k + m) as usize {
            return Err(NambuError::ArityMismatch { expected: k + m, got: derivations.len() as u32 });
        }
        let mut seen = derivations.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(NambuError::RepeatedDerivation);
        }
        if let Some(&bad) = derivations.iter().find(|&&i| i < 1 || i > n) {
            return Err(NambuError::IndexOutOfRange(bad, n));
        }
        if !is_level0_commutative(g) || casimirs.iter().any(|f| !is_level0_commutative(f)) {
            return Err(NambuError::NotCommutative);
        }

        let mut coeffs = BTreeMap::new();
        for t in sorted_tuples(n, m) {
            let mut rows: Vec<Vec<SuperPolynomial>> = Vec::with_capacity((k + m) as usize);
            for f in casimirs {
                rows.push(derivations.iter().map(|&c| f.left_deriv(&Variable::coord(c))).collect());
            }
            for &i in &t {
                rows.push(
                    derivations
                        .iter()
                        .map(|&c| {
                            if c == i {
                                SuperPolynomial::one()
                            } else {
                                SuperPolynomial::zero()
                            }
                        })
                        .collect(),
                );
            }
            let d = determinant(&rows);
            let v = g.mul(&d);
            if !v.is_zero() {
                coeffs.insert(t, v);
            }
        }
        Self::explicit(n, m, coeffs, None)
    }

    /// Outer tensor product: arity `a.m + b.m` on the disjoint union of the
    /// alphabets, `b`'s coordinates shifted up by `a.n`.
    pub fn outer(a: &NambuTensor, b: &NambuTensor) -> Result<Self, NambuError> {
        let n = a.n + b.n;
        let m = a.m + b.m;
        let mut coeffs = BTreeMap::new();
        for (ta, pa) in &a.coeffs {
            for (tb, pb) in &b.coeffs {
                let mut t = ta.clone();
                t.extend(tb.iter().map(|&i| i + a.n));
                // alphabets are disjoint with a's block first, so the sorted
                // tuple is the concatenation and no shuffle sign appears
                coeffs.insert(t, pa.mul(&shift_coords(pb, a.n)));
            }
        }
        Self::explicit(n, m, coeffs, None)
    }

    /// Coefficient on a sorted tuple.
    pub fn coeff_sorted(&self, t: &[u32]) -> SuperPolynomial {
        self.coeffs.get(t).cloned().unwrap_or_else(SuperPolynomial::zero)
    }

    /// Coefficient on an arbitrary tuple, antisymmetrically extended.
    pub fn coeff(&self, t: &[u32]) -> SuperPolynomial {
        let mut idx: Vec<usize> = (0..t.len()).collect();
        idx.sort_by_key(|&i| t[i]);
        let sorted: Vec<u32> = idx.iter().map(|&i| t[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return SuperPolynomial::zero();
        }
        let p = self.coeff_sorted(&sorted);
        // sign of the permutation laying t out in ascending order
        let mut inv = vec![0usize; idx.len()];
        for (pos, &i) in idx.iter().enumerate() {
            inv[i] = pos;
        }
        if permutation_sign(&inv) < 0 {
            -&p
        } else {
            p
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &SuperPolynomial)> {
        self.coeffs.iter()
    }

    /// Evaluates the bracket on `m` polynomials, without ideal reduction.
    pub fn bracket_eval_raw(&self, args: &[SuperPolynomial]) -> Result<SuperPolynomial, NambuError> {
        if args.len() != self.m as usize {
            return Err(NambuError::ArityMismatch { expected: self.m, got: args.len() as u32 });
        }
        let mut out = SuperPolynomial::zero();
        for (t, p) in &self.coeffs {
            let rows: Vec<Vec<SuperPolynomial>> = args
                .iter()
                .map(|g| t.iter().map(|&i| g.left_deriv(&Variable::coord(i))).collect())
                .collect();
            out = &out + &p.mul(&determinant(&rows));
        }
        Ok(out)
    }

    /// Evaluates the bracket, reducing modulo the attached ideal if any.
    pub fn bracket_eval(&self, args: &[SuperPolynomial]) -> Result<SuperPolynomial, NambuError> {
        let raw = self.bracket_eval_raw(args)?;
        Ok(match &self.ideal {
            Some(ideal) => ideal.normal_form(&raw),
            None => raw,
        })
    }

    pub fn hamiltonian_field(&self, args: &[SuperPolynomial]) -> Result<HamiltonianField, NambuError> {
        if args.len() != self.m as usize - 1 {
            return Err(NambuError::ArityMismatch { expected: self.m - 1, got: args.len() as u32 });
        }
        let mut coeffs = BTreeMap::new();
        for r in 1..=self.n {
            let mut full = args.to_vec();
            full.push(SuperPolynomial::var(Variable::coord(r)));
            let v = self.bracket_eval(&full)?;
            if !v.is_zero() {
                coeffs.insert(r, v);
            }
        }
        Ok(HamiltonianField { coeffs })
    }

    /// True when every `{x_{i_1},...,x_{i_{m-1}}, f}` vanishes (or lies in
    /// the attached ideal).
    pub fn is_casimir(&self, f: &SuperPolynomial) -> Result<bool, NambuError> {
        for t in sorted_tuples(self.n, self.m - 1) {
            let mut args: Vec<SuperPolynomial> =
                t.iter().map(|&i| SuperPolynomial::var(Variable::coord(i))).collect();
            args.push(f.clone());
            if !self.bracket_eval(&args)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The multivector `sum_I Pi_I xi^I` over the level-0 alphabet.
    pub fn as_multivector(&self) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (t, p) in &self.coeffs {
            let mut m = SuperMonomial::unit();
            m.odd = t.iter().map(|&i| Variable::xi(i, 0)).collect();
            out = &out + &p.mul(&SuperPolynomial::monomial(m, rat(1)));
        }
        out
    }

    /// Verifies the fundamental identity in coordinates: the differential
    /// condition on all sorted index pairs, plus (for `m > 2`) the
    /// Grassmann-Plücker decomposability relations.
    pub fn check_fundamental_identity(&self, mode: VerifyMode) -> Result<FiReport, NambuError> {
        let reduce = |p: SuperPolynomial| -> Result<SuperPolynomial, NambuError> {
            match mode {
                VerifyMode::Exact => Ok(p),
                VerifyMode::ModuloIdeal => {
                    let ideal = self.ideal.as_ref().ok_or(NambuError::MissingIdeal)?;
                    Ok(ideal.normal_form(&p))
                }
            }
        };
        if mode == VerifyMode::ModuloIdeal && self.ideal.is_none() {
            return Err(NambuError::MissingIdeal);
        }

        let mut report = FiReport::default();
        let m = self.m as usize;

        for i_tuple in sorted_tuples(self.n, self.m - 1) {
            for j_tuple in sorted_tuples(self.n, self.m) {
                let mut lhs = SuperPolynomial::zero();
                let pi_j = self.coeff_sorted(&j_tuple);
                for s in 1..=self.n {
                    let mut it = i_tuple.clone();
                    it.push(s);
                    lhs = &lhs + &self.coeff(&it).mul(&pi_j.left_deriv(&Variable::coord(s)));
                }
                let mut rhs = SuperPolynomial::zero();
                for l in 0..m {
                    let mut it = i_tuple.clone();
                    it.push(j_tuple[l]);
                    let pi_il = self.coeff(&it);
                    if pi_il.is_zero() {
                        continue;
                    }
                    for s in 1..=self.n {
                        let mut jt = j_tuple.clone();
                        jt[l] = s;
                        rhs = &rhs + &self.coeff(&jt).mul(&pi_il.left_deriv(&Variable::coord(s)));
                    }
                }
                let residual = reduce(&lhs - &rhs)?;
                if !residual.is_zero() {
                    report.fix_violations.push(FiViolation {
                        i_tuple: i_tuple.clone(),
                        j_tuple,
                        residual,
                    });
                }
            }
        }

        if self.m > 2 {
            report.decomposability_checked = true;
            for i_tuple in sorted_tuples(self.n, self.m - 1) {
                for j_tuple in sorted_tuples(self.n, self.m + 1) {
                    let mut acc = SuperPolynomial::zero();
                    for (l, &jl) in j_tuple.iter().enumerate() {
                        let mut it = i_tuple.clone();
                        it.push(jl);
                        let a = self.coeff(&it);
                        if a.is_zero() {
                            continue;
                        }
                        let rest: Vec<u32> =
                            j_tuple.iter().enumerate().filter(|&(p, _)| p != l).map(|(_, &v)| v).collect();
                        let term = a.mul(&self.coeff_sorted(&rest));
                        acc = if l % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    let residual = reduce(acc)?;
                    if !residual.is_zero() {
                        report.decomposability_violations.push(FiViolation {
                            i_tuple: i_tuple.clone(),
                            j_tuple,
                            residual,
                        });
                    }
                }
            }
        }

        Ok(report)
    }
}

/// Renames level-0 coordinates `x_i -> x_{i+offset}` (and nothing else).
pub fn shift_coords(p: &SuperPolynomial, offset: u32) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero();
    for (m, c) in p.terms() {
        let mut m2 = SuperMonomial::unit();
        for (v, e) in &m.even {
            let v2 = if v.level == 0 { Variable::coord(v.index + offset) } else { *v };
            m2.even.insert(v2, *e);
        }
        m2.odd = m.odd.clone();
        out.add_term(m2, c.clone());
    }
    out
}

/// All strictly increasing `len`-tuples from `1..=n`.
pub fn sorted_tuples(n: u32, len: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len as usize);
    fn rec(n: u32, len: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining = len - cur.len();
        for i in start..=n.saturating_sub(remaining as u32 - 1) {
            cur.push(i);
            rec(n, len, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, len as usize, 1, &mut cur, &mut out);
    out
}

/// Determinant of a square matrix of commuting polynomials, by dynamic
/// programming over column subsets.
pub fn determinant(rows: &[Vec<SuperPolynomial>]) -> SuperPolynomial {
    let s = rows.len();
    if s == 0 {
        return SuperPolynomial::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == s));
    let mut layer: BTreeMap<u64, SuperPolynomial> = BTreeMap::new();
    layer.insert(0, SuperPolynomial::one());
    for row in rows {
        let mut next: BTreeMap<u64, SuperPolynomial> = BTreeMap::new();
        for (mask, acc) in &layer {
            if acc.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let below = (mask >> (c + 1)).count_ones();
                let term = acc.mul(entry);
                let term = if below % 2 == 1 { -&term } else { term };
                let key = mask | (1 << c);
                match next.get_mut(&key) {
                    Some(v) => *v = &*v + &term,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        layer = next;
    }
    layer.remove(&((1u64 << s) - 1)).unwrap_or_else(SuperPolynomial::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s).unwrap()
    }

    fn diagonal_m4() -> NambuTensor {
        let mut c = BTreeMap::new();
        c.insert(vec![1, 2, 3, 4], rat(1));
        NambuTensor::diagonal(4, 4, &c).unwrap()
    }

    #[test]
    fn diagonal_definition() {
        let t = diagonal_m4();
        assert_eq!(t.coeff_sorted(&[1, 2, 3, 4]), p("x1*x2*x3*x4"));
        let args = [p("x1"), p("x2"), p("x3"), p("x4")];
        assert_eq!(t.bracket_eval(&args).unwrap(), p("x1*x2*x3*x4"));
    }

    #[test]
    fn antisymmetric_coefficient_lookup() {
        let t = diagonal_m4();
        assert_eq!(t.coeff(&[2, 1, 3, 4]), p("-x1*x2*x3*x4"));
        assert!(t.coeff(&[1, 1, 3, 4]).is_zero());
    }

    #[test]
    fn repeated_argument_kills_bracket() {
        let t = diagonal_m4();
        let g = p("x1 + x2^2");
        let h = p("x3");
        let k = p("x4");
        let v = t.bracket_eval(&[g.clone(), g, h, k]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn monomial_hamiltonian_action() {
        // {x1,x2,x3, x4^2} = 2*x1*x2*x3 * x4^2
        let t = diagonal_m4();
        let v = t
            .bracket_eval(&[p("x1"), p("x2"), p("x3"), p("x4^2")])
            .unwrap();
        assert_eq!(v, p("2*x1*x2*x3*x4^2"));
    }

    #[test]
    fn diagonal_passes_fi() {
        let t = diagonal_m4();
        let r = t.check_fundamental_identity(VerifyMode::Exact).unwrap();
        assert!(r.is_empty());
        assert!(r.decomposability_checked);
    }

    #[test]
    fn perturbed_tensor_fails_fi() {
        // nonzero entries x1 on (1,2,3,4) and x5 on (1,2,3,5)
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![1, 2, 3, 4], p("x1"));
        coeffs.insert(vec![1, 2, 3, 5], p("x5"));
        let t = NambuTensor::explicit(5, 4, coeffs, None).unwrap();
        let r = t.check_fundamental_identity(VerifyMode::Exact).unwrap();
        assert!(!r.is_empty());
        assert!(!r.fix_violations.is_empty());
    }

    #[test]
    fn poisson_case_skips_decomposability() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![1, 2], p("1"));
        let t = NambuTensor::explicit(2, 2, coeffs, None).unwrap();
        let r = t.check_fundamental_identity(VerifyMode::Exact).unwrap();
        assert!(r.is_empty());
        assert!(!r.decomposability_checked);
    }

    #[test]
    fn nambu_jacobian_of_identity() {
        let t = NambuTensor::determinantal(3, 3, &p("1"), &[], &[1, 2, 3]).unwrap();
        assert_eq!(t.bracket_eval(&[p("x1"), p("x2"), p("x3")]).unwrap(), p("1"));
    }

    #[test]
    fn casimirs_of_determinantal_bracket() {
        let f1 = p("x2*x6 - x3*x5");
        let f2 = p("x3*x4 - x1*x6");
        let f3 = p("x1*x5 - x2*x4");
        let t = NambuTensor::determinantal(7, 4, &p("1"), &[f1.clone(), f2.clone(), f3.clone()], &[1, 2, 3, 4, 5, 6, 7])
            .unwrap();
        for f in [f1, f2, f3] {
            assert!(t.is_casimir(&f).unwrap());
        }
        assert!(!t.is_casimir(&p("x1")).unwrap());
    }

    #[test]
    fn outer_product_of_symplectic_planes() {
        let mut c = BTreeMap::new();
        c.insert(vec![1, 2], p("1"));
        let plane = NambuTensor::explicit(2, 2, c, None).unwrap();
        let t = NambuTensor::outer(&plane, &plane).unwrap();
        assert_eq!(t.n, 4);
        assert_eq!(t.m, 4);
        assert_eq!(t.coeff_sorted(&[1, 2, 3, 4]), p("1"));
        assert_eq!(t.entries().count(), 1);
        assert!(t.check_fundamental_identity(VerifyMode::Exact).unwrap().is_empty());
    }

    #[test]
    fn hamiltonian_field_with_repeated_args_is_zero() {
        let t = diagonal_m4();
        let f = t.hamiltonian_field(&[p("x1"), p("x1"), p("x3")]).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn product_of_all_coordinates_is_not_casimir() {
        let t = diagonal_m4();
        assert!(!t.is_casimir(&p("x1*x2*x3*x4")).unwrap());
    }
}
