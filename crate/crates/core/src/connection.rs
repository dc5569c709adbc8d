//! gl_k-valued multivector calculus: the matrix encoding of the Z tensors,
//! the super Lie bracket on matrix multivectors, the Maurer-Cartan defect
//! and the curvature of the induced connection on the conormal module.
//!
//! All arities here are even; the invariant-ring examples of odd arity are
//! rejected up front.


use crate::ideal::{IdealError, IdealPresentation, ZTensor};
use crate::nambu::{sorted_tuples, NambuError, NambuTensor};
use crate::poly::{Homogeneity, Parity, SuperMonomial, SuperPolynomial, Variable};
use crate::schouten::delta_nambu;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConnectionError {
    #[error("Maurer-Cartan machinery requires even arity, got {0}")]
    OddArity(u32),
    #[error("matrix multivectors must have homogeneous-parity entries")]
    MixedParity,
    #[error("matrix dimensions do not match: {0} vs {1}")]
    Dimension(usize, usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Tensor(#[from] NambuError),
}

/// A `k x k` matrix of level-0 multivectors; `entries[nu][mu]` is the
/// component mapping the `mu`-th generator to the `nu`-th.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixMultiVector {
    pub k: usize,
    entries: Vec<Vec<SuperPolynomial>>,
}

impl MatrixMultiVector {
    pub fn zero(k: usize) -> Self {
        MatrixMultiVector { k, entries: vec![vec![SuperPolynomial::zero(); k]; k] }
    }

    pub fn from_entries(entries: Vec<Vec<SuperPolynomial>>) -> Result<Self, ConnectionError> {
        let k = entries.len();
        if entries.iter().any(|row| row.len() != k) {
            return Err(ConnectionError::Dimension(k, 0));
        }
        Ok(MatrixMultiVector { k, entries })
    }

    pub fn entry(&self, nu: usize, mu: usize) -> &SuperPolynomial {
        &self.entries[nu][mu]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|p| p.is_zero()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ConnectionError> {
        if self.k != other.k {
            return Err(ConnectionError::Dimension(self.k, other.k));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(MatrixMultiVector { k: self.k, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ConnectionError> {
        if self.k != other.k {
            return Err(ConnectionError::Dimension(self.k, other.k));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(MatrixMultiVector { k: self.k, entries })
    }

    /// Common parity of the nonzero entries.
    pub fn parity(&self) -> Result<Option<Parity>, ConnectionError> {
        let mut seen: Option<Parity> = None;
        for row in &self.entries {
            for e in row {
                match e.degrees().parity {
                    Homogeneity::Any => {}
                    Homogeneity::Value(p) => match seen {
                        None => seen = Some(p),
                        Some(q) if q == p => {}
                        Some(_) => return Err(ConnectionError::MixedParity),
                    },
                    Homogeneity::Mixed => return Err(ConnectionError::MixedParity),
                }
            }
        }
        Ok(seen)
    }

    /// Applies a map entrywise.
    pub fn map<F: Fn(&SuperPolynomial) -> SuperPolynomial>(&self, f: F) -> Self {
        let entries = self.entries.iter().map(|row| row.iter().map(&f).collect()).collect();
        MatrixMultiVector { k: self.k, entries }
    }

    /// Matrix action on a column vector of polynomials.
    pub fn apply(&self, v: &[SuperPolynomial]) -> Result<Vec<SuperPolynomial>, ConnectionError> {
        if v.len() != self.k {
            return Err(ConnectionError::Dimension(self.k, v.len()));
        }
        Ok((0..self.k)
            .map(|nu| {
                let mut acc = SuperPolynomial::zero();
                for (mu, vm) in v.iter().enumerate() {
                    acc = &acc + &self.entries[nu][mu].mul(vm);
                }
                acc
            })
            .collect())
    }
}

/// Packs a cofactor tensor into its matrix multivector, normalizing the
/// full antisymmetric family over sorted tuples.
pub fn z_element(z: &ZTensor) -> MatrixMultiVector {
    let k = z.k as usize;
    let mut entries = vec![vec![SuperPolynomial::zero(); k]; k];
    for ((tuple, mu, nu), poly) in z.entries() {
        let mut mono = SuperMonomial::unit();
        mono.odd = tuple.iter().map(|&i| Variable::xi(i, 0)).collect();
        let contribution = poly.mul(&SuperPolynomial::monomial(mono, crate::poly::rat(1)));
        let slot = &mut entries[*nu as usize - 1][*mu as usize - 1];
        *slot = &*slot + &contribution;
    }
    MatrixMultiVector { k, entries }
}

/// Super Lie bracket on matrix multivectors:
/// `[P,Q]^nu_mu = sum_l P^nu_l Q^l_mu - (-1)^{|P||Q|} Q^nu_l P^l_mu`.
pub fn lie_bracket(p: &MatrixMultiVector, q: &MatrixMultiVector) -> Result<MatrixMultiVector, ConnectionError> {
    if p.k != q.k {
        return Err(ConnectionError::Dimension(p.k, q.k));
    }
    let sign_flip = matches!((p.parity()?, q.parity()?), (Some(Parity::Odd), Some(Parity::Odd)));
    let k = p.k;
    let mut entries = vec![vec![SuperPolynomial::zero(); k]; k];
    #[allow(clippy::needless_range_loop)]
    for nu in 0..k {
        for mu in 0..k {
            let mut acc = SuperPolynomial::zero();
            for lam in 0..k {
                acc = &acc + &p.entries[nu][lam].mul(&q.entries[lam][mu]);
                let second = q.entries[nu][lam].mul(&p.entries[lam][mu]);
                acc = if sign_flip { &acc + &second } else { &acc - &second };
            }
            entries[nu][mu] = acc;
        }
    }
    Ok(MatrixMultiVector { k, entries })
}

/// Entrywise Nambu differential of a matrix multivector.
pub fn delta_matrix(tensor: &NambuTensor, m: &MatrixMultiVector) -> MatrixMultiVector {
    m.map(|e| delta_nambu(tensor, e))
}

/// The Maurer-Cartan defect `delta(Z) - [Z, Z]`.
pub fn mc_defect(tensor: &NambuTensor, z: &ZTensor) -> Result<MatrixMultiVector, ConnectionError> {
    if !tensor.m.is_multiple_of(2) {
        return Err(ConnectionError::OddArity(tensor.m));
    }
    let zm = z_element(z);
    let bracket = lie_bracket(&zm, &zm)?;
    delta_matrix(tensor, &zm).sub(&bracket)
}

/// Splits a level-0 multivector into its coefficient polynomials, keyed by
/// the `xi` part.
fn coefficients_by_xi(p: &SuperPolynomial) -> Vec<(Vec<Variable>, SuperPolynomial)> {
    let mut map: std::collections::BTreeMap<Vec<Variable>, SuperPolynomial> = Default::default();
    for (m, c) in p.terms() {
        let mut body = SuperMonomial::unit();
        body.even = m.even.clone();
        map.entry(m.odd.clone())
            .or_insert_with(SuperPolynomial::zero)
            .add_term(body, c.clone());
    }
    map.into_iter().collect()
}

/// Checks the containment `(delta(Z) - [Z,Z]) f` in `I^2`: every
/// coefficient polynomial of every entry of the defect applied to the
/// generator column must have normal form zero modulo the square of the
/// ideal.
pub fn mc_check(
    tensor: &NambuTensor,
    z: &ZTensor,
    ideal: &IdealPresentation,
) -> Result<bool, ConnectionError> {
    let defect = mc_defect(tensor, z)?;
    let gens: Vec<SuperPolynomial> = ideal.generators().to_vec();
    let applied = defect.apply(&gens)?;
    let square = ideal.square()?;
    for component in applied {
        for (_, coeff) in coefficients_by_xi(&component) {
            if !square.member(&coeff) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Curvature of the connection defined by the Z tensors, evaluated on the
/// index pair `(a, b)` of sorted (m-1)-tuples and the element
/// `v = sum v^mu f_mu`: reported as the vector of normal forms modulo
/// `I^2` of its generator coefficients.
pub fn curvature_at(
    tensor: &NambuTensor,
    z: &ZTensor,
    ideal: &IdealPresentation,
    square: &IdealPresentation,
    a: &[u32],
    b: &[u32],
    v: &[SuperPolynomial],
) -> Result<Vec<SuperPolynomial>, ConnectionError> {
    if !tensor.m.is_multiple_of(2) {
        return Err(ConnectionError::OddArity(tensor.m));
    }
    let k = ideal.generators().len();
    if v.len() != k {
        return Err(ConnectionError::Dimension(k, v.len()));
    }
    let field = |t: &[u32], g: &SuperPolynomial| -> Result<SuperPolynomial, ConnectionError> {
        let mut acc = SuperPolynomial::zero();
        for r in 1..=tensor.n {
            let mut it = t.to_vec();
            it.push(r);
            acc = &acc + &tensor.coeff(&it).mul(&g.left_deriv(&Variable::coord(r)));
        }
        Ok(acc)
    };
    let mut out = Vec::with_capacity(k);
    for nu in 1..=k as u32 {
        let mut acc = SuperPolynomial::zero();
        for mu in 1..=k as u32 {
            // X_a(Z_{b,mu}^nu) - X_b(Z_{a,mu}^nu)
            let mut w = field(a, &z_entry(z, b, mu, nu))?;
            w = &w - &field(b, &z_entry(z, a, mu, nu))?;
            // - sum_{r,l} dPi_{a,b_l}/dx_r * Z_{b: l->r, mu}^nu
            for (l, &bl) in b.iter().enumerate() {
                let mut at = a.to_vec();
                at.push(bl);
                let pi = tensor.coeff(&at);
                if pi.is_zero() {
                    continue;
                }
                for r in 1..=tensor.n {
                    let d = pi.left_deriv(&Variable::coord(r));
                    if d.is_zero() {
                        continue;
                    }
                    let mut bt = b.to_vec();
                    bt[l] = r;
                    w = &w - &d.mul(&z_entry(z, &bt, mu, nu));
                }
            }
            // - (Z_a Z_b - Z_b Z_a)^nu_mu
            for lam in 1..=k as u32 {
                let first = z_entry(z, a, lam, nu).mul(&z_entry(z, b, mu, lam));
                let second = z_entry(z, b, lam, nu).mul(&z_entry(z, a, mu, lam));
                w = &w - &(&first - &second);
            }
            acc = &acc + &w.mul(&v[mu as usize - 1]);
        }
        out.push(square.normal_form(&acc));
    }
    Ok(out)
}

/// Antisymmetric lookup of a Z entry on a possibly unsorted tuple.
fn z_entry(z: &ZTensor, tuple: &[u32], mu: u32, nu: u32) -> SuperPolynomial {
    let mut idx: Vec<usize> = (0..tuple.len()).collect();
    idx.sort_by_key(|&i| tuple[i]);
    let sorted: Vec<u32> = idx.iter().map(|&i| tuple[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return SuperPolynomial::zero();
    }
    let mut inv = vec![0usize; idx.len()];
    for (pos, &i) in idx.iter().enumerate() {
        inv[i] = pos;
    }
    let p = z.entry_sorted(&sorted, mu, nu);
    if crate::poly::permutation_sign(&inv) < 0 {
        -&p
    } else {
        p
    }
}

/// Evaluates the curvature on all sorted index pairs; true when every value
/// vanishes modulo `I^2`.
pub fn curvature_vanishes(
    tensor: &NambuTensor,
    z: &ZTensor,
    ideal: &IdealPresentation,
    v: &[SuperPolynomial],
) -> Result<bool, ConnectionError> {
    let square = ideal.square()?;
    let tuples = sorted_tuples(tensor.n, tensor.m - 1);
    for (ai, a) in tuples.iter().enumerate() {
        for b in tuples.iter().skip(ai + 1) {
            let values = curvature_at(tensor, z, ideal, &square, a, b, v)?;
            if values.iter().any(|p| !p.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
