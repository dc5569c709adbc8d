//! Schouten bracket on multivector fields and the Nambu-cohomology
//! differential.
//!
//! The bracket is computed once over the full variable alphabet by the
//! left/right-derivative coordinate formula; restricted to level-0 input it
//! is the classical bracket on `S[xi1,...,xin]`. It has cohomological degree
//! -1 and satisfies the Gerstenhaber axioms, normalized by
//! `[[xi_i, x_j]] = delta_ij`.

use std::collections::BTreeSet;

use crate::nambu::NambuTensor;
use crate::poly::{SuperPolynomial, VarKind, Variable};

/// The Schouten bracket `[[x, y]]`.
pub fn schouten(x: &SuperPolynomial, y: &SuperPolynomial) -> SuperPolynomial {
    let mut pairs: BTreeSet<(u32, u32)> = BTreeSet::new();
    for p in [x, y] {
        for (m, _) in p.terms() {
            for (v, _) in m.vars() {
                pairs.insert((v.level, v.index));
            }
        }
    }
    let mut out = SuperPolynomial::zero();
    for (level, index) in pairs {
        let xv = Variable { level, kind: VarKind::Even, index };
        let xiv = Variable { level, kind: VarKind::Odd, index };
        let a = x.right_deriv(&xiv);
        if !a.is_zero() {
            out = &out + &a.mul(&y.left_deriv(&xv));
        }
        let b = x.right_deriv(&xv);
        if !b.is_zero() {
            out = &out - &b.mul(&y.left_deriv(&xiv));
        }
    }
    out
}

/// The Nambu-cohomology differential `delta(Y) = [[Pi, Y]]` for the
/// multivector encoding of the tensor.
pub fn delta_nambu(tensor: &NambuTensor, y: &SuperPolynomial) -> SuperPolynomial {
    schouten(&tensor.as_multivector(), y)
}
