//! Shrinking property tests for the polynomial core. The seeded suites in
//! `properties.rs` cover the bracket layers; these target the raw algebra
//! where proptest's minimization is most useful.

use proptest::prelude::*;

use nambu::parse::parse_poly;
use nambu::poly::{rat, Homogeneity, Parity, SuperMonomial, SuperPolynomial, Variable};

fn variables() -> Vec<Variable> {
    vec![
        Variable::coord(1),
        Variable::coord(2),
        Variable::xi(1, 0),
        Variable::xi(2, 0),
        Variable::x(1, 1),
        Variable::xi(1, 1),
    ]
}

fn arb_monomial() -> impl Strategy<Value = SuperMonomial> {
    proptest::collection::vec(0u32..3, 6).prop_map(|exps| {
        let mut m = SuperMonomial::unit();
        for (v, e) in variables().into_iter().zip(exps) {
            match v.parity() {
                Parity::Odd => {
                    if e % 2 == 1 {
                        m.odd.push(v);
                    }
                }
                Parity::Even => {
                    if e > 0 {
                        m.even.insert(v, e);
                    }
                }
            }
        }
        m.odd.sort();
        m
    })
}

fn arb_poly() -> impl Strategy<Value = SuperPolynomial> {
    proptest::collection::vec((arb_monomial(), -4i64..=4), 0..4).prop_map(|terms| {
        let mut p = SuperPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, rat(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
    }

    #[test]
    fn rendering_round_trips(a in arb_poly()) {
        let text = a.canonical_text();
        prop_assert_eq!(parse_poly(&text).unwrap(), a);
    }

    #[test]
    fn supercommutativity_with_koszul_sign(a in arb_poly(), b in arb_poly()) {
        let (pa, pb) = (a.degrees().parity, b.degrees().parity);
        if let (Homogeneity::Value(pa), Homogeneity::Value(pb)) = (pa, pb) {
            let flipped = if pa == Parity::Odd && pb == Parity::Odd {
                -&b.mul(&a)
            } else {
                b.mul(&a)
            };
            prop_assert_eq!(a.mul(&b), flipped);
        }
    }

    #[test]
    fn homogeneous_parts_partition_the_polynomial(a in arb_poly()) {
        let mut sum = SuperPolynomial::zero();
        for d in a.cohdeg_support() {
            sum = &sum + &a.cohdeg_part(d);
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn derivative_kills_constants_and_lowers_degree(a in arb_poly()) {
        for v in variables() {
            let d = a.left_deriv(&v);
            if !d.is_zero() {
                let before = a.degrees().cohomological;
                let after = d.degrees().cohomological;
                if let (Homogeneity::Value(x), Homogeneity::Value(y)) = (before, after) {
                    prop_assert_eq!(y, x - v.cohdeg());
                }
            }
        }
    }
}
