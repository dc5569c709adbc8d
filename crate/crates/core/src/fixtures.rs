//! Built-in example problems used by the command-line `examples` command
//! and by the test suites. Each constructor returns exact data; expected
//! values that admit an independent computation were cross-checked against
//! one before being frozen here.

use std::collections::BTreeMap;

use crate::ideal::IdealPresentation;
use crate::nambu::NambuTensor;
use crate::parse::parse_poly;
use crate::poly::{rat, SuperPolynomial};
use crate::resolvent::{AdjoinedVar, Level, ResolventTruncation};

pub fn p(s: &str) -> SuperPolynomial {
    parse_poly(s).unwrap_or_else(|e| panic!("fixture polynomial '{s}': {e}"))
}

fn unit_weights(n: u32) -> BTreeMap<u32, i64> {
    (1..=n).map(|i| (i, 1)).collect()
}

/// Complete intersection of two monomials in dimension 4 with the diagonal
/// arity-4 bracket; the recursion terminates after stage 3.
pub struct CiMonomial {
    pub tensor: NambuTensor,
    pub ideal: IdealPresentation,
    pub resolvent: ResolventTruncation,
    /// Canonical text of the expected first three stages.
    pub expected_stages: [&'static str; 3],
}

pub fn ci_monomial() -> CiMonomial {
    let ideal = IdealPresentation::new(4, vec![p("x1*x2"), p("x3*x4")]).unwrap();
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(1));
    let tensor = NambuTensor::diagonal(4, 4, &c).unwrap().attach_ideal(ideal.clone());
    let koszul = ResolventTruncation::koszul(&ideal, Some(&unit_weights(4))).unwrap();
    let (resolvent, _) = koszul.tate_extend(7, 12).unwrap();
    CiMonomial {
        tensor,
        ideal,
        resolvent,
        expected_stages: [
            "1 * x1_0*x2_0*x3_0*x4_0*xi1_0*xi2_0*xi3_0*xi4_0",
            "-1 * x1_0*x2_0*x3_0*x2_1*xi1_0*xi2_0*xi3_0*xi2_1 \
             + 1 * x1_0*x2_0*x4_0*x2_1*xi1_0*xi2_0*xi4_0*xi2_1 \
             - 1 * x1_0*x3_0*x4_0*x1_1*xi1_0*xi3_0*xi4_0*xi1_1 \
             + 1 * x2_0*x3_0*x4_0*x1_1*xi2_0*xi3_0*xi4_0*xi1_1",
            "-1 * x1_0*x3_0*x1_1*x2_1*xi1_0*xi3_0*xi1_1*xi2_1 \
             + 1 * x1_0*x4_0*x1_1*x2_1*xi1_0*xi4_0*xi1_1*xi2_1 \
             + 1 * x2_0*x3_0*x1_1*x2_1*xi2_0*xi3_0*xi1_1*xi2_1 \
             - 1 * x2_0*x4_0*x1_1*x2_1*xi2_0*xi4_0*xi1_1*xi2_1",
        ],
    }
}

/// Non-complete intersection of two monomials in dimension 4 with the same
/// diagonal bracket; the resolvent needs a Tate extension.
pub struct NonCiMonomial {
    pub tensor: NambuTensor,
    pub ideal: IdealPresentation,
    pub koszul: ResolventTruncation,
}

pub fn non_ci_monomial() -> NonCiMonomial {
    let ideal = IdealPresentation::new(4, vec![p("x1^2"), p("x1*x2")]).unwrap();
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(1));
    let tensor = NambuTensor::diagonal(4, 4, &c).unwrap().attach_ideal(ideal.clone());
    let koszul = ResolventTruncation::koszul(&ideal, Some(&unit_weights(4))).unwrap();
    NonCiMonomial { tensor, ideal, koszul }
}

/// Angular-momentum relations in dimension 7: the cross product of two
/// coordinate triples, with the arity-4 determinantal bracket having the
/// three relations as Casimirs.
pub struct AngularMomentum {
    pub tensor: NambuTensor,
    pub ideal: IdealPresentation,
    /// The published resolvent truncation through level 4.
    pub resolvent: ResolventTruncation,
    /// Canonical text of the expected first stage (36 monomials).
    pub expected_pi1: String,
    /// The published fourth correction, used for relation-level checks.
    pub published_pi4: SuperPolynomial,
}

pub fn angular_momentum() -> AngularMomentum {
    let f1 = p("x2*x6 - x3*x5");
    let f2 = p("x3*x4 - x1*x6");
    let f3 = p("x1*x5 - x2*x4");
    let ideal = IdealPresentation::new(7, vec![f1.clone(), f2.clone(), f3.clone()]).unwrap();
    let tensor = NambuTensor::determinantal(7, 4, &p("1"), &[f1, f2, f3], &[1, 2, 3, 4, 5, 6, 7])
        .unwrap()
        .attach_ideal(ideal.clone());

    let lvl = |vars: Vec<(u32, i64, &str)>| Level {
        vars: vars
            .into_iter()
            .map(|(index, weight, f)| AdjoinedVar { index, weight, image: p(f) })
            .collect(),
    };
    let mut grading = crate::poly::InternalGrading::new();
    for i in 1..=7 {
        grading.set(crate::poly::Variable::coord(i), 1);
    }
    for (l, count, w) in [(1u32, 3u32, 2i64), (2, 2, 3), (3, 3, 4), (4, 6, 5)] {
        for j in 1..=count {
            grading.set(crate::poly::Variable::x(j, l), w);
        }
    }
    let resolvent = ResolventTruncation::from_levels(
        7,
        Some(grading),
        vec![
            lvl(vec![(1, 2, "x2*x6 - x3*x5"), (2, 2, "x3*x4 - x1*x6"), (3, 2, "x1*x5 - x2*x4")]),
            lvl(vec![
                (1, 3, "x4*x1_1 + x5*x2_1 + x6*x3_1"),
                (2, 3, "x1*x1_1 + x2*x2_1 + x3*x3_1"),
            ]),
            lvl(vec![
                (1, 4, "x1_1*x2_1 + x3*x1_2 - x6*x2_2"),
                (2, 4, "-x1_1*x3_1 + x2*x1_2 - x5*x2_2"),
                (3, 4, "x2_1*x3_1 + x1*x1_2 - x4*x2_2"),
            ]),
            lvl(vec![
                (1, 5, "x1_1*x1_2 + x5*x1_3 - x6*x2_3"),
                (2, 5, "x1_1*x2_2 + x2*x1_3 - x3*x2_3"),
                (3, 5, "-x2_1*x1_2 + x4*x1_3 - x6*x3_3"),
                (4, 5, "x3_1*x1_2 + x4*x2_3 - x5*x3_3"),
                (5, 5, "-x2_1*x2_2 + x1*x1_3 - x3*x3_3"),
                (6, 5, "x3_1*x2_2 + x1*x2_3 - x2*x3_3"),
            ]),
        ],
    )
    .unwrap();

    let expected_pi1 = {
        // the tensor entries, laid out in canonical order
        let terms = [
            "-x1_0^2*x5_0*xi1_0*xi2_0*xi4_0*xi7_0",
            "+x1_0*x2_0*x4_0*xi1_0*xi2_0*xi4_0*xi7_0",
            "-x1_0*x2_0*x5_0*xi1_0*xi2_0*xi5_0*xi7_0",
            "+x2_0^2*x4_0*xi1_0*xi2_0*xi5_0*xi7_0",
            "-x1_0*x3_0*x5_0*xi1_0*xi2_0*xi6_0*xi7_0",
            "+x2_0*x3_0*x4_0*xi1_0*xi2_0*xi6_0*xi7_0",
            "-x1_0^2*x6_0*xi1_0*xi3_0*xi4_0*xi7_0",
            "+x1_0*x3_0*x4_0*xi1_0*xi3_0*xi4_0*xi7_0",
            "-x1_0*x2_0*x6_0*xi1_0*xi3_0*xi5_0*xi7_0",
            "+x2_0*x3_0*x4_0*xi1_0*xi3_0*xi5_0*xi7_0",
            "-x1_0*x3_0*x6_0*xi1_0*xi3_0*xi6_0*xi7_0",
            "+x3_0^2*x4_0*xi1_0*xi3_0*xi6_0*xi7_0",
            "+x1_0*x4_0*x5_0*xi1_0*xi4_0*xi5_0*xi7_0",
            "-x2_0*x4_0^2*xi1_0*xi4_0*xi5_0*xi7_0",
            "+x1_0*x4_0*x6_0*xi1_0*xi4_0*xi6_0*xi7_0",
            "-x3_0*x4_0^2*xi1_0*xi4_0*xi6_0*xi7_0",
            "+x2_0*x4_0*x6_0*xi1_0*xi5_0*xi6_0*xi7_0",
            "-x3_0*x4_0*x5_0*xi1_0*xi5_0*xi6_0*xi7_0",
            "-x1_0*x2_0*x6_0*xi2_0*xi3_0*xi4_0*xi7_0",
            "+x1_0*x3_0*x5_0*xi2_0*xi3_0*xi4_0*xi7_0",
            "-x2_0^2*x6_0*xi2_0*xi3_0*xi5_0*xi7_0",
            "+x2_0*x3_0*x5_0*xi2_0*xi3_0*xi5_0*xi7_0",
            "-x2_0*x3_0*x6_0*xi2_0*xi3_0*xi6_0*xi7_0",
            "+x3_0^2*x5_0*xi2_0*xi3_0*xi6_0*xi7_0",
            "+x1_0*x5_0^2*xi2_0*xi4_0*xi5_0*xi7_0",
            "-x2_0*x4_0*x5_0*xi2_0*xi4_0*xi5_0*xi7_0",
            "+x1_0*x5_0*x6_0*xi2_0*xi4_0*xi6_0*xi7_0",
            "-x3_0*x4_0*x5_0*xi2_0*xi4_0*xi6_0*xi7_0",
            "+x2_0*x5_0*x6_0*xi2_0*xi5_0*xi6_0*xi7_0",
            "-x3_0*x5_0^2*xi2_0*xi5_0*xi6_0*xi7_0",
            "+x1_0*x5_0*x6_0*xi3_0*xi4_0*xi5_0*xi7_0",
            "-x2_0*x4_0*x6_0*xi3_0*xi4_0*xi5_0*xi7_0",
            "+x1_0*x6_0^2*xi3_0*xi4_0*xi6_0*xi7_0",
            "-x3_0*x4_0*x6_0*xi3_0*xi4_0*xi6_0*xi7_0",
            "+x2_0*x6_0^2*xi3_0*xi5_0*xi6_0*xi7_0",
            "-x3_0*x5_0*x6_0*xi3_0*xi5_0*xi6_0*xi7_0",
        ];
        p(&terms.concat()).canonical_text()
    };

    // the published fourth correction. Transcription repairs: a mangled
    // xi6_0, a stray parenthesis, and one dropped monomial
    // (-x2*x3*x1_2*xi3*xi5*xi7*xi2_2, lost at a display line break); with
    // the term restored the correction satisfies its defining relation
    // exactly, without it the residual is x2*x3 times a level-2 image
    let published_pi4 = p(&[
        "-x1^2*x1_2*xi1*xi4*xi7*xi2_2",
        "-x1*x2*x1_2*xi1*xi5*xi7*xi2_2",
        "-x1*x2*x1_2*xi2*xi4*xi7*xi2_2",
        "-x1*x3*x1_2*xi1*xi6*xi7*xi2_2",
        "-x1*x3*x1_2*xi3*xi4*xi7*xi2_2",
        "-x1*x4*x1_2*xi1*xi4*xi7*xi1_2",
        "+x1*x4*x2_2*xi1*xi4*xi7*xi2_2",
        "-x1*x5*x1_2*xi2*xi4*xi7*xi1_2",
        "-x1*x5*x1_2*xi4*xi5*xi7*xi2_2",
        "+x1*x5*x2_2*xi1*xi2*xi7*xi1_2",
        "+x1*x5*x2_2*xi2*xi4*xi7*xi2_2",
        "-x1*x6*x1_2*xi3*xi4*xi7*xi1_2",
        "-x1*x6*x1_2*xi4*xi6*xi7*xi2_2",
        "+x1*x6*x2_2*xi1*xi3*xi7*xi1_2",
        "+x1*x6*x2_2*xi3*xi4*xi7*xi2_2",
        "-x2^2*x1_2*xi2*xi5*xi7*xi2_2",
        "-x2*x3*x1_2*xi2*xi6*xi7*xi2_2",
        "-x2*x3*x1_2*xi3*xi5*xi7*xi2_2",
        "-x2*x4*x1_2*xi1*xi5*xi7*xi1_2",
        "+x2*x4*x1_2*xi4*xi5*xi7*xi2_2",
        "-x2*x4*x2_2*xi1*xi2*xi7*xi1_2",
        "+x2*x4*x2_2*xi1*xi5*xi7*xi2_2",
        "-x2*x5*x1_2*xi2*xi5*xi7*xi1_2",
        "+x2*x5*x2_2*xi2*xi5*xi7*xi2_2",
        "-x2*x6*x1_2*xi3*xi5*xi7*xi1_2",
        "-x2*x6*x1_2*xi5*xi6*xi7*xi2_2",
        "+x2*x6*x2_2*xi2*xi3*xi7*xi1_2",
        "+x2*x6*x2_2*xi3*xi5*xi7*xi2_2",
        "-x3^2*x1_2*xi3*xi6*xi7*xi2_2",
        "+x3*x4*x1_2*xi4*xi6*xi7*xi2_2",
        "-x3*x4*x2_2*xi1*xi3*xi7*xi1_2",
        "+x3*x4*x2_2*xi1*xi6*xi7*xi2_2",
        "-x3*x5*x1_2*xi2*xi6*xi7*xi1_2",
        "+x3*x5*x1_2*xi5*xi6*xi7*xi2_2",
        "-x3*x5*x2_2*xi2*xi3*xi7*xi1_2",
        "+x3*x5*x2_2*xi2*xi6*xi7*xi2_2",
        "-x3*x6*x1_2*xi3*xi6*xi7*xi1_2",
        "+x3*x6*x2_2*xi3*xi6*xi7*xi2_2",
        "+x4*x1_1*x2_1*xi1*xi6*xi7*xi1_2",
        "+x4^2*x2_2*xi1*xi4*xi7*xi1_2",
        "+x4*x5*x2_2*xi1*xi5*xi7*xi1_2",
        "+x4*x5*x2_2*xi2*xi4*xi7*xi1_2",
        "+x4*x6*x2_2*xi3*xi4*xi7*xi1_2",
        "+x5^2*x2_2*xi2*xi5*xi7*xi1_2",
        "+x5*x6*x2_2*xi2*xi6*xi7*xi1_2",
        "+x5*x6*x2_2*xi3*xi5*xi7*xi1_2",
        "+x6^2*x2_2*xi3*xi6*xi7*xi1_2",
    ]
    .concat());

    AngularMomentum { tensor, ideal, resolvent, expected_pi1, published_pi4 }
}

/// Torus invariants in dimension 4: the top Nambu bracket of the four
/// quadratic invariants vanishes identically and their single relation
/// pulls back to zero. The induced structure on the invariant ring is the
/// zero arity-4 tensor modulo the relation.
pub struct Torus {
    /// Invariants as polynomials in the ambient coordinates.
    pub invariants: [SuperPolynomial; 4],
    /// The relation `u1*u3 - u2*u4` in the invariant coordinates.
    pub relation: SuperPolynomial,
    /// The ambient Nambu bracket (top Jacobian in dimension 4).
    pub ambient: NambuTensor,
    /// The induced tensor on the invariant coordinates (identically zero)
    /// with the relation ideal attached.
    pub quotient: NambuTensor,
}

pub fn torus() -> Torus {
    let invariants = [p("x1*x3"), p("x1*x4"), p("x2*x4"), p("x2*x3")];
    let relation = p("x1*x3 - x2*x4"); // u1*u3 - u2*u4 in the u-coordinates
    let ambient = NambuTensor::determinantal(4, 4, &p("1"), &[], &[1, 2, 3, 4]).unwrap();
    let ideal = IdealPresentation::new(4, vec![relation.clone()]).unwrap();
    let quotient = NambuTensor::explicit(4, 4, BTreeMap::new(), Some(ideal)).unwrap();
    Torus { invariants, relation, ambient, quotient }
}

/// A bracket with its expected value, both expressed in the invariants.
pub struct InvariantBracket {
    pub args: [usize; 3],
    pub expected_in_u: SuperPolynomial,
}

/// Order-24 diagonal group in dimension 3: seven fundamental invariants,
/// ternary Jacobian bracket. The table lists independently verified values
/// (the published table has one wrong coefficient on `{u1,u4,u6}` and two
/// conflicting duplicate rows; the values here are the recomputed ones).
pub struct Abelian24 {
    pub invariants: [SuperPolynomial; 7],
    pub ambient: NambuTensor,
    pub table: Vec<InvariantBracket>,
}

pub fn abelian24() -> Abelian24 {
    let invariants = [
        p("x1^6"),
        p("x2^4"),
        p("x3^12"),
        p("x1*x2*x3"),
        p("x2^2*x3^6"),
        p("x1^4*x3^4"),
        p("x1^2*x3^8"),
    ];
    let ambient = NambuTensor::determinantal(3, 3, &p("1"), &[], &[1, 2, 3]).unwrap();
    let table = vec![
        InvariantBracket { args: [1, 2, 3], expected_in_u: u_expr("288*u4^3*u7") },
        InvariantBracket { args: [1, 2, 4], expected_in_u: u_expr("24*u1*u2") },
        InvariantBracket { args: [1, 2, 5], expected_in_u: u_expr("144*u2*u4*u6") },
        InvariantBracket { args: [1, 2, 6], expected_in_u: u_expr("96*u1*u4^3") },
        InvariantBracket { args: [1, 2, 7], expected_in_u: u_expr("192*u4^3*u6") },
        InvariantBracket { args: [1, 3, 4], expected_in_u: u_expr("-72*u1*u3") },
        InvariantBracket { args: [1, 3, 5], expected_in_u: u_expr("-144*u3*u4*u6") },
        InvariantBracket { args: [1, 3, 6], expected_in_u: SuperPolynomial::zero() },
        InvariantBracket { args: [1, 3, 7], expected_in_u: SuperPolynomial::zero() },
        InvariantBracket { args: [1, 4, 5], expected_in_u: u_expr("24*u1*u5") },
        InvariantBracket { args: [1, 4, 7], expected_in_u: u_expr("48*u6^2") },
        InvariantBracket { args: [3, 4, 5], expected_in_u: u_expr("24*u3*u5") },
        InvariantBracket { args: [5, 6, 7], expected_in_u: u_expr("-48*u4*u7^2") },
    ];
    Abelian24 { invariants, ambient, table }
}

/// Order-108 group in dimension 3: five fundamental invariants with huge
/// rational coefficients. `{u1,u2,u4}` is frozen with the recomputed
/// coefficient on `u2^3`; the published one duplicates the `u1^2*u2`
/// coefficient. The other brackets match their published values exactly.
pub struct GroupE108 {
    pub invariants: [SuperPolynomial; 5],
    pub ambient: NambuTensor,
    pub relations: [SuperPolynomial; 2],
    pub table: Vec<InvariantBracket>,
}

pub fn group_e108() -> GroupE108 {
    let u1 = p("x1^6 - 15/4*x1^4*x2*x3 - 5/2*x1^3*x2^3 - 5/2*x1^3*x3^3 - 45/4*x1^2*x2^2*x3^2 \
         - 15/4*x1*x2^4*x3 - 15/4*x1*x2*x3^4 + x2^6 - 5/2*x2^3*x3^3 + x3^6");
    let u2 = p("x1^4*x2*x3 - 2*x1^3*x2^3 - 2*x1^3*x3^3 + 3*x1^2*x2^2*x3^2 + x1*x2^4*x3 \
         + x1*x2*x3^4 - 2*x2^3*x3^3");
    let u3 = p("x1^12 + 33/61*x1^10*x2*x3 + 55/61*x1^9*x2^3 + 55/61*x1^9*x3^3 \
         + 1485/122*x1^8*x2^2*x3^2 + 990/61*x1^7*x2^4*x3 + 990/61*x1^7*x2*x3^4 \
         + 231/61*x1^6*x2^6 + 4620/61*x1^6*x2^3*x3^3 + 231/61*x1^6*x3^6 \
         + 4158/61*x1^5*x2^5*x3^2 + 4158/61*x1^5*x2^2*x3^5 + 990/61*x1^4*x2^7*x3 \
         + 17325/122*x1^4*x2^4*x3^4 + 990/61*x1^4*x2*x3^7 + 55/61*x1^3*x2^9 \
         + 4620/61*x1^3*x2^6*x3^3 + 4620/61*x1^3*x2^3*x3^6 + 55/61*x1^3*x3^9 \
         + 1485/122*x1^2*x2^8*x3^2 + 4158/61*x1^2*x2^5*x3^5 + 1485/122*x1^2*x2^2*x3^8 \
         + 33/61*x1*x2^10*x3 + 990/61*x1*x2^7*x3^4 + 990/61*x1*x2^4*x3^7 \
         + 33/61*x1*x2*x3^10 + x2^12 + 55/61*x2^9*x3^3 + 231/61*x2^6*x3^6 \
         + 55/61*x2^3*x3^9 + x3^12");
    let u4 = p("x1^6*x2^3 - x1^6*x3^3 - x1^3*x2^6 + x1^3*x3^6 + x2^6*x3^3 - x2^3*x3^6");
    let u5 = p("x1^12 + 15*x1^10*x2*x3 - 19/2*x1^9*x2^3 - 19/2*x1^9*x3^3 - 27*x1^8*x2^2*x3^2 \
         + 126*x1^7*x2^4*x3 + 126*x1^7*x2*x3^4 - 21*x1^6*x2^6 - 42*x1^6*x2^3*x3^3 \
         - 21*x1^6*x3^6 + 189*x1^5*x2^5*x3^2 + 189*x1^5*x2^2*x3^5 + 126*x1^4*x2^7*x3 \
         - 315*x1^4*x2^4*x3^4 + 126*x1^4*x2*x3^7 - 19/2*x1^3*x2^9 - 42*x1^3*x2^6*x3^3 \
         - 42*x1^3*x2^3*x3^6 - 19/2*x1^3*x3^9 - 27*x1^2*x2^8*x3^2 + 189*x1^2*x2^5*x3^5 \
         - 27*x1^2*x2^2*x3^8 + 15*x1*x2^10*x3 + 126*x1*x2^7*x3^4 + 126*x1*x2^4*x3^7 \
         + 15*x1*x2*x3^10 + x2^12 - 19/2*x2^9*x3^3 - 21*x2^6*x3^6 - 19/2*x2^3*x3^9 + x3^12");
    let ambient = NambuTensor::determinantal(3, 3, &p("1"), &[], &[1, 2, 3]).unwrap();
    let relations = [
        u_expr(
            "-251/42795*u1^3 + 1813/19020*u1^2*u2 + 233/5072*u1*u2^2 - 215/20288*u2^3 \
             + 61/4755*u1*u3 - 427/11412*u2*u3 - u4^2 - 298/42795*u1*u5 - 25/5706*u2*u5",
        ),
        u_expr(
            "624939/38884*u1^4 - 4063797/19442*u1^3*u2 + 173361303/311072*u1^2*u2^2 \
             - 24352245/155536*u1*u2^3 - 3859344225/9954304*u2^4 - 3652497/38884*u1^2*u3 \
             + 39974337/77768*u1*u2*u3 - 564089265/622144*u2^2*u3 + 1101416/9721*u3^2 \
             + 604557/19442*u1^2*u5 - 968247/38884*u1*u2*u5 - 11237535/311072*u2^2*u5 \
             - 637084/9721*u3*u5 - u5^2",
        ),
    ];
    let table = vec![
        InvariantBracket {
            args: [1, 2, 4],
            expected_in_u: u_expr(
                "-1865997/159134*u2^3 - 5318784/397835*u1^2*u2 - 12078558/397835*u1*u2^2 \
                 + 244/251*u1*u3 + 10957491/397835*u2*u3 + 59292/251*u4^2 - 244/251*u1*u5 \
                 - 46827/397835*u2*u5",
            ),
        },
        InvariantBracket {
            args: [1, 2, 3],
            expected_in_u: u_expr(
                "32646078/96685*u1^2*u4 - 60682689/154696*u2^2*u4 - 26142669/96685*u1*u2*u4 \
                 - 1127952/1585*u3*u4 - 2099736/96685*u4*u5",
            ),
        },
        InvariantBracket {
            args: [1, 2, 5],
            expected_in_u: u_expr(
                "1616679/1585*u1^2*u4 + 49935771/5072*u2^2*u4 - 17693559/3170*u1*u2*u4 \
                 - 3900096/1585*u3*u4 + 1127952/1585*u4*u5",
            ),
        },
    ];
    GroupE108 { invariants: [u1, u2, u3, u4, u5], ambient, relations, table }
}

/// Parses an expression in abstract invariant coordinates `u1..u9`,
/// represented internally as level-0 coordinates.
pub fn u_expr(s: &str) -> SuperPolynomial {
    p(&s.replace('u', "x"))
}

/// Substitutes invariant coordinates by their defining polynomials.
pub fn pull_back(expr_in_u: &SuperPolynomial, invariants: &[SuperPolynomial]) -> SuperPolynomial {
    let map: BTreeMap<crate::poly::Variable, SuperPolynomial> = invariants
        .iter()
        .enumerate()
        .map(|(i, u)| (crate::poly::Variable::coord(i as u32 + 1), u.clone()))
        .collect();
    expr_in_u.substitute(&map)
}
