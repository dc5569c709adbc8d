//! Randomized property suites over small super-polynomials: ring and
//! Gerstenhaber axioms, graded Leibniz rules, filtration estimates, ideal
//! round-trips and bracket identities. Streams are seeded, so failures
//! reproduce exactly.

use std::collections::BTreeMap;

use nambu::ideal::{compute_z, IdealPresentation};
use nambu::nambu::{sorted_tuples, NambuTensor, VerifyMode};
use nambu::parse::parse_poly;
use nambu::poly::{rat, Homogeneity, Parity, SuperPolynomial, Variable};
use nambu::resolvent::ResolventTruncation;
use nambu::sampling::{coordinate_alphabet, mixed_alphabet, sample_homogeneous, sample_poly, SampleRng};
use nambu::schouten::{delta_nambu, schouten};

fn p(s: &str) -> SuperPolynomial {
    parse_poly(s).unwrap()
}

fn parity_sign(a: Parity, b: Parity) -> i64 {
    if a == Parity::Odd && b == Parity::Odd {
        -1
    } else {
        1
    }
}

fn signed(p: &SuperPolynomial, sign: i64) -> SuperPolynomial {
    if sign < 0 {
        -p
    } else {
        p.clone()
    }
}

#[test]
fn ring_axioms() {
    let mut rng = SampleRng::new(11);
    let vars = mixed_alphabet(2);
    for _ in 0..200 {
        let a = sample_poly(&mut rng, &vars, 3, 2);
        let b = sample_poly(&mut rng, &vars, 3, 2);
        let c = sample_poly(&mut rng, &vars, 3, 2);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
        assert_eq!(a.mul(&SuperPolynomial::one()), a);
    }
}

#[test]
fn supercommutativity() {
    let mut rng = SampleRng::new(12);
    let vars = mixed_alphabet(2);
    for _ in 0..200 {
        let a = sample_homogeneous(&mut rng, &vars, 3, 2);
        let b = sample_homogeneous(&mut rng, &vars, 3, 2);
        let (Homogeneity::Value(pa), Homogeneity::Value(pb)) = (a.degrees().parity, b.degrees().parity)
        else {
            continue;
        };
        assert_eq!(a.mul(&b), signed(&b.mul(&a), parity_sign(pa, pb)));
    }
}

#[test]
fn graded_leibniz_for_derivatives() {
    let mut rng = SampleRng::new(13);
    let vars = mixed_alphabet(2);
    for _ in 0..200 {
        let a = sample_homogeneous(&mut rng, &vars, 2, 2);
        let b = sample_poly(&mut rng, &vars, 2, 2);
        let Homogeneity::Value(pa) = a.degrees().parity else { continue };
        for v in &vars {
            // left derivation: d(ab) = d(a) b + (-1)^{|v||a|} a d(b)
            let lhs = a.mul(&b).left_deriv(v);
            let rhs = &a.left_deriv(v).mul(&b)
                + &signed(&a.mul(&b.left_deriv(v)), parity_sign(v.parity(), pa));
            assert_eq!(lhs, rhs, "left Leibniz on {v}");
        }
    }
}

#[test]
fn right_derivative_relates_to_left() {
    let mut rng = SampleRng::new(14);
    let vars = mixed_alphabet(2);
    for _ in 0..200 {
        let a = sample_homogeneous(&mut rng, &vars, 3, 2);
        let Homogeneity::Value(pa) = a.degrees().parity else { continue };
        for v in &vars {
            // right = (-1)^{|v|(|a|+1)} left
            let flip = if v.parity() == Parity::Odd && pa == Parity::Even { -1 } else { 1 };
            assert_eq!(a.right_deriv(v), signed(&a.left_deriv(v), flip));
        }
    }
}

#[test]
fn degrees_additive_under_multiplication() {
    let mut rng = SampleRng::new(15);
    let vars = mixed_alphabet(2);
    for _ in 0..200 {
        let a = sample_homogeneous(&mut rng, &vars, 2, 2);
        let b = sample_homogeneous(&mut rng, &vars, 2, 2);
        let prod = a.mul(&b);
        if prod.is_zero() {
            continue;
        }
        let (Homogeneity::Value(ca), Homogeneity::Value(cb)) =
            (a.degrees().cohomological, b.degrees().cohomological)
        else {
            continue;
        };
        assert_eq!(prod.degrees().cohomological, Homogeneity::Value(ca + cb));
    }
}

#[test]
fn canonicalization_is_idempotent() {
    let mut rng = SampleRng::new(16);
    let vars = mixed_alphabet(3);
    for _ in 0..200 {
        let a = sample_poly(&mut rng, &vars, 4, 2);
        let text = a.canonical_text();
        let back = parse_poly(&text).unwrap();
        assert_eq!(a, back);
        assert_eq!(back.canonical_text(), text);
    }
}

#[test]
fn gerstenhaber_axioms() {
    let mut rng = SampleRng::new(17);
    let vars = mixed_alphabet(2);
    let mut checked = 0;
    for _ in 0..700 {
        let x = sample_homogeneous(&mut rng, &vars, 2, 1);
        let y = sample_homogeneous(&mut rng, &vars, 2, 1);
        let z = sample_homogeneous(&mut rng, &vars, 2, 1);
        let (Homogeneity::Value(dx), Homogeneity::Value(dy)) =
            (x.degrees().cohomological, y.degrees().cohomological)
        else {
            continue;
        };
        checked += 1;
        // antisymmetry: [[x,y]] = -(-1)^{(|x|-1)(|y|-1)} [[y,x]]
        let sign = if (dx - 1) % 2 != 0 && (dy - 1) % 2 != 0 { 1 } else { -1 };
        assert_eq!(schouten(&x, &y), signed(&schouten(&y, &x), sign));
        // degree -1
        let b = schouten(&x, &y);
        if !b.is_zero() {
            assert_eq!(b.degrees().cohomological, Homogeneity::Value(dx + dy - 1));
        }
        // Leibniz: [[x, yz]] = [[x,y]] z + (-1)^{|y|(|x|-1)} y [[x,z]]
        let lsign = if dy % 2 != 0 && (dx - 1) % 2 != 0 { -1 } else { 1 };
        let lhs = schouten(&x, &y.mul(&z));
        let rhs = &schouten(&x, &y).mul(&z) + &signed(&y.mul(&schouten(&x, &z)), lsign);
        assert_eq!(lhs, rhs);
        // Jacobi: [[x,[[y,z]]]] = [[[[x,y]],z]] + (-1)^{(|x|-1)(|y|-1)} [[y,[[x,z]]]]
        let jsign = -sign;
        let lhs = schouten(&x, &schouten(&y, &z));
        let rhs = &schouten(&schouten(&x, &y), &z) + &signed(&schouten(&y, &schouten(&x, &z)), jsign);
        assert_eq!(lhs, rhs);
    }
    assert!(checked >= 200, "only {checked} homogeneous triples sampled");
}

#[test]
fn filtration_estimate_for_brackets() {
    let mut rng = SampleRng::new(18);
    let vars = mixed_alphabet(2);
    for _ in 0..200 {
        let x = sample_poly(&mut rng, &vars, 3, 2);
        let y = sample_poly(&mut rng, &vars, 3, 2);
        let b = schouten(&x, &y);
        let (Some(fx), Some(fy), Some(fb)) = (x.min_fd(), y.min_fd(), b.min_fd()) else {
            continue;
        };
        let r = x.max_level() as i64;
        let s = y.max_level() as i64;
        assert!(fb >= fx + fy - 1 - r.min(s), "fd({fb}) < {fx}+{fy}-1-min({r},{s})");
    }
}

#[test]
fn bracket_against_pi0_is_differential_up_to_higher_filtration() {
    let ideal = IdealPresentation::new(4, vec![p("x1*x2"), p("x3*x4")]).unwrap();
    let weights: BTreeMap<u32, i64> = (1..=4).map(|i| (i, 1)).collect();
    let res = ResolventTruncation::koszul(&ideal, Some(&weights)).unwrap();
    let pi0 = res.pi0_le(1);
    let mut rng = SampleRng::new(19);
    let vars = res.alphabet(1);
    for _ in 0..200 {
        let x = sample_poly(&mut rng, &vars, 3, 2);
        let Some(fd) = x.min_fd() else { continue };
        let gap = &schouten(&pi0, &x) - &res.differential(&x);
        assert!(gap.in_filtration(fd + 1), "correction term not one filtration step up");
    }
}

#[test]
fn nambu_bracket_leibniz_and_antisymmetry() {
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(1));
    let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
    let vars = coordinate_alphabet(4);
    let mut rng = SampleRng::new(20);
    for _ in 0..200 {
        let a = sample_poly(&mut rng, &vars, 2, 2);
        let b = sample_poly(&mut rng, &vars, 2, 2);
        let g1 = sample_poly(&mut rng, &vars, 2, 2);
        let g2 = sample_poly(&mut rng, &vars, 2, 2);
        let g3 = sample_poly(&mut rng, &vars, 2, 2);
        // Leibniz in the last slot
        let lhs = tensor
            .bracket_eval(&[g1.clone(), g2.clone(), g3.clone(), a.mul(&b)])
            .unwrap();
        let rhs = &a
            .mul(&tensor.bracket_eval(&[g1.clone(), g2.clone(), g3.clone(), b.clone()]).unwrap())
            + &b.mul(&tensor.bracket_eval(&[g1.clone(), g2.clone(), g3.clone(), a.clone()]).unwrap());
        assert_eq!(lhs, rhs);
        // antisymmetry under a transposition
        let v1 = tensor.bracket_eval(&[g1.clone(), g2.clone(), g3.clone(), a.clone()]).unwrap();
        let v2 = tensor.bracket_eval(&[g2.clone(), g1.clone(), g3.clone(), a.clone()]).unwrap();
        assert_eq!(v1, -&v2);
    }
}

#[test]
fn fi_checker_consistent_with_direct_substitution() {
    // when the checker reports empty, the identity holds on random
    // coordinate-function tuples by direct substitution
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(2));
    c.insert(vec![1, 2, 3, 5], rat(-1));
    let tensor = NambuTensor::diagonal(5, 4, &c).unwrap();
    assert!(tensor.check_fundamental_identity(VerifyMode::Exact).unwrap().is_empty());
    let mut rng = SampleRng::new(21);
    for _ in 0..200 {
        let pick = |rng: &mut SampleRng| {
            SuperPolynomial::var(Variable::coord(rng.range(1, 5) as u32))
        };
        let a: Vec<SuperPolynomial> = (0..3).map(|_| pick(&mut rng)).collect();
        let b: Vec<SuperPolynomial> = (0..4).map(|_| pick(&mut rng)).collect();
        let inner = tensor.bracket_eval(&b).unwrap();
        let mut args = a.clone();
        args.push(inner);
        let lhs = tensor.bracket_eval(&args).unwrap();
        let mut rhs = SuperPolynomial::zero();
        for l in 0..4 {
            let mut args = a.clone();
            args.push(b[l].clone());
            let ham = tensor.bracket_eval(&args).unwrap();
            let mut outer = b.clone();
            outer[l] = ham;
            rhs = &rhs + &tensor.bracket_eval(&outer).unwrap();
        }
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn outer_product_brackets_factor() {
    let mut ca = BTreeMap::new();
    ca.insert(vec![1, 2], rat(1));
    let a = NambuTensor::explicit(2, 2, [(vec![1, 2], p("x1"))].into_iter().collect(), None).unwrap();
    let b = NambuTensor::diagonal(2, 2, &ca).unwrap();
    let outer = NambuTensor::outer(&a, &b).unwrap();
    let mut rng = SampleRng::new(22);
    let vars_a = coordinate_alphabet(2);
    for _ in 0..200 {
        let f1 = sample_poly(&mut rng, &vars_a, 2, 2);
        let f2 = sample_poly(&mut rng, &vars_a, 2, 2);
        let g1 = sample_poly(&mut rng, &vars_a, 2, 2);
        let g2 = sample_poly(&mut rng, &vars_a, 2, 2);
        let va = a.bracket_eval(&[f1.clone(), f2.clone()]).unwrap();
        let vb = b.bracket_eval(&[g1.clone(), g2.clone()]).unwrap();
        let shifted = |q: &SuperPolynomial| nambu::nambu::shift_coords(q, 2);
        let vo = outer
            .bracket_eval(&[f1.clone(), f2.clone(), shifted(&g1), shifted(&g2)])
            .unwrap();
        assert_eq!(vo, va.mul(&shifted(&vb)));
    }
}

#[test]
fn determinantal_output_is_decomposable() {
    let f1 = p("x2*x6 - x3*x5");
    let f2 = p("x3*x4 - x1*x6");
    let f3 = p("x1*x5 - x2*x4");
    let t = NambuTensor::determinantal(7, 4, &p("1"), &[f1, f2, f3], &[1, 2, 3, 4, 5, 6, 7]).unwrap();
    let report = t.check_fundamental_identity(VerifyMode::Exact).unwrap();
    assert!(report.decomposability_violations.is_empty());
    assert!(report.is_empty());
}

#[test]
fn ideal_roundtrips() {
    let gens = vec![p("x1*x2 - x3^2"), p("x2^2 + x1*x4"), p("x3*x4")];
    let ideal = IdealPresentation::new(4, gens.clone()).unwrap();
    let vars = coordinate_alphabet(4);
    let mut rng = SampleRng::new(23);
    for _ in 0..200 {
        // member . lift round-trip on a random combination
        let coeffs: Vec<SuperPolynomial> =
            (0..3).map(|_| sample_poly(&mut rng, &vars, 2, 2)).collect();
        let mut member = SuperPolynomial::zero();
        for (c, f) in coeffs.iter().zip(&gens) {
            member = &member + &c.mul(f);
        }
        assert!(ideal.member(&member));
        let lift = ideal.lift(&member).unwrap();
        let mut back = SuperPolynomial::zero();
        for (c, f) in lift.iter().zip(&gens) {
            back = &back + &c.mul(f);
        }
        assert_eq!(back, member);
        // normal forms: nf(p - nf(p)) = 0 and idempotence
        let q = sample_poly(&mut rng, &vars, 3, 3);
        let nf = ideal.normal_form(&q);
        assert!(ideal.normal_form(&(&q - &nf)).is_zero());
        assert_eq!(ideal.normal_form(&nf), nf);
    }
}

#[test]
fn delta_nambu_examples() {
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(1));
    let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
    // bracket with a constant vanishes
    assert!(delta_nambu(&tensor, &SuperPolynomial::one()).is_zero());
    // on a coordinate function: the Hamiltonian-generating 3-vector
    // sum_I Pi_{I,j} xi^I over sorted I
    for j in 1..=4u32 {
        let got = delta_nambu(&tensor, &p(&format!("x{j}")));
        let mut expected = SuperPolynomial::zero();
        for t in sorted_tuples(4, 3) {
            let mut full = t.clone();
            full.push(j);
            let coeff = tensor.coeff(&full);
            if coeff.is_zero() {
                continue;
            }
            let mut mono = nambu::poly::SuperMonomial::unit();
            mono.odd = t.iter().map(|&i| Variable::xi(i, 0)).collect();
            expected = &expected + &coeff.mul(&SuperPolynomial::monomial(mono, rat(1)));
        }
        assert_eq!(got, expected, "generating multivector of x{j}");
    }
    // the differential squares to zero on random multivectors
    let mut rng = SampleRng::new(24);
    let vars = {
        let mut v = coordinate_alphabet(4);
        v.extend((1..=4).map(|i| Variable::xi(i, 0)));
        v
    };
    let mut nontrivial = 0;
    for _ in 0..300 {
        let y = sample_poly(&mut rng, &vars, 4, 2);
        let dd = delta_nambu(&tensor, &delta_nambu(&tensor, &y));
        assert!(dd.is_zero());
        if !delta_nambu(&tensor, &y).is_zero() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 150, "only {nontrivial} samples exercised the differential");
}

#[test]
fn z_tensor_defining_equation_on_random_monomial_ideals() {
    let mut rng = SampleRng::new(25);
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(1));
    let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
    for _ in 0..40 {
        // random monomial ideal with two generators
        let mono = |rng: &mut SampleRng| {
            let mut m = SuperPolynomial::one();
            for i in 1..=4u32 {
                let e = rng.below(3) as u32;
                m = m.mul(&SuperPolynomial::var(Variable::coord(i)).pow(e));
            }
            m
        };
        let f1 = mono(&mut rng);
        let f2 = mono(&mut rng);
        if f1.num_terms() != 1 || f2.num_terms() != 1 {
            continue;
        }
        let Ok(ideal) = IdealPresentation::new(4, vec![f1.clone(), f2.clone()]) else {
            continue;
        };
        let z = compute_z(&tensor, &ideal).unwrap();
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
            // diagonal choice for monomial ideals
            for nu in 1..=z.k {
                if nu != *mu {
                    assert!(z.entry_sorted(t, *mu, nu).is_zero(), "off-diagonal cofactor");
                }
            }
        }
    }
}
