//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Mathematical assertions are always enforced; the stated
//! runtime budgets are asserted in optimized builds and only reported in
//! debug builds.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use nambu::connection::{curvature_vanishes, mc_check, mc_defect};
use nambu::fixtures::{self, pull_back, u_expr};
use nambu::ideal::{compute_z, IdealPresentation};
use nambu::nambu::{NambuTensor, VerifyMode};
use nambu::parse::parse_poly;
use nambu::perturb::PerturbationState;
use nambu::poly::{rat, ratio, Homogeneity, Parity, SuperPolynomial, Variable};
use nambu::sampling::{coordinate_alphabet, mixed_alphabet, sample_homogeneous, sample_poly, SampleRng};
use nambu::schouten::schouten;

fn p(s: &str) -> SuperPolynomial {
    parse_poly(s).unwrap()
}

fn finish(criterion: u32, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("acceptance {criterion}: pass - {what} ({elapsed:.2?}, budget {budget:.0?})");
    if !cfg!(debug_assertions) {
        assert!(elapsed < budget, "criterion {criterion} exceeded its runtime budget: {elapsed:.2?}");
    }
}

#[test]
fn criterion_1_ci_monomial_reproduction() {
    let started = Instant::now();
    let fx = fixtures::ci_monomial();
    let mut state = PerturbationState::init(fx.tensor, fx.resolvent, false).unwrap();
    state.run(7).unwrap();
    let counts = [1usize, 4, 4];
    for (i, expected) in fx.expected_stages.iter().enumerate() {
        let stage = state.stage(i as u32 + 1).unwrap();
        assert_eq!(stage.canonical_text(), *expected, "stage {} text", i + 1);
        assert_eq!(stage.num_terms(), counts[i], "stage {} term count", i + 1);
    }
    for l in 4..=7 {
        assert!(state.stage(l).unwrap().is_zero(), "stage {l} must vanish");
    }
    finish(1, "diagonal CI stages byte-identical, tail of zeros", started, Duration::from_secs(5));
}

#[test]
fn criterion_2_angular_momentum_reproduction() {
    let started = Instant::now();
    let fx = fixtures::angular_momentum();
    assert_eq!(fx.resolvent.max_level(), 4);
    let mut state = PerturbationState::init(fx.tensor, fx.resolvent.clone(), false).unwrap();
    state.run(4).unwrap();

    // exact first stage (36 monomials)
    let pi1 = state.stage(1).unwrap();
    assert_eq!(pi1.canonical_text(), fx.expected_pi1);
    assert_eq!(pi1.num_terms(), 36);

    // the published vanishing claims: one vanishing correction window;
    // the published stage labels sit one past the recursion's (the printed
    // nonzero correction has filtration degree 6 and lives at stage 3)
    assert!(state.stage(2).unwrap().is_zero(), "first correction must vanish");

    // relation-level check on the published correction: it solves the same
    // defining equation as the computed one
    let mut total = fx.resolvent.pi0_le(2);
    total = &total + state.stage(1).unwrap();
    total = &total + state.stage(2).unwrap();
    let target = schouten(&total, &total).fd_part(6).scale(&ratio(-1, 2));
    let computed = state.stage(3).unwrap();
    assert_eq!(fx.resolvent.differential(computed), target, "computed correction relation");
    assert_eq!(fx.resolvent.differential(&fx.published_pi4), target, "published correction relation");
    assert!(
        fx.resolvent.differential(&(&fx.published_pi4 - computed)).is_zero(),
        "corrections differ by a closed term"
    );
    finish(
        2,
        "angular momentum: exact first stage, vanishing window, published correction solves its relation (published stage labels shifted by one)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_3_non_ci_relation_suite() {
    let started = Instant::now();
    let fx = fixtures::non_ci_monomial();
    let (res, _) = fx.koszul.tate_extend(5, 12).unwrap();
    assert!(res.max_level() >= 5);
    let mut state = PerturbationState::init(fx.tensor, res.clone(), false).unwrap();
    state.run(5).unwrap();
    for l in 2..=5u32 {
        let pi = state.stage(l).unwrap();
        // membership pi_l in F^{l+3} h_{<= l-1}
        assert!(pi.in_filtration(l as i64 + 3), "stage {l} filtration membership");
        assert!(pi.max_level() <= l - 1, "stage {l} level bound");
        // the recursion equation at every stage
        let mut total = res.pi0_le(l - 1);
        for i in 1..l {
            total = &total + state.stage(i).unwrap();
        }
        let b = schouten(&total, &total);
        assert!(b.in_filtration(l as i64 + 3), "stage {l} bracket window");
        let a = b.fd_part(l as i64 + 3);
        assert!(res.differential(&a).is_zero(), "stage {l} extracted source closed");
        assert_eq!(res.differential(pi), a.scale(&ratio(-1, 2)), "stage {l} defining relation");
    }
    finish(3, "non-CI: stages 1..5 satisfy the recursion relations and windows", started, Duration::from_secs(120));
}

#[test]
fn criterion_4_bracket_tables() {
    let started = Instant::now();
    let ab = fixtures::abelian24();
    assert!(ab.table.len() >= 8);
    let mut saw_124 = false;
    let mut saw_136 = false;
    for entry in &ab.table {
        let args: Vec<SuperPolynomial> =
            entry.args.iter().map(|&i| ab.invariants[i - 1].clone()).collect();
        let got = ab.ambient.bracket_eval(&args).unwrap();
        let expected = pull_back(&entry.expected_in_u, &ab.invariants);
        assert_eq!(got, expected, "bracket {:?}", entry.args);
        if entry.args == [1, 2, 4] {
            saw_124 = true;
            assert_eq!(got, pull_back(&u_expr("24*u1*u2"), &ab.invariants));
        }
        if entry.args == [1, 3, 6] {
            saw_136 = true;
            assert!(got.is_zero());
        }
    }
    assert!(saw_124 && saw_136);

    let e = fixtures::group_e108();
    assert!(e.table.len() >= 2);
    for entry in &e.table {
        let args: Vec<SuperPolynomial> =
            entry.args.iter().map(|&i| e.invariants[i - 1].clone()).collect();
        let got = e.ambient.bracket_eval(&args).unwrap();
        assert_eq!(got, pull_back(&entry.expected_in_u, &e.invariants), "bracket {:?}", entry.args);
    }
    // the published coefficient -5318784/397835 sits on u1^2*u2; on u2^3 the
    // exact value is -1865997/159134 (the publication duplicated the
    // neighbouring coefficient there)
    let big = &e.table[0].expected_in_u;
    let coeff_of = |mono: &str| -> nambu::poly::Rational {
        let probe = p(mono);
        let (m, _) = probe.terms().next().unwrap();
        big.coeff(m)
    };
    assert_eq!(coeff_of("x1^2*x2"), ratio(-5318784, 397835));
    assert_eq!(coeff_of("x2^3"), ratio(-1865997, 159134));
    assert_eq!(coeff_of("x4^2"), ratio(59292, 251));
    finish(4, "invariant bracket tables exact after substitution", started, Duration::from_secs(30));
}

#[test]
fn criterion_5_torus() {
    let started = Instant::now();
    let fx = fixtures::torus();
    assert!(fx.ambient.bracket_eval(&fx.invariants.to_vec()).unwrap().is_zero());
    assert!(pull_back(&fx.relation, &fx.invariants).is_zero());
    let ideal = fx.quotient.ideal.clone().unwrap();
    assert!(compute_z(&fx.quotient, &ideal).unwrap().is_zero());
    finish(5, "torus: top bracket and cofactors vanish, relation pulls back to zero", started, Duration::from_secs(1));
}

#[test]
fn criterion_6_mc_curvature_suite() {
    let started = Instant::now();
    let fx = fixtures::ci_monomial();
    let z = compute_z(&fx.tensor, &fx.ideal).unwrap();
    let defect = mc_defect(&fx.tensor, &z).unwrap();
    assert!(defect.is_zero(), "defect must vanish on the nose");
    assert!(mc_check(&fx.tensor, &z, &fx.ideal).unwrap());
    for mu in 0..2usize {
        let mut v = vec![SuperPolynomial::zero(), SuperPolynomial::zero()];
        v[mu] = SuperPolynomial::one();
        assert!(curvature_vanishes(&fx.tensor, &z, &fx.ideal, &v).unwrap());
    }
    // a Casimir fixture has an identically zero defect
    let am = fixtures::angular_momentum();
    let z = compute_z(&am.tensor, &am.ideal).unwrap();
    assert!(z.is_zero());
    assert!(mc_defect(&am.tensor, &z).unwrap().is_zero());
    finish(6, "defect zero on the nose, containment and curvature agree", started, Duration::from_secs(10));
}

#[test]
fn criterion_7_property_suites() {
    let started = Instant::now();
    let budget = Duration::from_secs(120);

    // Gerstenhaber axioms on 200+ seeded homogeneous triples
    let mut rng = SampleRng::new(91);
    let vars = mixed_alphabet(2);
    let mut checked = 0u32;
    while checked < 200 {
        let x = sample_homogeneous(&mut rng, &vars, 2, 1);
        let y = sample_homogeneous(&mut rng, &vars, 2, 1);
        let z = sample_homogeneous(&mut rng, &vars, 2, 1);
        let (Homogeneity::Value(dx), Homogeneity::Value(dy)) =
            (x.degrees().cohomological, y.degrees().cohomological)
        else {
            continue;
        };
        checked += 1;
        let sign = |s: i64, q: &SuperPolynomial| if s < 0 { -q } else { q.clone() };
        let anti = if (dx - 1) % 2 != 0 && (dy - 1) % 2 != 0 { 1 } else { -1 };
        assert_eq!(schouten(&x, &y), sign(anti, &schouten(&y, &x)));
        let lsign = if dy % 2 != 0 && (dx - 1) % 2 != 0 { -1 } else { 1 };
        assert_eq!(
            schouten(&x, &y.mul(&z)),
            &schouten(&x, &y).mul(&z) + &sign(lsign, &y.mul(&schouten(&x, &z)))
        );
        assert_eq!(
            schouten(&x, &schouten(&y, &z)),
            &schouten(&schouten(&x, &y), &z) + &sign(-anti, &schouten(&y, &schouten(&x, &z)))
        );
    }

    // Leibniz + antisymmetry + consistency of the identity checker
    let mut c = BTreeMap::new();
    c.insert(vec![1, 2, 3, 4], rat(1));
    let tensor = NambuTensor::diagonal(4, 4, &c).unwrap();
    assert!(tensor.check_fundamental_identity(VerifyMode::Exact).unwrap().is_empty());
    let coords4 = coordinate_alphabet(4);
    let mut rng = SampleRng::new(92);
    for _ in 0..200 {
        let a = sample_poly(&mut rng, &coords4, 2, 2);
        let b = sample_poly(&mut rng, &coords4, 2, 2);
        let g: Vec<SuperPolynomial> = (0..3).map(|_| sample_poly(&mut rng, &coords4, 2, 2)).collect();
        let full = |last: SuperPolynomial| {
            let mut v = g.clone();
            v.push(last);
            v
        };
        let lhs = tensor.bracket_eval(&full(a.mul(&b))).unwrap();
        let rhs = &a.mul(&tensor.bracket_eval(&full(b.clone())).unwrap())
            + &b.mul(&tensor.bracket_eval(&full(a.clone())).unwrap());
        assert_eq!(lhs, rhs, "Leibniz");
        let mut swapped = full(a.clone());
        swapped.swap(0, 1);
        assert_eq!(
            tensor.bracket_eval(&full(a.clone())).unwrap(),
            -&tensor.bracket_eval(&swapped).unwrap(),
            "antisymmetry"
        );
        // checker-verified identity holds under direct substitution
        let pick = |rng: &mut SampleRng| SuperPolynomial::var(Variable::coord(rng.range(1, 4) as u32));
        let aa: Vec<SuperPolynomial> = (0..3).map(|_| pick(&mut rng)).collect();
        let bb: Vec<SuperPolynomial> = (0..4).map(|_| pick(&mut rng)).collect();
        let mut args = aa.clone();
        args.push(tensor.bracket_eval(&bb).unwrap());
        let lhs = tensor.bracket_eval(&args).unwrap();
        let mut rhs = SuperPolynomial::zero();
        for l in 0..4 {
            let mut inner = aa.clone();
            inner.push(bb[l].clone());
            let mut outer = bb.clone();
            outer[l] = tensor.bracket_eval(&inner).unwrap();
            rhs = &rhs + &tensor.bracket_eval(&outer).unwrap();
        }
        assert_eq!(lhs, rhs, "fundamental identity by substitution");
    }

    // lift / normal-form round-trips
    let gens = vec![p("x1*x2 - x3^2"), p("x2^2 + x1*x4"), p("x3*x4")];
    let ideal = IdealPresentation::new(4, gens.clone()).unwrap();
    let mut rng = SampleRng::new(93);
    for _ in 0..200 {
        let coeffs: Vec<SuperPolynomial> =
            (0..3).map(|_| sample_poly(&mut rng, &coords4, 2, 2)).collect();
        let mut member = SuperPolynomial::zero();
        for (cf, f) in coeffs.iter().zip(&gens) {
            member = &member + &cf.mul(f);
        }
        assert!(ideal.member(&member));
        let lift = ideal.lift(&member).unwrap();
        let mut back = SuperPolynomial::zero();
        for (cf, f) in lift.iter().zip(&gens) {
            back = &back + &cf.mul(f);
        }
        assert_eq!(back, member);
        let q = sample_poly(&mut rng, &coords4, 3, 3);
        let nf = ideal.normal_form(&q);
        assert!(ideal.normal_form(&(&q - &nf)).is_zero());
        assert_eq!(ideal.normal_form(&nf), nf);
    }

    // homotopy-Jacobi identities up to arity m+1 on coordinate tuples of
    // the CI state, residuals exactly zero
    let fx = fixtures::ci_monomial();
    let mut state = PerturbationState::init(fx.tensor, fx.resolvent, true).unwrap();
    state.run(3).unwrap();
    let gens: Vec<SuperPolynomial> =
        vec![p("x1"), p("x2"), p("x3"), p("x4"), p("x1_1"), p("x2_1")];
    let mut identities = 0;
    for n in 1..=5usize {
        for start in 0..=gens.len() - n {
            let args = gens[start..start + n].to_vec();
            assert!(state.jacobi_residual(&args).unwrap().is_zero());
            identities += 1;
        }
    }
    assert!(identities >= 20);

    // parity sanity on the sampled stream so the suites stay honest
    let mut rng = SampleRng::new(94);
    let mut odd_seen = false;
    for _ in 0..50 {
        if sample_homogeneous(&mut rng, &vars, 2, 1).degrees().parity == Homogeneity::Value(Parity::Odd) {
            odd_seen = true;
        }
    }
    assert!(odd_seen);

    finish(7, "seeded property suites (200+ instances each), all residuals zero", started, budget);
}
