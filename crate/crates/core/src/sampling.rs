//! Deterministic sample streams for the verification suites. A fixed seed
//! produces the same polynomials on every platform, which keeps the
//! randomized acceptance checks byte-reproducible.

use crate::poly::{rat, SuperMonomial, SuperPolynomial, Variable};

/// SplitMix64; enough randomness for sampling, fully deterministic.
#[derive(Debug, Clone)]
pub struct SampleRng {
    state: u64,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A mixed-level alphabet with `n` coordinate pairs at level 0 plus one
/// adjoined pair at level 1.
pub fn mixed_alphabet(n: u32) -> Vec<Variable> {
    let mut vars = Vec::new();
    for i in 1..=n {
        vars.push(Variable::coord(i));
        vars.push(Variable::xi(i, 0));
    }
    vars.push(Variable::x(1, 1));
    vars.push(Variable::xi(1, 1));
    vars
}

/// Level-0 commutative alphabet.
pub fn coordinate_alphabet(n: u32) -> Vec<Variable> {
    (1..=n).map(Variable::coord).collect()
}

/// A sparse random polynomial: up to `max_terms` monomials over the
/// alphabet with exponents `<= max_exp` and small nonzero coefficients.
pub fn sample_poly(
    rng: &mut SampleRng,
    alphabet: &[Variable],
    max_terms: u64,
    max_exp: u32,
) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero();
    let terms = rng.below(max_terms + 1);
    for _ in 0..terms {
        let mut mono = SuperMonomial::unit();
        for v in alphabet {
            match v.parity() {
                crate::poly::Parity::Odd => {
                    if rng.below(3) == 0 {
                        mono.odd.push(*v);
                    }
                }
                crate::poly::Parity::Even => {
                    let e = rng.below(max_exp as u64 + 1) as u32;
                    if e > 0 && rng.below(2) == 0 {
                        mono.even.insert(*v, e);
                    }
                }
            }
        }
        mono.odd.sort();
        let mut c = rng.range(-3, 3);
        if c == 0 {
            c = 1;
        }
        out.add_term(mono, rat(c));
    }
    out
}

/// A cohomologically homogeneous sample: a random polynomial restricted to
/// one of its degrees. May be zero.
pub fn sample_homogeneous(
    rng: &mut SampleRng,
    alphabet: &[Variable],
    max_terms: u64,
    max_exp: u32,
) -> SuperPolynomial {
    let p = sample_poly(rng, alphabet, max_terms, max_exp);
    let degs = p.cohdeg_support();
    if degs.is_empty() {
        return p;
    }
    let d = degs[rng.below(degs.len() as u64) as usize];
    p.cohdeg_part(d)
}
