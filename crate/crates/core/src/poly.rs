//! Sparse super-polynomial arithmetic over exact rationals.
//!
//! Variables come in two symbol families: `x{i}_{l}` ("Even" kind, the
//! coordinate/adjoined variables of level `l`) and `xi{i}_{l}` ("Odd" kind,
//! the dual derivation symbols). The *parity* that drives all Koszul signs
//! is derived from kind and level: `x` at level `l` has parity `l mod 2`,
//! `xi` at level `l` has parity `(l+1) mod 2`. Parity-odd variables square
//! to zero and anticommute; everything else commutes.
//!
//! Three gradings are tracked: cohomological degree (`x`: `-l`, `xi`: `l+1`),
//! filtration degree (`x`: `0`, `xi`: its cohomological degree) and an
//! optional internal grading supplied by the caller.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum VarKind {
    /// `x`-family symbols (coordinates and adjoined resolvent variables).
    Even,
    /// `xi`-family symbols (shifted derivations).
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A generator symbol of the super-polynomial algebra.
///
/// Field order matters: the derived `Ord` is the storage order
/// (level ascending, `x` before `xi`, index ascending) against which all
/// odd-monomial signs are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct Variable {
    pub level: u32,
    pub kind: VarKind,
    pub index: u32,
}

impl Variable {
    pub fn x(index: u32, level: u32) -> Self {
        Variable { level, kind: VarKind::Even, index }
    }

    pub fn xi(index: u32, level: u32) -> Self {
        Variable { level, kind: VarKind::Odd, index }
    }

    /// Level-0 coordinate `x{i}_0`.
    pub fn coord(index: u32) -> Self {
        Self::x(index, 0)
    }

    pub fn parity(&self) -> Parity {
        let p = match self.kind {
            VarKind::Even => self.level % 2,
            VarKind::Odd => (self.level + 1) % 2,
        };
        if p == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn cohdeg(&self) -> i64 {
        match self.kind {
            VarKind::Even => -(self.level as i64),
            VarKind::Odd => self.level as i64 + 1,
        }
    }

    /// Filtration degree: `x`-variables carry none, `xi`-variables weigh in
    /// with their full cohomological degree so that the recursion windows
    /// `F^{l+m-1}` close term by term.
    pub fn fd(&self) -> i64 {
        match self.kind {
            VarKind::Even => 0,
            VarKind::Odd => self.level as i64 + 1,
        }
    }

    /// The `x`-variable paired with this symbol (identity on `x`-kind).
    pub fn even_twin(&self) -> Variable {
        Variable { level: self.level, kind: VarKind::Even, index: self.index }
    }

    /// Key for the rendering order: all `x`-symbols before all `xi`-symbols,
    /// then by level and index.
    fn render_key(&self) -> (VarKind, u32, u32) {
        (self.kind, self.level, self.index)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Even => write!(f, "x{}_{}", self.index, self.level),
            VarKind::Odd => write!(f, "xi{}_{}", self.index, self.level),
        }
    }
}

/// A monomial: parity-even variables with exponents plus an ordered,
/// repetition-free sequence of parity-odd variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SuperMonomial {
    pub even: BTreeMap<Variable, u32>,
    pub odd: Vec<Variable>,
}

impl SuperMonomial {
    pub fn unit() -> Self {
        SuperMonomial::default()
    }

    pub fn var(v: Variable) -> Self {
        let mut m = SuperMonomial::unit();
        match v.parity() {
            Parity::Even => {
                m.even.insert(v, 1);
            }
            Parity::Odd => m.odd.push(v),
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn parity(&self) -> Parity {
        if self.odd.len().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn cohdeg(&self) -> i64 {
        let e: i64 = self.even.iter().map(|(v, &e)| v.cohdeg() * e as i64).sum();
        let o: i64 = self.odd.iter().map(|v| v.cohdeg()).sum();
        e + o
    }

    pub fn fd(&self) -> i64 {
        let e: i64 = self.even.iter().map(|(v, &e)| v.fd() * e as i64).sum();
        let o: i64 = self.odd.iter().map(|v| v.fd()).sum();
        e + o
    }

    pub fn max_level(&self) -> u32 {
        self.even
            .keys()
            .chain(self.odd.iter())
            .map(|v| v.level)
            .max()
            .unwrap_or(0)
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        match v.parity() {
            Parity::Even => self.even.get(v).copied().unwrap_or(0),
            Parity::Odd => u32::from(self.odd.contains(v)),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.even
            .iter()
            .map(|(v, e)| (*v, *e))
            .chain(self.odd.iter().map(|v| (*v, 1)))
    }

    /// Product with Koszul sign; `None` when a parity-odd variable repeats.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(i32, SuperMonomial)> {
        let mut even = self.even.clone();
        for (v, e) in &other.even {
            *even.entry(*v).or_insert(0) += e;
        }
        // merge odd sequences, counting transpositions
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut sign = 1i32;
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.odd.len() && j < other.odd.len() {
            match self.odd[i].cmp(&other.odd[j]) {
                Ordering::Less => {
                    odd.push(self.odd[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    // other.odd[j] moves past the remaining entries of self.odd
                    if (self.odd.len() - i) % 2 == 1 {
                        sign = -sign;
                    }
                    odd.push(other.odd[j]);
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        odd.extend_from_slice(&self.odd[i..]);
        odd.extend_from_slice(&other.odd[j..]);
        Some((sign, SuperMonomial { even, odd }))
    }

    /// Lexicographic comparison in the rendering variable order
    /// (`x`-symbols first), higher exponent on an earlier variable wins.
    pub fn render_lex_cmp(&self, other: &SuperMonomial) -> Ordering {
        let mut a: Vec<(Variable, u32)> = self.vars().collect();
        let mut b: Vec<(Variable, u32)> = other.vars().collect();
        a.sort_by_key(|(v, _)| v.render_key());
        b.sort_by_key(|(v, _)| v.render_key());
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.render_key().cmp(&vb.render_key()) {
                    // earlier variable present only on one side: that side is larger
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Koszul sign for laying the odd variables out in rendering order.
    fn render_sign(&self) -> i32 {
        let mut perm: Vec<usize> = (0..self.odd.len()).collect();
        perm.sort_by_key(|&i| self.odd[i].render_key());
        permutation_sign(&perm)
    }
}

/// Sign of the permutation given as the image list of `0..n`.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1i32;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Homogeneity report for one grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity<T> {
    /// The zero polynomial is homogeneous of every degree.
    Any,
    Value(T),
    Mixed,
}

impl<T: fmt::Display> fmt::Display for Homogeneity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homogeneity::Any => write!(f, "any"),
            Homogeneity::Value(v) => write!(f, "{v}"),
            Homogeneity::Mixed => write!(f, "mixed"),
        }
    }
}

fn homogeneity<T: PartialEq + Copy, I: Iterator<Item = T>>(mut it: I) -> Homogeneity<T> {
    match it.next() {
        None => Homogeneity::Any,
        Some(first) => {
            if it.all(|v| v == first) {
                Homogeneity::Value(first)
            } else {
                Homogeneity::Mixed
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees {
    pub cohomological: Homogeneity<i64>,
    /// Minimum filtration degree over the terms (`Any` for zero).
    pub filtration: Homogeneity<i64>,
    pub parity: Homogeneity<Parity>,
}

/// Internal grading: positive weights on the `x`-variables. The dual `xi`
/// symbol carries the negated weight of its `x` twin, which keeps the
/// tri-degree slices used by the linear solver finite-dimensional.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InternalGrading {
    pub weights: BTreeMap<Variable, i64>,
}

impl InternalGrading {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: Variable, w: i64) {
        assert!(v.kind == VarKind::Even && w > 0, "weights live on x-variables and are positive");
        self.weights.insert(v, w);
    }

    pub fn weight(&self, v: &Variable) -> Option<i64> {
        let w = self.weights.get(&v.even_twin())?;
        Some(match v.kind {
            VarKind::Even => *w,
            VarKind::Odd => -*w,
        })
    }

    pub fn monomial_degree(&self, m: &SuperMonomial) -> Option<i64> {
        let mut d = 0i64;
        for (v, e) in m.vars() {
            d += self.weight(&v)? * e as i64;
        }
        Some(d)
    }
}

/// Sparse super-polynomial: canonical monomials with nonzero rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<SuperMonomial, Rational>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(SuperMonomial::unit(), c);
        p
    }

    pub fn var(v: Variable) -> Self {
        let mut p = Self::zero();
        p.add_term(SuperMonomial::var(v), Rational::one());
        p
    }

    pub fn monomial(m: SuperMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SuperMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = Self::zero();
        for (m, a) in &self.terms {
            p.terms.insert(m.clone(), a * c);
        }
        p
    }

    pub fn mul(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.mul(mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SuperPolynomial {
        let mut out = SuperPolynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Graded derivative acting from the left.
    pub fn left_deriv(&self, v: &Variable) -> SuperPolynomial {
        self.deriv(v, true)
    }

    /// Graded derivative acting from the right.
    pub fn right_deriv(&self, v: &Variable) -> SuperPolynomial {
        self.deriv(v, false)
    }

    fn deriv(&self, v: &Variable, from_left: bool) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        match v.parity() {
            Parity::Even => {
                for (m, c) in &self.terms {
                    let e = m.even.get(v).copied().unwrap_or(0);
                    if e == 0 {
                        continue;
                    }
                    let mut m2 = m.clone();
                    if e == 1 {
                        m2.even.remove(v);
                    } else {
                        m2.even.insert(*v, e - 1);
                    }
                    out.add_term(m2, c * rat(e as i64));
                }
            }
            Parity::Odd => {
                for (m, c) in &self.terms {
                    let Some(pos) = m.odd.iter().position(|w| w == v) else {
                        continue;
                    };
                    let mut m2 = m.clone();
                    m2.odd.remove(pos);
                    let steps = if from_left { pos } else { m.odd.len() - 1 - pos };
                    let coeff = if steps % 2 == 1 { -c.clone() } else { c.clone() };
                    out.add_term(m2, coeff);
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Degrees {
        Degrees {
            cohomological: homogeneity(self.terms.keys().map(|m| m.cohdeg())),
            filtration: match self.min_fd() {
                None => Homogeneity::Any,
                Some(f) => Homogeneity::Value(f),
            },
            parity: homogeneity(self.terms.keys().map(|m| m.parity())),
        }
    }

    pub fn internal_degree(&self, g: &InternalGrading) -> Option<Homogeneity<i64>> {
        let mut degs = Vec::with_capacity(self.terms.len());
        for m in self.terms.keys() {
            degs.push(g.monomial_degree(m)?);
        }
        Some(homogeneity(degs.into_iter()))
    }

    /// Minimum filtration degree over the terms; `None` for zero.
    pub fn min_fd(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.fd()).min()
    }

    /// Membership in the filtration stage `F^p`: every term has fd >= p.
    pub fn in_filtration(&self, p: i64) -> bool {
        self.min_fd().is_none_or(|f| f >= p)
    }

    pub fn cohdeg_part(&self, d: i64) -> SuperPolynomial {
        self.filter_terms(|m| m.cohdeg() == d)
    }

    pub fn fd_part(&self, d: i64) -> SuperPolynomial {
        self.filter_terms(|m| m.fd() == d)
    }

    pub fn internal_part(&self, g: &InternalGrading, d: i64) -> SuperPolynomial {
        self.filter_terms(|m| g.monomial_degree(m) == Some(d))
    }

    pub fn parity_part(&self, p: Parity) -> SuperPolynomial {
        self.filter_terms(|m| m.parity() == p)
    }

    fn filter_terms<F: Fn(&SuperMonomial) -> bool>(&self, keep: F) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (m, c) in &self.terms {
            if keep(m) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Distinct filtration degrees present, ascending.
    pub fn fd_support(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.terms.keys().map(|m| m.fd()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn cohdeg_support(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.terms.keys().map(|m| m.cohdeg()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn max_level(&self) -> u32 {
        self.terms.keys().map(|m| m.max_level()).max().unwrap_or(0)
    }

    /// Sets to zero every variable matched by `pred`.
    pub fn kill_vars<F: Fn(&Variable) -> bool>(&self, pred: F) -> SuperPolynomial {
        self.filter_terms(|m| !m.vars().any(|(v, _)| pred(&v)))
    }

    /// Substitution of commuting (parity-even) variables by polynomials.
    /// Every variable of the monomials being replaced must be parity-even.
    pub fn substitute(&self, map: &BTreeMap<Variable, SuperPolynomial>) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = SuperPolynomial::constant(c.clone());
            let mut rest = SuperMonomial::unit();
            rest.odd = m.odd.clone();
            for (v, e) in &m.even {
                match map.get(v) {
                    Some(p) => acc = acc.mul(&p.pow(*e)),
                    None => {
                        rest.even.insert(*v, *e);
                    }
                }
            }
            out = &out + &acc.mul(&SuperPolynomial::monomial(rest, Rational::one()));
        }
        out
    }

    /// Canonical text rendering: terms in descending lexicographic order of
    /// the rendering variable order, coefficients as `num/den` (`/1` omitted).
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut items: Vec<(&SuperMonomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let sign = m.render_sign();
                (m, if sign < 0 { -c.clone() } else { c.clone() })
            })
            .collect();
        items.sort_by(|a, b| b.0.render_lex_cmp(a.0));
        let mut out = String::new();
        for (i, (m, c)) in items.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&format_rational(&abs));
            if !m.is_unit() {
                out.push_str(" * ");
                out.push_str(&render_vars(m));
            }
        }
        out
    }
}

fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_vars(m: &SuperMonomial) -> String {
    let mut vars: Vec<(Variable, u32)> = m.vars().collect();
    vars.sort_by_key(|(v, _)| v.render_key());
    vars.iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

impl std::ops::Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&-rat(1))
    }
}

impl std::ops::Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::mul(self, rhs)
    }
}
