//! Semifree dg-algebra truncations: Koszul level, user-supplied higher
//! levels, and homology-driven Tate extension under an internal-degree cap.
//!
//! A truncation holds, for each level `l >= 1`, the adjoined variables
//! `x_j^{(l)}` together with their differential images `F_j` (polynomials in
//! variables of level `< l`). The differential acts as
//! `d = sum F_j d/dx_j^{(l)}`; it never touches `xi` symbols.

use std::collections::BTreeMap;

use num_traits::One;

use crate::ideal::{enumerate_slice, IdealPresentation};
use crate::linalg::{kernel_basis, Span};
use crate::parse::parse_poly;
use crate::poly::{Homogeneity, InternalGrading, Rational, SuperMonomial, SuperPolynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolventError {
    #[error("internal grading required: {0}")]
    MissingGrading(String),
    #[error("degree cap {cap} too low: level {level} has a homology generator at the cap")]
    CapTooLow { level: u32, cap: i64 },
    #[error("invalid resolvent: {0}")]
    Invalid(String),
    #[error("file format: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjoinedVar {
    pub index: u32,
    pub weight: i64,
    pub image: SuperPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Level {
    pub vars: Vec<AdjoinedVar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolventTruncation {
    pub n: u32,
    /// Weights of all `x`-variables (base and adjoined); `None` disables
    /// internal-degree machinery.
    pub grading: Option<InternalGrading>,
    /// `levels[l-1]` holds level `l`; levels may be empty.
    levels: Vec<Level>,
}

#[derive(Debug, Clone, Default)]
pub struct TateReport {
    /// Number of variables adjoined per extended level.
    pub added: Vec<(u32, usize)>,
    /// Levels whose images all lie in the square of the augmentation ideal.
    pub minimal: bool,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub vars_per_level: Vec<(u32, usize)>,
    pub minimal: bool,
}

impl ResolventTruncation {
    /// The Koszul truncation: one level-1 variable per generator, with the
    /// generator as its image. With base weights given, the generators must
    /// be weighted-homogeneous and the grading extends to level 1.
    pub fn koszul(
        ideal: &IdealPresentation,
        base_weights: Option<&BTreeMap<u32, i64>>,
    ) -> Result<Self, ResolventError> {
        let n = ideal.n();
        let grading = match base_weights {
            None => None,
            Some(w) => {
                let mut g = InternalGrading::new();
                for i in 1..=n {
                    let wi = *w
                        .get(&i)
                        .ok_or_else(|| ResolventError::MissingGrading(format!("no weight for x{i}_0")))?;
                    g.set(Variable::coord(i), wi);
                }
                Some(g)
            }
        };
        let mut level1 = Level::default();
        let mut grading = grading;
        for (j, f) in ideal.generators().iter().enumerate() {
            let index = j as u32 + 1;
            let weight = match &mut grading {
                None => 0,
                Some(g) => match f.internal_degree(g) {
                    Some(Homogeneity::Value(d)) if d > 0 => {
                        g.set(Variable::x(index, 1), d);
                        d
                    }
                    _ => {
                        return Err(ResolventError::MissingGrading(format!(
                            "generator {index} is not weighted-homogeneous of positive degree"
                        )))
                    }
                },
            };
            level1.vars.push(AdjoinedVar { index, weight, image: f.clone() });
        }
        Ok(ResolventTruncation { n, grading, levels: vec![level1] })
    }

    pub fn from_levels(
        n: u32,
        grading: Option<InternalGrading>,
        levels: Vec<Level>,
    ) -> Result<Self, ResolventError> {
        let r = ResolventTruncation { n, grading, levels };
        r.check()?;
        Ok(r)
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, l: u32) -> Option<&Level> {
        if l == 0 {
            return None;
        }
        self.levels.get(l as usize - 1)
    }

    /// All variables (both symbol families) up to the given level, clamped
    /// to the stored truncation.
    pub fn alphabet(&self, max_level: u32) -> Vec<Variable> {
        let mut vars = Vec::new();
        for i in 1..=self.n {
            vars.push(Variable::coord(i));
            vars.push(Variable::xi(i, 0));
        }
        for (l0, level) in self.levels.iter().enumerate() {
            let l = l0 as u32 + 1;
            if l > max_level {
                break;
            }
            for v in &level.vars {
                vars.push(Variable::x(v.index, l));
                vars.push(Variable::xi(v.index, l));
            }
        }
        vars
    }

    /// The differential applied to an arbitrary super-polynomial.
    pub fn differential(&self, p: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (l0, level) in self.levels.iter().enumerate() {
            let l = l0 as u32 + 1;
            for v in &level.vars {
                let d = p.left_deriv(&Variable::x(v.index, l));
                if !d.is_zero() {
                    out = &out + &v.image.mul(&d);
                }
            }
        }
        out
    }

    /// The derivation encoded as a multivector:
    /// `pi0 = sum_{l<=r} sum_j F_j xi^j_(l)`.
    pub fn pi0_le(&self, r: u32) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (l0, level) in self.levels.iter().enumerate() {
            let l = l0 as u32 + 1;
            if l > r {
                break;
            }
            for v in &level.vars {
                let xi = SuperPolynomial::var(Variable::xi(v.index, l));
                out = &out + &v.image.mul(&xi);
            }
        }
        out
    }

    /// Validates all structural invariants; returns per-level statistics.
    pub fn check(&self) -> Result<CheckReport, ResolventError> {
        let mut report = CheckReport { minimal: true, ..Default::default() };
        for (l0, level) in self.levels.iter().enumerate() {
            let l = l0 as u32 + 1;
            let mut seen = std::collections::BTreeSet::new();
            for v in &level.vars {
                if !seen.insert(v.index) {
                    return Err(ResolventError::Invalid(format!(
                        "duplicate variable index {} at level {l}",
                        v.index
                    )));
                }
                let name = Variable::x(v.index, l);
                for (m, _) in v.image.terms() {
                    if !m.odd.iter().all(|w| w.kind == crate::poly::VarKind::Even)
                        || m.vars().any(|(w, _)| w.kind == crate::poly::VarKind::Odd)
                    {
                        return Err(ResolventError::Invalid(format!(
                            "image of {name} contains xi symbols"
                        )));
                    }
                    if m.max_level() >= l {
                        return Err(ResolventError::Invalid(format!(
                            "image of {name} uses variables of level >= {l}"
                        )));
                    }
                    for (w, _) in m.vars() {
                        if w.level == 0 && w.index > self.n {
                            return Err(ResolventError::Invalid(format!(
                                "image of {name} uses out-of-range coordinate {w}"
                            )));
                        }
                        if w.level >= 1 {
                            let defined = self
                                .level(w.level)
                                .is_some_and(|lv| lv.vars.iter().any(|a| a.index == w.index));
                            if !defined {
                                return Err(ResolventError::Invalid(format!(
                                    "image of {name} uses undeclared variable {w}"
                                )));
                            }
                        }
                    }
                }
                if !v.image.is_zero() {
                    match v.image.degrees().cohomological {
                        Homogeneity::Value(c) if c == -(l as i64) + 1 => {}
                        other => {
                            return Err(ResolventError::Invalid(format!(
                                "image of {name} has cohomological degree {other}, expected {}",
                                -(l as i64) + 1
                            )))
                        }
                    }
                    // minimality: image inside the square of the augmentation ideal
                    let decomposable = v
                        .image
                        .terms()
                        .all(|(m, _)| m.vars().map(|(_, e)| e as u64).sum::<u64>() >= 2);
                    if !decomposable {
                        report.minimal = false;
                    }
                }
                if !self.differential(&v.image).is_zero() {
                    return Err(ResolventError::Invalid(format!(
                        "differential does not square to zero on {name}"
                    )));
                }
                if let Some(g) = &self.grading {
                    let declared = g.weight(&name).ok_or_else(|| {
                        ResolventError::MissingGrading(format!("no weight for {name}"))
                    })?;
                    if declared != v.weight {
                        return Err(ResolventError::Invalid(format!(
                            "weight mismatch on {name}: grading says {declared}, level data says {}",
                            v.weight
                        )));
                    }
                    if !v.image.is_zero()
                        && v.image.internal_degree(g) != Some(Homogeneity::Value(v.weight))
                    {
                        return Err(ResolventError::Invalid(format!(
                            "image of {name} is not internally homogeneous of degree {}",
                            v.weight
                        )));
                    }
                }
            }
            report.vars_per_level.push((l, level.vars.len()));
        }
        Ok(report)
    }

    /// Extends the truncation level by level, adjoining one variable per
    /// module-minimal homology generator found in internal degrees up to
    /// `cap`. Homology strictly above the cap is invisible; a generator
    /// sitting exactly at the cap is rejected rather than silently kept,
    /// since generators just above it could be missing.
    pub fn tate_extend(&self, target_level: u32, cap: i64) -> Result<(Self, TateReport), ResolventError> {
        let Some(grading) = self.grading.clone() else {
            return Err(ResolventError::MissingGrading(
                "Tate extension needs an internal grading".into(),
            ));
        };
        let mut out = self.clone();
        let mut grading = grading;
        let mut report = TateReport { minimal: true, ..Default::default() };
        for l in 1..=target_level {
            if (l as usize) <= out.levels.len() {
                continue;
            }
            // homology of the current truncation in cohomological degree -(l-1)
            let alphabet: Vec<Variable> = out
                .alphabet(l - 1)
                .into_iter()
                .filter(|v| v.kind == crate::poly::VarKind::Even)
                .collect();
            let mut new_vars: Vec<AdjoinedVar> = Vec::new();
            let mut chosen: Vec<(i64, SuperPolynomial)> = Vec::new();
            for d in 1..=cap {
                let slice = enumerate_slice(&alphabet, -(l as i64) + 1, 0, d, &grading)
                    .map_err(|e| ResolventError::MissingGrading(e.to_string()))?;
                if slice.is_empty() {
                    continue;
                }
                let domain = enumerate_slice(&alphabet, -(l as i64), 0, d, &grading)
                    .map_err(|e| ResolventError::MissingGrading(e.to_string()))?;
                let index: BTreeMap<&SuperMonomial, usize> =
                    slice.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let to_vec = |p: &SuperPolynomial| -> Vec<Rational> {
                    let mut v = vec![Rational::from_integer(0.into()); slice.len()];
                    for (m, c) in p.terms() {
                        v[index[m]] = c.clone();
                    }
                    v
                };

                // kernel of the differential on this slice
                let mut img_index: BTreeMap<SuperMonomial, usize> = BTreeMap::new();
                let images: Vec<SuperPolynomial> = slice
                    .iter()
                    .map(|m| out.differential(&SuperPolynomial::monomial(m.clone(), Rational::one())))
                    .collect();
                for im in &images {
                    for (mm, _) in im.terms() {
                        let next = img_index.len();
                        img_index.entry(mm.clone()).or_insert(next);
                    }
                }
                let img_rows = img_index.len();
                let cols: Vec<Vec<Rational>> = images
                    .iter()
                    .map(|p| {
                        let mut v = vec![Rational::from_integer(0.into()); img_rows];
                        for (m, c) in p.terms() {
                            v[img_index[m]] = c.clone();
                        }
                        v
                    })
                    .collect();
                let cycles = kernel_basis(&cols, img_rows);

                // reachable subspace: boundaries from one degree up plus
                // S-multiples of the generators already chosen
                let mut reach = Span::new();
                for m in &domain {
                    let b = out.differential(&SuperPolynomial::monomial(m.clone(), Rational::one()));
                    if !b.is_zero() {
                        reach.insert(&to_vec(&b));
                    }
                }
                let coords: Vec<Variable> = (1..=out.n).map(Variable::coord).collect();
                for (dg, g) in &chosen {
                    let mults = enumerate_slice(&coords, 0, 0, d - dg, &grading)
                        .map_err(|e| ResolventError::MissingGrading(e.to_string()))?;
                    for m in mults {
                        let prod = g.mul(&SuperPolynomial::monomial(m, Rational::one()));
                        reach.insert(&to_vec(&prod));
                    }
                }

                for cyc in cycles {
                    if reach.insert(&cyc) {
                        let mut rep = SuperPolynomial::zero();
                        for (c, m) in cyc.iter().zip(&slice) {
                            if !num_traits::Zero::is_zero(c) {
                                rep.add_term(m.clone(), c.clone());
                            }
                        }
                        if d == cap {
                            return Err(ResolventError::CapTooLow { level: l, cap });
                        }
                        chosen.push((d, rep));
                    }
                }
            }
            let mut minimal_here = true;
            for (j, (d, rep)) in chosen.iter().enumerate() {
                let index = j as u32 + 1;
                grading.set(Variable::x(index, l), *d);
                if !rep
                    .terms()
                    .all(|(m, _)| m.vars().map(|(_, e)| e as u64).sum::<u64>() >= 2)
                {
                    minimal_here = false;
                }
                new_vars.push(AdjoinedVar { index, weight: *d, image: rep.clone() });
            }
            report.minimal &= minimal_here;
            report.added.push((l, new_vars.len()));
            out.levels.push(Level { vars: new_vars });
            out.grading = Some(grading.clone());
        }
        out.check()?;
        Ok((out, report))
    }

    // -- file format ---------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        let weights: BTreeMap<String, i64> = match &self.grading {
            None => BTreeMap::new(),
            Some(g) => (1..=self.n)
                .filter_map(|i| g.weight(&Variable::coord(i)).map(|w| (i.to_string(), w)))
                .collect(),
        };
        serde_json::json!({
            "n": self.n,
            "weights": if self.grading.is_some() { serde_json::json!(weights) } else { serde_json::Value::Null },
            "levels": self
                .levels
                .iter()
                .enumerate()
                .map(|(l0, level)| {
                    serde_json::json!({
                        "l": l0 as u32 + 1,
                        "vars": level
                            .vars
                            .iter()
                            .map(|v| {
                                serde_json::json!({
                                    "index": v.index,
                                    "weight": v.weight,
                                    "F": v.image.canonical_text(),
                                })
                            })
                            .collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, ResolventError> {
        let n = value
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| ResolventError::Format("missing field 'n'".into()))? as u32;
        let mut grading = match value.get("weights") {
            None | Some(serde_json::Value::Null) => None,
            Some(w) => {
                let map = w
                    .as_object()
                    .ok_or_else(|| ResolventError::Format("'weights' must be an object".into()))?;
                let mut g = InternalGrading::new();
                for (k, v) in map {
                    let i: u32 = k
                        .parse()
                        .map_err(|_| ResolventError::Format(format!("bad weight key '{k}'")))?;
                    let w = v
                        .as_i64()
                        .filter(|&w| w > 0)
                        .ok_or_else(|| ResolventError::Format(format!("bad weight for '{k}'")))?;
                    g.set(Variable::coord(i), w);
                }
                Some(g)
            }
        };
        let mut levels = Vec::new();
        let raw_levels = value
            .get("levels")
            .and_then(|v| v.as_array())
            .ok_or_else(|| ResolventError::Format("missing field 'levels'".into()))?;
        for (pos, lv) in raw_levels.iter().enumerate() {
            let l = lv
                .get("l")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| ResolventError::Format("level missing field 'l'".into()))?
                as u32;
            if l as usize != pos + 1 {
                return Err(ResolventError::Format(format!(
                    "levels must be contiguous from 1; found {l} at position {}",
                    pos + 1
                )));
            }
            let mut level = Level::default();
            for var in lv
                .get("vars")
                .and_then(|v| v.as_array())
                .ok_or_else(|| ResolventError::Format("level missing 'vars'".into()))?
            {
                let index = var
                    .get("index")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| ResolventError::Format("var missing 'index'".into()))?
                    as u32;
                let weight = var.get("weight").and_then(|v| v.as_i64()).unwrap_or(0);
                let image = var
                    .get("F")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| ResolventError::Format("var missing 'F'".into()))
                    .and_then(|s| {
                        parse_poly(s).map_err(|e| ResolventError::Format(format!("bad polynomial: {e}")))
                    })?;
                if let Some(g) = &mut grading {
                    if weight > 0 {
                        g.set(Variable::x(index, l), weight);
                    }
                }
                level.vars.push(AdjoinedVar { index, weight, image });
            }
            levels.push(level);
        }
        Self::from_levels(n, grading, levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::schouten::schouten;

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s).unwrap()
    }

    fn unit_weights(n: u32) -> BTreeMap<u32, i64> {
        (1..=n).map(|i| (i, 1)).collect()
    }

    fn koszul_ci() -> ResolventTruncation {
        let ideal = IdealPresentation::new(4, vec![p("x1*x2"), p("x3*x4")]).unwrap();
        ResolventTruncation::koszul(&ideal, Some(&unit_weights(4))).unwrap()
    }

    #[test]
    fn koszul_pi0_and_differential() {
        let r = koszul_ci();
        assert_eq!(r.pi0_le(1), p("x1*x2*xi1_1 + x3*x4*xi2_1"));
        assert_eq!(r.differential(&p("x1_1")), p("x1*x2"));
        assert_eq!(r.differential(&p("x1_1*x2_1")), p("x1*x2*x2_1 - x3*x4*x1_1"));
        assert!(r.differential(&r.differential(&p("x1_1*x2_1"))).is_zero());
        r.check().unwrap();
    }

    #[test]
    fn pi0_self_bracket_vanishes() {
        let r = koszul_ci();
        let pi0 = r.pi0_le(1);
        assert!(schouten(&pi0, &pi0).is_zero());
    }

    #[test]
    fn complete_intersection_gets_no_new_variables() {
        let r = koszul_ci();
        let (ext, report) = r.tate_extend(4, 10).unwrap();
        assert_eq!(ext.max_level(), 4);
        for (_, count) in &report.added {
            assert_eq!(*count, 0);
        }
        assert_eq!(ext.pi0_le(4), r.pi0_le(1));
    }

    #[test]
    fn non_ci_produces_the_known_level_two_cycle() {
        let ideal = IdealPresentation::new(4, vec![p("x1^2"), p("x1*x2")]).unwrap();
        let r = ResolventTruncation::koszul(&ideal, Some(&unit_weights(4))).unwrap();
        let (ext, report) = r.tate_extend(2, 10).unwrap();
        assert_eq!(report.added, vec![(2, 1)]);
        let v = &ext.level(2).unwrap().vars[0];
        assert_eq!(v.weight, 3);
        // the cycle x2*x1_1 - x1*x2_1 up to scale
        let img = &v.image;
        assert_eq!(&ext.differential(&p("x1_2")), img);
        assert!(ext.differential(img).is_zero());
        let expected = p("x2*x1_1 - x1*x2_1");
        let alt = p("x1*x2_1 - x2*x1_1");
        assert!(img == &expected || img == &alt, "got {img}");
    }

    #[test]
    fn check_rejects_corrupt_data() {
        // image of a level-1 variable referencing level 1
        let bad = ResolventTruncation::from_levels(
            2,
            None,
            vec![Level {
                vars: vec![AdjoinedVar { index: 1, weight: 0, image: p("x1*x1_1") }],
            }],
        );
        assert!(bad.is_err());
        // differential squaring to something nonzero
        let bad2 = ResolventTruncation::from_levels(
            2,
            None,
            vec![
                Level { vars: vec![AdjoinedVar { index: 1, weight: 0, image: p("x1") }] },
                Level { vars: vec![AdjoinedVar { index: 1, weight: 0, image: p("x2*x1_1") }] },
            ],
        );
        assert!(bad2.is_err());
    }

    #[test]
    fn json_roundtrip() {
        let ideal = IdealPresentation::new(4, vec![p("x1^2"), p("x1*x2")]).unwrap();
        let r = ResolventTruncation::koszul(&ideal, Some(&unit_weights(4))).unwrap();
        let (ext, _) = r.tate_extend(3, 10).unwrap();
        let json = ext.to_json();
        let back = ResolventTruncation::from_json(&json).unwrap();
        assert_eq!(ext, back);
    }
}
