//! Problem-file ingestion: a JSON document naming the tensor (by
//! constructor kind), the ideal, optional resolvent data, internal weights
//! and run parameters.

use std::collections::BTreeMap;
use std::path::Path;

use nambu::ideal::IdealPresentation;
use nambu::nambu::NambuTensor;
use nambu::parse::parse_poly;
use nambu::poly::{Rational, SuperPolynomial};
use nambu::resolvent::ResolventTruncation;

use crate::Failure;

pub struct Problem {
    doc: serde_json::Value,
    base_dir: std::path::PathBuf,
    pub depth: Option<u32>,
    pub cap: Option<i64>,
}

pub fn rational_from_str(s: &str) -> Result<Rational, Failure> {
    let p = parse_poly(s).map_err(|e| Failure::parse(format!("rational '{s}': {e}")))?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Ok(Rational::from_integer(0.into())),
        (Some((m, c)), None) if m.is_unit() => Ok(c.clone()),
        _ => Err(Failure::parse(format!("'{s}' is not a rational constant"))),
    }
}

fn parse_tuple(key: &str) -> Result<Vec<u32>, Failure> {
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Failure::parse(format!("bad index tuple '{key}'")))
        })
        .collect()
}

impl Problem {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
        let doc: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Failure::parse(format!("malformed JSON: {e}")))?;
        let depth = doc.get("depth").and_then(|v| v.as_u64()).map(|v| v as u32);
        let cap = doc.get("cap").and_then(|v| v.as_i64());
        Ok(Problem {
            doc,
            base_dir: path.parent().unwrap_or(Path::new(".")).to_path_buf(),
            depth,
            cap,
        })
    }

    fn ideal_gens(&self) -> Result<Option<Vec<String>>, Failure> {
        let node = self.doc.get("ideal").or_else(|| self.doc.get("tensor").and_then(|t| t.get("ideal")));
        match node {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Failure::parse("ideal generators must be strings"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => Err(Failure::parse("'ideal' must be an array of polynomials")),
        }
    }

    pub fn ideal(&self, n: u32) -> Result<Option<IdealPresentation>, Failure> {
        match self.ideal_gens()? {
            None => Ok(None),
            Some(gens) => crate::build_ideal(n, &gens).map(Some),
        }
    }

    pub fn tensor(&self) -> Result<NambuTensor, Failure> {
        let node = self
            .doc
            .get("tensor")
            .ok_or_else(|| Failure::parse("problem file is missing 'tensor'"))?;
        let tensor = tensor_from_json(node)?;
        match self.ideal(tensor.n)? {
            Some(ideal) => Ok(tensor.attach_ideal(ideal)),
            None => Ok(tensor),
        }
    }

    pub fn weights(&self) -> Result<Option<BTreeMap<u32, i64>>, Failure> {
        match self.doc.get("weights") {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(serde_json::Value::Object(map)) => {
                let mut out = BTreeMap::new();
                for (k, v) in map {
                    let i: u32 = k.parse().map_err(|_| Failure::parse(format!("bad weight key '{k}'")))?;
                    let w = v
                        .as_i64()
                        .filter(|&w| w > 0)
                        .ok_or_else(|| Failure::parse(format!("bad weight for '{k}'")))?;
                    out.insert(i, w);
                }
                Ok(Some(out))
            }
            Some(_) => Err(Failure::parse("'weights' must be an object")),
        }
    }

    /// The resolvent named by the problem file, if any: either an inline
    /// object or a path to a resolvent file.
    pub fn resolvent(&self) -> Result<Option<ResolventTruncation>, Failure> {
        match self.doc.get("resolvent") {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(serde_json::Value::String(rel)) => {
                let path = self.base_dir.join(rel);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
                let doc: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| Failure::parse(format!("malformed resolvent JSON: {e}")))?;
                ResolventTruncation::from_json(&doc).map(Some).map_err(Failure::from)
            }
            Some(inline) => ResolventTruncation::from_json(inline).map(Some).map_err(Failure::from),
        }
    }

    /// Koszul truncation from the ideal and the declared weights.
    pub fn koszul(&self) -> Result<ResolventTruncation, Failure> {
        let tensor = self.tensor()?;
        let ideal = tensor
            .ideal
            .clone()
            .ok_or_else(|| Failure::precondition("building a resolvent needs an ideal"))?;
        let weights = self.weights()?;
        ResolventTruncation::koszul(&ideal, weights.as_ref()).map_err(Failure::from)
    }
}

fn tensor_from_json(node: &serde_json::Value) -> Result<NambuTensor, Failure> {
    let kind = node.get("kind").and_then(|v| v.as_str()).unwrap_or("explicit");
    let n = node
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Failure::parse("tensor is missing 'n'"))? as u32;
    let m = node
        .get("m")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Failure::parse("tensor is missing 'm'"))? as u32;
    match kind {
        "explicit" => {
            let mut coeffs = BTreeMap::new();
            if let Some(map) = node.get("coeffs").and_then(|v| v.as_object()) {
                for (key, val) in map {
                    let t = parse_tuple(key)?;
                    let poly = val
                        .as_str()
                        .ok_or_else(|| Failure::parse("tensor coefficients must be strings"))
                        .and_then(|s| {
                            parse_poly(s).map_err(|e| Failure::parse(format!("coefficient '{s}': {e}")))
                        })?;
                    coeffs.insert(t, poly);
                }
            }
            NambuTensor::explicit(n, m, coeffs, None).map_err(Failure::from)
        }
        "diagonal" => {
            let mut c = BTreeMap::new();
            let map = node
                .get("c")
                .and_then(|v| v.as_object())
                .ok_or_else(|| Failure::parse("diagonal tensor needs 'c'"))?;
            for (key, val) in map {
                let t = parse_tuple(key)?;
                let r = val
                    .as_str()
                    .ok_or_else(|| Failure::parse("diagonal coefficients must be strings"))
                    .and_then(rational_from_str)?;
                c.insert(t, r);
            }
            NambuTensor::diagonal(n, m, &c).map_err(Failure::from)
        }
        "determinantal" => {
            let g = match node.get("g") {
                None | Some(serde_json::Value::Null) => SuperPolynomial::one(),
                Some(v) => v
                    .as_str()
                    .ok_or_else(|| Failure::parse("'g' must be a polynomial string"))
                    .and_then(|s| parse_poly(s).map_err(|e| Failure::parse(format!("prefactor: {e}"))))?,
            };
            let casimirs: Vec<SuperPolynomial> = node
                .get("casimirs")
                .and_then(|v| v.as_array())
                .map(|items| {
                    items
                        .iter()
                        .map(|v| {
                            v.as_str()
                                .ok_or_else(|| Failure::parse("casimirs must be strings"))
                                .and_then(|s| {
                                    parse_poly(s).map_err(|e| Failure::parse(format!("casimir '{s}': {e}")))
                                })
                        })
                        .collect()
                })
                .transpose()?
                .unwrap_or_default();
            let derivations: Vec<u32> = node
                .get("derivations")
                .and_then(|v| v.as_array())
                .map(|items| {
                    items
                        .iter()
                        .map(|v| {
                            v.as_u64()
                                .map(|x| x as u32)
                                .ok_or_else(|| Failure::parse("derivations must be coordinate indices"))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?
                .unwrap_or_else(|| (1..=casimirs.len() as u32 + m).collect());
            NambuTensor::determinantal(n, m, &g, &casimirs, &derivations).map_err(Failure::from)
        }
        "outer" => {
            let a = tensor_from_json(
                node.get("a").ok_or_else(|| Failure::parse("outer tensor needs 'a'"))?,
            )?;
            let b = tensor_from_json(
                node.get("b").ok_or_else(|| Failure::parse("outer tensor needs 'b'"))?,
            )?;
            NambuTensor::outer(&a, &b).map_err(Failure::from)
        }
        other => Err(Failure::parse(format!("unknown tensor kind '{other}'"))),
    }
}
