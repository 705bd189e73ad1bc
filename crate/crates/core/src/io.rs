//! JSON and DOT formats. Vertices are 1-based in every external format.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::poly::{parse_rational, ParseError, Poly};
use crate::qp::{Arrow, QpError, QuiverWithPotential};
use crate::quantum::{parse_qc, qc_string, QuantumError, TruncatedSeries};
use crate::quiver::{ExchangeMatrix, QuiverError};
use crate::seed::{Coefficients, ExchangeGraph, Seed, SeedError, Universal};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Integer written as a JSON number when it fits in `i64`, as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) => s.serialize_i64(x),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(x.into()))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(x.into()))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JsonInt, E> {
                s.trim().parse().map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn bigs(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn matrix_json(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.to_rows().iter().map(|r| ints(r)).collect()
}

pub fn matrix_from_json(rows: &[Vec<JsonInt>], cols: usize) -> Result<IntMatrix, IoError> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(IoError::Shape(format!("every row must have {cols} entries")));
    }
    Ok(IntMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j].0.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub m: usize,
    pub n: usize,
    pub matrix: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<JsonInt>>,
}

impl QuiverJson {
    /// The symmetrizer is written only when some entry differs from 1.
    pub fn from_matrix(b: &ExchangeMatrix) -> Self {
        let d = b.symmetrizer();
        QuiverJson {
            m: b.m(),
            n: b.n(),
            matrix: matrix_json(b.matrix()),
            symmetrizer: d.iter().any(|x| x != &BigInt::from(1)).then(|| ints(d)),
        }
    }

    pub fn to_matrix(&self) -> Result<ExchangeMatrix, IoError> {
        if self.matrix.len() != self.m {
            return Err(IoError::Shape(format!("matrix has {} rows, expected m = {}", self.matrix.len(), self.m)));
        }
        let b = matrix_from_json(&self.matrix, self.n)?;
        Ok(match &self.symmetrizer {
            Some(d) => ExchangeMatrix::with_symmetrizer(b, bigs(d))?,
            None => ExchangeMatrix::new(b)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "values", rename_all = "lowercase")]
pub enum CoefficientsJson {
    /// Exponent vectors in the tropical generators.
    Tropical(Vec<Vec<JsonInt>>),
    /// Rational strings in `x1..xn, y1..yn`.
    Universal(Vec<String>),
}

/// A quiver, optionally with a cluster and coefficients; missing parts default to the initial seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    #[serde(flatten)]
    pub quiver: QuiverJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientsJson>,
}

impl SeedJson {
    pub fn from_seed(seed: &Seed) -> Self {
        let coefficients = match seed.coefficients() {
            Coefficients::Tropical(v) => CoefficientsJson::Tropical(v.iter().map(|t| ints(&t.0)).collect()),
            Coefficients::Universal(_) => CoefficientsJson::Universal(seed.coefficient_strings()),
        };
        SeedJson {
            quiver: QuiverJson::from_matrix(seed.matrix()),
            cluster: Some(seed.cluster_strings()),
            coefficients: Some(coefficients),
        }
    }

    pub fn to_seed(&self) -> Result<Seed, IoError> {
        let b = self.quiver.to_matrix()?;
        let base = match &self.coefficients {
            None => Seed::initial(&b),
            Some(CoefficientsJson::Tropical(v)) => Seed::with_tropical(&b, v.iter().map(|x| bigs(x)).collect())?,
            Some(CoefficientsJson::Universal(_)) => Seed::with_universal(&b)?,
        };
        let names = base.names().to_vec();
        let coeffs = match &self.coefficients {
            Some(CoefficientsJson::Universal(v)) => Coefficients::Universal(
                v.iter().map(|s| Ok(Universal(parse_rational(s, &names)?))).collect::<Result<_, IoError>>()?,
            ),
            _ => base.coefficients().clone(),
        };
        let cluster = match &self.cluster {
            Some(v) => v.iter().map(|s| parse_rational(s, &names)).collect::<Result<Vec<_>, _>>()?,
            None => base.cluster().to_vec(),
        };
        Ok(Seed::from_parts(b, cluster, coeffs, names)?)
    }
}

/// Parses either a bare quiver or a full seed.
pub fn parse_seed(text: &str) -> Result<Seed, IoError> {
    serde_json::from_str::<SeedJson>(text)?.to_seed()
}

pub fn parse_quiver(text: &str) -> Result<ExchangeMatrix, IoError> {
    serde_json::from_str::<QuiverJson>(text)?.to_matrix()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalJson {
    pub c: Vec<Vec<JsonInt>>,
    pub g: Vec<Vec<JsonInt>>,
    pub f: Vec<String>,
}

impl TropicalJson {
    pub fn new(c: &IntMatrix, g: &IntMatrix, f: &[Poly]) -> Self {
        let names = crate::tropical::f_names(c.rows());
        TropicalJson { c: matrix_json(c), g: matrix_json(g), f: f.iter().map(|p| p.display_with(&names)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub alpha: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(rename = "N")]
    pub order: u32,
    pub terms: Vec<SeriesTerm>,
}

impl SeriesJson {
    pub fn from_series(s: &TruncatedSeries) -> Self {
        SeriesJson {
            order: s.order(),
            terms: s.terms().map(|(a, c)| SeriesTerm { alpha: a.clone(), coeff: qc_string(c) }).collect(),
        }
    }

    /// Rebuilds the series over the given skew form.
    pub fn to_series(&self, form: &IntMatrix) -> Result<TruncatedSeries, IoError> {
        let mut s = TruncatedSeries::zero(form, self.order);
        for t in &self.terms {
            if t.alpha.len() != form.rows() {
                return Err(IoError::Shape(format!("exponent {:?} has the wrong length", t.alpha)));
            }
            s = s.add(&TruncatedSeries::monomial(form, self.order, t.alpha.clone(), parse_qc(&t.coeff)?));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub cycle: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpJson {
    pub vertices: usize,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub potential: Vec<CycleJson>,
    #[serde(default = "default_qp_truncation")]
    pub truncation: usize,
}

fn default_qp_truncation() -> usize {
    crate::qp::DEFAULT_QP_TRUNCATION
}

fn parse_rational_number(s: &str) -> Result<BigRational, IoError> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((a, b)) => a.trim().parse::<BigInt>().ok().zip(b.trim().parse::<BigInt>().ok()).filter(|(_, d)| d != &BigInt::from(0)),
        None => s.parse::<BigInt>().ok().map(|a| (a, BigInt::from(1))),
    };
    parsed.map(|(a, b)| BigRational::new(a, b)).ok_or_else(|| IoError::Shape(format!("bad rational coefficient {s:?}")))
}

impl QpJson {
    pub fn from_qp(qp: &QuiverWithPotential) -> Self {
        QpJson {
            vertices: qp.vertices(),
            arrows: qp
                .arrows()
                .iter()
                .map(|a| ArrowJson { name: a.name.clone(), source: a.source + 1, target: a.target + 1 })
                .collect(),
            potential: qp
                .potential_terms()
                .into_iter()
                .map(|(cycle, c)| CycleJson { cycle, coeff: c.to_string() })
                .collect(),
            truncation: qp.truncation(),
        }
    }

    pub fn to_qp(&self) -> Result<QuiverWithPotential, IoError> {
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            if a.source == 0 || a.target == 0 {
                return Err(IoError::Shape(format!("arrow {} uses vertex 0; vertices are 1-based", a.name)));
            }
            arrows.push(Arrow { name: a.name.clone(), source: a.source - 1, target: a.target - 1 });
        }
        let mut qp = QuiverWithPotential::new(self.vertices, arrows, self.truncation)?;
        for t in &self.potential {
            let names: Vec<&str> = t.cycle.iter().map(String::as_str).collect();
            qp.add_cycle(&names, parse_rational_number(&t.coeff)?)?;
        }
        Ok(qp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNodeJson {
    pub digest: String,
    pub cluster: Vec<String>,
    pub neighbors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: usize,
    pub truncated: bool,
    pub infinite_type: bool,
    /// Sorted by digest; neighbour lists are sorted and deduplicated.
    pub nodes: Vec<GraphNodeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &ExchangeGraph) -> Self {
        let digests: Vec<String> = (0..g.len()).map(|i| g.digest(i)).collect();
        let mut adjacency: Vec<Vec<String>> = vec![Vec::new(); g.len()];
        for &(i, j) in &g.edges {
            adjacency[i].push(digests[j].clone());
            adjacency[j].push(digests[i].clone());
        }
        let mut nodes: Vec<GraphNodeJson> = (0..g.len())
            .map(|i| {
                let mut neighbors = std::mem::take(&mut adjacency[i]);
                neighbors.sort();
                neighbors.dedup();
                GraphNodeJson { digest: digests[i].clone(), cluster: g.seeds[i].cluster_strings(), neighbors }
            })
            .collect();
        nodes.sort_by(|a, b| a.digest.cmp(&b.digest));
        GraphJson { vertices: g.len(), edges: g.edges.len(), truncated: g.truncated, infinite_type: g.infinite_type, nodes }
    }
}

/// Undirected DOT graph with nodes and edges sorted by digest.
pub fn graph_dot(g: &ExchangeGraph) -> String {
    let json = GraphJson::from_graph(g);
    let mut out = String::from("graph exchange {\n");
    for node in &json.nodes {
        let label = node.cluster.join(", ").replace('"', "\\\"");
        out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", node.digest, label));
    }
    let mut edges: Vec<(String, String)> = g
        .edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (g.digest(i), g.digest(j));
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect();
    edges.sort();
    edges.dedup();
    for (a, b) in edges {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::three_cycle;
    use crate::quantum::qdilog;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big = JsonInt("123456789012345678901234567890".parse().unwrap());
        let s = serde_json::to_string(&vec![big.clone(), JsonInt(BigInt::from(-3))]).unwrap();
        assert_eq!(s, "[\"123456789012345678901234567890\",-3]");
        let back: Vec<JsonInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0], big);
    }

    #[test]
    fn seed_round_trip() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        for seed in [Seed::initial(&b), Seed::with_universal(&b).unwrap()] {
            let seed = seed.mutate(0).unwrap().mutate(1).unwrap();
            let text = serde_json::to_string(&SeedJson::from_seed(&seed)).unwrap();
            let back = parse_seed(&text).unwrap();
            assert_eq!(back, seed);
            assert_eq!(serde_json::to_string(&SeedJson::from_seed(&back)).unwrap(), text);
        }
    }

    #[test]
    fn bare_quiver_is_initial_seed() {
        let seed = parse_seed(r#"{"m": 2, "n": 2, "matrix": [[0, 1], [-1, 0]]}"#).unwrap();
        assert_eq!(seed.cluster_strings(), ["x1", "x2"]);
        let b = parse_quiver(r#"{"m": 2, "n": 2, "matrix": [[0, 1], [-2, 0]], "symmetrizer": [2, 1]}"#).unwrap();
        assert_eq!(b.symmetrizer(), [BigInt::from(2), BigInt::from(1)]);
        assert!(parse_quiver(r#"{"m": 3, "n": 2, "matrix": [[0, 1], [-1, 0]]}"#).is_err());
    }

    #[test]
    fn series_and_qp_round_trip() {
        let form = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]);
        let s = qdilog(&form, &[1, 1], 4).unwrap();
        let json = SeriesJson::from_series(&s);
        assert_eq!(json.to_series(&form).unwrap(), s);
        let qp = three_cycle(12).with_cycle(&["a", "b", "c"], 2).unwrap();
        let text = serde_json::to_string(&QpJson::from_qp(&qp)).unwrap();
        assert_eq!(serde_json::from_str::<QpJson>(&text).unwrap().to_qp().unwrap(), qp);
    }
}
