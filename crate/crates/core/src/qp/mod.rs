//! Quivers with potential over `Q`, truncated at a fixed path length.
//!
//! A path is a word of arrows read like a composition of morphisms: in `ab` the
//! arrow `b` comes first. Cycles are stored as their lexicographically smallest
//! rotation with respect to arrow indices.

mod jacobian;
mod mutation;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::quiver::{ExchangeMatrix, QuiverError};

pub use jacobian::{jacobian_dimension, JacobianDimension};
pub use mutation::{mutate_qp, premutation, reduce, Reduction};

pub const DEFAULT_QP_TRUNCATION: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QpError {
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("duplicate arrow name {0}")]
    DuplicateArrow(String),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("loop at vertex {0}")]
    LoopPresent(usize),
    #[error("vertex {0} lies on a 2-cycle")]
    VertexOnTwoCycle(usize),
    #[error("cannot mutate again at vertex {0}: it lies on a 2-cycle")]
    TwoCycleAtVertex(usize),
    #[error("{0} is not a cycle of length at least 2")]
    NotACycle(String),
    #[error("quadratic part cannot be split into 2-cycle pairs")]
    DegenerateQuadraticPart,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path from `source` to `target`; `arrows` is empty for the lazy path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path { source: v, target: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `other`, if composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        (self.source == other.target).then(|| Path {
            source: other.source,
            target: self.target,
            arrows: self.arrows.iter().chain(&other.arrows).copied().collect(),
        })
    }
}

/// Finite linear combination of paths.
pub type PathElement = BTreeMap<Path, BigRational>;

/// Smallest rotation of a cyclic word.
pub fn canonical_rotation(word: &[usize]) -> Vec<usize> {
    (0..word.len().max(1))
        .map(|r| word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverWithPotential {
    vertices: usize,
    arrows: Vec<Arrow>,
    potential: BTreeMap<Vec<usize>, BigRational>,
    truncation: usize,
}

impl QuiverWithPotential {
    /// Quiver with zero potential; names must be unique and there must be no loops.
    pub fn new(vertices: usize, arrows: Vec<Arrow>, truncation: usize) -> Result<Self, QpError> {
        let mut names = HashSet::new();
        for a in &arrows {
            if a.source >= vertices || a.target >= vertices {
                return Err(QpError::BadVertex(a.source.max(a.target)));
            }
            if a.source == a.target {
                return Err(QpError::LoopPresent(a.source));
            }
            if !names.insert(a.name.clone()) {
                return Err(QpError::DuplicateArrow(a.name.clone()));
            }
        }
        Ok(QuiverWithPotential { vertices, arrows, potential: BTreeMap::new(), truncation })
    }

    /// Arrows `a1, a2, ...` read off a skew-symmetric principal part, in row-major order.
    pub fn from_matrix(b: &ExchangeMatrix, truncation: usize) -> Result<Self, QpError> {
        let b = b.principal();
        if !b.is_skew_symmetric() {
            return Err(QuiverError::NotSkewSymmetrizable.into());
        }
        let n = b.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let count = usize::try_from(b.get(i, j)).unwrap_or(0);
                for _ in 0..count {
                    arrows.push(Arrow { name: format!("a{}", arrows.len() + 1), source: i, target: j });
                }
            }
        }
        Self::new(n, arrows, truncation)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn potential(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.potential
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, QpError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| QpError::UnknownArrow(name.to_string()))
    }

    /// Adds `coeff` times the cycle spelled by `names` (a composable cyclic word).
    pub fn add_cycle(&mut self, names: &[&str], coeff: BigRational) -> Result<(), QpError> {
        let word = names.iter().map(|s| self.arrow_index(s)).collect::<Result<Vec<_>, _>>()?;
        if !self.is_cycle(&word) {
            return Err(QpError::NotACycle(names.concat()));
        }
        self.add_term(&word, coeff);
        Ok(())
    }

    pub fn with_cycle(mut self, names: &[&str], coeff: i64) -> Result<Self, QpError> {
        self.add_cycle(names, BigRational::from_integer(BigInt::from(coeff)))?;
        Ok(self)
    }

    fn is_cycle(&self, word: &[usize]) -> bool {
        let m = word.len();
        m >= 2 && (0..m).all(|i| self.arrows[word[i]].source == self.arrows[word[(i + 1) % m]].target)
    }

    pub(crate) fn add_term(&mut self, word: &[usize], coeff: BigRational) {
        if word.len() > self.truncation || coeff.is_zero() {
            return;
        }
        let key = canonical_rotation(word);
        let entry = self.potential.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.potential.remove(&key);
        }
    }

    pub(crate) fn word_path(&self, word: &[usize]) -> Path {
        debug_assert!(!word.is_empty());
        Path { source: self.arrows[*word.last().unwrap()].source, target: self.arrows[word[0]].target, arrows: word.to_vec() }
    }

    /// `sum over p = u a v of v u`, summed over the cycles of the potential.
    pub fn cyclic_derivative(&self, arrow: usize) -> PathElement {
        let mut out = PathElement::new();
        for (word, c) in &self.potential {
            for (i, &x) in word.iter().enumerate() {
                if x != arrow {
                    continue;
                }
                let vu: Vec<usize> = word[i + 1..].iter().chain(&word[..i]).copied().collect();
                let path = self.word_path(&vu);
                *out.entry(path).or_insert_with(BigRational::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `b_ij = #(i -> j) - #(j -> i)`.
    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix, QpError> {
        let n = self.vertices;
        let mut b = IntMatrix::zeros(n, n);
        for a in &self.arrows {
            b[(a.source, a.target)] += 1;
            b[(a.target, a.source)] -= 1;
        }
        Ok(ExchangeMatrix::new(b)?)
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let mut c = vec![vec![0; self.vertices]; self.vertices];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    pub fn on_two_cycle(&self, k: usize) -> bool {
        let c = self.arrow_counts();
        (0..self.vertices).any(|j| c[k][j] > 0 && c[j][k] > 0)
    }

    pub fn has_two_cycles(&self) -> bool {
        (0..self.vertices).any(|k| self.on_two_cycle(k))
    }

    /// Applies `arrow -> linear combination of words` to every cycle, truncating.
    pub(crate) fn substitute(&mut self, map: &HashMap<usize, Vec<(Vec<usize>, BigRational)>>) {
        let old = std::mem::take(&mut self.potential);
        for (word, c) in old {
            let mut partial: Vec<(Vec<usize>, BigRational)> = vec![(vec![], c)];
            for &x in &word {
                let options: Vec<(Vec<usize>, BigRational)> =
                    map.get(&x).cloned().unwrap_or_else(|| vec![(vec![x], BigRational::one())]);
                let mut next = Vec::new();
                for (w, cw) in &partial {
                    for (o, co) in &options {
                        if w.len() + o.len() > self.truncation {
                            continue;
                        }
                        let mut nw = w.clone();
                        nw.extend(o);
                        next.push((nw, cw * co));
                    }
                }
                partial = next;
            }
            for (w, cw) in partial {
                self.add_term(&w, cw);
            }
        }
    }

    /// Keeps the listed arrows (in order), dropping every cycle that uses another one.
    pub(crate) fn restrict(&self, keep: &[usize]) -> QuiverWithPotential {
        let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut out = QuiverWithPotential {
            vertices: self.vertices,
            arrows: keep.iter().map(|&i| self.arrows[i].clone()).collect(),
            potential: BTreeMap::new(),
            truncation: self.truncation,
        };
        for (word, c) in &self.potential {
            if let Some(w) = word.iter().map(|x| index.get(x).copied()).collect::<Option<Vec<_>>>() {
                out.add_term(&w, c.clone());
            }
        }
        out
    }

    pub(crate) fn from_parts(
        vertices: usize,
        arrows: Vec<Arrow>,
        terms: Vec<(Vec<usize>, BigRational)>,
        truncation: usize,
    ) -> Self {
        let mut out = QuiverWithPotential { vertices, arrows, potential: BTreeMap::new(), truncation };
        for (w, c) in terms {
            out.add_term(&w, c);
        }
        out
    }

    /// Potential terms as arrow-name words with their coefficients.
    pub fn potential_terms(&self) -> Vec<(Vec<String>, BigRational)> {
        self.potential
            .iter()
            .map(|(w, c)| (w.iter().map(|&i| self.arrows[i].name.clone()).collect(), c.clone()))
            .collect()
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.arrows[i].name.as_str()).collect()
    }

    pub fn potential_string(&self) -> String {
        element_string(self.potential.iter().map(|(w, c)| (self.word_string(w), c)))
    }

    pub fn path_element_string(&self, p: &PathElement) -> String {
        element_string(p.iter().map(|(path, c)| {
            let s = if path.is_lazy() { format!("e{}", path.source + 1) } else { self.word_string(&path.arrows) };
            (s, c)
        }))
    }
}

fn element_string<'a>(terms: impl Iterator<Item = (String, &'a BigRational)>) -> String {
    let mut out = String::new();
    for (word, c) in terms {
        let neg = c < &BigRational::zero();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&word);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for QuiverWithPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.arrows {
            writeln!(f, "{}: {} -> {}", a.name, a.source + 1, a.target + 1)?;
        }
        write!(f, "W = {}", self.potential_string())
    }
}

/// The oriented 3-cycle `b: 1 -> 2`, `a: 2 -> 3`, `c: 3 -> 1` with zero potential.
pub fn three_cycle(truncation: usize) -> QuiverWithPotential {
    let arrow = |name: &str, source, target| Arrow { name: name.into(), source, target };
    QuiverWithPotential::new(3, vec![arrow("a", 1, 2), arrow("b", 0, 1), arrow("c", 2, 0)], truncation)
        .expect("valid quiver")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn derivatives_of_abc() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
        let d = |name: &str| qp.path_element_string(&qp.cyclic_derivative(qp.arrow_index(name).unwrap()));
        assert_eq!(d("a"), "bc");
        assert_eq!(d("b"), "ca");
        assert_eq!(d("c"), "ab");
    }

    #[test]
    fn derivative_of_square_collects() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c", "a", "b", "c"], 1).unwrap();
        let d = qp.cyclic_derivative(qp.arrow_index("a").unwrap());
        assert_eq!(d.len(), 1);
        assert_eq!(qp.path_element_string(&d), "2*bcabc");
    }

    #[test]
    fn rotations_agree_and_missing_arrow_gives_zero() {
        let x = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
        let y = three_cycle(12).with_cycle(&["c", "a", "b"], 1).unwrap();
        assert_eq!(x, y);
        for i in 0..3 {
            assert_eq!(x.cyclic_derivative(i), y.cyclic_derivative(i));
        }
        let mut z = three_cycle(12);
        z.arrows.push(Arrow { name: "d".into(), source: 0, target: 2 });
        let z = z.with_cycle(&["a", "b", "c"], 1).unwrap();
        assert!(z.cyclic_derivative(3).is_empty());
    }

    #[test]
    fn rejects_non_cycles_and_loops() {
        assert!(matches!(three_cycle(12).with_cycle(&["a", "b"], 1), Err(QpError::NotACycle(_))));
        assert!(matches!(three_cycle(12).with_cycle(&["a", "z"], 1), Err(QpError::UnknownArrow(_))));
        let l = Arrow { name: "l".into(), source: 0, target: 0 };
        assert_eq!(QuiverWithPotential::new(1, vec![l], 4), Err(QpError::LoopPresent(0)));
        let mut t = three_cycle(2);
        t.add_cycle(&["a", "b", "c"], q(1)).unwrap();
        assert!(t.potential().is_empty());
    }
}
