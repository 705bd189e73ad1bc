//! Exchange matrices, valued quivers and their mutation.
//!
//! An [`ExchangeMatrix`] is an `m x n` integer matrix whose top `n x n` block
//! (the principal part) is skew-symmetrizable. Rows `n..m` belong to frozen
//! vertices. Vertices are 0-based throughout the library.

mod canonical;
mod class;
mod dynkin;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{pos, IntMatrix};

pub use canonical::CanonicalForm;
pub use class::MutationClass;
pub use dynkin::{ClusterType, DynkinType, InfiniteWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("principal part is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("symmetrizer {0:?} does not make the principal part skew-symmetric")]
    SymmetrizerMismatch(Vec<BigInt>),
    #[error("vertex {vertex} out of range (mutable vertices: {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("valuation ({0},{1}) must have positive entries")]
    BadValuation(BigInt, BigInt),
    #[error("arrow {0} -> {1} is a loop")]
    Loop(usize, usize),
    #[error("arrows between {0} and {1} in both directions")]
    TwoCycle(usize, usize),
}

/// Extended exchange matrix with a recorded symmetrizer of its principal part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    b: IntMatrix,
    d: Vec<BigInt>,
}

/// Ice matrices are exchange matrices with frozen rows.
pub type IceMatrix = ExchangeMatrix;

impl ExchangeMatrix {
    /// Validates `b` (`m x n`, `m >= n`) and records the minimal symmetrizer.
    pub fn new(b: IntMatrix) -> Result<Self, QuiverError> {
        if b.rows() < b.cols() {
            return Err(QuiverError::ShapeMismatch(format!(
                "{} rows but {} columns; frozen rows go below the principal part",
                b.rows(),
                b.cols()
            )));
        }
        let d = find_symmetrizer(&b.row_block(0, b.cols())).ok_or(QuiverError::NotSkewSymmetrizable)?;
        Ok(ExchangeMatrix { b, d })
    }

    /// Like [`ExchangeMatrix::new`] but with a caller-supplied symmetrizer.
    pub fn with_symmetrizer(b: IntMatrix, d: Vec<BigInt>) -> Result<Self, QuiverError> {
        if b.rows() < b.cols() || d.len() != b.cols() {
            return Err(QuiverError::ShapeMismatch("symmetrizer length must equal the number of columns".into()));
        }
        let n = b.cols();
        let ok = d.iter().all(|x| x.is_positive())
            && (0..n).all(|i| (0..n).all(|j| &d[i] * &b[(i, j)] == -(&d[j] * &b[(j, i)])));
        if !ok {
            return Err(QuiverError::SymmetrizerMismatch(d));
        }
        Ok(ExchangeMatrix { b, d })
    }

    /// Convenience constructor from small integer rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, QuiverError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// Square matrix from a list of arrows `i -> j` between mutable vertices (multiplicity by repetition).
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        Self::from_ice_arrows(n, n, arrows)
    }

    /// `m x n` matrix from arrows on `m` vertices of which the first `n` are mutable.
    /// Arrows between two frozen vertices are ignored.
    pub fn from_ice_arrows(m: usize, n: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut b = IntMatrix::zeros(m, n);
        for &(s, t) in arrows {
            if s >= m || t >= m {
                return Err(QuiverError::VertexOutOfRange { vertex: s.max(t), n: m });
            }
            if s == t {
                return Err(QuiverError::Loop(s, t));
            }
            if t < n {
                b[(s, t)] += 1;
            }
            if s < n {
                b[(t, s)] -= 1;
            }
        }
        Self::new(b)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.d
    }

    /// Number of mutable vertices.
    pub fn n(&self) -> usize {
        self.b.cols()
    }

    /// Total number of vertices, frozen included.
    pub fn m(&self) -> usize {
        self.b.rows()
    }

    pub fn is_square(&self) -> bool {
        self.b.is_square()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.b[(i, j)]
    }

    pub fn principal(&self) -> ExchangeMatrix {
        let n = self.n();
        ExchangeMatrix { b: self.b.row_block(0, n), d: self.d.clone() }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.b.row_block(0, self.n()).is_skew_symmetric()
    }

    /// `[B; I]`: the principal part with one frozen vertex per mutable vertex.
    pub fn principal_framing(&self) -> ExchangeMatrix {
        let n = self.n();
        ExchangeMatrix { b: self.b.row_block(0, n).vstack(&IntMatrix::identity(n)), d: self.d.clone() }
    }

    pub fn check_vertex(&self, k: usize) -> Result<(), QuiverError> {
        if k >= self.n() {
            return Err(QuiverError::VertexOutOfRange { vertex: k, n: self.n() });
        }
        Ok(())
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, QuiverError> {
        self.check_vertex(k)?;
        Ok(ExchangeMatrix { b: mutate_matrix(&self.b, k), d: self.d.clone() })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<ExchangeMatrix, QuiverError> {
        let mut cur = self.clone();
        for &k in seq {
            cur = cur.mutate(k)?;
        }
        Ok(cur)
    }

    /// Cartan companion: 2 on the diagonal, `-|b_ij|` off it.
    pub fn cartan_companion(&self) -> IntMatrix {
        let n = self.n();
        IntMatrix::from_fn(n, n, |i, j| if i == j { BigInt::from(2) } else { -self.b[(i, j)].abs() })
    }

    /// Opposite quiver: all arrows reversed.
    pub fn opposite(&self) -> ExchangeMatrix {
        ExchangeMatrix { b: self.b.neg(), d: self.d.clone() }
    }

    /// Langlands dual `-B^T`, defined for square matrices.
    pub fn langlands_dual(&self) -> Result<ExchangeMatrix, QuiverError> {
        if !self.is_square() {
            return Err(QuiverError::NotSquare);
        }
        ExchangeMatrix::new(self.b.transpose().neg())
    }

    /// Simultaneous relabelling of mutable vertices: new vertex `i` is old vertex `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> ExchangeMatrix {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let b = IntMatrix::from_fn(self.m(), n, |i, j| {
            let r = if i < n { perm[i] } else { i };
            self.b[(r, perm[j])].clone()
        });
        ExchangeMatrix { b, d: perm.iter().map(|&p| self.d[p].clone()).collect() }
    }

    /// Valued-quiver presentation of this matrix.
    pub fn to_quiver(&self) -> QuiverPresentation {
        let n = self.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (bij, bji) = (&self.b[(i, j)], &self.b[(j, i)]);
                if bij.is_positive() {
                    arrows.push(ValuedArrow { source: i, target: j, valuation: (bij.clone(), -bji) });
                } else if bij.is_negative() {
                    arrows.push(ValuedArrow { source: j, target: i, valuation: (bji.clone(), -bij) });
                }
            }
        }
        for f in n..self.m() {
            for j in 0..n {
                let x = &self.b[(f, j)];
                let v = (x.abs(), x.abs());
                if x.is_positive() {
                    arrows.push(ValuedArrow { source: f, target: j, valuation: v });
                } else if x.is_negative() {
                    arrows.push(ValuedArrow { source: j, target: f, valuation: v });
                }
            }
        }
        QuiverPresentation { mutable: n, frozen: self.m() - n, arrows }
    }

    /// Graphviz rendering; frozen vertices are boxes, valuations other than (1,1) label the arrow.
    /// Vertex names are 1-based.
    pub fn to_dot(&self) -> String {
        self.to_quiver().to_dot()
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.b)
    }
}

/// Matrix mutation of an `m x n` matrix in direction `k < n`.
pub fn mutate_matrix(b: &IntMatrix, k: usize) -> IntMatrix {
    assert!(k < b.cols());
    IntMatrix::from_fn(b.rows(), b.cols(), |i, j| {
        let x = &b[(i, j)];
        if i == k || j == k {
            -x
        } else {
            let (bik, bkj) = (&b[(i, k)], &b[(k, j)]);
            let prod = pos(&(bik * bkj));
            if prod.is_zero() {
                x.clone()
            } else if bik.is_positive() {
                x + prod
            } else {
                x - prod
            }
        }
    })
}

/// Minimal positive integral `d` with `d_i b_ij = -d_j b_ji`, or `None` if `b` is not skew-symmetrizable.
pub fn find_symmetrizer(b: &IntMatrix) -> Option<Vec<BigInt>> {
    if !b.is_square() {
        return None;
    }
    let n = b.rows();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut out = vec![BigInt::zero(); n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        if !b[(root, root)].is_zero() {
            return None;
        }
        d[root] = Some(BigRational::one());
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                let (bij, bji) = (&b[(i, j)], &b[(j, i)]);
                if bij.is_zero() && bji.is_zero() {
                    continue;
                }
                if bij.is_zero() || bji.is_zero() || bij.signum() == bji.signum() {
                    return None;
                }
                // d_j = -d_i b_ij / b_ji
                let dj = -&di * BigRational::new(bij.clone(), bji.clone());
                match &d[j] {
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let lcm = comp.iter().fold(BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().unwrap().denom()));
        let ints: Vec<BigInt> = comp.iter().map(|&i| (d[i].as_ref().unwrap() * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, x) in comp.iter().zip(ints) {
            out[i] = x / &g;
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedArrow {
    pub source: usize,
    pub target: usize,
    /// `(b_st, -b_ts)`.
    pub valuation: (BigInt, BigInt),
}

/// A valued quiver: at most one valued arrow per pair of vertices, no loops or 2-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub mutable: usize,
    pub frozen: usize,
    pub arrows: Vec<ValuedArrow>,
}

impl QuiverPresentation {
    /// Converts back to a matrix; checks the no-loop / no-2-cycle conditions.
    pub fn to_matrix(&self) -> Result<ExchangeMatrix, QuiverError> {
        let n = self.mutable;
        let m = n + self.frozen;
        let mut b = IntMatrix::zeros(m, n);
        let mut seen = std::collections::HashSet::new();
        for a in &self.arrows {
            let (s, t) = (a.source, a.target);
            if s >= m || t >= m {
                return Err(QuiverError::VertexOutOfRange { vertex: s.max(t), n: m });
            }
            if s == t {
                return Err(QuiverError::Loop(s, t));
            }
            let (v1, v2) = &a.valuation;
            if !v1.is_positive() || !v2.is_positive() {
                return Err(QuiverError::BadValuation(v1.clone(), v2.clone()));
            }
            if !seen.insert((s.min(t), s.max(t))) {
                return Err(QuiverError::TwoCycle(s, t));
            }
            if t < n {
                b[(s, t)] = v1.clone();
            }
            if s < n {
                b[(t, s)] = -v2.clone();
            }
        }
        ExchangeMatrix::new(b)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in 0..self.mutable + self.frozen {
            let shape = if v < self.mutable { "circle" } else { "box" };
            s.push_str(&format!("  {} [shape={shape}];\n", v + 1));
        }
        for a in &self.arrows {
            let (v1, v2) = &a.valuation;
            if v1.is_one() && v2.is_one() {
                s.push_str(&format!("  {} -> {};\n", a.source + 1, a.target + 1));
            } else {
                s.push_str(&format!("  {} -> {} [label=\"({v1},{v2})\"];\n", a.source + 1, a.target + 1));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn em(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_two_mutation() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        assert_eq!(b.mutate(0).unwrap(), em(&[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn ice_mutation_updates_frozen_rows() {
        // Principal framing of 1 -> 2, mutated at 1.
        let b = em(&[&[0, 1], &[-1, 0], &[1, 0], &[0, 1]]);
        let m = b.mutate(0).unwrap();
        assert_eq!(m, em(&[&[0, -1], &[1, 0], &[-1, 1], &[0, 1]]));
        assert_eq!(m.mutate(0).unwrap(), b);
    }

    #[test]
    fn symmetrizers() {
        let b3 = em(&[&[0, 1, 0], &[-1, 0, 1], &[0, -2, 0]]);
        assert_eq!(b3.symmetrizer(), ints(&[2, 2, 1]).as_slice());
        let c3 = b3.langlands_dual().unwrap();
        assert_eq!(c3, em(&[&[0, 1, 0], &[-1, 0, 2], &[0, -1, 0]]));
        assert_eq!(c3.symmetrizer(), ints(&[1, 1, 2]).as_slice());
        assert_eq!(em(&[&[0, 1], &[-3, 0]]).symmetrizer(), ints(&[3, 1]).as_slice());
        assert_eq!(em(&[&[0, 0], &[0, 0]]).symmetrizer(), ints(&[1, 1]).as_slice());
    }

    #[test]
    fn rejects_non_symmetrizable() {
        assert_eq!(
            ExchangeMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            Err(QuiverError::NotSkewSymmetrizable)
        );
        assert_eq!(
            ExchangeMatrix::from_rows(&[vec![0, 1], vec![0, 0]]),
            Err(QuiverError::NotSkewSymmetrizable)
        );
        // Cycle whose valuations are inconsistent.
        let b = vec![vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]];
        assert_eq!(ExchangeMatrix::from_rows(&b), Err(QuiverError::NotSkewSymmetrizable));
    }

    #[test]
    fn mutation_preserves_symmetrizer() {
        let b = em(&[&[0, 1, 0], &[-1, 0, 1], &[0, -2, 0]]);
        for k in 0..3 {
            let m = b.mutate(k).unwrap();
            assert_eq!(find_symmetrizer(m.matrix()).unwrap(), b.symmetrizer());
        }
    }

    #[test]
    fn valued_quiver_round_trip() {
        let b3 = em(&[&[0, 1, 0], &[-1, 0, 1], &[0, -2, 0]]);
        let q = b3.to_quiver();
        assert_eq!(q.arrows.len(), 2);
        assert_eq!(q.arrows[1].valuation, (BigInt::from(1), BigInt::from(2)));
        assert_eq!(q.to_matrix().unwrap(), b3);
        let dot = b3.to_dot();
        assert!(dot.contains("2 -> 3 [label=\"(1,2)\"]"));
        assert!(dot.contains("1 -> 2;"));
    }

    #[test]
    fn dot_marks_frozen_vertices() {
        let b = em(&[&[0, 1], &[-1, 0], &[1, 0]]);
        let dot = b.to_dot();
        assert!(dot.contains("3 [shape=box]"));
        assert!(dot.contains("3 -> 1;"));
    }

    #[test]
    fn vertex_out_of_range() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        assert_eq!(b.mutate(2), Err(QuiverError::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn cartan_companion_and_duals() {
        let b = em(&[&[0, 1, 0], &[-1, 0, 1], &[0, -2, 0]]);
        let a = b.cartan_companion();
        assert_eq!(a, IntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]));
        assert_eq!(b.opposite().opposite(), b);
        assert_eq!(b.langlands_dual().unwrap().langlands_dual().unwrap(), b);
    }
}
