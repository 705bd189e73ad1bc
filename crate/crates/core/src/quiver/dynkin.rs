//! Dynkin recognition of Cartan companions and finite-type detection.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::class::explore;
use super::ExchangeMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

/// Joins component labels, e.g. `A1 x A2`.
pub fn label(components: &[DynkinType]) -> String {
    if components.is_empty() {
        return "empty".into();
    }
    components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" x ")
}

/// Why a matrix is known to be of infinite type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteWitness {
    /// A member of the class has `|b_ij b_ji| >= 4`.
    LargeProduct { matrix: ExchangeMatrix, i: usize, j: usize },
    /// The whole class was enumerated and no member has a Dynkin companion.
    ClassExhausted { class_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterType {
    Finite { components: Vec<DynkinType>, witness: ExchangeMatrix },
    Infinite(InfiniteWitness),
    /// The class exceeded the exploration limit without a decision.
    Undetermined { explored: usize },
}

impl ClusterType {
    pub fn is_finite(&self) -> bool {
        matches!(self, ClusterType::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ClusterType::Infinite(_))
    }

    pub fn label(&self) -> String {
        match self {
            ClusterType::Finite { components, .. } => label(components),
            ClusterType::Infinite(_) => "infinite".into(),
            ClusterType::Undetermined { .. } => "undetermined".into(),
        }
    }
}

impl ExchangeMatrix {
    /// Dynkin type of the Cartan companion of the principal part, if it is of finite type.
    pub fn dynkin_type(&self) -> Option<Vec<DynkinType>> {
        let n = self.n();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            comp_of[s] = id;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if comp_of[w] == usize::MAX && !self.get(v, w).is_zero() {
                        comp_of[w] = id;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        let mut out = Vec::with_capacity(comps.len());
        for comp in comps {
            out.push(self.component_type(&comp)?);
        }
        out.sort();
        Some(out)
    }

    fn component_type(&self, comp: &[usize]) -> Option<DynkinType> {
        let k = comp.len();
        if k == 1 {
            return Some(DynkinType::A(1));
        }
        // Edges with weight |b_ij b_ji|.
        let mut edges: Vec<(usize, usize, u64)> = Vec::new();
        let mut deg = vec![0usize; self.n()];
        for (a, &i) in comp.iter().enumerate() {
            for &j in &comp[a + 1..] {
                let w = (self.get(i, j) * self.get(j, i)).magnitude().to_u64().unwrap_or(u64::MAX);
                if w == 0 {
                    continue;
                }
                if w > 3 {
                    return None;
                }
                edges.push((i, j, w));
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        if edges.len() != k - 1 {
            return None;
        }
        let heavy: Vec<&(usize, usize, u64)> = edges.iter().filter(|e| e.2 > 1).collect();
        let max_deg = comp.iter().map(|&v| deg[v]).max().unwrap_or(0);
        match heavy.as_slice() {
            [] => {
                if max_deg <= 2 {
                    return Some(DynkinType::A(k));
                }
                let branch: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] >= 3).collect();
                if branch.len() != 1 || deg[branch[0]] != 3 {
                    return None;
                }
                let c = branch[0];
                let mut arms: Vec<usize> = edges
                    .iter()
                    .filter_map(|&(i, j, _)| if i == c { Some(j) } else if j == c { Some(i) } else { None })
                    .map(|start| arm_length(&edges, c, start))
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [1, 1, r] => Some(DynkinType::D(r + 3)),
                    [1, 2, 2] => Some(DynkinType::E(6)),
                    [1, 2, 3] => Some(DynkinType::E(7)),
                    [1, 2, 4] => Some(DynkinType::E(8)),
                    _ => None,
                }
            }
            [&(i, j, w)] => {
                if max_deg > 2 {
                    return None;
                }
                if w == 3 {
                    return (k == 2).then_some(DynkinType::G2);
                }
                if k == 2 {
                    return Some(DynkinType::B(2));
                }
                let (end, inner) = if deg[i] == 1 {
                    (i, j)
                } else if deg[j] == 1 {
                    (j, i)
                } else {
                    return (k == 4).then_some(DynkinType::F4);
                };
                // B_n has its short root at the end of the double edge.
                let d = self.symmetrizer();
                if d[end] < d[inner] {
                    Some(DynkinType::B(k))
                } else {
                    Some(DynkinType::C(k))
                }
            }
            _ => None,
        }
    }

    /// Decides finite versus infinite cluster type by exploring the mutation class of the
    /// principal part (at most `limit` members).
    pub fn cluster_type(&self, limit: usize) -> ClusterType {
        let principal = self.principal();
        let mut found: Option<ClusterType> = None;
        let order: Vec<usize> = (0..principal.n()).collect();
        let (class, _) = explore(&principal, limit, &order, |b| {
            if let Some((i, j)) = large_product(b) {
                found = Some(ClusterType::Infinite(InfiniteWitness::LargeProduct { matrix: b.clone(), i, j }));
                return ControlFlow::Break(());
            }
            if let Some(components) = b.dynkin_type() {
                found = Some(ClusterType::Finite { components, witness: b.clone() });
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(t) = found {
            return t;
        }
        if class.truncated {
            ClusterType::Undetermined { explored: class.len() }
        } else {
            ClusterType::Infinite(InfiniteWitness::ClassExhausted { class_size: class.len() })
        }
    }
}

fn large_product(b: &ExchangeMatrix) -> Option<(usize, usize)> {
    let four = BigInt::from(4);
    for i in 0..b.n() {
        for j in (i + 1)..b.n() {
            if (b.get(i, j) * b.get(j, i)).magnitude() >= four.magnitude() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Number of vertices on the arm that leaves `center` through `start` (a path).
fn arm_length(edges: &[(usize, usize, u64)], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next = edges.iter().find_map(|&(i, j, _)| {
            if i == cur && j != prev {
                Some(j)
            } else if j == cur && i != prev {
                Some(i)
            } else {
                None
            }
        });
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, a: &[(usize, usize)]) -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(n, a).unwrap()
    }

    fn ty(b: &ExchangeMatrix) -> String {
        label(&b.dynkin_type().unwrap())
    }

    #[test]
    fn simply_laced() {
        assert_eq!(ty(&arrows(4, &[(0, 1), (2, 1), (2, 3)])), "A4");
        assert_eq!(ty(&arrows(4, &[(0, 1), (2, 1), (3, 1)])), "D4");
        assert_eq!(ty(&arrows(5, &[(0, 2), (1, 2), (2, 3), (3, 4)])), "D5");
        assert_eq!(ty(&arrows(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])), "E6");
        assert_eq!(ty(&arrows(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])), "E7");
        assert_eq!(ty(&arrows(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)])), "E8");
        assert_eq!(ty(&arrows(3, &[(0, 1)])), "A1 x A2");
        // Affine D4 (star with four leaves) and a cycle are not Dynkin.
        assert!(arrows(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).dynkin_type().is_none());
        assert!(arrows(3, &[(0, 1), (1, 2), (2, 0)]).dynkin_type().is_none());
    }

    #[test]
    fn non_simply_laced() {
        let b3 = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]).unwrap();
        assert_eq!(ty(&b3), "B3");
        assert_eq!(ty(&b3.langlands_dual().unwrap()), "C3");
        assert_eq!(ty(&ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]).unwrap()), "B2");
        assert_eq!(ty(&ExchangeMatrix::from_rows(&[vec![0, 1], vec![-3, 0]]).unwrap()), "G2");
        let f4 = ExchangeMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 1, 0],
            vec![0, -2, 0, 1],
            vec![0, 0, -1, 0],
        ])
        .unwrap();
        assert_eq!(ty(&f4), "F4");
        assert!(ExchangeMatrix::from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap().dynkin_type().is_none());
    }

    #[test]
    fn cluster_types() {
        let cycle = arrows(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(cycle.cluster_type(1000).label(), "A3");
        let markov = ExchangeMatrix::from_rows(&[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap();
        assert!(markov.cluster_type(1000).is_infinite());
        let kronecker = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap();
        assert!(kronecker.cluster_type(1000).is_infinite());
        // Acyclic triangle: affine type A.
        let affine = arrows(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(affine.cluster_type(1000).is_infinite());
    }
}
