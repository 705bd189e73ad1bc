//! Truncated dimensions of Jacobian algebras.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::{Path, QuiverWithPotential};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianDimension {
    /// Dimension of the quotient of paths of length `< truncation`.
    pub dimension: usize,
    /// True when the dimension did not change from `truncation` to `truncation + 1`, in which
    /// case it is the exact dimension; otherwise it is only a lower bound.
    pub saturated: bool,
    pub truncation: usize,
}

impl std::fmt::Display for JacobianDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.saturated {
            write!(f, "{}", self.dimension)
        } else {
            write!(f, ">= {}", self.dimension)
        }
    }
}

/// All paths of length `< bound`, lazy paths first.
fn paths_below(qp: &QuiverWithPotential, bound: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..qp.vertices).map(Path::lazy).collect();
    let mut frontier = out.clone();
    for _ in 1..bound {
        let mut next = Vec::new();
        for p in &frontier {
            for (i, a) in qp.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = vec![i];
                    arrows.extend(&p.arrows);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn quotient_dimension(qp: &QuiverWithPotential, bound: usize) -> usize {
    if bound == 0 {
        return 0;
    }
    let paths = paths_below(qp, bound);
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let relations: Vec<_> = (0..qp.arrows.len()).map(|a| qp.cyclic_derivative(a)).filter(|r| !r.is_empty()).collect();
    // Echelon rows keyed by pivot (largest index).
    let mut echelon: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for r in &relations {
        let shortest = r.keys().map(Path::len).min().unwrap_or(0);
        for u in &paths {
            for v in &paths {
                if u.len() + shortest + v.len() >= bound {
                    continue;
                }
                let mut row = BTreeMap::new();
                for (p, c) in r {
                    let Some(full) = u.compose(p).and_then(|up| up.compose(v)) else { continue };
                    if let Some(&i) = index.get(&full) {
                        *row.entry(i).or_insert_with(BigRational::zero) += c;
                    }
                }
                row.retain(|_, c: &mut BigRational| !c.is_zero());
                insert_row(&mut echelon, row);
            }
        }
    }
    paths.len() - echelon.len()
}

fn insert_row(echelon: &mut BTreeMap<usize, BTreeMap<usize, BigRational>>, mut row: BTreeMap<usize, BigRational>) {
    while let Some((&pivot, c)) = row.iter().next_back() {
        match echelon.get(&pivot) {
            None => {
                let c = c.clone();
                for x in row.values_mut() {
                    *x /= &c;
                }
                echelon.insert(pivot, row);
                return;
            }
            Some(base) => {
                let c = c.clone();
                for (i, x) in base {
                    let e = row.entry(*i).or_insert_with(BigRational::zero);
                    *e -= x * &c;
                    if e.is_zero() {
                        row.remove(i);
                    }
                }
            }
        }
    }
}

/// Dimension of the Jacobian algebra modulo paths of length `>= n`, with a saturation check.
pub fn jacobian_dimension(qp: &QuiverWithPotential, n: usize) -> JacobianDimension {
    let dimension = quotient_dimension(qp, n);
    let saturated = quotient_dimension(qp, n + 1) == dimension;
    JacobianDimension { dimension, saturated, truncation: n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{three_cycle, Arrow};

    #[test]
    fn three_cycle_with_abc() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
        for n in 3..6 {
            assert_eq!(jacobian_dimension(&qp, n), JacobianDimension { dimension: 6, saturated: true, truncation: n });
        }
    }

    #[test]
    fn acyclic_and_empty() {
        let arrows = vec![Arrow { name: "x".into(), source: 0, target: 1 }, Arrow { name: "y".into(), source: 1, target: 2 }];
        let qp = QuiverWithPotential::new(3, arrows, 12).unwrap();
        assert_eq!(jacobian_dimension(&qp, 4).dimension, 6);
        assert!(jacobian_dimension(&qp, 4).saturated);
        let empty = QuiverWithPotential::new(4, vec![], 12).unwrap();
        assert_eq!(jacobian_dimension(&empty, 1).dimension, 4);
    }

    #[test]
    fn zero_potential_on_cycle_is_unbounded() {
        let d = jacobian_dimension(&three_cycle(12), 5);
        assert_eq!(d.dimension, 15);
        assert!(!d.saturated);
    }
}
