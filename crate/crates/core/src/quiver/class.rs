//! Breadth-first enumeration of mutation classes up to isomorphism.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use super::ExchangeMatrix;

/// Mutation class explored up to isomorphism.
#[derive(Clone, Debug)]
pub struct MutationClass {
    /// Canonical representatives in discovery order; `members[0]` is the start.
    pub members: Vec<ExchangeMatrix>,
    /// `adjacency[i][k]` is the member reached from `members[i]` by mutating its vertex `k`,
    /// or `None` where exploration stopped early.
    pub adjacency: Vec<Vec<Option<usize>>>,
    /// True when the class has more than `limit` members.
    pub truncated: bool,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: &ExchangeMatrix) -> bool {
        let c = b.canonical_form().matrix;
        self.members.contains(&c)
    }
}

impl ExchangeMatrix {
    /// All matrices reachable by mutation, up to relabelling of mutable vertices,
    /// stopping once more than `limit` are found.
    pub fn mutation_class(&self, limit: usize) -> MutationClass {
        let order: Vec<usize> = (0..self.n()).collect();
        self.mutation_class_with_order(limit, &order)
    }

    /// As [`ExchangeMatrix::mutation_class`], mutating vertices in the given order at each step.
    pub fn mutation_class_with_order(&self, limit: usize, order: &[usize]) -> MutationClass {
        explore(self, limit, order, |_| ControlFlow::Continue(())).0
    }

    /// `Some(true/false)` once decided, `None` if the class of `self` exceeds `limit` without meeting `other`.
    pub fn is_mutation_equivalent(&self, other: &ExchangeMatrix, limit: usize) -> Option<bool> {
        if self.m() != other.m() || self.n() != other.n() {
            return Some(false);
        }
        let mut d1 = self.symmetrizer().to_vec();
        let mut d2 = other.symmetrizer().to_vec();
        d1.sort();
        d2.sort();
        if d1 != d2 {
            return Some(false);
        }
        let target = other.canonical_form().matrix;
        let order: Vec<usize> = (0..self.n()).collect();
        let (class, stopped) = explore(self, limit, &order, |b| {
            if *b == target {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if stopped {
            Some(true)
        } else if class.truncated {
            None
        } else {
            Some(false)
        }
    }
}

/// BFS over canonical forms. `visit` sees each new member; `Break` stops the search.
/// Returns the explored class and whether `visit` stopped it.
pub(crate) fn explore(
    start: &ExchangeMatrix,
    limit: usize,
    order: &[usize],
    mut visit: impl FnMut(&ExchangeMatrix) -> ControlFlow<()>,
) -> (MutationClass, bool) {
    let n = start.n();
    let first = start.canonical_form().matrix;
    let mut index: HashMap<ExchangeMatrix, usize> = HashMap::new();
    index.insert(first.clone(), 0);
    let mut members = vec![first];
    let mut adjacency: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    let mut truncated = false;
    if visit(&members[0]).is_break() {
        return (MutationClass { members, adjacency, truncated }, true);
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &k in order {
            let next = members[i].mutate(k).expect("k < n").canonical_form().matrix;
            if let Some(&j) = index.get(&next) {
                adjacency[i][k] = Some(j);
                continue;
            }
            if members.len() >= limit {
                truncated = true;
                return (MutationClass { members, adjacency, truncated }, false);
            }
            let j = members.len();
            index.insert(next.clone(), j);
            members.push(next);
            adjacency.push(vec![None; n]);
            adjacency[i][k] = Some(j);
            queue.push_back(j);
            if visit(&members[j]).is_break() {
                return (MutationClass { members, adjacency, truncated }, true);
            }
        }
    }
    (MutationClass { members, adjacency, truncated }, false)
}
