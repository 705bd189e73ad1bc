//! Interactive mutation session: a tree of visited seeds with an undo cursor.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{matrix_json, CoefficientsJson, IoError, JsonInt, QuiverJson, SeedJson};
use crate::seed::{seed_digest, MutationSequence, Seed, SeedError, SeedKey};
use crate::tropical::{f_names, f_polynomials, tropical_path, TropicalError};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("vertex {0} is not a mutable vertex (1..={1})")]
    BadVertex(usize, usize),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("stale version {given}, current version is {current}")]
    Conflict { given: u64, current: u64 },
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryNode {
    pub parent: Option<usize>,
    /// 1-based vertex mutated to reach this node from its parent.
    pub vertex: Option<usize>,
}

/// Serializable snapshot; seeds are recomputed by replay on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub initial: SeedJson,
    pub nodes: Vec<HistoryNode>,
    pub current: usize,
    pub version: u64,
}

#[derive(Clone, Debug)]
pub struct Session {
    initial: Seed,
    nodes: Vec<HistoryNode>,
    seeds: Vec<Seed>,
    current: usize,
    version: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub version: u64,
    pub node: usize,
    /// 1-based path from the initial seed.
    pub sequence: Vec<usize>,
    pub quiver: QuiverJson,
    pub cluster: Vec<String>,
    pub coefficients: CoefficientsJson,
    pub c: Vec<Vec<JsonInt>>,
    pub g: Vec<Vec<JsonInt>>,
    pub f: Vec<String>,
    pub history: Vec<HistoryNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodNode {
    pub digest: String,
    pub distance: usize,
    pub cluster: Vec<String>,
    pub neighbors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighborhood {
    pub depth: usize,
    pub vertices: usize,
    pub edges: usize,
    pub nodes: Vec<NeighborhoodNode>,
}

impl Session {
    pub fn new(initial: Seed) -> Self {
        Session {
            seeds: vec![initial.clone()],
            initial,
            nodes: vec![HistoryNode { parent: None, vertex: None }],
            current: 0,
            version: 0,
        }
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn current(&self) -> &Seed {
        &self.seeds[self.current]
    }

    pub fn initial(&self) -> &Seed {
        &self.initial
    }

    /// 0-based path from the root to the current node.
    pub fn sequence(&self) -> MutationSequence {
        let mut path = Vec::new();
        let mut i = self.current;
        while let Some(p) = self.nodes[i].parent {
            path.push(self.nodes[i].vertex.expect("non-root node has a vertex") - 1);
            i = p;
        }
        path.reverse();
        MutationSequence::new(path)
    }

    fn check_version(&self, expected: Option<u64>) -> Result<(), SessionError> {
        match expected {
            Some(given) if given != self.version => Err(SessionError::Conflict { given, current: self.version }),
            _ => Ok(()),
        }
    }

    /// Mutates at the 1-based `vertex`, reusing an existing branch if there is one.
    pub fn mutate(&mut self, vertex: usize, expected_version: Option<u64>) -> Result<(), SessionError> {
        self.check_version(expected_version)?;
        let n = self.current().n();
        if vertex == 0 || vertex > n {
            return Err(SessionError::BadVertex(vertex, n));
        }
        let existing = (0..self.nodes.len())
            .find(|&i| self.nodes[i].parent == Some(self.current) && self.nodes[i].vertex == Some(vertex));
        self.current = match existing {
            Some(i) => i,
            None => {
                let seed = self.current().mutate(vertex - 1)?;
                self.nodes.push(HistoryNode { parent: Some(self.current), vertex: Some(vertex) });
                self.seeds.push(seed);
                self.nodes.len() - 1
            }
        };
        self.version += 1;
        Ok(())
    }

    pub fn undo(&mut self, expected_version: Option<u64>) -> Result<(), SessionError> {
        self.check_version(expected_version)?;
        let parent = self.nodes[self.current].parent.ok_or(SessionError::NothingToUndo)?;
        self.current = parent;
        self.version += 1;
        Ok(())
    }

    /// Starts over from `seed`; the version keeps increasing.
    pub fn reset(&mut self, seed: Seed) {
        let version = self.version + 1;
        *self = Session::new(seed);
        self.version = version;
    }

    pub fn view(&self) -> Result<SessionView, SessionError> {
        let seed = self.current();
        let json = SeedJson::from_seed(seed);
        let t = self.sequence();
        let principal = self.initial.matrix().principal();
        let path = tropical_path(&principal, &t)?;
        let names = f_names(principal.n());
        Ok(SessionView {
            version: self.version,
            node: self.current,
            sequence: t.to_one_based(),
            quiver: json.quiver,
            cluster: seed.cluster_strings(),
            coefficients: json.coefficients.expect("always written"),
            c: matrix_json(path.final_c()),
            g: matrix_json(path.final_g()),
            f: f_polynomials(&principal, &t)?.iter().map(|p| p.display_with(&names)).collect(),
            history: self.nodes.clone(),
        })
    }

    /// Seeds within `depth` mutations of the current one, up to isomorphism.
    pub fn neighborhood(&self, depth: usize) -> Result<Neighborhood, SessionError> {
        let mut index: HashMap<SeedKey, usize> = HashMap::new();
        let mut seeds = vec![self.current().clone()];
        let mut distance = vec![0];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        index.insert(seeds[0].iso_key(), 0);
        let mut head = 0;
        while head < seeds.len() {
            let d = distance[head];
            for k in 0..seeds[head].n() {
                let next = seeds[head].mutate(k)?;
                let key = next.iso_key();
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None if d < depth => {
                        index.insert(key, seeds.len());
                        seeds.push(next);
                        distance.push(d + 1);
                        seeds.len() - 1
                    }
                    None => continue,
                };
                if j != head {
                    edges.push((head.min(j), head.max(j)));
                }
            }
            head += 1;
        }
        edges.sort();
        edges.dedup();
        let digests: Vec<String> = seeds.iter().map(seed_digest).collect();
        let mut nodes: Vec<NeighborhoodNode> = seeds
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut neighbors: Vec<String> = edges
                    .iter()
                    .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
                    .map(|j| digests[j].clone())
                    .collect();
                neighbors.sort();
                NeighborhoodNode { digest: digests[i].clone(), distance: distance[i], cluster: s.cluster_strings(), neighbors }
            })
            .collect();
        nodes.sort_by(|a, b| (a.distance, &a.digest).cmp(&(b.distance, &b.digest)));
        Ok(Neighborhood { depth, vertices: seeds.len(), edges: edges.len(), nodes })
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            initial: SeedJson::from_seed(&self.initial),
            nodes: self.nodes.clone(),
            current: self.current,
            version: self.version,
        }
    }

    /// Rebuilds every seed of the tree by replaying mutations from the initial one.
    pub fn restore(s: &Snapshot) -> Result<Self, SessionError> {
        let initial = s.initial.to_seed()?;
        let mut seeds: Vec<Seed> = Vec::with_capacity(s.nodes.len());
        for (i, node) in s.nodes.iter().enumerate() {
            let seed = match (node.parent, node.vertex) {
                (None, _) if i == 0 => initial.clone(),
                (Some(p), Some(v)) if p < i && v >= 1 && v <= initial.n() => seeds[p].mutate(v - 1)?,
                _ => return Err(IoError::Shape(format!("malformed history node {i}")).into()),
            };
            seeds.push(seed);
        }
        if s.current >= seeds.len() || seeds.is_empty() {
            return Err(IoError::Shape("current node out of range".into()).into());
        }
        Ok(Session { initial, nodes: s.nodes.clone(), seeds, current: s.current, version: s.version })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ExchangeMatrix;

    fn a2() -> Seed {
        Seed::initial(&ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap())
    }

    #[test]
    fn replay_matches_batch_mutation() {
        let mut s = Session::new(a2());
        for v in [1, 2, 1, 2, 1] {
            s.mutate(v, None).unwrap();
        }
        let batch = a2().seed_at(&MutationSequence::new(vec![0, 1, 0, 1, 0])).unwrap();
        assert_eq!(s.current(), &batch);
        assert!(s.current().is_isomorphic(&a2()));
        let restored = Session::restore(&s.snapshot()).unwrap();
        assert_eq!(restored.current(), s.current());
        assert_eq!(restored.view().unwrap(), s.view().unwrap());
    }

    #[test]
    fn undo_branches_and_conflicts() {
        let mut s = Session::new(a2());
        assert!(matches!(s.undo(None), Err(SessionError::NothingToUndo)));
        s.mutate(1, Some(0)).unwrap();
        assert!(matches!(s.mutate(2, Some(0)), Err(SessionError::Conflict { given: 0, current: 1 })));
        s.undo(None).unwrap();
        s.mutate(2, None).unwrap();
        assert_eq!(s.view().unwrap().history.len(), 3);
        s.undo(None).unwrap();
        s.mutate(1, None).unwrap();
        assert_eq!(s.view().unwrap().history.len(), 3);
        assert!(matches!(s.mutate(3, None), Err(SessionError::BadVertex(3, 2))));
    }

    #[test]
    fn pentagon_neighborhood() {
        let s = Session::new(a2());
        let n = s.neighborhood(2).unwrap();
        assert_eq!((n.vertices, n.edges), (5, 5));
        assert_eq!(s.neighborhood(0).unwrap().vertices, 1);
    }
}
