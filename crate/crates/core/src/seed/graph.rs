//! Exchange graphs, cluster variables and denominator vectors.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use super::{Coefficients, Seed, SeedError, SeedKey};
use crate::poly::RationalFunction;

pub const DEFAULT_GRAPH_LIMIT: usize = 50_000;

/// Mutation-class probe size used to recognise infinite type before enumerating seeds.
const TYPE_PROBE_LIMIT: usize = 2_000;

/// Seeds kept for display once the cluster type is known to be infinite.
const INFINITE_SAMPLE: usize = 16;

/// Seeds up to isomorphism, linked by single mutations.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    /// One representative per vertex, as reached from the root; `seeds[0]` is the root.
    pub seeds: Vec<Seed>,
    /// Unordered edges `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// `neighbors[i][k]`: vertex reached from `seeds[i]` by mutating its vertex `k`.
    pub neighbors: Vec<Vec<Option<usize>>>,
    pub truncated: bool,
    /// Set when the principal part is known to be of infinite cluster type.
    pub infinite_type: bool,
}

impl ExchangeGraph {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    /// Short digest of the isomorphism class of vertex `i`.
    pub fn digest(&self, i: usize) -> String {
        seed_digest(&self.seeds[i])
    }
}

/// First 16 hex digits of a sha256 over the canonical seed data.
pub fn seed_digest(seed: &Seed) -> String {
    let key = seed.iso_key();
    let mut h = Sha256::new();
    h.update(format!("{}x{};", key.matrix.m(), key.matrix.n()));
    for row in key.matrix.matrix().to_rows() {
        for x in row {
            h.update(x.to_string());
            h.update(",");
        }
    }
    for c in &key.cluster {
        h.update(c.display_with(seed.names()));
        h.update(";");
    }
    match &key.coeffs {
        Coefficients::Tropical(v) => v.iter().for_each(|t| h.update(format!("{:?};", t.0))),
        Coefficients::Universal(v) => v.iter().for_each(|u| h.update(format!("{};", u.0.display_with(seed.names())))),
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Distinct cluster variables found in an exchange graph.
#[derive(Clone, Debug)]
pub struct ClusterVariables {
    /// In discovery order; the initial cluster comes first.
    pub variables: Vec<RationalFunction>,
    pub truncated: bool,
    pub infinite_type: bool,
}

impl Seed {
    /// Breadth-first closure under mutation modulo seed isomorphism, at most `limit` seeds.
    pub fn exchange_graph(&self, limit: usize) -> ExchangeGraph {
        let infinite = self.matrix().cluster_type(TYPE_PROBE_LIMIT).is_infinite();
        let cap = if infinite { limit.min(INFINITE_SAMPLE) } else { limit };
        let mut g = self.bfs(cap.max(1));
        if infinite {
            g.truncated = true;
            g.infinite_type = true;
        }
        g
    }

    fn bfs(&self, limit: usize) -> ExchangeGraph {
        let n = self.n();
        let mut index: HashMap<SeedKey, usize> = HashMap::new();
        index.insert(self.iso_key(), 0);
        let mut seeds = vec![self.clone()];
        let mut neighbors = vec![vec![None; n]];
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        let mut truncated = false;
        let mut queue = VecDeque::from([0usize]);
        'outer: while let Some(i) = queue.pop_front() {
            for k in 0..n {
                if neighbors[i][k].is_some() {
                    continue;
                }
                let next = seeds[i].mutate(k).expect("k < n");
                let key = next.iso_key();
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        if seeds.len() >= limit {
                            truncated = true;
                            break 'outer;
                        }
                        let j = seeds.len();
                        index.insert(key, j);
                        seeds.push(next);
                        neighbors.push(vec![None; n]);
                        queue.push_back(j);
                        j
                    }
                };
                neighbors[i][k] = Some(j);
                edges.insert((i.min(j), i.max(j)));
            }
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        edges.sort();
        ExchangeGraph { seeds, edges, neighbors, truncated, infinite_type: false }
    }

    /// All cluster variables in the exchange graph, each checked to be Laurent in the initial
    /// cluster.
    pub fn cluster_variables(&self, limit: usize) -> Result<ClusterVariables, SeedError> {
        let g = self.exchange_graph(limit);
        let mut seen = HashSet::new();
        let mut variables = Vec::new();
        for s in &g.seeds {
            for v in s.cluster() {
                if seen.insert(v.clone()) {
                    if !self.is_laurent_in_cluster(v) {
                        return Err(SeedError::NotLaurent(v.display_with(self.names())));
                    }
                    variables.push(v.clone());
                }
            }
        }
        Ok(ClusterVariables { variables, truncated: g.truncated, infinite_type: g.infinite_type })
    }

    /// Denominator is a monomial in `x1..xn` times a polynomial in the coefficient variables
    /// (which must be 1 for tropical coefficients).
    pub fn is_laurent_in_cluster(&self, v: &RationalFunction) -> bool {
        laurent_split(v, self.n()).is_some_and(|rest| match self.coefficients() {
            Coefficients::Tropical(_) => rest.is_one(),
            Coefficients::Universal(_) => true,
        })
    }
}

/// For a denominator `x^a * g` with `g` free of `x1..xn`, returns `g`.
fn laurent_split(v: &RationalFunction, n: usize) -> Option<crate::poly::Poly> {
    let den = v.den();
    let mins = den.min_exponents();
    let mut shift = vec![0u32; den.nvars()];
    shift[..n].copy_from_slice(&mins[..n]);
    let rest = den.shift_down(&shift);
    (0..n).all(|i| !rest.uses_var(i)).then_some(rest)
}

/// Denominator vector `d` with `v = N / x^d`, `N` not divisible by any `x_i` (i < n).
pub fn denominator_vector(v: &RationalFunction, n: usize) -> Result<Vec<BigInt>, SeedError> {
    if laurent_split(v, n).is_none() || v.is_zero() {
        return Err(SeedError::NotLaurent(format!("{v:?}")));
    }
    let dm = v.den().min_exponents();
    let nm = v.num().min_exponents();
    Ok((0..n).map(|i| BigInt::from(dm[i]) - BigInt::from(nm[i])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rational;
    use crate::quiver::ExchangeMatrix;

    fn count(b: &ExchangeMatrix) -> (usize, usize) {
        let g = Seed::initial(b).exchange_graph(1000);
        assert!(!g.truncated);
        (g.len(), g.edges.len())
    }

    #[test]
    fn small_exchange_graphs() {
        assert_eq!(count(&ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap()), (5, 5));
        assert_eq!(count(&ExchangeMatrix::from_arrows(3, &[(0, 1), (1, 2)]).unwrap()), (14, 21));
        let b3 = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]).unwrap();
        assert_eq!(count(&b3).0, 20);
    }

    #[test]
    fn kronecker_is_flagged_infinite() {
        let k = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap();
        let g = Seed::initial(&k).exchange_graph(1000);
        assert!(g.truncated && g.infinite_type);
    }

    #[test]
    fn denominators() {
        let names = crate::poly::indexed_names("x", 2);
        let v = parse_rational("(x1+1+x2)/(x1*x2)", &names).unwrap();
        assert_eq!(denominator_vector(&v, 2).unwrap(), vec![BigInt::from(1), BigInt::from(1)]);
        let x1 = parse_rational("x1", &names).unwrap();
        assert_eq!(denominator_vector(&x1, 2).unwrap(), vec![BigInt::from(-1), BigInt::from(0)]);
        assert!(denominator_vector(&parse_rational("1/(1+x1)", &names).unwrap(), 2).is_err());
    }
}
