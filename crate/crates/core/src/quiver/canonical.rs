//! Canonical forms of exchange matrices under simultaneous permutation of mutable vertices.
//!
//! Individualisation-refinement: colour vertices by symmetrizer entry and
//! frozen column, refine by the multiset of (neighbour colour, b_vw, b_wv),
//! branch on the first non-singleton cell and keep the smallest permuted
//! matrix over all leaves. Branches are pruned by twin vertices and by
//! automorphisms discovered at equal leaves.

use num_bigint::BigInt;
use num_traits::Zero;
use sha2::{Digest, Sha256};

use super::ExchangeMatrix;

/// A canonical representative together with the relabelling that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// `original.permute(&perm)`.
    pub matrix: ExchangeMatrix,
    /// New vertex `i` is old vertex `perm[i]`.
    pub perm: Vec<usize>,
    /// Stable hex digest of `matrix`.
    pub digest: String,
}

impl ExchangeMatrix {
    /// Canonical form under relabelling of mutable vertices; frozen vertices stay fixed.
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut search = Search::new(self);
        let colors = search.initial_colors();
        search.descend(colors, &mut Vec::new());
        let (matrix, perm) = search.best.expect("search visits at least one leaf");
        let digest = digest(&matrix);
        CanonicalForm { matrix, perm, digest }
    }

    /// Minimum over all `n!` relabellings. Exponential; intended as a test oracle for small `n`.
    pub fn canonical_form_brute_force(&self) -> CanonicalForm {
        let n = self.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<(ExchangeMatrix, Vec<usize>)> = None;
        permutations(&mut perm, 0, &mut |p| {
            let cand = self.permute(p);
            if best.as_ref().is_none_or(|(b, _)| cand < *b) {
                best = Some((cand, p.to_vec()));
            }
        });
        let (matrix, perm) = best.expect("at least the identity permutation");
        let digest = digest(&matrix);
        CanonicalForm { matrix, perm, digest }
    }

    /// True iff the two matrices differ by a relabelling of mutable vertices.
    pub fn is_isomorphic(&self, other: &ExchangeMatrix) -> bool {
        self.m() == other.m()
            && self.n() == other.n()
            && self.canonical_form().matrix == other.canonical_form().matrix
    }
}

fn permutations(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, f);
        p.swap(start, i);
    }
}

/// Hex digest of the matrix shape, entries and symmetrizer.
pub(crate) fn digest(b: &ExchangeMatrix) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}x{};", b.m(), b.n()));
    for row in b.matrix().to_rows() {
        for x in row {
            h.update(x.to_string());
            h.update(",");
        }
    }
    h.update("|");
    for x in b.symmetrizer() {
        h.update(x.to_string());
        h.update(",");
    }
    let out = h.finalize();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Search<'a> {
    b: &'a ExchangeMatrix,
    n: usize,
    /// Nonzero neighbours: (w, b_vw, b_wv).
    adj: Vec<Vec<(usize, BigInt, BigInt)>>,
    twin_class: Vec<usize>,
    best: Option<(ExchangeMatrix, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(b: &'a ExchangeMatrix) -> Self {
        let n = b.n();
        let adj = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| w != v && (!b.get(v, w).is_zero() || !b.get(w, v).is_zero()))
                    .map(|w| (w, b.get(v, w).clone(), b.get(w, v).clone()))
                    .collect()
            })
            .collect();
        let mut s = Search { b, n, adj, twin_class: (0..n).collect(), best: None, autos: Vec::new() };
        s.compute_twins();
        s
    }

    fn frozen_column(&self, v: usize) -> Vec<&BigInt> {
        (self.n..self.b.m()).map(|f| self.b.get(f, v)).collect()
    }

    /// `u ~ v` iff the transposition `(u v)` is an automorphism.
    fn compute_twins(&mut self) {
        let n = self.n;
        let b = self.b;
        for v in 0..n {
            if self.twin_class[v] != v {
                continue;
            }
            for u in (v + 1)..n {
                if self.twin_class[u] != u {
                    continue;
                }
                let same = b.symmetrizer()[u] == b.symmetrizer()[v]
                    && b.get(u, v) == b.get(v, u)
                    && self.frozen_column(u) == self.frozen_column(v)
                    && (0..n).filter(|&w| w != u && w != v).all(|w| b.get(u, w) == b.get(v, w) && b.get(w, u) == b.get(w, v));
                if same {
                    self.twin_class[u] = v;
                }
            }
        }
    }

    fn initial_colors(&self) -> Vec<usize> {
        let keys: Vec<(&BigInt, Vec<&BigInt>)> =
            (0..self.n).map(|v| (&self.b.symmetrizer()[v], self.frozen_column(v))).collect();
        rank(&keys)
    }

    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut cells = count_cells(&colors);
        loop {
            if cells == self.n {
                return colors;
            }
            let sigs: Vec<(usize, Vec<(usize, &BigInt, &BigInt)>)> = (0..self.n)
                .map(|v| {
                    let mut s: Vec<(usize, &BigInt, &BigInt)> =
                        self.adj[v].iter().map(|(w, x, y)| (colors[*w], x, y)).collect();
                    s.sort();
                    (colors[v], s)
                })
                .collect();
            let next = rank(&sigs);
            let next_cells = count_cells(&next);
            colors = next;
            if next_cells == cells {
                return colors;
            }
            cells = next_cells;
        }
    }

    fn descend(&mut self, colors: Vec<usize>, fixed: &mut Vec<usize>) {
        let colors = self.refine(colors);
        if count_cells(&colors) == self.n {
            self.leaf(&colors);
            return;
        }
        let mut sizes = vec![0usize; self.n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..self.n).find(|&c| sizes[c] > 1).expect("some cell is not a singleton");
        let members: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if explored.iter().any(|&u| self.twin_class[u] == self.twin_class[v]) {
                continue;
            }
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, fixed) {
                continue;
            }
            let split: Vec<(usize, bool)> = colors.iter().enumerate().map(|(w, &c)| (c, c == target && w != v)).collect();
            fixed.push(v);
            self.descend(rank(&split), fixed);
            fixed.pop();
            explored.push(v);
        }
    }

    /// Whether `v` lies in the orbit of an explored vertex under the known automorphisms fixing `fixed`.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self.autos.iter().filter(|g| fixed.iter().all(|&f| g[f] == f)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for g in gens {
            for x in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, colors: &[usize]) {
        let mut perm = vec![0; self.n];
        for (v, &c) in colors.iter().enumerate() {
            perm[c] = v;
        }
        let cand = self.b.permute(&perm);
        match &self.best {
            None => self.best = Some((cand, perm)),
            Some((best, best_perm)) => {
                if cand < *best {
                    self.best = Some((cand, perm));
                } else if cand == *best {
                    let mut g = vec![0; self.n];
                    for i in 0..self.n {
                        g[perm[i]] = best_perm[i];
                    }
                    if g.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(g);
                    }
                }
            }
        }
    }
}

fn count_cells(colors: &[usize]) -> usize {
    let mut seen = vec![false; colors.len()];
    let mut k = 0;
    for &c in colors {
        if !seen[c] {
            seen[c] = true;
            k += 1;
        }
    }
    k
}

/// Dense ranks `0..k` of the keys, in sorted key order.
fn rank<K: Ord>(keys: &[K]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0; keys.len()];
    let mut r = 0;
    for w in 0..idx.len() {
        if w > 0 && keys[idx[w]] != keys[idx[w - 1]] {
            r += 1;
        }
        out[idx[w]] = r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_skew(rng: &mut ChaCha8Rng, n: usize, frozen: usize, bound: i64) -> ExchangeMatrix {
        let mut b = IntMatrix::zeros(n + frozen, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let x: i64 = rng.gen_range(-bound..=bound);
                b[(i, j)] = x.into();
                b[(j, i)] = (-x).into();
            }
        }
        for f in n..n + frozen {
            for j in 0..n {
                b[(f, j)] = rng.gen_range(-1i64..=1).into();
            }
        }
        ExchangeMatrix::new(b).unwrap()
    }

    fn shuffle(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        p
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let frozen = rng.gen_range(0..=2);
            let b = random_skew(&mut rng, n, frozen, 1);
            let p = shuffle(&mut rng, n);
            let c1 = b.canonical_form();
            let c2 = b.permute(&p).canonical_form();
            assert_eq!(c1.matrix, c2.matrix);
            assert_eq!(c1.digest, c2.digest);
            assert_eq!(b.permute(&c1.perm), c1.matrix);
        }
    }

    #[test]
    fn agrees_with_brute_force_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let a = random_skew(&mut rng, n, 0, 1);
            let b = if rng.gen_bool(0.5) { a.permute(&shuffle(&mut rng, n)) } else { random_skew(&mut rng, n, 0, 1) };
            let fast = a.canonical_form().matrix == b.canonical_form().matrix;
            let slow = a.canonical_form_brute_force().matrix == b.canonical_form_brute_force().matrix;
            assert_eq!(fast, slow, "{a}\n vs\n{b}");
        }
    }

    #[test]
    fn highly_symmetric_inputs() {
        let zero = ExchangeMatrix::new(IntMatrix::zeros(9, 9)).unwrap();
        assert_eq!(zero.canonical_form().matrix, zero);
        // Oriented 8-cycle.
        let arrows: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let c = ExchangeMatrix::from_arrows(8, &arrows).unwrap();
        let p = [3, 1, 4, 7, 5, 0, 2, 6];
        assert_eq!(c.canonical_form().matrix, c.permute(&p).canonical_form().matrix);
        assert_eq!(c.canonical_form().matrix, c.canonical_form_brute_force().matrix.canonical_form().matrix);
    }

    #[test]
    fn frozen_vertices_are_not_permuted() {
        // Same principal part, frozen arrow attached to different ends of 1 -> 2.
        let a = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0], vec![1, 0]]).unwrap();
        let b = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0], vec![0, 1]]).unwrap();
        assert!(!a.is_isomorphic(&b));
        let c = ExchangeMatrix::from_rows(&[vec![0, -1], vec![1, 0], vec![0, 1]]).unwrap();
        assert!(a.is_isomorphic(&c));
    }
}
