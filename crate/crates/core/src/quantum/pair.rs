//! Compatible pairs and quantum seeds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::torus::TorusElement;
use super::{v_pow, QuantumError};
use crate::matrix::{pos, IntMatrix};
use crate::poly::{indexed_names, RationalFunction};
use crate::quiver::ExchangeMatrix;
use crate::seed::MutationSequence;

/// `(B~, L)` with `B~^T L = [D 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompatiblePair {
    b: ExchangeMatrix,
    lambda: IntMatrix,
    d: Vec<BigInt>,
}

impl CompatiblePair {
    /// Checks compatibility and records `D`.
    pub fn new(b: ExchangeMatrix, lambda: IntMatrix) -> Result<Self, QuantumError> {
        let (m, n) = (b.m(), b.n());
        if lambda.rows() != m || lambda.cols() != m {
            return Err(QuantumError::IncompatibleInput(format!("form must be {m}x{m}")));
        }
        if !lambda.is_skew_symmetric() {
            return Err(QuantumError::IncompatibleInput("form is not skew-symmetric".into()));
        }
        let prod = b.matrix().transpose().mul(&lambda);
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..m {
                let x = &prod[(i, j)];
                if i == j {
                    if !x.is_positive() {
                        return Err(QuantumError::IncompatibleInput(format!("diagonal entry {i} of B^T L is {x}")));
                    }
                    d.push(x.clone());
                } else if !x.is_zero() {
                    return Err(QuantumError::IncompatibleInput(format!("B^T L has entry {x} at ({i},{j})")));
                }
            }
        }
        Ok(CompatiblePair { b, lambda, d })
    }

    /// `B~ = [B; I]` with `L = [[0, -D], [D, -DB]]`, where `D` is the symmetrizer of `B`.
    pub fn principal(b: &ExchangeMatrix) -> Result<Self, QuantumError> {
        let b = b.principal();
        let n = b.n();
        let d = b.symmetrizer().to_vec();
        let db = IntMatrix::diag(&d).mul(b.matrix());
        let lambda = IntMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => BigInt::zero(),
            (true, false) => if i == j - n { -d[i].clone() } else { BigInt::zero() },
            (false, true) => if i - n == j { d[j].clone() } else { BigInt::zero() },
            (false, false) => -db[(i - n, j - n)].clone(),
        });
        CompatiblePair::new(b.principal_framing(), lambda)
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn lambda(&self) -> &IntMatrix {
        &self.lambda
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    /// True when `D = I`.
    pub fn is_unital(&self) -> bool {
        self.d.iter().all(|x| x.is_one())
    }

    /// `m x m` matrix `E_{k,eps}(B~)`: identity except column `k`.
    pub fn e_matrix(&self, k: usize, eps: i32) -> IntMatrix {
        let m = self.b.m();
        let eps = BigInt::from(eps);
        let mut e = IntMatrix::identity(m);
        for i in 0..m {
            e[(i, k)] = if i == k { -BigInt::one() } else { pos(&(-&eps * self.b.get(i, k))) };
        }
        e
    }

    /// `n x n` matrix `F_{k,eps}(B~)`: identity except row `k`.
    pub fn f_matrix(&self, k: usize, eps: i32) -> IntMatrix {
        let n = self.b.n();
        let eps = BigInt::from(eps);
        let mut f = IntMatrix::identity(n);
        for j in 0..n {
            f[(k, j)] = if j == k { -BigInt::one() } else { pos(&(&eps * self.b.get(k, j))) };
        }
        f
    }

    /// `(E B~ F, E^T L E)`, computed for both signs and checked to agree.
    pub fn mutate(&self, k: usize) -> Result<CompatiblePair, QuantumError> {
        self.b.check_vertex(k)?;
        let mut results = Vec::with_capacity(2);
        for eps in [1, -1] {
            let e = self.e_matrix(k, eps);
            let b = e.mul(self.b.matrix()).mul(&self.f_matrix(k, eps));
            let lambda = e.transpose().mul(&self.lambda).mul(&e);
            results.push((b, lambda));
        }
        if results[0] != results[1] {
            return Err(QuantumError::IncompatibleInput("the two sign choices disagree".into()));
        }
        let (b, lambda) = results.pop().expect("two results");
        let b = ExchangeMatrix::with_symmetrizer(b, self.b.symmetrizer().to_vec())?;
        debug_assert_eq!(&b, &self.b.mutate(k)?);
        let out = CompatiblePair::new(b, lambda)?;
        if out.d != self.d {
            return Err(QuantumError::IncompatibleInput("mutation changed D".into()));
        }
        Ok(out)
    }
}

/// Quantum seed: current compatible pair and its cluster written in the initial torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumSeed {
    initial: CompatiblePair,
    pair: CompatiblePair,
    cluster: Vec<TorusElement>,
}

impl QuantumSeed {
    pub fn initial(pair: CompatiblePair) -> Self {
        let m = pair.b.m();
        let cluster = (0..m).map(|i| TorusElement::generator(&pair.lambda, i)).collect();
        QuantumSeed { initial: pair.clone(), pair, cluster }
    }

    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn initial_pair(&self) -> &CompatiblePair {
        &self.initial
    }

    /// All `m` entries; the last `m - n` are frozen.
    pub fn cluster(&self) -> &[TorusElement] {
        &self.cluster
    }

    pub fn names(&self) -> Vec<String> {
        indexed_names("x", self.pair.b.m())
    }

    /// Twisted monomial `v^{-sum_{i<j} a_i a_j L(t)_ij} X_1^{a_1} ... X_m^{a_m}` in the current
    /// variables, for `a >= 0`.
    fn twisted_monomial(&self, a: &[i64]) -> TorusElement {
        let m = a.len();
        let lam = &self.pair.lambda;
        let mut shift = 0i64;
        for i in 0..m {
            for j in (i + 1)..m {
                shift += a[i] * a[j] * i64::try_from(&lam[(i, j)]).expect("form entry");
            }
        }
        let mut acc = TorusElement::one(&self.initial.lambda);
        for (i, &ai) in a.iter().enumerate() {
            assert!(ai >= 0);
            if ai > 0 {
                acc = acc.mul(&self.cluster[i].pow(ai as u32));
            }
        }
        acc.scale(&v_pow(-shift))
    }

    /// `x'_k = x(t)^{E_+ e_k} + x(t)^{E_- e_k}`, obtained as `X_k^{-1} (...)` by exact division.
    pub fn mutate(&self, k: usize) -> Result<QuantumSeed, QuantumError> {
        self.pair.b.check_vertex(k)?;
        let m = self.pair.b.m();
        let lam = &self.pair.lambda;
        let mut numerator = TorusElement::zero(&self.initial.lambda);
        for eps in [1i64, -1] {
            // gamma = E_eps e_k + e_k: nonnegative, zero at k.
            let gamma: Vec<i64> = (0..m)
                .map(|i| if i == k { 0 } else { i64::try_from(&pos(&(-self.pair.b.get(i, k) * eps))).expect("entry") })
                .collect();
            let twist: i64 = (0..m).map(|j| i64::try_from(&lam[(k, j)]).expect("form entry") * gamma[j]).sum();
            numerator = numerator.add(&self.twisted_monomial(&gamma).scale(&v_pow(twist)));
        }
        let xk = self.cluster[k].left_divide(&numerator)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = xk;
        Ok(QuantumSeed { initial: self.initial.clone(), pair: self.pair.mutate(k)?, cluster })
    }

    pub fn mutate_sequence(&self, t: &MutationSequence) -> Result<QuantumSeed, QuantumError> {
        let mut cur = self.clone();
        for &k in t.as_slice() {
            cur = cur.mutate(k)?;
        }
        Ok(cur)
    }

    /// The mutable cluster variables at `v = 1`.
    pub fn specialize_q1(&self) -> Result<Vec<RationalFunction>, QuantumError> {
        self.cluster[..self.pair.b.n()].iter().map(|x| x.specialize_q1()).collect()
    }

    /// Whether every entry is `v^s x_j` for the initial variables, a permutation up to powers of `v`.
    pub fn is_permuted_initial(&self) -> bool {
        let m = self.cluster.len();
        let mut seen = vec![false; m];
        for x in &self.cluster {
            let Some((e, c)) = x.as_monomial() else { return false };
            if c.as_laurent_monomial().is_none_or(|(k, _)| !k.is_one()) {
                return false;
            }
            let ones: Vec<usize> = (0..m).filter(|&i| e[i] != 0).collect();
            if ones.len() != 1 || e[ones[0]] != 1 || seen[ones[0]] {
                return false;
            }
            seen[ones[0]] = true;
        }
        true
    }
}
