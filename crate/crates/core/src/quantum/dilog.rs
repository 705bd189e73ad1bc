//! Ordered products of quantum dilogarithms along mutation sequences.

use num_bigint::BigInt;

use super::pair::QuantumSeed;
use super::series::{qdilog, TruncatedSeries};
use super::torus::TorusElement;
use super::{q_pow, qc_one, v_pow, CompatiblePair, QuantumError};
use crate::matrix::IntMatrix;
use crate::quiver::ExchangeMatrix;
use crate::seed::MutationSequence;
use crate::tropical::{principal_extension, tropical_path};

pub const DEFAULT_TRUNCATION: u32 = 10;

fn require_skew(b: &ExchangeMatrix) -> Result<ExchangeMatrix, QuantumError> {
    let b = b.principal();
    if !b.is_skew_symmetric() {
        return Err(QuantumError::PreconditionFailed("dilogarithm products need a skew-symmetric matrix".into()));
    }
    Ok(b)
}

fn to_u32(v: &[BigInt]) -> Vec<u32> {
    v.iter().map(|x| u32::try_from(x).expect("nonnegative c-vector entry")).collect()
}

/// `(eps_s beta_s, eps_s)` for each step, in mutation order.
pub fn dilog_factors(b: &ExchangeMatrix, i: &MutationSequence) -> Result<Vec<(Vec<u32>, i32)>, QuantumError> {
    let b = require_skew(b)?;
    let path = tropical_path(&b, i)?;
    Ok(path
        .betas(i)
        .iter()
        .zip(&path.signs)
        .map(|(beta, &eps)| {
            let v: Vec<BigInt> = beta.iter().map(|x| x * eps).collect();
            (to_u32(&v), eps)
        })
        .collect())
}

/// `E(eps_N beta_N)^{eps_N} ... E(eps_1 beta_1)^{eps_1}`, truncated at total degree `order`.
pub fn dilog_product(b: &ExchangeMatrix, i: &MutationSequence, order: u32) -> Result<TruncatedSeries, QuantumError> {
    let factors = dilog_factors(b, i)?;
    let form = b.principal().matrix().clone();
    let mut acc = TruncatedSeries::one(&form, order);
    for (alpha, eps) in factors {
        let e = qdilog(&form, &alpha, order)?;
        let f = if eps > 0 { e } else { e.inverse()? };
        acc = f.mul(&acc);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    /// `P` with `C(i) = P C(i')`, as the image of each index.
    pub permutation: Vec<usize>,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
}

/// Checks `E(i) = E(i')` after confirming the two c-matrices differ by a permutation.
pub fn verify_identity(
    b: &ExchangeMatrix,
    i: &MutationSequence,
    i_prime: &MutationSequence,
    order: u32,
) -> Result<IdentityReport, QuantumError> {
    let b = require_skew(b)?;
    let c = tropical_path(&b, i)?.final_c().clone();
    let c_prime = tropical_path(&b, i_prime)?.final_c().clone();
    let inv = c_prime.inverse().ok_or_else(|| QuantumError::PreconditionFailed("C(i') is not invertible".into()))?;
    let permutation = c
        .mul(&inv)
        .as_permutation()
        .ok_or_else(|| QuantumError::PreconditionFailed("C(i) C(i')^-1 is not a permutation matrix".into()))?;
    let lhs = dilog_product(&b, i, order)?;
    let rhs = dilog_product(&b, i_prime, order)?;
    Ok(IdentityReport { holds: lhs == rhs, permutation, lhs, rhs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtResult {
    pub sequence: MutationSequence,
    pub series: TruncatedSeries,
}

/// Shortest sequence (first in lexicographic order) without immediate repeats whose `-C` is a
/// permutation matrix, together with its dilogarithm product.
pub fn combinatorial_dt(b: &ExchangeMatrix, order: u32, search_depth: usize) -> Result<Option<DtResult>, QuantumError> {
    let b = require_skew(b)?;
    let n = b.n();
    let start = principal_extension(&b);
    for depth in 0..=search_depth {
        let mut path = Vec::with_capacity(depth);
        if let Some(found) = dt_search(&start, n, depth, &mut path)? {
            let sequence = MutationSequence::new(found);
            let series = dilog_product(&b, &sequence, order)?;
            return Ok(Some(DtResult { sequence, series }));
        }
    }
    Ok(None)
}

fn dt_search(
    framed: &ExchangeMatrix,
    n: usize,
    remaining: usize,
    path: &mut Vec<usize>,
) -> Result<Option<Vec<usize>>, QuantumError> {
    if remaining == 0 {
        let c = framed.matrix().row_block(n, 2 * n);
        return Ok(c.neg().as_permutation().map(|_| path.clone()));
    }
    for k in 0..n {
        if path.last() == Some(&k) {
            continue;
        }
        path.push(k);
        let found = dt_search(&framed.mutate(k)?, n, remaining - 1, path)?;
        path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// `(1 + v y) E(y) = E(q y)` in one variable, to the given order.
pub fn functional_equation_holds(order: u32) -> bool {
    let form = IntMatrix::zeros(1, 1);
    let e = qdilog(&form, &[1], order).expect("nonzero exponent");
    let factor = TruncatedSeries::one(&form, order).add(&TruncatedSeries::monomial(&form, order, vec![1], v_pow(1)));
    factor.mul(&e) == e.rescale_degree(&q_pow(1))
}

/// `E(e1) E(e2) = E(e2) E(e1 + e2) E(e1)` for `y1 y2 = q y2 y1`, to the given order.
pub fn pentagon_holds(order: u32) -> bool {
    let form = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]);
    let e = |a: &[u32]| qdilog(&form, a, order).expect("nonzero exponent");
    e(&[1, 0]).mul(&e(&[0, 1])) == e(&[0, 1]).mul(&e(&[1, 1])).mul(&e(&[1, 0]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub holds: bool,
    /// Indices `j` whose two sides disagree.
    pub failures: Vec<usize>,
}

fn truncated_dilog(lambda: &IntMatrix, beta: &[i64], order: u32) -> Result<(TorusElement, TorusElement), QuantumError> {
    let one_var = IntMatrix::zeros(1, 1);
    let series = qdilog(&one_var, &[1], order)?;
    let inverse = series.inverse()?;
    let lift = |s: &TruncatedSeries| {
        let mut acc = TorusElement::zero(lambda);
        for (a, c) in s.terms() {
            let e: Vec<i64> = beta.iter().map(|b| b * i64::from(a[0])).collect();
            acc = acc.add(&TorusElement::monomial(lambda, e, c.clone()));
        }
        acc
    };
    Ok((lift(&series), lift(&inverse)))
}

/// Compares the quantum mutation at `k` of the initial seed of `pair` with
/// `E(y_k)^{-1} phi_{k,+}(x_j) E(y_k)`, where `y_k = x^{B~ e_k}` and `phi_{k,+}(x_j) = x^{E_+ e_j}`,
/// keeping powers of `y_k` up to `order`.
pub fn adjoint_check(pair: &CompatiblePair, k: usize, order: u32) -> Result<AdjointReport, QuantumError> {
    pair.matrix().check_vertex(k)?;
    if !pair.is_unital() {
        return Err(QuantumError::PreconditionFailed("the adjoint check needs D = I".into()));
    }
    let lambda = pair.lambda();
    let m = pair.matrix().m();
    let beta: Vec<i64> = pair.matrix().matrix().col(k).iter().map(|x| i64::try_from(x).expect("entry")).collect();
    let (e, e_inv) = truncated_dilog(lambda, &beta, order)?;
    let mutated = QuantumSeed::initial(pair.clone()).mutate(k)?;
    let e_plus = pair.e_matrix(k, 1);
    let mut failures = Vec::new();
    for j in 0..m {
        let alpha: Vec<i64> = e_plus.col(j).iter().map(|x| i64::try_from(x).expect("entry")).collect();
        let x = TorusElement::monomial(lambda, alpha.clone(), qc_one());
        let lhs = keep_y_degree(&e_inv.mul(&x).mul(&e), &alpha, &beta, order);
        let rhs = keep_y_degree(&mutated.cluster()[j], &alpha, &beta, order);
        if lhs != rhs {
            failures.push(j);
        }
    }
    Ok(AdjointReport { holds: failures.is_empty(), failures })
}

/// Terms `x^{alpha + s beta}` with `0 <= s <= order`; anything else is kept as is.
fn keep_y_degree(x: &TorusElement, alpha: &[i64], beta: &[i64], order: u32) -> TorusElement {
    let mut out = x.empty_like();
    for (e, c) in x.terms() {
        let diff: Vec<i64> = e.iter().zip(alpha).map(|(a, b)| a - b).collect();
        let s = beta.iter().zip(&diff).find(|(b, _)| **b != 0).map(|(b, d)| d / b);
        let beyond = match s {
            Some(s) => diff.iter().zip(beta).all(|(d, b)| *d == s * b) && s > i64::from(order),
            None => false,
        };
        if !beyond {
            out = out.add(&x.mono_like(e.clone(), c.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{parse_qc, qdilog_coefficient, qdilog_of};

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap()
    }

    fn seq(s: &[usize]) -> MutationSequence {
        MutationSequence::new(s.to_vec())
    }

    #[test]
    fn functional_equation_and_pentagon() {
        assert!(functional_equation_holds(8));
        assert!(pentagon_holds(8));
    }

    #[test]
    fn a2_factors() {
        let f = dilog_factors(&a2(), &seq(&[0, 1, 0, 1, 0])).unwrap();
        let expected = vec![(vec![1, 0], 1), (vec![1, 1], 1), (vec![0, 1], 1), (vec![1, 0], -1), (vec![0, 1], -1)];
        assert_eq!(f, expected);
    }

    #[test]
    fn a2_period_gives_unit() {
        assert!(dilog_product(&a2(), &seq(&[0, 1, 0, 1, 0]), 6).unwrap().is_one());
        assert!(dilog_product(&a2(), &seq(&[]), 6).unwrap().is_one());
    }

    #[test]
    fn a2_dt_and_identity() {
        let dt = combinatorial_dt(&a2(), 6, 4).unwrap().unwrap();
        assert_eq!(dt.sequence, seq(&[1, 0]));
        let report = verify_identity(&a2(), &seq(&[0, 1, 0]), &seq(&[1, 0]), 6).unwrap();
        assert!(report.holds);
        assert_eq!(report.lhs, dt.series);
        assert!(matches!(
            verify_identity(&a2(), &seq(&[0]), &seq(&[]), 4),
            Err(QuantumError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn single_vertex_dt() {
        let b = ExchangeMatrix::from_rows(&[vec![0]]).unwrap();
        let dt = combinatorial_dt(&b, 5, 3).unwrap().unwrap();
        assert_eq!(dt.sequence, seq(&[0]));
        assert_eq!(dt.series, qdilog(&IntMatrix::zeros(1, 1), &[1], 5).unwrap());
    }

    #[test]
    fn q_exponential_law() {
        let form = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]);
        let n = 6;
        let sum = TruncatedSeries::monomial(&form, n, vec![1, 0], qc_one())
            .add(&TruncatedSeries::monomial(&form, n, vec![0, 1], qc_one()));
        let lhs = qdilog_of(&sum).unwrap();
        let rhs = qdilog(&form, &[0, 1], n).unwrap().mul(&qdilog(&form, &[1, 0], n).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_coefficient_value() {
        assert_eq!(qdilog_coefficient(2), parse_qc("v^2/((v^4-1)*(v^2-1))").unwrap());
    }

    #[test]
    fn a3_alternating_factorizations() {
        // 1 <- 2 -> 3
        let b = ExchangeMatrix::from_arrows(3, &[(1, 0), (1, 2)]).unwrap();
        let long = seq(&[1, 0, 2, 1, 0, 2]);
        let short = seq(&[0, 2, 1]);
        for s in [&long, &short] {
            let c = tropical_path(&b, s).unwrap().final_c().clone();
            assert!(c.neg().as_permutation().is_some(), "{s}");
        }
        assert!(verify_identity(&b, &long, &short, 5).unwrap().holds);
    }

    #[test]
    fn adjoint_on_a2() {
        let pair = CompatiblePair::principal(&a2()).unwrap();
        for k in 0..2 {
            assert!(adjoint_check(&pair, k, 6).unwrap().holds);
            assert!(adjoint_check(&pair.mutate(k).unwrap(), k, 6).unwrap().holds);
        }
        let b2 = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]).unwrap();
        let pair = CompatiblePair::principal(&b2).unwrap();
        assert!(matches!(adjoint_check(&pair, 0, 3), Err(QuantumError::PreconditionFailed(_))));
    }
}
