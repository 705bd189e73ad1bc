//! Truncated power series in the quantum affine space `y^a y^b = v^{a^T B b} y^{a+b}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{q_pow, qc_one, v_pow, QCoefficient, QuantumError};
use crate::matrix::IntMatrix;

/// Series truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    form: Vec<i64>,
    n: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, QCoefficient>,
}

impl TruncatedSeries {
    pub fn zero(form: &IntMatrix, order: u32) -> Self {
        assert!(form.is_skew_symmetric(), "series need a skew-symmetric form");
        TruncatedSeries {
            form: form.to_i64_rows().expect("form entries fit in i64").concat(),
            n: form.rows(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(form: &IntMatrix, order: u32) -> Self {
        let mut s = Self::zero(form, order);
        s.terms.insert(vec![0; s.n], qc_one());
        s
    }

    /// `c y^alpha`, dropped if beyond the truncation.
    pub fn monomial(form: &IntMatrix, order: u32, alpha: Vec<u32>, c: QCoefficient) -> Self {
        let mut s = Self::zero(form, order);
        s.add_term(alpha, c);
        s
    }

    fn empty_like(&self) -> Self {
        TruncatedSeries { form: self.form.clone(), n: self.n, order: self.order, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn form_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(self.form[i * self.n + j]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QCoefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> QCoefficient {
        self.terms.get(alpha).cloned().unwrap_or_else(|| QCoefficient::zero(1))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.n]).is_some_and(|c| c.is_one())
    }

    fn pairing(&self, a: &[u32], b: &[u32]) -> i64 {
        let mut s = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.form[i * self.n..(i + 1) * self.n];
            s += i64::from(ai) * row.iter().zip(b).map(|(l, &bj)| l * i64::from(bj)).sum::<i64>();
        }
        s
    }

    fn add_term(&mut self, alpha: Vec<u32>, c: QCoefficient) {
        assert_eq!(alpha.len(), self.n);
        if c.is_zero() || alpha.iter().sum::<u32>() > self.order {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!((self.n, &self.form, self.order), (other.n, &other.form, other.order), "series over different spaces");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QCoefficient) -> Self {
        let mut out = self.empty_like();
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut acc: BTreeMap<Vec<u32>, Vec<QCoefficient>> = BTreeMap::new();
        for (a, ca) in &self.terms {
            let da: u32 = a.iter().sum();
            for (b, cb) in &other.terms {
                if da + b.iter().sum::<u32>() > self.order {
                    continue;
                }
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                acc.entry(e).or_default().push(ca.mul(cb).mul(&v_pow(self.pairing(a, b))));
            }
        }
        let mut out = self.empty_like();
        for (e, cs) in acc {
            let total = cs.iter().skip(1).fold(cs[0].clone(), |s, c| s.add(c));
            out.add_term(e, total);
        }
        out
    }

    /// Two-sided inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, QuantumError> {
        let c0 = self.coefficient(&vec![0; self.n]);
        if c0.is_zero() {
            return Err(QuantumError::PreconditionFailed("series with zero constant term is not invertible".into()));
        }
        let c0_inv = c0.inv();
        // self = c0 (1 + r); inverse = sum (-r)^k c0^{-1}.
        let r = self.scale(&c0_inv).sub(&TruncatedSeries::one(&self.form_matrix(), self.order));
        let minus_r = r.neg();
        let mut acc = TruncatedSeries::one(&self.form_matrix(), self.order);
        let mut power = acc.clone();
        for _ in 0..self.order {
            power = power.mul(&minus_r);
            if power.terms.is_empty() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Substitutes `y^alpha -> c^{|alpha|} y^alpha` for a central scalar `c`.
    pub fn rescale_degree(&self, c: &QCoefficient) -> Self {
        let mut out = self.empty_like();
        for (a, x) in &self.terms {
            let d: u32 = a.iter().sum();
            out.add_term(a.clone(), x.mul(&c.pow(i64::from(d))));
        }
        out
    }

    /// Same coefficients, truncated to a lower order.
    pub fn truncate(&self, order: u32) -> Self {
        let mut out = self.empty_like();
        out.order = order.min(self.order);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x.clone());
        }
        out
    }
}

/// `q^{k/2} / prod_{i=1}^k (q^i - 1)`, the coefficient of `y^k` in `E(y)`.
pub fn qdilog_coefficient(k: u32) -> QCoefficient {
    let mut c = v_pow(i64::from(k));
    for i in 1..=k {
        c = c.div(&q_pow(i64::from(i)).sub(&qc_one()));
    }
    c
}

/// `E(y^alpha)` truncated at total degree `order`; `alpha` is nonzero and nonnegative.
pub fn qdilog(form: &IntMatrix, alpha: &[u32], order: u32) -> Result<TruncatedSeries, QuantumError> {
    let deg: u32 = alpha.iter().sum();
    if deg == 0 {
        return Err(QuantumError::PreconditionFailed("E(y^alpha) needs alpha != 0".into()));
    }
    let mut s = TruncatedSeries::zero(form, order);
    let mut k = 0u32;
    // (y^alpha)^k = y^{k alpha} since alpha^T B alpha = 0.
    while k * deg <= order {
        s.add_term(alpha.iter().map(|a| a * k).collect(), qdilog_coefficient(k));
        k += 1;
    }
    Ok(s)
}

/// `E(u) = sum_k coeff_k u^k` for a series `u` without constant term.
pub fn qdilog_of(u: &TruncatedSeries) -> Result<TruncatedSeries, QuantumError> {
    if !u.coefficient(&vec![0; u.n]).is_zero() {
        return Err(QuantumError::PreconditionFailed("E(u) needs u without constant term".into()));
    }
    let mut acc = TruncatedSeries::one(&u.form_matrix(), u.order);
    let mut power = acc.clone();
    for k in 1..=u.order {
        power = power.mul(u);
        acc = acc.add(&power.scale(&qdilog_coefficient(k)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::parse_qc;

    fn rank1() -> IntMatrix {
        IntMatrix::zeros(1, 1)
    }

    #[test]
    fn low_order_coefficients() {
        assert_eq!(qdilog_coefficient(1), parse_qc("v/(v^2-1)").unwrap());
        assert_eq!(qdilog_coefficient(2), parse_qc("v^2/((v^4-1)*(v^2-1))").unwrap());
        assert!(qdilog(&rank1(), &[1], 0).unwrap().is_one());
    }

    #[test]
    fn inverse_is_two_sided() {
        let form = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]);
        let e = qdilog(&form, &[1, 1], 6).unwrap().mul(&qdilog(&form, &[1, 0], 6).unwrap());
        let inv = e.inverse().unwrap();
        assert!(e.mul(&inv).is_one());
        assert!(inv.mul(&e).is_one());
    }
}
