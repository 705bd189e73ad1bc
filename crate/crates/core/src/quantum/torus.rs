//! Laurent polynomials in the quantum torus `x^a x^b = v^{a^T L b} x^{a+b}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{at_v_one, qc_one, qc_string, v_pow, QCoefficient, QuantumError};
use crate::matrix::IntMatrix;
use crate::poly::RationalFunction;

/// Skew form shared by all elements of one torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Form {
    m: usize,
    entries: Vec<i64>,
}

impl Form {
    fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.entries[i * self.m..(i + 1) * self.m];
            let t: i64 = row.iter().zip(b).map(|(l, bj)| l * bj).sum();
            s += ai * t;
        }
        s
    }
}

/// Finite sum `sum c_a x^a` over exponent vectors `a` in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    form: Arc<Form>,
    terms: BTreeMap<Vec<i64>, QCoefficient>,
}

impl TorusElement {
    /// Zero of the torus with skew form `lambda` (must be skew-symmetric with small entries).
    pub fn zero(lambda: &IntMatrix) -> Self {
        assert!(lambda.is_skew_symmetric(), "quantum torus needs a skew-symmetric form");
        let entries = lambda.to_i64_rows().expect("form entries fit in i64").concat();
        TorusElement { form: Arc::new(Form { m: lambda.rows(), entries }), terms: BTreeMap::new() }
    }

    pub(super) fn empty_like(&self) -> Self {
        TorusElement { form: self.form.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(lambda: &IntMatrix, exps: Vec<i64>, c: QCoefficient) -> Self {
        let mut z = Self::zero(lambda);
        assert_eq!(exps.len(), z.form.m);
        if !c.is_zero() {
            z.terms.insert(exps, c);
        }
        z
    }

    pub fn one(lambda: &IntMatrix) -> Self {
        Self::monomial(lambda, vec![0; lambda.rows()], qc_one())
    }

    /// Generator `x_i`.
    pub fn generator(lambda: &IntMatrix, i: usize) -> Self {
        let mut e = vec![0; lambda.rows()];
        e[i] = 1;
        Self::monomial(lambda, e, qc_one())
    }

    pub(super) fn mono_like(&self, exps: Vec<i64>, c: QCoefficient) -> Self {
        let mut z = self.empty_like();
        if !c.is_zero() {
            z.terms.insert(exps, c);
        }
        z
    }

    pub fn rank(&self) -> usize {
        self.form.m
    }

    /// The skew form `a^T L b`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        self.form.eval(a, b)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QCoefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i64]) -> Option<&QCoefficient> {
        self.terms.get(exps)
    }

    /// `Some((a, c))` if this is a single term `c x^a`.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &QCoefficient)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, exps: Vec<i64>, c: QCoefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.form, other.form, "elements of different tori");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QCoefficient) -> Self {
        let mut out = self.empty_like();
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.form, other.form, "elements of different tori");
        let mut out = self.empty_like();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let twist = self.form.eval(a, b);
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb).mul(&v_pow(twist)));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.mono_like(vec![0; self.form.m], qc_one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a single term.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (a, c) = self.as_monomial()?;
        // (c x^a)^{-1} = c^{-1} x^{-a}, since a^T L a = 0.
        Some(self.mono_like(a.iter().map(|x| -x).collect(), c.inv()))
    }

    /// The `Q` with `self * Q = n`, if it lies in the torus.
    ///
    /// Leading terms are taken in lexicographic order on `Z^m`; quotient exponents must stay in
    /// the box `[min(n) - min(self), max(n) - max(self)]`, which bounds the search.
    pub fn left_divide(&self, n: &Self) -> Result<Self, QuantumError> {
        assert_eq!(self.form, n.form, "elements of different tori");
        let (lead_d, lead_c) = self.terms.iter().next_back().ok_or(QuantumError::NonLaurent)?;
        let m = self.form.m;
        let bounds = |t: &BTreeMap<Vec<i64>, QCoefficient>| {
            let mut lo = vec![i64::MAX; m];
            let mut hi = vec![i64::MIN; m];
            for e in t.keys() {
                for i in 0..m {
                    lo[i] = lo[i].min(e[i]);
                    hi[i] = hi[i].max(e[i]);
                }
            }
            (lo, hi)
        };
        let (dlo, dhi) = bounds(&self.terms);
        let (nlo, nhi) = bounds(&n.terms);
        let mut q = self.empty_like();
        let mut r = n.clone();
        while let Some((rho, c)) = r.terms.iter().next_back() {
            let e: Vec<i64> = rho.iter().zip(lead_d).map(|(a, b)| a - b).collect();
            if (0..m).any(|i| e[i] < nlo[i] - dlo[i] || e[i] > nhi[i] - dhi[i]) {
                return Err(QuantumError::NonLaurent);
            }
            // lead_d * x^e = v^{d^T L e} x^rho.
            let twist = self.form.eval(lead_d, &e);
            let coeff = c.div(lead_c).mul(&v_pow(-twist));
            let t = self.mono_like(e, coeff);
            r = r.sub(&self.mul(&t));
            q = q.add(&t);
        }
        Ok(q)
    }

    /// Specialisation `v = 1`: a commutative Laurent polynomial in `m` variables.
    pub fn specialize_q1(&self) -> Result<RationalFunction, QuantumError> {
        let m = self.form.m;
        let mut acc = RationalFunction::zero(m);
        for (e, c) in &self.terms {
            let value = at_v_one(c)?;
            let exps: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
            let term = RationalFunction::laurent_monomial(m, &exps).mul(&RationalFunction::new(
                crate::poly::Poly::constant(m, value.numer().clone()),
                crate::poly::Poly::constant(m, value.denom().clone()),
            ));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Readable form such as `x1^-1*x2 + (v^2)*x3`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(i, x)| if *x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
                    .collect();
                let coeff = if c.is_one() { String::new() } else { format!("({})", qc_string(c)) };
                match (coeff.is_empty(), mono.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => mono.join("*"),
                    (false, true) => coeff,
                    (false, false) => format!("{coeff}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::qc_int;

    fn lam() -> IntMatrix {
        IntMatrix::from_rows(&[vec![0i64, 1, -2], vec![-1, 0, 1], vec![2, -1, 0]])
    }

    fn gen(i: usize) -> TorusElement {
        TorusElement::generator(&lam(), i)
    }

    #[test]
    fn quasi_commutation_and_associativity() {
        let (x1, x2, x3) = (gen(0), gen(1), gen(2));
        // x1 x2 = q^{L12} x2 x1 with q = v^2.
        assert_eq!(x1.mul(&x2), x2.mul(&x1).scale(&v_pow(2)));
        let a = x1.add(&x2.scale(&qc_int(3))).add(&TorusElement::one(&lam()));
        let b = x3.add(&x1.mul(&x2));
        let c = x2.sub(&x3.scale(&v_pow(-1)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn exact_left_division() {
        let (x1, x2, x3) = (gen(0), gen(1), gen(2));
        let d = x1.add(&x2.mul(&x3)).add(&TorusElement::one(&lam()));
        let q = x3.scale(&v_pow(3)).add(&x1.mul(&x1)).add(&x2.monomial_inverse().unwrap());
        assert_eq!(d.left_divide(&d.mul(&q)).unwrap(), q);
        assert_eq!(d.left_divide(&d.add(&x1)), Err(QuantumError::NonLaurent));
    }

    #[test]
    fn specialization() {
        let x = TorusElement::monomial(&lam(), vec![1, 1, 0], v_pow(1));
        let r = x.specialize_q1().unwrap();
        assert_eq!(r.as_laurent_monomial().unwrap().1, vec![1, 1, 0]);
        assert!(TorusElement::one(&lam()).specialize_q1().unwrap().is_one());
        let pole = TorusElement::monomial(&lam(), vec![0, 0, 0], v_pow(2).sub(&qc_one()).inv());
        assert_eq!(pole.specialize_q1(), Err(QuantumError::PoleAtOne));
    }
}
