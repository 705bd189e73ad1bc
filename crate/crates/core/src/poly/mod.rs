//! Sparse multivariate polynomials over the integers and reduced fractions of them.
//!
//! Terms are kept sorted in descending graded-lex order, so two equal
//! polynomials always have identical term vectors and the derived `Ord` is a
//! canonical total order.

mod gcd;
mod parse;
mod rational;

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use gcd::gcd;
pub use parse::{parse_rational, ParseError};
pub use rational::RationalFunction;

/// Exponent vector with its total degree cached; ordered graded-lex with x1 > x2 > ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { degree: other.degree - self.degree, exps }
    }
}

/// Sparse polynomial in `nvars` variables with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly { nvars, terms: vec![(Monomial::var(nvars, i), BigInt::one())] }
    }

    pub fn monomial(mono: Monomial, c: BigInt) -> Self {
        let nvars = mono.exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(mono, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Vec<u32>, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial::new(e), c))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms }
    }

    fn from_sorted(nvars: usize, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[var] > 0)
    }

    /// Componentwise minimum of the exponent vectors (the largest monomial factor).
    pub fn min_exponents(&self) -> Vec<u32> {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.exps.clone();
        for (mono, _) in it {
            for (a, b) in m.iter_mut().zip(&mono.exps) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides by the monomial with exponent vector `exps`, which must divide every term.
    pub fn shift_down(&self, exps: &[u32]) -> Poly {
        if exps.iter().all(|&e| e == 0) {
            return self.clone();
        }
        let d = Monomial::new(exps.to_vec());
        let terms = self.terms.iter().map(|(m, c)| (d.quotient_of(m), c.clone())).collect();
        Poly::from_sorted(self.nvars, terms)
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        if mono.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect();
        Poly::from_sorted(self.nvars, terms)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Poly::from_sorted(self.nvars, terms)
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly::from_sorted(self.nvars, terms)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted(self.nvars, out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Vec<u32>, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.exps.iter().zip(&mb.exps).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match acc.get_mut(&e) {
                    Some(c) => *c += prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        Poly::from_map(self.nvars, acc)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(Poly::from_sorted(self.nvars, terms))
    }

    /// Exact multivariate division; `None` if `divisor` does not divide `self` in Z[x].
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (dm, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((dm.quotient_of(m), q));
            }
            return Some(Poly::from_sorted(self.nvars, terms));
        }
        if divisor.total_degree() > self.total_degree() {
            return None;
        }
        // Quick rejection on the lowest terms.
        let (lo_m, lo_c) = self.terms.last().unwrap();
        let (dlo_m, dlo_c) = divisor.terms.last().unwrap();
        if !dlo_m.divides(lo_m) || !(lo_c % dlo_c).is_zero() {
            return None;
        }
        for v in 0..self.nvars {
            if divisor.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            if !dm.divides(rm) {
                return None;
            }
            let (q, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let step = divisor.mul_monomial(&qm).scale(&q);
            rem = rem.sub(&step);
            quot.push((qm, q));
        }
        Some(Poly::from_sorted(self.nvars, quot))
    }

    /// Flips the sign so that the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Poly {
        match self.lead() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Coefficients with respect to `var`, indexed by the exponent of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exps[var] as usize;
            let mut exps = m.exps.clone();
            exps[var] = 0;
            buckets[e].push((Monomial::new(exps), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly::from_sorted(self.nvars, t)
            })
            .collect()
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0; nvars];
            exps[var] = e as u32;
            acc = acc.add(&c.mul_monomial(&Monomial::new(exps)));
        }
        acc
    }

    /// Substitutes the integer `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &BigInt) -> Poly {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[var];
            let mut exps = m.exps.clone();
            exps[var] = 0;
            let v = c * num_traits::pow(value.clone(), e as usize);
            *acc.entry(exps).or_insert_with(BigInt::zero) += v;
        }
        Poly::from_map(self.nvars, acc)
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn compose_var(&self, var: usize, value: &Poly) -> Poly {
        let coeffs = self.coeffs_in(var);
        let mut acc = Poly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into a ring with `nvars` variables; old variable `i` becomes `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0u32; nvars];
                for (i, &e) in m.exps.iter().enumerate() {
                    exps[map[i]] += e;
                }
                (exps, c.clone())
            }),
        )
    }

    /// Renders in ascending graded-lex order (constant term first).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mono = monomial_string(m, names);
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{abs}*{mono}");
            }
        }
        s
    }
}

pub(crate) fn monomial_string(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Default variable names `prefix1, prefix2, ...`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, names: &[&str]) -> Poly {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let r = parse_rational(s, &names).unwrap();
        assert!(r.den().is_one());
        r.num().clone()
    }

    #[test]
    fn ordering_is_graded_lex() {
        let names = indexed_names("x", 2);
        let f = p("1 + x2 + x1 + x1*x2 + x1^2", &["x1", "x2"]);
        assert_eq!(f.display_with(&names), "1+x2+x1+x1*x2+x1^2");
    }

    #[test]
    fn arithmetic_round_trip() {
        let v = ["x", "y", "z"];
        let a = p("x^2 + 3*x*y - z + 4", &v);
        let b = p("x - y^2 + 2", &v);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.add(&Poly::one(3)).div_exact(&a).is_none());
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(b.pow(3), b.mul(&b).mul(&b));
    }

    #[test]
    fn substitution_and_composition() {
        let v = ["x", "y"];
        let f = p("x^2*y + 2*x + y", &v);
        assert_eq!(f.substitute(0, &BigInt::from(3)), p("10*y + 6", &v));
        let g = f.compose_var(1, &p("x + 1", &v));
        assert_eq!(g, p("x^3 + x^2 + 3*x + 1", &v));
    }

    #[test]
    fn content_and_monomial_factor() {
        let v = ["x", "y"];
        let f = p("6*x^2*y + 4*x*y^3", &v);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.min_exponents(), vec![1, 1]);
        assert_eq!(f.shift_down(&[1, 1]), p("6*x + 4*y^2", &v));
    }
}
