use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{gcd, monomial_string, Monomial, Poly};

/// Reduced fraction `num/den` in Q(x1..xn).
///
/// Invariants: `gcd(num, den)` is a unit, `den` has a positive leading
/// coefficient, and zero is stored as `0/1`. Equal functions are therefore
/// structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        let (num, den) = reduce(num, den);
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i))
    }

    /// Laurent monomial `prod x_i^{e_i}` with integer (possibly negative) exponents.
    pub fn laurent_monomial(nvars: usize, exps: &[BigInt]) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut up = vec![0u32; nvars];
        let mut down = vec![0u32; nvars];
        for (i, e) in exps.iter().enumerate() {
            let v = u32::try_from(e.abs()).expect("exponent too large");
            if e.is_negative() {
                down[i] = v;
            } else {
                up[i] = v;
            }
        }
        RationalFunction {
            num: Poly::monomial(Monomial::new(up), BigInt::one()),
            den: Poly::monomial(Monomial::new(down), BigInt::one()),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when the denominator is a monomial, i.e. this is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let (num, den) = fix_sign(self.den.clone(), self.num.clone());
        RationalFunction { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        let den = self.den.mul(&d2);
        // Only factors of g can cancel.
        if num.is_zero() {
            return Self::zero(self.nvars());
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            let (num, den) = fix_sign(num, den);
            return RationalFunction { num, den };
        }
        Self::new(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        // Cross-cancel; inputs are reduced so the result is reduced.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let (num, den) = fix_sign(n1.mul(&n2), d1.mul(&d2));
        RationalFunction { num, den }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).expect("exponent too large");
        // Powers of a reduced fraction stay reduced.
        let (num, den) = fix_sign(base.num.pow(k), base.den.pow(k));
        RationalFunction { num, den }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    /// Substitutes the integer `value` for variable `var`; `None` if the denominator vanishes.
    pub fn substitute(&self, var: usize, value: &BigInt) -> Option<Self> {
        let den = self.den.substitute(var, value);
        if den.is_zero() {
            return None;
        }
        Some(Self::new(self.num.substitute(var, value), den))
    }

    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        Self::new(self.num.remap(nvars, map), self.den.remap(nvars, map))
    }

    /// Evaluates the polynomial `p` at the rational functions `args`.
    pub fn eval_poly(p: &Poly, args: &[RationalFunction]) -> Self {
        assert_eq!(p.nvars(), args.len());
        let nvars = args.first().map_or(0, |a| a.nvars());
        let mut cache: HashMap<(usize, u32), RationalFunction> = HashMap::new();
        let mut acc = Self::zero(nvars);
        for (m, c) in p.terms() {
            let mut t = Self::constant(nvars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| args[i].pow(e as i64)).clone();
                t = t.mul(&pw);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Exponent vector of a Laurent monomial `c * x^e`, if this is one.
    pub fn as_laurent_monomial(&self) -> Option<(BigInt, Vec<i64>)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let (nm, nc) = &self.num.terms()[0];
        let (dm, dc) = &self.den.terms()[0];
        if !dc.is_one() {
            return None;
        }
        let e = nm.exps().iter().zip(dm.exps()).map(|(a, b)| *a as i64 - *b as i64).collect();
        Some((nc.clone(), e))
    }

    /// Canonical string in the `+ - * / ^` grammar, terms in ascending graded-lex order.
    pub fn display_with(&self, names: &[String]) -> String {
        let num = self.num.display_with(names);
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        format!("{num}/{}", denominator_string(&self.den, names))
    }
}

fn denominator_string(den: &Poly, names: &[String]) -> String {
    if den.is_monomial() {
        let (m, c) = &den.terms()[0];
        let mono = monomial_string(m, names);
        let factors = m.exps().iter().filter(|&&e| e > 0).count() + usize::from(!c.is_one());
        let body = if c.is_one() {
            mono
        } else if mono.is_empty() {
            c.to_string()
        } else {
            format!("{c}*{mono}")
        };
        if factors > 1 {
            format!("({body})")
        } else {
            body
        }
    } else {
        format!("({})", den.display_with(names))
    }
}

fn fix_sign(num: Poly, den: Poly) -> (Poly, Poly) {
    match den.lead() {
        Some((_, c)) if c.is_negative() => (num.neg(), den.neg()),
        _ => (num, den),
    }
}

fn reduce(num: Poly, den: Poly) -> (Poly, Poly) {
    let n = num.nvars();
    if num.is_zero() {
        return (num, Poly::one(n));
    }
    if den.is_monomial() {
        let (dm, dc) = den.terms()[0].clone();
        let nmin = num.min_exponents();
        let common: Vec<u32> = nmin.iter().zip(dm.exps()).map(|(a, b)| (*a).min(*b)).collect();
        let g = num.content().gcd(&dc);
        let g = if dc.is_negative() { -g } else { g };
        let num = num.shift_down(&common).div_scalar_exact(&g).expect("content divides");
        let den = den.shift_down(&common).div_scalar_exact(&g).expect("content divides");
        return (num, den);
    }
    let g = gcd(&num, &den);
    let (num, den) = if g.is_one() {
        (num, den)
    } else {
        (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
    };
    fix_sign(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{indexed_names, parse_rational};

    fn r(s: &str) -> RationalFunction {
        parse_rational(s, &indexed_names("x", 3)).unwrap()
    }

    #[test]
    fn reduction_is_canonical() {
        assert_eq!(r("(x1^2 - 1)/(x1 + 1)"), r("x1 - 1"));
        assert_eq!(r("(2*x1*x2)/(4*x2^2)"), r("x1/(2*x2)"));
        assert_eq!(r("1/(-x1-1)"), r("-1/(x1+1)"));
        assert!(r("1/(x1+1)").den().lead().unwrap().1.is_positive());
    }

    #[test]
    fn field_operations() {
        let a = r("(1 + x2)/x1");
        let b = r("(x1 + 1)/x2");
        let s = a.add(&b);
        assert_eq!(s, r("(x2 + x2^2 + x1 + x1^2)/(x1*x2)"));
        assert_eq!(s.sub(&b), a);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.pow(-2).mul(&a.pow(2)), RationalFunction::one(3));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn display_grammar() {
        let names = indexed_names("x", 3);
        assert_eq!(r("(1 + x2)/x1").display_with(&names), "(1+x2)/x1");
        assert_eq!(r("(1 + x1 + x2)/(x1*x2)").display_with(&names), "(1+x2+x1)/(x1*x2)");
        assert_eq!(r("x2/x1^2").display_with(&names), "x2/x1^2");
        assert_eq!(r("1/(1+x3)").display_with(&names), "1/(1+x3)");
        let s = r("(x1*x3 + 2)/(3*x2 - x1)");
        assert_eq!(parse_rational(&s.display_with(&names), &names).unwrap(), s);
    }

    #[test]
    fn laurent_monomials() {
        let m = RationalFunction::laurent_monomial(3, &[BigInt::from(2), BigInt::from(-1), BigInt::zero()]);
        assert_eq!(m, r("x1^2/x2"));
        assert_eq!(m.as_laurent_monomial().unwrap().1, vec![2, -1, 0]);
        assert!(m.is_laurent());
        assert!(!r("1/(1+x1)").is_laurent());
    }

    #[test]
    fn evaluation_of_polynomial_at_functions() {
        let p = r("1 + x1 + x1*x2").num().clone();
        let args = [r("1/x2"), r("x1 + 1"), r("x3")];
        assert_eq!(RationalFunction::eval_poly(&p, &args), r("1 + 1/x2 + (x1+1)/x2"));
    }
}
