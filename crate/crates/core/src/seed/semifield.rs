//! Tropical and universal semifields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::poly::{Poly, RationalFunction};

/// Abelian multiplicative group with an auxiliary addition `oplus`.
pub trait Semifield: Clone + Debug + PartialEq {
    fn unit_like(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn oplus(&self, other: &Self) -> Self;

    fn pow(&self, e: &BigInt) -> Self {
        let k = e.abs().to_u64().expect("exponent too large");
        let mut acc = self.unit_like();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        if e.is_negative() {
            acc.inv()
        } else {
            acc
        }
    }

    /// `self (+) ... (+) self` with `c >= 1` summands.
    fn times(&self, c: u64) -> Self {
        let mut acc = self.clone();
        for _ in 1..c {
            acc = acc.oplus(self);
        }
        acc
    }

    /// `1 (+) self`.
    fn one_plus(&self) -> Self {
        self.unit_like().oplus(self)
    }
}

/// Element `prod u_i^{e_i}` of `Trop(u_1..u_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tropical(pub Vec<BigInt>);

impl Tropical {
    pub fn unit(p: usize) -> Self {
        Tropical(vec![BigInt::from(0); p])
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    /// `(y / (1 (+) y), 1 / (1 (+) y))` as exponent vectors: the positive and negative parts.
    pub fn split(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let plus = self.0.iter().map(crate::matrix::pos).collect();
        let minus = self.0.iter().map(|e| crate::matrix::pos(&-e)).collect();
        (plus, minus)
    }
}

impl Semifield for Tropical {
    fn unit_like(&self) -> Self {
        Tropical::unit(self.0.len())
    }

    fn mul(&self, other: &Self) -> Self {
        Tropical(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn inv(&self) -> Self {
        Tropical(self.0.iter().map(|a| -a).collect())
    }

    fn oplus(&self, other: &Self) -> Self {
        Tropical(self.0.iter().zip(&other.0).map(|(a, b)| a.min(b).clone()).collect())
    }

    fn times(&self, _c: u64) -> Self {
        self.clone()
    }

    fn pow(&self, e: &BigInt) -> Self {
        Tropical(self.0.iter().map(|a| a * e).collect())
    }
}

/// Element of the universal semifield, realised as a subtraction-free rational function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universal(pub RationalFunction);

impl Semifield for Universal {
    fn unit_like(&self) -> Self {
        Universal(RationalFunction::one(self.0.nvars()))
    }

    fn mul(&self, other: &Self) -> Self {
        Universal(self.0.mul(&other.0))
    }

    fn inv(&self) -> Self {
        Universal(self.0.inv())
    }

    fn oplus(&self, other: &Self) -> Self {
        Universal(self.0.add(&other.0))
    }

    fn times(&self, c: u64) -> Self {
        Universal(self.0.scale(&BigInt::from(c)))
    }

    fn pow(&self, e: &BigInt) -> Self {
        Universal(self.0.pow(e.to_i64().expect("exponent too large")))
    }
}

impl Universal {
    pub fn is_unit(&self) -> bool {
        self.0.is_one()
    }
}

/// Evaluates a polynomial with positive coefficients in a semifield; `c * m` is read as
/// `m (+) ... (+) m` with `c` summands. `None` for the zero polynomial or a negative coefficient.
pub fn eval_subtraction_free<S: Semifield>(p: &Poly, y: &[S]) -> Option<S> {
    assert_eq!(p.nvars(), y.len());
    let mut acc: Option<S> = None;
    for (m, c) in p.terms() {
        if !c.is_positive() {
            return None;
        }
        let mut term: Option<S> = None;
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                let f = y[i].pow(&BigInt::from(e));
                term = Some(match term {
                    Some(t) => t.mul(&f),
                    None => f,
                });
            }
        }
        let term = term.unwrap_or_else(|| y.first().map(|x| x.unit_like()).expect("at least one variable"));
        let count = c.to_u64().expect("coefficient too large");
        let term = term.times(count);
        acc = Some(match acc {
            Some(a) => a.oplus(&term),
            None => term,
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[i64]) -> Tropical {
        Tropical(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn tropical_laws() {
        let a = t(&[2, -1, 0]);
        let b = t(&[1, 3, -2]);
        assert_eq!(a.oplus(&b), t(&[1, -1, -2]));
        assert_eq!(Semifield::mul(&a, &b), t(&[3, 2, -2]));
        assert_eq!(a.one_plus(), t(&[0, -1, 0]));
        assert_eq!(a.pow(&BigInt::from(-2)), t(&[-4, 2, 0]));
        // Distributivity of multiplication over oplus.
        let c = t(&[0, 5, 1]);
        assert_eq!(Semifield::mul(&c, &a.oplus(&b)), Semifield::mul(&c, &a).oplus(&Semifield::mul(&c, &b)));
    }
}
