//! Multivariate gcd over Z by recursive primitive remainder sequences.

use num_integer::Integer;

use super::{Monomial, Poly};

/// Greatest common divisor in Z[x1..xn], normalized to a positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars(), "polynomials live in different rings");
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let common: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| (*x).min(*y)).collect();
    let g = gcd_no_monomial_factor(&a.shift_down(&ma), &b.shift_down(&mb));
    g.mul_monomial(&Monomial::new(common))
}

fn integer_gcd_poly(nvars: usize, a: &Poly, b: &Poly) -> Poly {
    Poly::constant(nvars, a.content().gcd(&b.content()))
}

fn gcd_no_monomial_factor(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return integer_gcd_poly(n, a, b);
    }
    if a == b {
        return a.normalize_sign();
    }
    // Cheap trial division catches the common case where one divides the other.
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.normalize_sign();
    }
    let va: Vec<usize> = (0..n).filter(|&v| a.uses_var(v)).collect();
    let vb: Vec<usize> = (0..n).filter(|&v| b.uses_var(v)).collect();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_no_monomial_factor(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_no_monomial_factor(a, &content_in(b, v));
    }
    // Main variable: the one of smallest degree keeps the remainder sequence short.
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("non-constant polynomial uses a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    c.mul(&g).normalize_sign()
}

/// Content with respect to `var`: gcd of the coefficients of the powers of `var`.
pub(crate) fn content_in(a: &Poly, var: usize) -> Poly {
    let coeffs: Vec<Poly> = a.coeffs_in(var).into_iter().filter(|c| !c.is_zero()).collect();
    let mut g = Poly::zero(a.nvars());
    // Start from the smallest coefficient: it bounds the gcd best.
    let mut order: Vec<&Poly> = coeffs.iter().collect();
    order.sort_by_key(|c| (c.total_degree(), c.len()));
    for c in order {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::constant(a.nvars(), a.content());
        }
    }
    g
}

fn primitive_part_in(a: &Poly, var: usize) -> Poly {
    let c = content_in(a, var);
    a.div_exact(&c).expect("content divides").normalize_sign()
}

fn primitive_prs(pa: Poly, pb: Poly, var: usize) -> Poly {
    let n = pa.nvars();
    let (mut f, mut g) = if pa.degree_in(var) >= pb.degree_in(var) { (pa, pb) } else { (pb, pa) };
    loop {
        if g.degree_in(var) == 0 {
            // g is primitive in var and free of it, hence a unit.
            return Poly::one(n);
        }
        let r = pseudo_remainder(&f, &g, var);
        if r.is_zero() {
            return g.normalize_sign();
        }
        f = g;
        g = primitive_part_in(&r, var);
    }
}

/// Pseudo-remainder of `f` by `g` as univariate polynomials in `var`.
fn pseudo_remainder(f: &Poly, g: &Poly, var: usize) -> Poly {
    let n = f.nvars();
    let gc = g.coeffs_in(var);
    let dg = gc.len() - 1;
    let lc = gc[dg].clone();
    let mut r = f.coeffs_in(var);
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(&lc);
        }
        for (i, gci) in gc.iter().enumerate() {
            if !gci.is_zero() {
                r[i + shift] = r[i + shift].sub(&lr.mul(gci));
            }
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    Poly::from_coeffs_in(n, var, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rational;

    fn p(s: &str) -> Poly {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        parse_rational(s, &names).unwrap().num().clone()
    }

    #[test]
    fn gcd_of_products() {
        let f = p("x + y + 1");
        let g = p("x^2 - y*z + 3");
        let h = p("2*x*z - y^2");
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(gcd(&a, &b), f);
        assert_eq!(gcd(&a.mul(&h), &b.mul(&g)), f.mul(&g).mul(&h).normalize_sign());
    }

    #[test]
    fn gcd_with_integer_and_monomial_parts() {
        let a = p("6*x^2*y + 6*x*y^2");
        let b = p("4*x*y^3 + 4*x^2*y^2");
        assert_eq!(gcd(&a, &b), p("2*x^2*y + 2*x*y^2"));
    }

    #[test]
    fn coprime_gives_one() {
        assert!(gcd(&p("x^2 + y^2 + 1"), &p("x*y + z")).is_one());
        assert!(gcd(&p("x + 1"), &p("x - 1")).is_one());
    }

    #[test]
    fn gcd_sign_is_normalized() {
        let g = gcd(&p("-x - 1"), &p("-x^2 + 1"));
        assert_eq!(g, p("x + 1"));
    }

    #[test]
    fn univariate_high_degree() {
        // (x^6 - 1) and (x^4 - 1) share x^2 - 1.
        assert_eq!(gcd(&p("x^6 - 1"), &p("x^4 - 1")), p("x^2 - 1"));
    }
}
