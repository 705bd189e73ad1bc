//! Principal coefficients: c-matrices, g-matrices, F-polynomials, elementary matrices,
//! product formulas and the tropical dualities.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{pos, sgn, IntMatrix};
use crate::poly::{indexed_names, Poly, RationalFunction};
use crate::quiver::{ExchangeMatrix, IceMatrix, QuiverError};
use crate::seed::{eval_subtraction_free, Coefficients, MutationSequence, Seed, SeedError, Semifield};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("c-vector {column} after {step} mutations is not sign-coherent: {vector:?}")]
    SignIncoherence { step: usize, column: usize, vector: Vec<BigInt> },
    #[error("c-matrix recursion and principal-coefficient mutation disagree after {0} mutations")]
    PathMismatch(usize),
    #[error("cluster variable {0} is not homogeneous for the principal grading")]
    NotHomogeneous(usize),
    #[error("braid relation needs |b_ij b_ji| <= 3, got {0}")]
    NotApplicable(BigInt),
    #[error("{0}")]
    Precondition(String),
}

/// `[B; I_n]`.
pub fn principal_extension(b: &ExchangeMatrix) -> IceMatrix {
    b.principal_framing()
}

/// `E_{k,eps}(B)` and `F_{k,eps}(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryPair {
    pub k: usize,
    pub eps: i32,
    pub e: IntMatrix,
    pub f: IntMatrix,
}

/// `E` differs from the identity in column `k`, `F` in row `k`.
pub fn elementary_pair(b: &ExchangeMatrix, k: usize, eps: i32) -> Result<ElementaryPair, TropicalError> {
    b.check_vertex(k)?;
    assert!(eps == 1 || eps == -1, "eps must be +1 or -1");
    let n = b.n();
    let eps_b = BigInt::from(eps);
    let mut e = IntMatrix::identity(n);
    let mut f = IntMatrix::identity(n);
    for i in 0..n {
        if i == k {
            e[(k, k)] = -BigInt::one();
            f[(k, k)] = -BigInt::one();
        } else {
            e[(i, k)] = pos(&(-&eps_b * b.get(i, k)));
            f[(k, i)] = pos(&(&eps_b * b.get(k, i)));
        }
    }
    Ok(ElementaryPair { k, eps, e, f })
}

/// Everything recorded along a path `t0 -> t` with principal coefficients.
#[derive(Clone, Debug)]
pub struct TropicalPath {
    /// `B(t_s)` (principal parts), `s = 0..=N`.
    pub matrices: Vec<ExchangeMatrix>,
    /// `C(t_s)`, `s = 0..=N`.
    pub c: Vec<IntMatrix>,
    /// `G(t_s)` from the product formula, `s = 0..=N`.
    pub g: Vec<IntMatrix>,
    /// `eps_s`: sign of the c-vector `C(t_{s-1}) e_{i_s}`, `s = 1..=N`.
    pub signs: Vec<i32>,
}

impl TropicalPath {
    pub fn final_c(&self) -> &IntMatrix {
        self.c.last().expect("nonempty")
    }

    pub fn final_g(&self) -> &IntMatrix {
        self.g.last().expect("nonempty")
    }

    /// The c-vectors `beta_s = C(t_{s-1}) e_{i_s}`.
    pub fn betas(&self, t: &MutationSequence) -> Vec<Vec<BigInt>> {
        t.as_slice().iter().enumerate().map(|(s, &k)| self.c[s].col(k)).collect()
    }
}

/// Sign of a column if it is nonzero and coherent.
fn column_sign(c: &IntMatrix, j: usize) -> Option<i32> {
    let mut sign = 0;
    for i in 0..c.rows() {
        let s = sgn(&c[(i, j)]);
        if s != 0 {
            if sign != 0 && s != sign {
                return None;
            }
            sign = s;
        }
    }
    (sign != 0).then_some(sign)
}

fn check_coherent(c: &IntMatrix, step: usize) -> Result<(), TropicalError> {
    for j in 0..c.cols() {
        if column_sign(c, j).is_none() {
            return Err(TropicalError::SignIncoherence { step, column: j, vector: c.col(j) });
        }
    }
    Ok(())
}

/// Walks `t`, computing c-matrices both by the sign recursion and as the bottom block of the
/// mutated principal extension, and g-matrices by the product of `E` matrices.
pub fn tropical_path(b: &ExchangeMatrix, t: &MutationSequence) -> Result<TropicalPath, TropicalError> {
    let b = b.principal();
    let n = b.n();
    let mut cur = b.clone();
    let mut framed = principal_extension(&b);
    let mut c = IntMatrix::identity(n);
    let mut g = IntMatrix::identity(n);
    let mut out = TropicalPath { matrices: vec![cur.clone()], c: vec![c.clone()], g: vec![g.clone()], signs: vec![] };
    for (s, &k) in t.as_slice().iter().enumerate() {
        cur.check_vertex(k)?;
        let eps = column_sign(&c, k)
            .ok_or_else(|| TropicalError::SignIncoherence { step: s, column: k, vector: c.col(k) })?;
        let eps_b = BigInt::from(eps);
        let mut next = c.clone();
        for i in 0..n {
            for j in 0..n {
                next[(i, j)] = if j == k {
                    -&c[(i, j)]
                } else {
                    &c[(i, j)] + &c[(i, k)] * pos(&(&eps_b * cur.get(k, j)))
                };
            }
        }
        g = g.mul(&elementary_pair(&cur, k, eps)?.e);
        framed = framed.mutate(k)?;
        cur = cur.mutate(k)?;
        if framed.matrix().row_block(n, 2 * n) != next {
            return Err(TropicalError::PathMismatch(s + 1));
        }
        check_coherent(&next, s + 1)?;
        c = next;
        out.matrices.push(cur.clone());
        out.c.push(c.clone());
        out.g.push(g.clone());
        out.signs.push(eps);
    }
    Ok(out)
}

pub fn c_matrix(b: &ExchangeMatrix, t: &MutationSequence) -> Result<IntMatrix, TropicalError> {
    Ok(tropical_path(b, t)?.final_c().clone())
}

pub fn g_matrix(b: &ExchangeMatrix, t: &MutationSequence) -> Result<IntMatrix, TropicalError> {
    Ok(tropical_path(b, t)?.final_g().clone())
}

/// `C(t)` as the product `F_{i_1,eps_1}(t_1) ... F_{i_N,eps_N}(t_N)`.
pub fn c_matrix_by_product(b: &ExchangeMatrix, t: &MutationSequence) -> Result<IntMatrix, TropicalError> {
    let path = tropical_path(b, t)?;
    let mut c = IntMatrix::identity(b.n());
    for (s, &k) in t.as_slice().iter().enumerate() {
        c = c.mul(&elementary_pair(&path.matrices[s], k, path.signs[s])?.f);
    }
    Ok(c)
}

/// Principal-coefficient seed at `t`: ambient variables `x1..xn` then the frozen `x_{n+1}..x_{2n}`.
fn principal_seed_at(b: &ExchangeMatrix, t: &MutationSequence) -> Result<Seed, TropicalError> {
    Ok(Seed::initial(&principal_extension(&b.principal())).seed_at(t)?)
}

/// `G(t)` read off as degrees of principal-coefficient cluster variables, with
/// `deg x_j = e_j` and `deg x_{n+j} = -B e_j`.
pub fn g_matrix_by_grading(b: &ExchangeMatrix, t: &MutationSequence) -> Result<IntMatrix, TropicalError> {
    let b = b.principal();
    let n = b.n();
    let seed = principal_seed_at(&b, t)?;
    let mut degs: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|i| BigInt::from(u8::from(i == j))).collect()).collect();
    for j in 0..n {
        degs.push((0..n).map(|i| -b.get(i, j)).collect());
    }
    let degree = |p: &Poly| -> Option<Vec<BigInt>> {
        let mut out: Option<Vec<BigInt>> = None;
        for (m, _) in p.terms() {
            let mut d = vec![BigInt::zero(); n];
            for (v, &e) in m.exps().iter().enumerate() {
                for (di, gi) in d.iter_mut().zip(&degs[v]) {
                    *di += gi * e;
                }
            }
            match &out {
                Some(o) if *o != d => return None,
                Some(_) => {}
                None => out = Some(d),
            }
        }
        out
    };
    let mut g = IntMatrix::zeros(n, n);
    for (j, x) in seed.cluster().iter().enumerate() {
        let (Some(dn), Some(dd)) = (degree(x.num()), degree(x.den())) else {
            return Err(TropicalError::NotHomogeneous(j));
        };
        for i in 0..n {
            g[(i, j)] = &dn[i] - &dd[i];
        }
    }
    Ok(g)
}

/// F-polynomials at `t`, as polynomials in `y1..yn`.
pub fn f_polynomials(b: &ExchangeMatrix, t: &MutationSequence) -> Result<Vec<Poly>, TropicalError> {
    let n = b.n();
    let seed = principal_seed_at(b, t)?;
    let map: Vec<usize> = (0..2 * n).map(|v| v.saturating_sub(n)).collect();
    seed.cluster()
        .iter()
        .map(|x| {
            let mut v = x.clone();
            for i in 0..n {
                v = v.substitute(i, &BigInt::one()).expect("Laurent in the cluster");
            }
            assert!(v.is_polynomial(), "F-polynomial has a denominator");
            Ok(v.num().remap(n, &map))
        })
        .collect()
}

/// Names `y1..yn` used to print F-polynomials.
pub fn f_names(n: usize) -> Vec<String> {
    indexed_names("y", n)
}

/// Pass/fail with human-readable witnesses for each failed identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub holds: bool,
    pub failures: Vec<String>,
}

impl Report {
    fn from_failures(failures: Vec<String>) -> Self {
        Report { holds: failures.is_empty(), failures }
    }
}

/// `G^T D C = D`, `C(t)^{-1} = C(-B(t), t -> t0)` and `G(t)^{-1} = G(-B(t), t -> t0)`.
pub fn check_tropical_duality(b: &ExchangeMatrix, t: &MutationSequence) -> Result<Report, TropicalError> {
    let path = tropical_path(b, t)?;
    let d = IntMatrix::diag(b.symmetrizer());
    let (c, g) = (path.final_c(), path.final_g());
    let mut failures = Vec::new();
    if g.transpose().mul(&d).mul(c) != d {
        failures.push(format!("G^T D C != D:\nG =\n{g}\nC =\n{c}"));
    }
    let back = MutationSequence::new(t.as_slice().iter().rev().copied().collect());
    let opposite = path.matrices.last().expect("nonempty").opposite();
    let rev = tropical_path(&opposite, &back)?;
    match c.inverse() {
        Some(ci) if ci == *rev.final_c() => {}
        _ => failures.push(format!("C^-1 != C(Q(t)^op, t, t0):\nC =\n{c}\nreverse =\n{}", rev.final_c())),
    }
    match g.inverse() {
        Some(gi) if gi == *rev.final_g() => {}
        _ => failures.push(format!("G^-1 != G(Q(t)^op, t, t0):\nG =\n{g}\nreverse =\n{}", rev.final_g())),
    }
    Ok(Report::from_failures(failures))
}

/// `G(B, t)^T = C(B^vee, t)^{-1}`.
pub fn check_langlands_duality(b: &ExchangeMatrix, t: &MutationSequence) -> Result<Report, TropicalError> {
    let b = b.principal();
    let g = g_matrix(&b, t)?;
    let c_dual = c_matrix(&b.langlands_dual()?, t)?;
    let mut failures = Vec::new();
    match c_dual.inverse() {
        Some(ci) if ci == g.transpose() => {}
        _ => failures.push(format!("G^T != C(Q^vee)^-1:\nG =\n{g}\nC(Q^vee) =\n{c_dual}")),
    }
    Ok(Report::from_failures(failures))
}

/// Cluster and coefficients at `t` assembled from `(C, G, F)` by the separation formulas,
/// with `yhat_l = y_l prod_i x_i^{b_il}`.
pub fn separation_evaluate(seed: &Seed, t: &MutationSequence) -> Result<(Vec<RationalFunction>, Coefficients), TropicalError> {
    let b = seed.matrix().principal();
    let n = b.n();
    let nv = seed.nvars();
    let path = tropical_path(&b, t)?;
    let (c, g) = (path.final_c(), path.final_g());
    let bt = path.matrices.last().expect("nonempty");
    let fs = f_polynomials(&b, t)?;
    let x: Vec<RationalFunction> = seed.cluster().to_vec();
    let y_field: Vec<RationalFunction> = match seed.coefficients() {
        Coefficients::Tropical(v) => v.iter().map(|e| seed.embed_tropical(&e.0)).collect(),
        Coefficients::Universal(v) => v.iter().map(|u| u.0.clone()).collect(),
    };
    let yhat: Vec<RationalFunction> = (0..n)
        .map(|l| {
            let mut acc = y_field[l].clone();
            for i in 0..n {
                acc = acc.mul(&x[i].pow(i64::try_from(b.get(i, l)).expect("entry")));
            }
            acc
        })
        .collect();
    let f_at_y: Vec<RationalFunction> = match seed.coefficients() {
        Coefficients::Tropical(v) => fs
            .iter()
            .map(|f| seed.embed_tropical(&eval_subtraction_free(f, v).expect("positive F").0))
            .collect(),
        Coefficients::Universal(v) => fs.iter().map(|f| eval_subtraction_free(f, v).expect("positive F").0).collect(),
    };
    let cluster = (0..n)
        .map(|j| {
            let mut acc = RationalFunction::one(nv);
            for i in 0..n {
                acc = acc.mul(&x[i].pow(i64::try_from(&g[(i, j)]).expect("entry")));
            }
            acc.mul(&RationalFunction::eval_poly(&fs[j], &yhat)).div(&f_at_y[j])
        })
        .collect();
    let coeffs = match seed.coefficients() {
        Coefficients::Tropical(v) => Coefficients::Tropical(y_by_separation(v, &fs, c, bt)),
        Coefficients::Universal(v) => Coefficients::Universal(y_by_separation(v, &fs, c, bt)),
    };
    Ok((cluster, coeffs))
}

fn y_by_separation<S: Semifield>(y: &[S], fs: &[Poly], c: &IntMatrix, bt: &ExchangeMatrix) -> Vec<S> {
    let n = y.len();
    let f_at: Vec<S> = fs.iter().map(|f| eval_subtraction_free(f, y).expect("positive F")).collect();
    (0..n)
        .map(|j| {
            let mut acc = y[0].unit_like();
            for i in 0..n {
                acc = acc.mul(&y[i].pow(&c[(i, j)])).mul(&f_at[i].pow(bt.get(i, j)));
            }
            acc
        })
        .collect()
}

/// Outcome of the braid-relation check for `T_i`, `T_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidReport {
    pub factors: usize,
    pub holds: bool,
}

/// `T_k = E_{k,eps}(mu_k(Q)) E_{k,eps}(Q)`.
pub fn t_matrix(b: &ExchangeMatrix, k: usize, eps: i32) -> Result<IntMatrix, TropicalError> {
    let inner = elementary_pair(b, k, eps)?.e;
    let outer = elementary_pair(&b.mutate(k)?, k, eps)?.e;
    Ok(outer.mul(&inner))
}

/// Checks `T_i T_j T_i ... = T_j T_i T_j ...` with 2, 3, 4 or 6 factors for both signs.
pub fn braid_check(b: &ExchangeMatrix, i: usize, j: usize) -> Result<BraidReport, TropicalError> {
    let b = b.principal();
    b.check_vertex(i)?;
    b.check_vertex(j)?;
    if i == j {
        return Err(TropicalError::Precondition("braid check needs two distinct vertices".into()));
    }
    let w = (b.get(i, j) * b.get(j, i)).abs();
    let factors = match u8::try_from(&w) {
        Ok(0) => 2,
        Ok(1) => 3,
        Ok(2) => 4,
        Ok(3) => 6,
        _ => return Err(TropicalError::NotApplicable(w)),
    };
    let mut holds = true;
    for eps in [1, -1] {
        let (ti, tj) = (t_matrix(&b, i, eps)?, t_matrix(&b, j, eps)?);
        let word = |first: &IntMatrix, second: &IntMatrix| {
            let mut acc = IntMatrix::identity(b.n());
            for s in 0..factors {
                acc = acc.mul(if s % 2 == 0 { first } else { second });
            }
            acc
        };
        holds &= word(&ti, &tj) == word(&tj, &ti);
    }
    Ok(BraidReport { factors, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rational;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap()
    }

    fn seq(v: &[usize]) -> MutationSequence {
        MutationSequence::from_one_based(v, 3).unwrap()
    }

    #[test]
    fn a2_c_and_g_sequences() {
        let path = tropical_path(&a2(), &seq(&[1, 2, 1, 2, 1])).unwrap();
        let cs = [
            m(&[&[1, 0], &[0, 1]]),
            m(&[&[-1, 1], &[0, 1]]),
            m(&[&[0, -1], &[1, -1]]),
            m(&[&[0, -1], &[-1, 0]]),
            m(&[&[0, 1], &[-1, 0]]),
            m(&[&[0, 1], &[1, 0]]),
        ];
        let gs = [
            m(&[&[1, 0], &[0, 1]]),
            m(&[&[-1, 0], &[1, 1]]),
            m(&[&[-1, -1], &[1, 0]]),
            m(&[&[0, -1], &[-1, 0]]),
            m(&[&[0, 1], &[-1, 0]]),
            m(&[&[0, 1], &[1, 0]]),
        ];
        assert_eq!(path.c, cs);
        assert_eq!(path.g, gs);
        for len in 0..=5 {
            let t = seq(&[1, 2, 1, 2, 1]).prefix(len);
            assert_eq!(g_matrix_by_grading(&a2(), &t).unwrap(), gs[len]);
            assert_eq!(c_matrix_by_product(&a2(), &t).unwrap(), cs[len]);
            assert!(check_tropical_duality(&a2(), &t).unwrap().holds);
        }
    }

    #[test]
    fn rank_three_valued_examples() {
        let b3 = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]).unwrap();
        let c3 = b3.langlands_dual().unwrap();
        let t = seq(&[1, 2, 3, 1, 2, 3]);
        assert_eq!(c_matrix(&c3, &t).unwrap(), m(&[&[1, -1, 0], &[1, 0, -2], &[1, 0, -1]]));
        assert_eq!(g_matrix(&b3, &t).unwrap(), m(&[&[0, -1, 0], &[-1, -1, -1], &[2, 2, 1]]));
        assert_eq!(g_matrix_by_grading(&b3, &t).unwrap(), g_matrix(&b3, &t).unwrap());
        assert!(check_langlands_duality(&b3, &t).unwrap().holds);
        assert!(check_tropical_duality(&b3, &t).unwrap().holds);
        let pr = principal_extension(&b3);
        assert_eq!(pr.m(), 6);
        assert_eq!(pr.symmetrizer(), &[BigInt::from(2), BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn a2_f_polynomials() {
        let names = f_names(2);
        let f = |s: &str| parse_rational(s, &names).unwrap().num().clone();
        let t = seq(&[1, 2, 1, 2, 1]);
        let at = |len: usize, j: usize| f_polynomials(&a2(), &t.prefix(len)).unwrap()[j].clone();
        assert_eq!(at(1, 0), f("1+y1"));
        assert_eq!(at(2, 1), f("1+y1+y1*y2"));
        assert_eq!(at(3, 0), f("1+y2"));
        assert_eq!(at(4, 1), f("1"));
        assert_eq!(at(5, 0), f("1"));
        let cycle = ExchangeMatrix::from_arrows(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(f_polynomials(&cycle, &seq(&[1])).unwrap()[0], parse_rational("1+y1", &f_names(3)).unwrap().num().clone());
    }

    #[test]
    fn elementary_matrices() {
        let p = elementary_pair(&a2(), 0, 1).unwrap();
        assert_eq!(p.e, m(&[&[-1, 0], &[1, 1]]));
        assert_eq!(p.f, m(&[&[-1, 1], &[0, 1]]));
        assert_eq!(p.e.mul(&p.e), IntMatrix::identity(2));
        let b = a2();
        assert_eq!(p.e.mul(b.mutate(0).unwrap().matrix()), b.matrix().mul(&p.f));
    }

    #[test]
    fn braid_relations() {
        let a1a1 = ExchangeMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(braid_check(&a1a1, 0, 1).unwrap(), BraidReport { factors: 2, holds: true });
        assert_eq!(braid_check(&a2(), 0, 1).unwrap(), BraidReport { factors: 3, holds: true });
        let b2 = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]).unwrap();
        assert_eq!(braid_check(&b2, 0, 1).unwrap(), BraidReport { factors: 4, holds: true });
        let g2 = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-3, 0]]).unwrap();
        assert_eq!(braid_check(&g2, 0, 1).unwrap(), BraidReport { factors: 6, holds: true });
        let kr = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap();
        assert!(matches!(braid_check(&kr, 0, 1), Err(TropicalError::NotApplicable(_))));
    }

    #[test]
    fn separation_matches_mutation() {
        let t = seq(&[1, 2, 1]);
        // Geometric type with principal coefficients.
        let s = Seed::initial(&principal_extension(&a2()));
        let (x, y) = separation_evaluate(&s, &t).unwrap();
        let direct = s.seed_at(&t).unwrap();
        assert_eq!(x, direct.cluster());
        assert_eq!(&y, direct.coefficients());
        // Universal coefficients.
        let u = Seed::with_universal(&a2()).unwrap();
        for len in 0..=5 {
            let t = seq(&[1, 2, 1, 2, 1]).prefix(len);
            let (x, y) = separation_evaluate(&u, &t).unwrap();
            let direct = u.seed_at(&t).unwrap();
            assert_eq!(x, direct.cluster());
            assert_eq!(&y, direct.coefficients());
        }
        let x2 = parse_rational("(x1*y1*y2 + x2 + y1)/(x1*x2*(1+y1+y1*y2))", u.names()).unwrap();
        assert_eq!(separation_evaluate(&u, &seq(&[1, 2])).unwrap().0[1], x2);
    }

    #[test]
    fn trivial_inputs() {
        assert_eq!(c_matrix(&a2(), &MutationSequence::empty()).unwrap(), IntMatrix::identity(2));
        let z = ExchangeMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(principal_extension(&z).matrix().row_block(2, 4), IntMatrix::identity(2));
    }
}
