//! Shared fixtures and the randomized property checks used by both the proptest suite and the
//! acceptance harness.

#![allow(dead_code)]

use cluster_forge::matrix::IntMatrix;
use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::{MutationSequence, Seed};
use cluster_forge::tropical::{
    braid_check, c_matrix_by_product, elementary_pair, g_matrix_by_grading, separation_evaluate, tropical_path,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const PROPERTY_CASES: u32 = 1000;
pub const PROPERTY_SEED: [u8; 32] = *b"cluster-forge property suite 001";
/// Checks that build full Laurent expressions look at most this many steps into the sequence.
pub const RATIONAL_DEPTH: usize = 6;
/// ... and stop earlier once an exchange product would expand past this many terms.
pub const TERM_BUDGET: usize = 20_000;

pub fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows().unwrap()
}

pub fn seq(one_based: &[usize], n: usize) -> MutationSequence {
    MutationSequence::from_one_based(one_based, n).unwrap()
}

pub fn a2() -> ExchangeMatrix {
    ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap()
}

pub fn a3() -> ExchangeMatrix {
    ExchangeMatrix::from_arrows(3, &[(0, 1), (1, 2)]).unwrap()
}

/// A random skew-symmetrizable matrix `b_ij = s_ij d_j` with `S` skew-symmetric, plus a
/// mutation sequence.
#[derive(Clone, Debug)]
pub struct Case {
    pub d: Vec<i64>,
    pub b: Vec<Vec<i64>>,
    pub t: Vec<usize>,
}

impl Case {
    pub fn matrix(&self) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&self.b).unwrap()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.d.iter().all(|&x| x == 1)
    }
}

pub fn case_strategy() -> impl Strategy<Value = Case> {
    (1usize..=4)
        .prop_flat_map(|n| {
            let d = prop_oneof![3 => Just(vec![1; n]), 1 => prop::collection::vec(1i64..=2, n)];
            (Just(n), d, prop::collection::vec(prop_oneof![6 => -1i64..=1, 1 => -2i64..=2], n * (n - 1) / 2))
        })
        .prop_flat_map(|(n, d, upper)| (Just(n), Just(d), Just(upper), prop::collection::vec(0..n, 0..=10)))
        .prop_map(|(n, d, upper, t)| {
            // Entries stay within [-2, 2]: valued columns only take unit multipliers.
            let d = if d.iter().all(|&x| x == 2) { vec![1; n] } else { d };
            let mut s = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = it.next().unwrap();
                    if d[i] * d[j] > 1 || v.abs() * d[i].max(d[j]) > 2 {
                        v = v.signum();
                    }
                    s[i][j] = v;
                    s[j][i] = -v;
                }
            }
            let b = (0..n).map(|i| (0..n).map(|j| s[i][j] * d[j]).collect()).collect();
            Case { d, b, t }
        })
}

fn int(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Rough number of terms in the larger exchange monomial product of `mu_k`.
pub fn exchange_cost(seed: &Seed, k: usize) -> f64 {
    let size = |sign: i64| -> f64 {
        (0..seed.n())
            .map(|i| {
                let e = i64::try_from(seed.matrix().get(i, k)).unwrap() * sign;
                let x = &seed.cluster()[i];
                if e > 0 { ((x.num().len() * x.den().len()) as f64).powi(e as i32) } else { 1.0 }
            })
            .product()
    };
    size(1).max(size(-1))
}

/// The longest prefix of `t` (at most `RATIONAL_DEPTH` steps) whose exchange products stay
/// within `TERM_BUDGET`, with the seed it reaches.
pub fn bounded_prefix(initial: &Seed, t: &MutationSequence) -> (MutationSequence, Seed) {
    let mut seed = initial.clone();
    let mut len = 0;
    for &k in t.as_slice().iter().take(RATIONAL_DEPTH) {
        if exchange_cost(&seed, k) > TERM_BUDGET as f64 {
            break;
        }
        seed = seed.mutate(k).unwrap();
        len += 1;
    }
    (t.prefix(len), seed)
}

/// Every property on one case; the error names the first identity that failed.
pub fn check_case(case: &Case) -> Result<(), String> {
    let b = case.matrix();
    let n = b.n();
    let t = MutationSequence::new(case.t.clone());

    // Involutivity of matrix and seed mutation.
    for k in 0..n {
        if b.mutate(k).unwrap().mutate(k).unwrap() != b {
            return Err(format!("matrix mutation at {k} is not involutive"));
        }
    }
    // The principal-coefficient seed is the largest one built, so it sets the prefix.
    let framed = Seed::with_tropical(&b, int(&identity(n)).to_rows()).unwrap();
    let (short, direct) = bounded_prefix(&framed, &t);
    let seed = Seed::initial(&b).seed_at(&short).unwrap();
    for k in (0..n).filter(|&k| exchange_cost(&seed, k) <= TERM_BUDGET as f64) {
        if seed.mutate(k).unwrap().mutate(k).unwrap() != seed {
            return Err(format!("seed mutation at {k} is not involutive"));
        }
    }

    // Laurent phenomenon with monomial denominators.
    for (j, x) in seed.cluster().iter().enumerate() {
        if !x.den().is_monomial() {
            return Err(format!("x{} has a non-monomial denominator", j + 1));
        }
    }

    // c-matrices: recursion vs principal block (checked inside the path), sign coherence,
    // the F-product formula, and the duality G^T D C = D.
    let path = tropical_path(&b, &t).map_err(|e| format!("tropical path: {e}"))?;
    let dm: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { case.d[i] } else { 0 }).collect()).collect();
    for (s, (c, g)) in path.c.iter().zip(&path.g).enumerate() {
        let (c, g) = (rows(c), rows(g));
        for j in 0..n {
            let col: Vec<i64> = c.iter().map(|r| r[j]).collect();
            if col.iter().all(|&x| x == 0) || (col.iter().any(|&x| x > 0) && col.iter().any(|&x| x < 0)) {
                return Err(format!("c-vector {j} at step {s} is not sign-coherent: {col:?}"));
            }
        }
        let gt: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| g[j][i]).collect()).collect();
        if mat_mul(&mat_mul(&gt, &dm), &c) != dm {
            return Err(format!("G^T D C != D at step {s}"));
        }
    }
    if c_matrix_by_product(&b, &t).unwrap() != *path.final_c() {
        return Err("c-matrix product formula disagrees with the recursion".into());
    }
    if case.is_skew_symmetric() && g_matrix_by_grading(&b, &short).unwrap() != path.g[short.len()] {
        return Err("g-matrix grading disagrees with the product formula".into());
    }

    // E/F lemma and braid relations at the final matrix.
    let bt = path.matrices.last().unwrap();
    let bt_rows = rows(bt.matrix());
    for k in 0..n {
        let mu = rows(bt.mutate(k).unwrap().matrix());
        for eps in [1, -1] {
            let p = elementary_pair(bt, k, eps).unwrap();
            let (e, f) = (rows(&p.e), rows(&p.f));
            if mat_mul(&e, &e) != identity(n) || mat_mul(&f, &f) != identity(n) {
                return Err(format!("E or F at ({k},{eps}) does not square to I"));
            }
            if mat_mul(&e, &mu) != mat_mul(&bt_rows, &f) {
                return Err(format!("E mu_k(B) != B F at ({k},{eps})"));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (bt_rows[i][j] * bt_rows[j][i]).abs() <= 3 && !braid_check(bt, i, j).unwrap().holds {
                return Err(format!("braid relation fails for ({i},{j})"));
            }
        }
    }

    // Separation formulas against direct mutation, with principal tropical coefficients.
    let (cluster, coeffs) = separation_evaluate(&framed, &short).map_err(|e| e.to_string())?;
    if cluster != direct.cluster() || coeffs != *direct.coefficients() {
        return Err("separation formula disagrees with direct mutation".into());
    }
    Ok(())
}

/// Runs [`check_case`] on `PROPERTY_CASES` cases from the fixed seed.
pub fn run_property_suite() -> Result<(), String> {
    let config = Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &PROPERTY_SEED));
    runner
        .run(&case_strategy(), |case| check_case(&case).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}
