//! C-matrices, G-matrices and F-polynomials with their duality checks.

use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::MutationSequence;
use cluster_forge::tropical::{c_matrix, check_langlands_duality, check_tropical_duality, f_names, f_polynomials, g_matrix};

fn main() {
    let a2 = ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap();
    for len in 0..=5 {
        let t = MutationSequence::new((0..len).map(|s| s % 2).collect());
        let f: Vec<String> = f_polynomials(&a2, &t).unwrap().iter().map(|p| p.display_with(&f_names(2))).collect();
        println!("t{len}: C = {:?}, G = {:?}, F = {f:?}", c_matrix(&a2, &t).unwrap().to_rows(), g_matrix(&a2, &t).unwrap().to_rows());
    }

    let b3 = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]).unwrap();
    let t = MutationSequence::from_one_based(&[1, 2, 3, 1, 2, 3], 3).unwrap();
    println!("G(B3) = {:?}", g_matrix(&b3, &t).unwrap().to_rows());
    println!("C(C3) = {:?}", c_matrix(&b3.langlands_dual().unwrap(), &t).unwrap().to_rows());
    println!("tropical duality: {}", check_tropical_duality(&b3, &t).unwrap().holds);
    println!("Langlands duality: {}", check_langlands_duality(&b3, &t).unwrap().holds);
}
