//! Mutating an exchange matrix and reading off its quiver.

use cluster_forge::quiver::ExchangeMatrix;

fn main() {
    // 1 -> 2 -> 3
    let b = ExchangeMatrix::from_arrows(3, &[(0, 1), (1, 2)]).unwrap();
    let mu = b.mutate(1).unwrap();
    println!("mu_2 of the linear A3 quiver:\n{}", mu.to_dot());
    println!("involutive: {}", mu.mutate(1).unwrap() == b);
    println!("isomorphic to the original: {}", mu.is_isomorphic(&b));

    let valued = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]).unwrap();
    println!("B3 symmetrizer: {:?}", valued.symmetrizer());
    println!("valued quiver:\n{}", valued.to_dot());
}
