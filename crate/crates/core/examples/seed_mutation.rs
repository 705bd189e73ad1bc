//! Seeds of type A: the first A3 mutations and the 5-periodicity of A2.

use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::{MutationSequence, Seed};

fn main() {
    let a3 = Seed::initial(&ExchangeMatrix::from_arrows(3, &[(0, 1), (1, 2)]).unwrap());
    println!("A3 after mu_1: {:?}", a3.mutate(0).unwrap().cluster_strings());
    println!("A3 after mu_2: {:?}", a3.mutate(1).unwrap().cluster_strings());

    let a2 = Seed::initial(&ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap());
    let mut s = a2.clone();
    for (step, k) in [0, 1, 0, 1, 0].into_iter().enumerate() {
        s = s.mutate(k).unwrap();
        println!("A2 step {}: {:?}", step + 1, s.cluster_strings());
    }
    println!("back to the initial seed up to relabelling: {}", s.is_isomorphic(&a2));

    let universal = Seed::with_universal(&ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap()).unwrap();
    let u = universal.seed_at(&MutationSequence::new(vec![0, 1])).unwrap();
    println!("universal coefficients after (1,2): {:?} / {:?}", u.cluster_strings(), u.coefficient_strings());
}
