//! Quantum dilogarithm identities: pentagon, A2 periodicity and DT invariants.

use cluster_forge::quantum::{combinatorial_dt, dilog_product, functional_equation_holds, pentagon_holds, verify_identity};
use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::MutationSequence;

fn main() {
    println!("functional equation to order 10: {}", functional_equation_holds(10));
    println!("pentagon to order 10: {}", pentagon_holds(10));
    let a2 = ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap();
    let period = MutationSequence::new(vec![0, 1, 0, 1, 0]);
    println!("E((1,2,1,2,1)) = 1: {}", dilog_product(&a2, &period, 10).unwrap().is_one());
    let r = verify_identity(&a2, &MutationSequence::new(vec![0, 1, 0]), &MutationSequence::new(vec![1, 0]), 10).unwrap();
    println!("E((1,2,1)) = E((2,1)): {}", r.holds);
    let dt = combinatorial_dt(&a2, 4, 4).unwrap().expect("A2 has a reddening sequence");
    println!("DT invariant of A2 via {:?}:", dt.sequence.to_one_based());
    for (alpha, c) in dt.series.terms() {
        println!("  y^{alpha:?}: {}", c.display_with(&["v".to_string()]));
    }
}
