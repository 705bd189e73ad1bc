//! Quantum mutation of the principal A2 pair and its classical limit.

use cluster_forge::poly::indexed_names;
use cluster_forge::quantum::{CompatiblePair, QuantumSeed};
use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::MutationSequence;

fn main() {
    let pair = CompatiblePair::principal(&ExchangeMatrix::from_arrows(2, &[(0, 1)]).unwrap()).unwrap();
    println!("lambda = {:?}, unital = {}", pair.lambda().to_rows(), pair.is_unital());
    let names = indexed_names("x", 4);
    let seed = QuantumSeed::initial(pair);
    for len in 1..=5 {
        let s = seed.mutate_sequence(&MutationSequence::new((0..len).map(|i| i % 2).collect())).unwrap();
        let quantum: Vec<String> = s.cluster()[..2].iter().map(|x| x.display_with(&names)).collect();
        let classical: Vec<String> = s.specialize_q1().unwrap().iter().map(|x| x.display_with(&names)).collect();
        println!("step {len}: {quantum:?}\n        v=1: {classical:?}");
    }
}
