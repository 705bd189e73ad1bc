//! Cluster variables recovered from F-polynomials and g-vectors.

use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::{MutationSequence, Seed};
use cluster_forge::tropical::separation_evaluate;

fn main() {
    let b = ExchangeMatrix::from_arrows(3, &[(0, 1), (1, 2)]).unwrap();
    let seed = Seed::with_universal(&b).unwrap();
    let t = MutationSequence::new(vec![0, 1, 2, 0]);
    let direct = seed.seed_at(&t).unwrap();
    let (cluster, _) = separation_evaluate(&seed, &t).unwrap();
    for (x, y) in cluster.iter().zip(direct.cluster()) {
        println!("{}  (agrees: {})", x.display_with(seed.names()), x == y);
    }
}
