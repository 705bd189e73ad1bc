//! Rank 2: counting cluster variables for (b, c) = (1,1), (1,2), (1,3), (2,2).

use cluster_forge::quiver::ExchangeMatrix;
use cluster_forge::seed::Seed;

fn main() {
    for (b, c) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
        let m = ExchangeMatrix::from_rows(&[vec![0, b], vec![-c, 0]]).unwrap();
        let vars = Seed::initial(&m).cluster_variables(1000).unwrap();
        let status = if vars.infinite_type { "infinite type" } else { "finite type" };
        println!("(b,c) = ({b},{c}): {} variables found, {status}", vars.variables.len());
    }
    let b2 = Seed::initial(&ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]).unwrap());
    for v in b2.cluster_variables(1000).unwrap().variables {
        println!("  {}", v.display_with(b2.names()));
    }
}
