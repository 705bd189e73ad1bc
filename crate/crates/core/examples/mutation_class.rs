//! The common mutation class of three quivers on ten vertices.

use cluster_forge::io::parse_quiver;

fn main() {
    let inputs = [
        include_str!("../data/quiver3a.json"),
        include_str!("../data/quiver3b.json"),
        include_str!("../data/quiver3c.json"),
    ];
    let classes: Vec<_> = inputs.iter().map(|s| parse_quiver(s).unwrap().mutation_class(10_000)).collect();
    for (name, c) in ["a", "b", "c"].iter().zip(&classes) {
        println!("quiver3{name}: {} members, truncated = {}", c.len(), c.truncated);
    }
    let sets: Vec<std::collections::BTreeSet<_>> = classes.iter().map(|c| c.members.iter().cloned().collect()).collect();
    println!("identical classes: {}", sets.windows(2).all(|w| w[0] == w[1]));
}
