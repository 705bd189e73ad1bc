//! Exchange graphs of finite type: A2 pentagon, A3 associahedron, B3.

use cluster_forge::io::{graph_dot, parse_seed};

fn main() {
    for (name, text) in [
        ("A2", include_str!("../data/a2.json")),
        ("A3", include_str!("../data/a3.json")),
        ("B3", include_str!("../data/b3.json")),
    ] {
        let g = parse_seed(text).unwrap().exchange_graph(10_000);
        println!("{name}: {} vertices, {} edges", g.len(), g.edges.len());
    }
    let pentagon = parse_seed(include_str!("../data/a2.json")).unwrap().exchange_graph(100);
    print!("{}", graph_dot(&pentagon));
}
