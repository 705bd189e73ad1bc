//! The interactive session behind `cluster-forge serve`, driven directly.

use cluster_forge::io::parse_seed;
use cluster_forge::session::Session;

fn main() {
    let mut s = Session::new(parse_seed(include_str!("../data/a2.json")).unwrap());
    for v in [1, 2, 1, 2, 1] {
        s.mutate(v, None).unwrap();
        println!("after {:?}: {:?}", s.sequence().to_one_based(), s.current().cluster_strings());
    }
    s.undo(None).unwrap();
    let view = s.view().unwrap();
    let c: Vec<Vec<String>> = view.c.iter().map(|r| r.iter().map(|x| x.0.to_string()).collect()).collect();
    println!("after undo: {:?}, c = {c:?}", view.cluster);
    let hood = s.neighborhood(2).unwrap();
    println!("neighbourhood of radius 2: {} seeds, {} edges", hood.vertices, hood.edges);
}
