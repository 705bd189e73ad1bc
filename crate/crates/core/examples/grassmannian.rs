//! The ice quiver of Gr(3,6): mutating its principal part at 124 gives D4.

use cluster_forge::io::parse_quiver;

fn main() {
    let ice = parse_quiver(include_str!("../data/gr36.json")).unwrap();
    let principal = ice.principal();
    println!("principal part type before mutation: {:?}", principal.dynkin_type());
    let mutated = principal.mutate(0).unwrap();
    println!("after mutating at 124: {:?}", mutated.dynkin_type());
    println!("cluster type: {}", ice.cluster_type(2000).label());
}
