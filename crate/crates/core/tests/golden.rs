mod common;

use cluster_forge::io::{parse_quiver, parse_seed, SeedJson};
use cluster_forge::quiver::{ClusterType, DynkinType};
use cluster_forge::seed::Seed;
use cluster_forge::tropical::{f_names, f_polynomials};
use common::{data, seq};

#[test]
fn data_files_round_trip() {
    for name in ["a2.json", "a3.json", "b3.json", "c3.json", "markov.json", "kronecker.json", "gr36.json", "quiver3a.json"] {
        let seed = parse_seed(&data(name)).unwrap();
        let back = SeedJson::from_seed(&seed).to_seed().unwrap();
        assert_eq!(back, seed, "{name}");
    }
}

#[test]
fn quiver3_arrow_counts() {
    // Arrows of a skew-symmetric quiver: the sum of positive entries.
    for (name, arrows) in [("quiver3a.json", 18), ("quiver3b.json", 10), ("quiver3c.json", 10)] {
        let b = common::rows(parse_quiver(&data(name)).unwrap().matrix());
        let count: i64 = b.iter().flatten().filter(|&&x| x > 0).sum();
        assert_eq!((b.len(), count), (10, arrows), "{name}");
    }
}

#[test]
fn markov_class_is_a_single_quiver() {
    let class = parse_quiver(&data("markov.json")).unwrap().mutation_class(100);
    assert_eq!((class.len(), class.truncated), (1, false));
}

#[test]
fn b3_and_c3_are_langlands_dual() {
    let b3 = parse_quiver(&data("b3.json")).unwrap();
    assert_eq!(b3.langlands_dual().unwrap(), parse_quiver(&data("c3.json")).unwrap());
}

#[test]
fn a3_f_polynomials_along_a_path() {
    let b = common::a3();
    let f: Vec<String> = f_polynomials(&b, &seq(&[1, 2, 3], 3)).unwrap().iter().map(|p| p.display_with(&f_names(3))).collect();
    assert_eq!(f, ["1+y1", "1+y1+y1*y2", "1+y1+y1*y2+y1*y2*y3"]);
}

#[test]
fn grassmannian_gr36() {
    let ice = parse_quiver(&data("gr36.json")).unwrap();
    assert_eq!((ice.m(), ice.n()), (10, 4));
    let mutated = ice.principal().mutate(0).unwrap();
    assert_eq!(mutated.dynkin_type(), Some(vec![DynkinType::D(4)]));
    assert!(matches!(ice.cluster_type(1000), ClusterType::Finite { ref components, .. } if components == &[DynkinType::D(4)]));
    // Type D4 has 50 clusters and 16 cluster variables; the frozen ones never change.
    let seed = Seed::initial(&ice);
    let g = seed.exchange_graph(1000);
    assert_eq!((g.len(), g.edges.len(), g.truncated), (50, 100, false));
    let vars = seed.cluster_variables(1000).unwrap();
    assert_eq!(vars.variables.len(), 16);
}
