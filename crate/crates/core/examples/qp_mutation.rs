//! Mutation of the oriented 3-cycle with potentials abc and (abc)^2.

use cluster_forge::qp::{jacobian_dimension, mutate_qp, premutation, three_cycle};

fn main() {
    let abc = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
    println!("premutation at 2:\n{}\n", premutation(&abc, 1).unwrap());
    println!("mutation at 2:\n{}\n", mutate_qp(&abc, 1).unwrap());
    println!("Jacobian dimension: {}", jacobian_dimension(&abc, 6));

    let square = three_cycle(12).with_cycle(&["a", "b", "c", "a", "b", "c"], 1).unwrap();
    println!("\nmutation of (abc)^2 at 2:\n{}", mutate_qp(&square, 1).unwrap());

    let back = mutate_qp(&mutate_qp(&abc, 1).unwrap(), 1).unwrap();
    println!("\ndouble mutation:\n{back}\nJacobian dimension: {}", jacobian_dimension(&back, 6));
}
