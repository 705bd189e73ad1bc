mod common;

use common::{check_case, run_property_suite};

#[test]
fn randomized_property_suite() {
    run_property_suite().unwrap();
}

#[test]
fn known_valued_cases_pass() {
    for (d, b) in [
        (vec![2, 2, 1], vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]),
        (vec![1, 2], vec![vec![0, 2], vec![-1, 0]]),
        (vec![1, 3], vec![vec![0, 3], vec![-1, 0]]),
    ] {
        let t = (0..10).map(|s| s % b.len()).collect();
        check_case(&common::Case { d, b, t }).unwrap();
    }
}
