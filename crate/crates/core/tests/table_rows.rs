use hopfgal::catalog::builtin_catalog;
use hopfgal::report::{run_degree, RunOptions};

fn row(g: usize) -> [usize; 9] {
    let cat = builtin_catalog(g).unwrap();
    run_degree(g, &cat, &RunOptions::default()).unwrap().summary.row()
}

#[test]
fn degree_13() {
    assert_eq!(row(13), [9, 6, 1, 6, 6, 6, 0, 6, 1]);
}

#[test]
fn degree_14() {
    assert_eq!(row(14), [63, 25, 2, 32, 14, 19, 5, 26, 6]);
}

#[test]
fn degree_15() {
    assert_eq!(row(15), [104, 11, 1, 8, 8, 8, 0, 8, 1]);
}

#[test]
fn degree_12() {
    assert_eq!(row(12), [301, 129, 5, 249, 56, 81, 25, 165, 48]);
}

#[test]
fn degree_17() {
    assert_eq!(row(17), [10, 5, 1, 5, 5, 5, 0, 5, 1]);
}
