//! Fixed workloads shared by the benchmarks.

use hirzecode::{Bidegree, Field};

/// Instances sized so that one iteration takes milliseconds.
pub fn instances() -> Vec<(&'static str, Field, Bidegree)> {
    let f = |q| Field::with_order(q).expect("prime power");
    vec![
        ("eta2_-2_5_q7", f(7), Bidegree::new(2, -2, 5)),
        ("eta0_2_2_q5", f(5), Bidegree::new(0, 2, 2)),
        ("eta2_5_3_q13", f(13), Bidegree::new(2, 5, 3)),
        ("eta3_1_2_q4", f(4), Bidegree::new(3, 1, 2)),
    ]
}
