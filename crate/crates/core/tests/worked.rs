//! End-to-end checks of small hand-computed instances through the public API.

use taut_core::exactalg::rat;
use taut_core::locgraph::{contribution, enumerate_graphs, oracle_graphs, RelativeShape};
use taut_core::partitions::enumerate_pop;
use taut_core::relmatrix::{build_a_connected, build_b, build_c, build_m_connected};
use taut_core::verify::{verify_all, VerifyOptions};
use taut_core::{LengthBound, Partition};

#[test]
fn two_by_two_pipeline() {
    let k = LengthBound::Infinite;
    let index: Vec<String> = enumerate_pop(2, 1, k).unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(index, ["((1),(1))", "((2),())"]);
    let a = build_a_connected(2, 1, k).unwrap();
    assert_eq!(a.entries_as_strings(), [["1", "1"], ["1", "1/2"]]);
    assert_eq!(build_b(2, 1, k).unwrap().entries_as_strings(), [["1", "0"], ["2", "-2"]]);
    assert_eq!(build_c(2, 1, k).unwrap().entries_as_strings(), [["1", "1"], ["0", "1"]]);
    let m = build_m_connected(2, 1, k).unwrap();
    assert_eq!(m.entries_as_strings(), [["1", "-2"], ["1", "-1"]]);
    assert_eq!(m.determinant(), rat(1, 1));
}

#[test]
fn degree_one_graphs() {
    let shape = RelativeShape::connected(0, 0, 1, vec![Partition::new(vec![1]).unwrap()]).unwrap();
    let graphs = enumerate_graphs(&shape).unwrap();
    assert_eq!(graphs.len(), 2);
    assert_eq!(oracle_graphs(&shape).unwrap(), graphs);
    for g in &graphs {
        let c = contribution(g, &shape).unwrap();
        assert_eq!((c.multiplicity, c.aut_order), (1, 1));
    }
}

#[test]
fn small_verify_all_is_reproducible() {
    let opts =
        VerifyOptions { max_d: 3, max_multi_degree: 2, relabel_trials: 50, omega_trials: 50, ..Default::default() };
    let a = verify_all(&opts);
    let b = verify_all(&opts);
    assert!(a.pass);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let faulty = verify_all(&VerifyOptions { inject_fault: true, ..opts });
    assert!(!faulty.pass);
    assert!(!faulty.find("triangularity").unwrap().pass);
}
