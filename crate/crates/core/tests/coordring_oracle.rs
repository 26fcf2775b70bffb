use chss::coordring::{brute_force_invariants, grass_invariant_mult, oracle_equivalence, segre_p1_mult, InvariantCase};
use chss::partitions::Partition;
use chss::Exec;

#[test]
fn exhaustive_grass_and_segre() {
    let r = oracle_equivalence(8, &[2, 3], 3, 3, 10_000_000, Exec::default()).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches);
    assert_eq!(r.segre_checked, 10 + 100 + 1000);
    assert!(r.grass_checked > 0);
    // the clamp and the central-torus condition are both exercised
    assert!(r.segre_adjusted > 0);
}

#[test]
fn segre_equal_degrees_are_unadjusted() {
    // a_j + b_j = 4 in every factor, min a - max b + 1 = 1
    let m = segre_p1_mult(&[3, 3, 2], &[1, 1, 2]).unwrap();
    assert!(!m.degree_mismatch && !m.clamped);
    assert_eq!(m.value, 1);
    let m = segre_p1_mult(&[3, 3], &[1, 1]).unwrap();
    assert_eq!(m.value, 3);
    let oracle = brute_force_invariants(&InvariantCase::Segre { a: vec![3, 3], b: vec![1, 1] }, 1000).unwrap();
    assert_eq!(oracle, 3);
}

#[test]
fn grass_rectangles() {
    // S_{(r^{2k})}W = det^r has exactly one invariant
    for k in 2..=3 {
        for r in 0..=2 {
            let lambda = Partition::rectangle(r, 2 * k);
            assert_eq!(grass_invariant_mult(&lambda, k, r), 1);
        }
    }
}
