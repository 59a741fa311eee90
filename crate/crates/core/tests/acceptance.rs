//! Acceptance suite: runs every verification criterion at its stated
//! bounds and prints one pass/fail line per criterion.

use riordan_core::oracle::OracleBudget;
use riordan_core::verify::{criterion, CriterionReport};

const SEED: u64 = 0x52494F52;

fn run(id: usize) -> CriterionReport {
    let budget = OracleBudget::default();
    let report = criterion(id, SEED, &budget);
    println!("{}", report.line());
    for d in &report.details {
        println!("    {d}");
    }
    report
}

fn assert_passes(id: usize, max_millis: Option<u128>) {
    let report = run(id);
    assert!(report.passed, "criterion {id} failed: {:?}", report.details);
    if let Some(limit) = max_millis {
        assert!(
            report.millis < limit,
            "criterion {id} took {} ms, limit {} ms",
            report.millis,
            limit
        );
    }
}

#[test]
fn criterion_01_figures() {
    assert_passes(1, Some(100));
}

#[test]
fn criterion_02_counting() {
    assert_passes(2, Some(30_000));
}

#[test]
fn criterion_03_order3_census() {
    assert_passes(3, Some(1_000));
}

#[test]
fn criterion_04_sequences() {
    assert_passes(4, None);
}

#[test]
fn criterion_05_decomposition() {
    assert_passes(5, Some(10_000));
}

#[test]
fn criterion_06_io_ie() {
    assert_passes(6, None);
}

#[test]
fn criterion_07_edge_closed_forms() {
    assert_passes(7, Some(5_000));
}

#[test]
fn criterion_08_partition_clique_chromatic() {
    assert_passes(8, Some(60_000));
}

#[test]
fn criterion_09_diameter() {
    assert_passes(9, None);
}

#[test]
fn criterion_10_fractal() {
    assert_passes(10, None);
}

#[test]
fn criterion_11_reverse_relabeling() {
    assert_passes(11, None);
}

#[test]
fn criterion_12_euler_hamilton() {
    assert_passes(12, None);
}

#[test]
fn criterion_13_r_product_walks() {
    assert_passes(13, None);
}

#[test]
fn criterion_14_unlabeled() {
    assert_passes(14, Some(10_000));
}

#[test]
fn criterion_15_series_algebra() {
    assert_passes(15, None);
}
