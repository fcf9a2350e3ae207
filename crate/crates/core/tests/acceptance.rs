//! One test per acceptance criterion. Each prints a single PASS/FAIL line with
//! its elapsed time against the pinned bound.

use galecubic::selftest::{run_criterion, DEFAULT_SEED};

fn check(number: u8) {
    let report = run_criterion(number, DEFAULT_SEED).expect("criterion exists");
    println!("{}", report.line());
    assert!(report.checks_pass, "{}", report.line());
    assert!(report.seconds <= report.bound_seconds, "over time: {}", report.line());
}

#[test]
fn c01_gale_duality() {
    check(1);
}

#[test]
fn c02_rho_lagrangian_block_form() {
    check(2);
}

#[test]
fn c03_sigma_and_dual_pairing() {
    check(3);
}

#[test]
fn c04_projection_recovers_cubics() {
    check(4);
}

#[test]
fn c05_glue_group_count_and_orbits() {
    check(5);
}

#[test]
fn c06_sigma_planes_on_sextic() {
    check(6);
}

#[test]
fn c07_epw_lines_have_degree_six() {
    check(7);
}

#[test]
fn c08_residual_conics_are_singular() {
    check(8);
}

#[test]
fn c09_line_correspondence_roundtrip() {
    check(9);
}

#[test]
fn c10_big_cubics_in_z15_ideal() {
    check(10);
}

#[test]
fn c11_a4_example() {
    check(11);
}

#[test]
fn c12_groebner_soundness() {
    check(12);
}
