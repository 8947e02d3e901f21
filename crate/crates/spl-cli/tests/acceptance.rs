//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p spl-cli --test acceptance -- --nocapture` to see
//! every line; `--release` recommended for the heavier sweeps.

use std::time::Instant;

use spl_cli::suites::{self, SuiteReport};
use spl_core::critical::{critical_points_from_spectrum, morse_index};
use spl_core::graph::{build_graph, make_partition};
use spl_core::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn report_line(id: u32, name: &str, passed: bool, details: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id:02} [{name}]: {verdict} — {details}");
    assert!(passed, "criterion {id:02} [{name}] failed: {details}");
}

fn suite_details(report: &SuiteReport) -> String {
    report
        .checks
        .iter()
        .map(|c| c.details.clone())
        .collect::<Vec<_>>()
        .join("; ")
}

#[test]
fn criterion_01_courant_bound() {
    let start = Instant::now();
    let report = suites::courant(42, 100, &tol());
    let elapsed = start.elapsed();
    let within_budget = elapsed.as_secs_f64() < 10.0;
    report_line(
        1,
        "courant bound",
        report.passed && within_budget,
        &format!("{}; elapsed {:.2?}", suite_details(&report), elapsed),
    );
}

#[test]
fn criterion_02_switching_nodal_invariance() {
    let report = suites::invariance(42, 100, &tol());
    report_line(2, "switching/nodal invariance", report.passed, &suite_details(&report));
}

#[test]
fn criterion_03_weyl_interlacing() {
    let report = suites::interlacing(42, 200, &tol());
    report_line(3, "Weyl interlacing", report.passed, &suite_details(&report));
}

#[test]
fn criterion_04_critical_point_correspondence() {
    let report = suites::correspondence(42, 50, &tol());
    report_line(4, "critical-point correspondence", report.passed, &suite_details(&report));
}

#[test]
fn criterion_05_spectral_shift_formula() {
    let report = suites::shift(42, 50, &tol());
    report_line(5, "spectral-shift formula", report.passed, &suite_details(&report));
}

#[test]
fn criterion_06_equipartition_from_eigenvector() {
    let report = suites::equipartition(42, 60, &tol());
    report_line(6, "equipartition from eigenvector", report.passed, &suite_details(&report));
}

#[test]
fn criterion_07_transversality() {
    let report = suites::transversality(42, 60, &tol());
    report_line(7, "transversality", report.passed, &suite_details(&report));
}

#[test]
fn criterion_08_jacobian_correctness() {
    let report = suites::jacobian(42, 50, &tol());
    report_line(8, "analytic Jacobian vs finite differences", report.passed, &suite_details(&report));
}

#[test]
fn criterion_09_tree_uniqueness() {
    let report = suites::tree_unique(42, 8, &tol());
    report_line(9, "tree-partition uniqueness", report.passed, &suite_details(&report));
}

#[test]
fn criterion_10_morse_index_equals_deficiency() {
    let start = Instant::now();
    // Canonical case: the all-boundary triangle has one critical point with
    // deficiency 0, Morse index 0, energy 4.
    let g = std::sync::Arc::new(
        build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap(),
    );
    let p = make_partition(&g, &[0, 1, 2]).unwrap();
    let cps = critical_points_from_spectrum(&p, &tol()).unwrap();
    let triangle_ok = cps.len() == 1
        && cps[0].deficiency == 0
        && (cps[0].energy - 4.0).abs() < 1e-10
        && morse_index(&p, &cps[0], None, &tol()).map(|m| m.index) == Ok(0);

    // Exhaustive sweep over seeded sparse graphs.
    let report = suites::morse(42, 3, &tol());
    let elapsed = start.elapsed();
    let within_budget = elapsed.as_secs_f64() < 300.0;
    report_line(
        10,
        "Morse index = nodal deficiency",
        report.passed && triangle_ok && within_budget,
        &format!(
            "triangle canonical case {}; {}; elapsed {:.2?}",
            if triangle_ok { "ok" } else { "FAILED" },
            suite_details(&report),
            elapsed
        ),
    );
}

#[test]
fn criterion_11_lower_bound() {
    let report = suites::lower_bound(42, 100, &tol());
    report_line(11, "switching-class lower bound", report.passed, &suite_details(&report));
}

#[test]
fn criterion_12_global_minimality() {
    let report = suites::global_min(42, 4, &tol());
    report_line(12, "Courant-sharp global minimality", report.passed, &suite_details(&report));
}

#[test]
fn criterion_13_homology_switching_agreement() {
    let report = suites::homology(42, 200);
    report_line(13, "homology = switching equivalence", report.passed, &suite_details(&report));
}

#[test]
fn criterion_14_ghost_discretization() {
    let report = suites::ghost(42, 20, &tol());
    report_line(14, "ghost-point discretization identity", report.passed, &suite_details(&report));
}

#[test]
fn criterion_15_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("graph.json");
    std::fs::write(
        &graph_path,
        r#"{"vertices": 4, "edges": [[0,1,0.9],[1,2,1.4],[2,3,0.6],[0,3,1.7],[0,2,0.8]]}"#,
    )
    .unwrap();
    let sig_path = dir.path().join("sig.json");
    std::fs::write(&sig_path, r#"{"negative_edges": [[0,2],[2,3]]}"#).unwrap();

    let bin = env!("CARGO_BIN_EXE_spl");
    let run = |args: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("spl runs");
        assert!(
            out.status.success(),
            "spl {:?} failed: {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };

    let graph = graph_path.to_str().unwrap();
    let sig = sig_path.to_str().unwrap();
    let spectrum_a = run(&["spectrum", graph, "--signature", sig]);
    let spectrum_b = run(&["spectrum", graph, "--signature", sig]);
    let verify_a = run(&["verify", "courant", "--seed", "42", "--count", "5"]);
    let verify_b = run(&["verify", "courant", "--seed", "42", "--count", "5"]);
    let nodal_a = run(&["nodal", graph, "--signature", sig, "--index", "2"]);
    let nodal_b = run(&["nodal", graph, "--signature", sig, "--index", "2"]);

    let passed = spectrum_a == spectrum_b && verify_a == verify_b && nodal_a == nodal_b;
    report_line(
        15,
        "byte-identical reports under fixed seeds",
        passed,
        &format!(
            "spectrum {} bytes, verify {} bytes, nodal {} bytes",
            spectrum_a.len(),
            verify_a.len(),
            nodal_a.len()
        ),
    );
}
