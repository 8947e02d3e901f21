//! Randomized theorem-verification suites behind `spl verify`.
//!
//! Every suite is deterministic given (seed, count): instances come from the
//! SplitMix64 stream only, and results are emitted in instance order.

use std::collections::BTreeSet;

use nalgebra::DVector;
use serde::Serialize;

use spl_core::bounds::{
    homologous, lower_bound_check, minimize_energy, partition_class_membership, ChainSpace,
};
use spl_core::critical::{
    critical_points_from_spectrum, deficiency_via_edge_restoration, edge_curve,
    lagrange_certificate, morse_index, CriticalError,
};
use spl_core::ghost::{
    anticontinuous_extension, build_ghost, ghost_operator, mass_matrix, verify_discretization,
};
use spl_core::graph::{betti_number, enumerate_partitions, is_tree_partition};
use spl_core::instances::{
    random_connected_graph, random_partition, random_signature, random_sparse_graph,
    random_switching, SplitMix64,
};
use spl_core::param::{
    alpha_from_eigenvector, jacobian_cokernel, phi, phi_jacobian, solve_equipartition,
    transversality_holds, ParamPoint,
};
use spl_core::signed::{partition_laplacian, signed_laplacian, switch, switching_equivalent, Signature};
use spl_core::spectral::{eigendecompose, is_nondegenerate, nodal_report};
use spl_core::Tolerances;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, count: usize, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport { suite: suite.to_string(), seed, count, passed, checks }
    }
}

fn check(checks: &mut Vec<Check>, name: impl Into<String>, passed: bool, details: impl Into<String>) {
    checks.push(Check { name: name.into(), passed, details: details.into() });
}

pub const SUITE_NAMES: &[&str] = &[
    "courant",
    "invariance",
    "interlacing",
    "shift",
    "correspondence",
    "equipartition",
    "transversality",
    "jacobian",
    "tree-unique",
    "morse",
    "lower-bound",
    "global-min",
    "homology",
    "ghost",
];

pub fn run_suite(
    name: &str,
    seed: u64,
    count: usize,
    tol: &Tolerances,
) -> Option<SuiteReport> {
    match name {
        "courant" => Some(courant(seed, count, tol)),
        "invariance" => Some(invariance(seed, count, tol)),
        "interlacing" => Some(interlacing(seed, count, tol)),
        "shift" => Some(shift(seed, count, tol)),
        "correspondence" => Some(correspondence(seed, count, tol)),
        "equipartition" => Some(equipartition(seed, count, tol)),
        "transversality" => Some(transversality(seed, count, tol)),
        "jacobian" => Some(jacobian(seed, count, tol)),
        "tree-unique" => Some(tree_unique(seed, count, tol)),
        "morse" => Some(morse(seed, count, tol)),
        "lower-bound" => Some(lower_bound(seed, count, tol)),
        "global-min" => Some(global_min(seed, count, tol)),
        "homology" => Some(homology(seed, count)),
        "ghost" => Some(ghost(seed, count, tol)),
        _ => None,
    }
}

/// Nodal-domain bound: every non-degenerate eigenvector of a random signed
/// Laplacian has domain count at most its eigen index.
pub fn courant(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut rows = 0usize;
    let mut violations = 0usize;
    for i in 0..count {
        let n = 4 + rng.below(7); // 4..=10 vertices
        let g = random_connected_graph(&mut rng, n, 0.5);
        let s = random_signature(&mut rng, &g);
        match spl_core::spectral::courant_check(&g, &s, tol) {
            Ok(r) => rows += r.len(),
            Err(e) => {
                violations += 1;
                check(&mut checks, format!("instance-{i}"), false, e.to_string());
            }
        }
    }
    check(
        &mut checks,
        "no-violations",
        violations == 0,
        format!("{rows} non-degenerate eigenvectors checked, {violations} violations"),
    );
    SuiteReport::new("courant", seed, count, checks)
}

/// Strong nodal domains are invariant under switching.
pub fn invariance(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut compared = 0usize;
    let mut mismatches = 0usize;
    for _ in 0..count {
        let n = 4 + rng.below(6);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let s = random_signature(&mut rng, &g);
        let tau = random_switching(&mut rng, g.vertex_count());
        let switched = switch(&g, &s, &tau).expect("tau is total");
        let report = match eigendecompose(&signed_laplacian(&g, &s)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for k in 0..report.dim() {
            if !is_nondegenerate(&report, k, tol) {
                continue;
            }
            let psi = report.eigenvector(k);
            let mapped = DVector::from_iterator(
                psi.len(),
                psi.iter().enumerate().map(|(i, &x)| tau.value(i) * x),
            );
            let a = nodal_report(&g, &s, &psi, Some(k + 1), tol).expect("nonzero");
            let b = nodal_report(&g, &switched, &mapped, Some(k + 1), tol).expect("nonzero");
            compared += 1;
            if a.domains_as_sets() != b.domains_as_sets() {
                mismatches += 1;
            }
        }
    }
    check(
        &mut checks,
        "domains-invariant",
        mismatches == 0,
        format!("{compared} eigenvectors compared, {mismatches} mismatches"),
    );
    SuiteReport::new("invariance", seed, count, checks)
}

/// Rank-1 edge perturbations interlace the spectrum on the Weyl side
/// matching the parameter sign.
pub fn interlacing(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let _ = tol;
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut worst: f64 = 0.0;
    let mut tested = 0usize;
    let mut failures = 0usize;
    while tested < count {
        let n = 4 + rng.below(5);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let s = random_signature(&mut rng, &g);
        let negative: Vec<usize> = s.negative_edges().iter().copied().collect();
        if negative.is_empty() {
            continue;
        }
        let edge_index = negative[rng.below(negative.len())];
        let e = g.edge(edge_index);
        let alpha = if tested.is_multiple_of(2) {
            rng.uniform(0.15, 4.0)
        } else {
            -rng.uniform(0.15, 4.0)
        };
        let base = eigendecompose(&signed_laplacian(&g, &s)).expect("eigensolver");
        let mut m = signed_laplacian(&g, &s).matrix().clone();
        m[(e.i, e.i)] += e.weight * alpha;
        m[(e.j, e.j)] += e.weight / alpha;
        m[(e.i, e.j)] -= e.weight;
        m[(e.j, e.i)] -= e.weight;
        let pert = eigendecompose(&spl_core::signed::SymOperator::new(m)).expect("eigensolver");
        let mut ok = true;
        for k in 0..n {
            let v = pert.eigenvalue(k);
            if alpha > 0.0 {
                let lower = base.eigenvalue(k);
                let upper = if k + 1 < n { base.eigenvalue(k + 1) } else { f64::INFINITY };
                worst = worst.max(lower - v).max(v - upper);
                ok &= v >= lower - 1e-9 && v <= upper + 1e-9;
            } else {
                let upper = base.eigenvalue(k);
                let lower = if k > 0 { base.eigenvalue(k - 1) } else { f64::NEG_INFINITY };
                worst = worst.max(lower - v).max(v - upper);
                ok &= v <= upper + 1e-9 && v >= lower - 1e-9;
            }
        }
        if !ok {
            failures += 1;
        }
        tested += 1;
    }
    check(
        &mut checks,
        "weyl-bounds",
        failures == 0,
        format!("{tested} perturbations, worst overshoot {worst:.3e}"),
    );
    SuiteReport::new("interlacing", seed, count, checks)
}

/// Shared driver for curve-based suites: yields located curve critical
/// points on random instances along with the base spectrum data.
fn curve_instances(
    seed: u64,
    count: usize,
    tol: &Tolerances,
    mut visit: impl FnMut(&spl_core::critical::CurveCriticalPoint, &CurveContext),
) {
    let mut rng = SplitMix64::new(seed);
    let mut produced = 0usize;
    while produced < count {
        let n = 4 + rng.below(4);
        let g = random_connected_graph(&mut rng, n, 0.55);
        let s = random_signature(&mut rng, &g);
        let negative: Vec<usize> = s.negative_edges().iter().copied().collect();
        if negative.is_empty() {
            continue;
        }
        let edge_index = negative[rng.below(negative.len())];
        let e = g.edge(edge_index);
        let m = 1 + rng.below(n);
        let pos_grid: Vec<f64> = (0..48).map(|k| 0.08 * 1.09f64.powi(k)).collect();
        let neg_grid: Vec<f64> = pos_grid.iter().map(|a| -a).rev().collect();
        for grid in [&pos_grid, &neg_grid] {
            let Ok(curve) = edge_curve(&g, &s, (e.i, e.j), m, grid, tol) else { continue };
            if curve.critical_points.is_empty() {
                continue;
            }
            let ctx = CurveContext {
                graph: g.clone(),
                signature: s.clone(),
                branch: m,
                edge: (e.i, e.j),
            };
            for cp in &curve.critical_points {
                visit(cp, &ctx);
                produced += 1;
            }
        }
    }
}

struct CurveContext {
    graph: std::sync::Arc<spl_core::graph::WeightedGraph>,
    signature: Signature,
    branch: usize,
    edge: (usize, usize),
}

/// Critical parameters satisfy alpha = ±psi_j/psi_i; plus-branch points are
/// eigenvectors of the unperturbed operator with index drift at most one.
pub fn correspondence(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut checks = Vec::new();
    let mut ratio_worst: f64 = 0.0;
    let mut residual_worst: f64 = 0.0;
    let mut drift_ok = true;
    let mut ratio_ok = true;
    let mut plus_branch = 0usize;
    let mut total = 0usize;
    curve_instances(seed, count, tol, |cp, ctx| {
        total += 1;
        let err = (cp.alpha - cp.eigenvector_ratio)
            .abs()
            .min((cp.alpha + cp.eigenvector_ratio).abs());
        ratio_worst = ratio_worst.max(err / cp.alpha.abs().max(1.0));
        ratio_ok &= err <= 1e-6 * cp.alpha.abs().max(1.0);
        // Plus branch: the critical parameter equals the ratio itself.
        if cp.plus_branch {
            plus_branch += 1;
            // Rebuild the branch eigenvector at alpha_c and check it against
            // the unperturbed operator.
            let e_idx = ctx.graph.edge_index(ctx.edge.0, ctx.edge.1).unwrap();
            let e = ctx.graph.edge(e_idx);
            let mut m = signed_laplacian(&ctx.graph, &ctx.signature).matrix().clone();
            m[(e.i, e.i)] += e.weight * cp.alpha;
            m[(e.j, e.j)] += e.weight / cp.alpha;
            m[(e.i, e.j)] -= e.weight;
            m[(e.j, e.i)] -= e.weight;
            let pert = eigendecompose(&spl_core::signed::SymOperator::new(m)).unwrap();
            let psi = pert.eigenvector(ctx.branch - 1);
            let base_l = signed_laplacian(&ctx.graph, &ctx.signature);
            let residual = (base_l.matrix() * &psi - &psi * cp.value).norm();
            residual_worst = residual_worst.max(residual);
            if let Some(n) = cp.base_index {
                drift_ok &= (n as i64 - ctx.branch as i64).abs() <= 1;
            }
        }
    });
    check(
        &mut checks,
        "critical-ratio",
        ratio_ok,
        format!("{total} critical points, worst |alpha -+ ratio| {ratio_worst:.3e}"),
    );
    check(
        &mut checks,
        "plus-branch-eigenvectors",
        residual_worst <= 1e-8,
        format!("{plus_branch} plus-branch points, worst residual {residual_worst:.3e}"),
    );
    check(&mut checks, "index-drift", drift_ok, "|m - n| <= 1 on matched indices");
    SuiteReport::new("correspondence", seed, count, checks)
}

/// Spectral-shift formula: M - shift is 0 for positive and 1 for negative
/// critical parameters.
pub fn shift(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut checks = Vec::new();
    let mut classified = 0usize;
    let mut failures = 0usize;
    curve_instances(seed, count, tol, |cp, _ctx| {
        if let Some(shift) = cp.index_shift {
            classified += 1;
            let m_flag = i64::from(cp.is_maximum);
            let expected = if cp.alpha > 0.0 { 0 } else { 1 };
            if m_flag - shift != expected {
                failures += 1;
            }
        }
    });
    check(
        &mut checks,
        "shift-formula",
        failures == 0,
        format!("{classified} classified critical points, {failures} failures"),
    );
    SuiteReport::new("shift", seed, count, checks)
}

/// Strictly positive non-degenerate eigenvectors of the partition Laplacian
/// induce equipartitions at their own eigenvalue.
pub fn equipartition(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut found = 0usize;
    let mut spread_worst: f64 = 0.0;
    let mut energy_worst: f64 = 0.0;
    let mut failures = 0usize;
    for _ in 0..count {
        let n = 4 + rng.below(5);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let nu = 2 + rng.below(3.min(n - 1));
        let Some(p) = random_partition(&mut rng, &g, nu) else { continue };
        let report = match eigendecompose(&partition_laplacian(&p)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for k in 0..report.dim() {
            if !is_nondegenerate(&report, k, tol) {
                continue;
            }
            let psi = report.eigenvector(k);
            if psi.min() <= tol.zero_tol * psi.amax() {
                continue;
            }
            let Ok(point) = alpha_from_eigenvector(&p, &psi, tol) else { continue };
            let values = phi(&p, &point).expect("positive alpha");
            let lambda = report.eigenvalue(k);
            let spread = (values.max() - values.min()) / lambda.abs().max(1.0);
            let energy_err = (values.max() - lambda).abs() / lambda.abs().max(1.0);
            spread_worst = spread_worst.max(spread);
            energy_worst = energy_worst.max(energy_err);
            if spread > 1e-9 || energy_err > 1e-9 {
                failures += 1;
            }
            found += 1;
        }
    }
    check(
        &mut checks,
        "induced-equipartitions",
        failures == 0 && found > 0,
        format!(
            "{found} positive eigenvectors, worst spread {spread_worst:.3e}, worst energy error {energy_worst:.3e}"
        ),
    );
    SuiteReport::new("equipartition", seed, count, checks)
}

/// At solved equipartition points the eigenvalue map is transversal to the
/// diagonal and the Jacobian cokernel, when nontrivial, is single-signed.
pub fn transversality(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut solved = 0usize;
    let mut trans_failures = 0usize;
    let mut sign_failures = 0usize;
    let mut kernels = 0usize;
    let mut attempts = 0usize;
    while solved < count && attempts < count * 20 {
        attempts += 1;
        let n = 4 + rng.below(5);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let nu = 2 + rng.below(3.min(n - 1));
        let Some(p) = random_partition(&mut rng, &g, nu) else { continue };
        let alpha: Vec<f64> = (0..p.boundary_len()).map(|_| rng.uniform(0.4, 2.2)).collect();
        let Ok(start) = ParamPoint::new(&p, alpha) else { continue };
        let Ok(point) = solve_equipartition(&p, &start, tol) else { continue };
        solved += 1;
        match transversality_holds(&p, &point, tol) {
            Ok(true) => {}
            _ => trans_failures += 1,
        }
        if let Ok(Some(kernel)) = jacobian_cokernel(&p, &point, tol) {
            kernels += 1;
            let single_signed =
                kernel.iter().all(|&x| x >= -1e-9) || kernel.iter().all(|&x| x <= 1e-9);
            if !single_signed {
                sign_failures += 1;
            }
        }
    }
    check(
        &mut checks,
        "transversal",
        trans_failures == 0 && solved > 0,
        format!("{solved} equipartition points, {trans_failures} rank failures"),
    );
    check(
        &mut checks,
        "cokernel-single-signed",
        sign_failures == 0,
        format!("{kernels} nontrivial cokernels, {sign_failures} sign failures"),
    );
    SuiteReport::new("transversality", seed, count, checks)
}

/// Analytic Jacobian matches central finite differences.
pub fn jacobian(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut points = 0usize;
    let mut failures = 0usize;
    let mut worst: f64 = 0.0;
    while points < count {
        let n = 4 + rng.below(4);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let nu = 2 + rng.below(2);
        let Some(p) = random_partition(&mut rng, &g, nu.min(n - 1)) else { continue };
        if p.boundary_len() == 0 {
            continue;
        }
        let alpha: Vec<f64> = (0..p.boundary_len()).map(|_| rng.uniform(0.4, 2.5)).collect();
        let point = ParamPoint::new(&p, alpha).expect("positive");
        let Ok(jac) = phi_jacobian(&p, &point, tol) else { continue };
        points += 1;
        for t in 0..p.boundary_len() {
            let h = 1e-6 * point.alpha()[t];
            let mut up = point.alpha().iter().copied().collect::<Vec<f64>>();
            up[t] += h;
            let mut down = point.alpha().iter().copied().collect::<Vec<f64>>();
            down[t] -= h;
            let fp = phi(&p, &ParamPoint::new(&p, up).unwrap()).unwrap();
            let fm = phi(&p, &ParamPoint::new(&p, down).unwrap()).unwrap();
            for k in 0..p.nu() {
                let fd = (fp[k] - fm[k]) / (2.0 * h);
                let scale = jac[(k, t)].abs().max(1e-8);
                let rel = (fd - jac[(k, t)]).abs() / scale;
                worst = worst.max(rel);
                if rel > 1e-5 {
                    failures += 1;
                }
            }
        }
    }
    check(
        &mut checks,
        "fd-match",
        failures == 0,
        format!("{points} random points, worst relative error {worst:.3e}"),
    );
    SuiteReport::new("jacobian", seed, count, checks)
}

/// Tree partitions: multistart solves agree on one equipartition, which is
/// induced by a Courant-sharp eigenvector.
pub fn tree_unique(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut tested = 0usize;
    let mut scatter_failures = 0usize;
    let mut sharp_failures = 0usize;
    let mut attempts = 0usize;
    while tested < count && attempts < count * 30 {
        attempts += 1;
        let n = 4 + rng.below(4);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let nu = 2 + rng.below(2);
        let Some(p) = random_partition(&mut rng, &g, nu.min(n - 1)) else { continue };
        if !is_tree_partition(&p) {
            continue;
        }
        // Only partitions that carry an equipartition at all: those induced
        // by a positive non-degenerate eigenvector.
        let Ok(cps) = critical_points_from_spectrum(&p, tol) else { continue };
        let Some(cp) = cps.first() else { continue };
        tested += 1;
        let mut converged: Vec<ParamPoint> = Vec::new();
        for _ in 0..20 {
            let alpha: Vec<f64> = (0..p.boundary_len())
                .map(|_| 4.0f64.powf(rng.uniform(-1.0, 1.0)))
                .collect();
            let start = ParamPoint::new(&p, alpha).expect("positive");
            if let Ok(point) = solve_equipartition(&p, &start, tol) {
                converged.push(point);
            }
        }
        if converged.len() != 20 {
            scatter_failures += 1;
            continue;
        }
        let reference = cp.point.alpha();
        let agree = converged.iter().all(|q| {
            (q.alpha() - reference).amax() <= 1e-7 * (1.0 + reference.amax())
        });
        if !agree {
            scatter_failures += 1;
        }
        if cp.deficiency != 0 {
            sharp_failures += 1;
        }
    }
    check(
        &mut checks,
        "single-point",
        scatter_failures == 0 && tested > 0,
        format!("{tested} tree partitions, {scatter_failures} scatter failures"),
    );
    check(
        &mut checks,
        "courant-sharp",
        sharp_failures == 0,
        format!("{sharp_failures} deficiency failures"),
    );
    SuiteReport::new("tree-unique", seed, count, checks)
}

/// Exhaustive sweep: on sparse seeded graphs, every verified critical point
/// with non-degenerate Hessian has Morse index equal to the nodal
/// deficiency, and edge restoration predicts the eigen index.
pub fn morse(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut critical_found = 0usize;
    let mut morse_checked = 0usize;
    let mut morse_failures = 0usize;
    let mut restore_failures = 0usize;
    let mut restore_refusals = 0usize;
    let mut degenerate_hessians = 0usize;
    let mut certificate_failures = 0usize;
    for _ in 0..count {
        let n = 6 + rng.below(3); // 6..=8 vertices
        let g = random_sparse_graph(&mut rng, n, 0.35, 3);
        for nu in 2..=4.min(n - 1) {
            let parts = match enumerate_partitions(&g, nu, 12) {
                Ok(it) => it,
                Err(_) => continue,
            };
            for p in parts {
                if betti_number(&p) == 0 {
                    continue;
                }
                let Ok(cps) = critical_points_from_spectrum(&p, tol) else { continue };
                for cp in &cps {
                    critical_found += 1;
                    if lagrange_certificate(&p, cp).is_err() {
                        certificate_failures += 1;
                    }
                    match morse_index(&p, cp, None, tol) {
                        Ok(report) => {
                            morse_checked += 1;
                            if report.index != cp.deficiency {
                                morse_failures += 1;
                            }
                        }
                        Err(CriticalError::DegenerateHessian) => degenerate_hessians += 1,
                        Err(_) => morse_failures += 1,
                    }
                    match deficiency_via_edge_restoration(&p, cp, tol) {
                        Ok(report) => {
                            if report.predicted_index != cp.eigen_index {
                                restore_failures += 1;
                            }
                        }
                        // Resolution refusals: the curve classification or an
                        // intermediate spectrum is genuinely degenerate there.
                        Err(
                            CriticalError::ClassificationAmbiguous(_)
                            | CriticalError::DegenerateSegment(_),
                        ) => restore_refusals += 1,
                        Err(_) => restore_failures += 1,
                    }
                }
            }
        }
    }
    check(
        &mut checks,
        "morse-equals-deficiency",
        morse_failures == 0 && morse_checked > 0,
        format!(
            "{critical_found} critical points, {morse_checked} Hessians, {morse_failures} index mismatches, {degenerate_hessians} degenerate"
        ),
    );
    check(
        &mut checks,
        "restoration-index",
        restore_failures == 0,
        format!("{restore_failures} restoration mismatches, {restore_refusals} degenerate refusals"),
    );
    check(
        &mut checks,
        "certificates",
        certificate_failures == 0,
        format!("{certificate_failures} certificate failures"),
    );
    SuiteReport::new("morse", seed, count, checks)
}

/// lambda_nu of a class signature lower-bounds the minimized energy of every
/// partition in its class.
pub fn lower_bound(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut tested = 0usize;
    let mut bound_failures = 0usize;
    let mut equality_failures = 0usize;
    let mut equalities = 0usize;
    let mut worst_slack: f64 = 0.0;
    while tested < count {
        let n = 5 + rng.below(2);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let nu = 2 + rng.below(2);
        let Some(p) = random_partition(&mut rng, &g, nu) else { continue };
        // Gamma in the class by construction: boundary subset xor a cut.
        let subset: BTreeSet<usize> =
            p.boundary().iter().filter(|_| rng.chance(0.5)).copied().collect();
        let side: Vec<bool> = (0..g.vertex_count()).map(|_| rng.chance(0.5)).collect();
        let cut: BTreeSet<usize> = (0..g.edge_count())
            .filter(|&idx| {
                let e = g.edge(idx);
                side[e.i] != side[e.j]
            })
            .collect();
        let gamma: BTreeSet<usize> = subset.symmetric_difference(&cut).copied().collect();
        let report = match lower_bound_check(&p, &gamma, 4, seed ^ tested as u64, tol) {
            Ok(r) => r,
            Err(_) => continue,
        };
        tested += 1;
        worst_slack = worst_slack.min(report.slack);
        if report.slack < -1e-9 {
            bound_failures += 1;
        }
        if report.equality_case {
            equalities += 1;
            if report.nodal_partition_matches == Some(false) {
                equality_failures += 1;
            }
        }
    }
    check(
        &mut checks,
        "bound-holds",
        bound_failures == 0,
        format!("{tested} pairs, most negative slack {worst_slack:.3e}"),
    );
    check(
        &mut checks,
        "equality-characterization",
        equality_failures == 0,
        format!("{equalities} equality cases"),
    );
    SuiteReport::new("lower-bound", seed, count, checks)
}

/// Courant-sharp eigenvectors of the plain Laplacian induce globally
/// minimal partitions: no enumerated partition beats lambda_nu.
pub fn global_min(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut swept = 0usize;
    let mut failures = 0usize;
    let mut nodal_failures = 0usize;
    let mut attempts = 0usize;
    while swept < count && attempts < count * 20 {
        attempts += 1;
        let n = 5 + rng.below(3); // 5..=7 keeps exhaustive sweeps quick
        let g = random_connected_graph(&mut rng, n, 0.5);
        let s = Signature::all_positive(&g);
        let report = match eigendecompose(&signed_laplacian(&g, &s)) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for nu in 2..=3usize {
            if !is_nondegenerate(&report, nu - 1, tol) {
                continue;
            }
            let lambda_nu = report.eigenvalue(nu - 1);
            let psi = report.eigenvector(nu - 1);
            let nodal = nodal_report(&g, &s, &psi, Some(nu), tol).expect("nonzero");
            if nodal.domain_count != nu {
                continue; // not Courant-sharp
            }
            swept += 1;
            // The nodal partition of psi must attain lambda_nu.
            let mut labels = vec![0usize; g.vertex_count()];
            for (v, d) in nodal.domain_of.iter().enumerate() {
                labels[v] = d.expect("no zeros");
            }
            match spl_core::graph::make_partition(&g, &labels) {
                Ok(nodal_p) if nodal.nodal_edges == nodal_p.boundary() => {
                    let v = minimize_energy(&nodal_p, 4, seed ^ swept as u64, Some(lambda_nu), tol)
                        .unwrap_or(f64::INFINITY);
                    if (v - lambda_nu).abs() > 1e-7 * lambda_nu.abs().max(1.0) {
                        nodal_failures += 1;
                    }
                }
                _ => nodal_failures += 1,
            }
            // No other partition does better.
            let parts = match enumerate_partitions(&g, nu, 12) {
                Ok(it) => it,
                Err(_) => continue,
            };
            for p in parts {
                let v = minimize_energy(&p, 2, seed ^ 0x5bd1e995, Some(lambda_nu), tol)
                    .unwrap_or(f64::INFINITY);
                if v < lambda_nu - 1e-8 * lambda_nu.abs().max(1.0) {
                    failures += 1;
                }
            }
        }
    }
    check(
        &mut checks,
        "no-partition-beats-lambda-nu",
        failures == 0 && swept > 0,
        format!("{swept} Courant-sharp sweeps, {failures} violations"),
    );
    check(
        &mut checks,
        "nodal-partition-attains",
        nodal_failures == 0,
        format!("{nodal_failures} attainment failures"),
    );
    SuiteReport::new("global-min", seed, count, checks)
}

/// GF(2) cut-space membership agrees with constructive switching search.
pub fn homology(seed: u64, count: usize) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut disagreements = 0usize;
    for _ in 0..count {
        let n = 5 + rng.below(4);
        let g = random_connected_graph(&mut rng, n, 0.5);
        let space = ChainSpace::new(&g);
        let s1 = random_signature(&mut rng, &g);
        let s2 = random_signature(&mut rng, &g);
        let by_switching = switching_equivalent(&g, &s1, &s2).is_some();
        let by_homology = homologous(&space, s1.negative_edges(), s2.negative_edges());
        if by_switching != by_homology {
            disagreements += 1;
        }
    }
    check(
        &mut checks,
        "verdict-agreement",
        disagreements == 0,
        format!("{count} pairs, {disagreements} disagreements"),
    );
    SuiteReport::new("homology", seed, count, checks)
}

/// Ghost-point reduction reproduces the partition Laplacian on every
/// partition of seeded graphs, and extended eigenpairs solve the
/// generalized mass-matrix problem.
pub fn ghost(seed: u64, count: usize, tol: &Tolerances) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();
    let mut partitions = 0usize;
    let mut mismatches = 0usize;
    let mut pullback_failures = 0usize;
    for _ in 0..count {
        let n = 5 + rng.below(3);
        let g = random_connected_graph(&mut rng, n, 0.5);
        for nu in 1..=n.min(4) {
            let parts = match enumerate_partitions(&g, nu, 12) {
                Ok(it) => it,
                Err(_) => continue,
            };
            for p in parts {
                partitions += 1;
                if verify_discretization(&p).is_err() {
                    mismatches += 1;
                    continue;
                }
                let ghost = build_ghost(&p);
                let lg = ghost_operator(&ghost);
                let b = mass_matrix(&ghost);
                let report = match eigendecompose(&partition_laplacian(&p)) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                let scale = report.operator_norm().max(1.0);
                for k in 0..report.dim() {
                    let ext = anticontinuous_extension(&ghost, &report.eigenvector(k));
                    let residual = &lg * &ext - &b * &ext * report.eigenvalue(k);
                    if residual.norm() > 1e-9 * scale {
                        pullback_failures += 1;
                    }
                }
                let _ = tol;
            }
        }
    }
    check(
        &mut checks,
        "reduction-identity",
        mismatches == 0,
        format!("{partitions} partitions checked, {mismatches} mismatches"),
    );
    check(
        &mut checks,
        "generalized-pullback",
        pullback_failures == 0,
        format!("{pullback_failures} pullback residual failures"),
    );
    SuiteReport::new("ghost", seed, count, checks)
}

/// Membership construction used by tests: verifies the constructed Gamma is
/// really in the class.
pub fn membership_sanity(seed: u64, count: usize) -> bool {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..count {
        let g = random_connected_graph(&mut rng, 6, 0.5);
        let Some(p) = random_partition(&mut rng, &g, 2) else { continue };
        let gamma: BTreeSet<usize> =
            p.boundary().iter().filter(|_| rng.chance(0.5)).copied().collect();
        match partition_class_membership(&p, &gamma, 20) {
            Ok(Some(_)) => {}
            _ => return false,
        }
    }
    true
}
