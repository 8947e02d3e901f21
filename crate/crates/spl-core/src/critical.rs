//! Critical points of the partition energy on the equipartition manifold,
//! their correspondence with partition-Laplacian eigenvectors, Morse index
//! computation, single-edge eigenvalue curves and spectral-shift bookkeeping.
//!
//! A point is critical iff it comes from a strictly positive non-degenerate
//! eigenvector of the partition Laplacian; its Morse index equals the nodal
//! deficiency of that eigenvector. The index is computed two independent
//! ways: a constrained numerical Hessian on the manifold, and a max/min
//! classification of single-edge eigenvalue curves while restoring the
//! cycle-closing boundary edges one at a time.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{partition_multigraph, Partition, WeightedGraph};
use crate::param::{self, alpha_from_eigenvector, manifold_chart, ParamError, ParamPoint};
use crate::signed::{partition_laplacian, signed_laplacian, Signature, SymOperator};
use crate::spectral::{eigendecompose, SpectralError, SpectrumReport};
use crate::Tolerances;

#[derive(Debug, Error, PartialEq)]
pub enum CriticalError {
    #[error("eigensolver failure: {0}")]
    Eigensolver(#[from] SpectralError),
    #[error("parameter-space failure: {0}")]
    Param(#[from] ParamError),
    #[error("stationarity certificate failed: residual {0:.3e}")]
    CertificateFailure(f64),
    #[error("tree partition: the equipartition set is zero-dimensional")]
    TreePartition,
    #[error("constrained Hessian has an eigenvalue within tolerance of zero")]
    DegenerateHessian,
    #[error("retraction onto the equipartition set failed: {0}")]
    RetractionFailure(ParamError),
    #[error("edge ({0}, {1}) is not negative under the signature")]
    NotNegativeEdge(usize, usize),
    #[error("eigenvalue branch is degenerate near alpha = {0}")]
    DegenerateSegment(f64),
    #[error("curve classification ambiguous at alpha = {0}")]
    ClassificationAmbiguous(f64),
    #[error("eigenvalue index mismatch during edge restoration")]
    InconsistentIndex,
}

/// A verified critical point of the energy on the equipartition manifold.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub point: ParamPoint,
    /// Unit eigenvector of the partition Laplacian, sign-fixed positive.
    pub psi: DVector<f64>,
    /// 1-based index of the eigenvalue in the partition-Laplacian spectrum.
    pub eigen_index: usize,
    /// The critical energy (the eigenvalue).
    pub energy: f64,
    pub nu: usize,
    /// Nodal deficiency eigen_index - nu; nonnegative by the Courant bound.
    pub deficiency: usize,
    /// Lagrange weights c_k = sum of psi^2 over component k.
    pub certificate: Vec<f64>,
    pub projected_gradient_norm: f64,
}

/// Finds every critical point of the energy for this partition by screening
/// the partition-Laplacian spectrum for strictly positive non-degenerate
/// eigenvectors. There is at most one: orthogonal vectors cannot both be
/// strictly positive.
pub fn critical_points_from_spectrum(
    partition: &Partition,
    tol: &Tolerances,
) -> Result<Vec<CriticalPoint>, CriticalError> {
    let op = partition_laplacian(partition);
    let report = eigendecompose(&op)?;
    let mut out = Vec::new();
    for k in 0..report.dim() {
        if !crate::spectral::is_nondegenerate(&report, k, tol) {
            continue;
        }
        let psi = report.eigenvector(k);
        if psi.min() <= tol.zero_tol * psi.amax() {
            continue;
        }
        let point = match alpha_from_eigenvector(partition, &psi, tol) {
            Ok(p) => p,
            Err(ParamError::WrongNodalPartition | ParamError::DegenerateEigenvector) => continue,
            Err(e) => return Err(e.into()),
        };
        if !param::is_equipartition(partition, &point, tol)? {
            continue;
        }
        let grad_norm = if partition.boundary_len() > 0 {
            let chart = manifold_chart(partition, &point, tol)?;
            param::projected_gradient(&chart, partition).norm()
        } else {
            0.0
        };
        if grad_norm > tol.grad_tol {
            continue;
        }
        let n = k + 1;
        let nu = partition.nu();
        assert!(n >= nu, "Courant bound violated: index {n} below domain count {nu}");
        let certificate = certificate_weights(partition, &psi);
        out.push(CriticalPoint {
            point,
            psi,
            eigen_index: n,
            energy: report.eigenvalue(k),
            nu,
            deficiency: n - nu,
            certificate,
            projected_gradient_norm: grad_norm,
        });
    }
    Ok(out)
}

fn certificate_weights(partition: &Partition, psi: &DVector<f64>) -> Vec<f64> {
    partition
        .components()
        .iter()
        .map(|c| c.vertices.iter().map(|&v| psi[v] * psi[v]).sum())
        .collect()
}

/// Verifies the Lagrange stationarity system at a critical point and returns
/// the multiplier weights c_k.
///
/// Checks, to 1e-8 relative: sum c_k = ||psi||^2, the per-edge stationarity
/// c_{s(i)} |f_i|^2 - c_{s(j)} |f_j|^2 / alpha^2 = 0, and the reconstruction
/// psi = sum_k sqrt(c_k) f_k.
pub fn lagrange_certificate(
    partition: &Partition,
    cp: &CriticalPoint,
) -> Result<Vec<f64>, CriticalError> {
    let c = certificate_weights(partition, &cp.psi);
    let total: f64 = c.iter().sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(CriticalError::CertificateFailure((total - 1.0).abs()));
    }
    let states = param::ground_states(partition, &cp.point)?;
    let mut worst = 0.0f64;
    for (t, &edge_index) in partition.boundary().iter().enumerate() {
        let e = partition.graph().edge(edge_index);
        let a = cp.point.alpha()[t];
        let si = partition.component_of(e.i);
        let sj = partition.component_of(e.j);
        let fi = states[si].vector[e.i];
        let fj = states[sj].vector[e.j];
        let lhs = c[si] * fi * fi - c[sj] * fj * fj / (a * a);
        let scale = (c[si] * fi * fi).abs().max(c[sj] * fj * fj / (a * a)).max(1e-300);
        worst = worst.max(lhs.abs() / scale);
    }
    if worst > 1e-8 {
        return Err(CriticalError::CertificateFailure(worst));
    }
    // Reconstruction psi = sum sqrt(c_k) f_k.
    let n = partition.graph().vertex_count();
    let mut rebuilt = DVector::zeros(n);
    for (k, s) in states.iter().enumerate() {
        rebuilt += &s.vector * c[k].sqrt();
    }
    let err = (&rebuilt - &cp.psi).norm();
    if err > 1e-8 {
        return Err(CriticalError::CertificateFailure(err));
    }
    Ok(c)
}

/// Morse data of a critical point: the index and the eigenvalues of the
/// constrained Hessian in tangent coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct MorseReport {
    pub index: usize,
    pub hessian_eigenvalues: Vec<f64>,
    pub step: f64,
}

/// Energy as a function of log-chart tangent coordinates: offset along the
/// tangent basis in log space, then re-project onto the equipartition set
/// along the normal space. The retraction runs at a tightened equipartition
/// tolerance so second differences stay above the projection noise.
fn energy_in_chart(
    partition: &Partition,
    base_log: &DVector<f64>,
    tangent: &DMatrix<f64>,
    normal: &DMatrix<f64>,
    x: &DVector<f64>,
    tol: &Tolerances,
) -> Result<f64, CriticalError> {
    let offset = base_log + tangent * x;
    let eq_tol = tol.eq_tol.min(1e-12);
    let projected = param::newton_equipartition_log(partition, &offset, Some(normal), eq_tol, tol)
        .map_err(CriticalError::RetractionFailure)?;
    // On the manifold all block energies agree; the mean smooths the
    // equipartition tolerance noise out of the second differences.
    let values = param::phi(partition, &projected)?;
    Ok(values.mean())
}

fn hessian_at_step(
    partition: &Partition,
    base_log: &DVector<f64>,
    tangent: &DMatrix<f64>,
    normal: &DMatrix<f64>,
    h: f64,
    tol: &Tolerances,
) -> Result<DMatrix<f64>, CriticalError> {
    let eta = tangent.ncols();
    let f0 = energy_in_chart(partition, base_log, tangent, normal, &DVector::zeros(eta), tol)?;
    let mut hess = DMatrix::zeros(eta, eta);
    let unit = |t: usize, s: f64| {
        let mut x = DVector::zeros(eta);
        x[t] = s;
        x
    };
    for t in 0..eta {
        let fp = energy_in_chart(partition, base_log, tangent, normal, &unit(t, h), tol)?;
        let fm = energy_in_chart(partition, base_log, tangent, normal, &unit(t, -h), tol)?;
        hess[(t, t)] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for t in 0..eta {
        for s in t + 1..eta {
            let mut xpp = DVector::zeros(eta);
            xpp[t] = h;
            xpp[s] = h;
            let mut xpm = DVector::zeros(eta);
            xpm[t] = h;
            xpm[s] = -h;
            let mut xmp = DVector::zeros(eta);
            xmp[t] = -h;
            xmp[s] = h;
            let mut xmm = DVector::zeros(eta);
            xmm[t] = -h;
            xmm[s] = -h;
            let fpp = energy_in_chart(partition, base_log, tangent, normal, &xpp, tol)?;
            let fpm = energy_in_chart(partition, base_log, tangent, normal, &xpm, tol)?;
            let fmp = energy_in_chart(partition, base_log, tangent, normal, &xmp, tol)?;
            let fmm = energy_in_chart(partition, base_log, tangent, normal, &xmm, tol)?;
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            hess[(t, s)] = v;
            hess[(s, t)] = v;
        }
    }
    Ok(hess)
}

/// Computes the Morse index as the number of negative eigenvalues of the
/// second-difference Hessian of the energy restricted to the equipartition
/// manifold, in scale-free logarithmic tangent coordinates (the index is
/// chart-independent). Richardson-extrapolates steps h and h/2.
pub fn morse_index(
    partition: &Partition,
    cp: &CriticalPoint,
    step: Option<f64>,
    tol: &Tolerances,
) -> Result<MorseReport, CriticalError> {
    if crate::graph::betti_number(partition) == 0 {
        return Err(CriticalError::TreePartition);
    }
    let chart = param::log_chart(partition, &cp.point, tol)?;
    let eta = chart.tangent.ncols();
    assert_eq!(eta, crate::graph::betti_number(partition));
    let base_log = cp.point.alpha().map(f64::ln);

    // Log coordinates are dimensionless; steps are relative moves. Very flat
    // critical points need a larger step before curvature clears the
    // retraction noise, so escalate through a ladder unless a step is given.
    let ladder: &[f64] = match step {
        Some(_) => &[0.0],
        None => &[2e-3, 1e-2, 4e-2],
    };
    let eq_tol_used = tol.eq_tol.min(1e-12);
    let mut last = None;
    for &rung in ladder {
        let h = step.unwrap_or(rung);
        let hess_h =
            hessian_at_step(partition, &base_log, &chart.tangent, &chart.normal, h, tol)?;
        let hess_h2 =
            hessian_at_step(partition, &base_log, &chart.tangent, &chart.normal, h / 2.0, tol)?;
        // Central differences are O(h^2): eliminate the leading error term.
        let hess = (&hess_h2 * 4.0 - &hess_h) / 3.0;
        let sym = (&hess + hess.transpose()) * 0.5;
        let eig = sym.symmetric_eigen();
        let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(|a, b| a.total_cmp(b));

        let max_abs = eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        // Second differences resolve eigenvalues down to roughly the
        // retraction tolerance divided by h^2 (h/2 dominates).
        let noise_floor =
            eta as f64 * 16.0 * eq_tol_used * cp.energy.abs().max(1.0) / (h * h);
        let hess_tol = (tol.hess_factor * max_abs).max(noise_floor);
        let resolved = max_abs > 0.0 && eigenvalues.iter().all(|&l| l.abs() > hess_tol);
        let index = eigenvalues.iter().filter(|&&l| l < -hess_tol).count();
        last = Some(MorseReport { index, hessian_eigenvalues: eigenvalues, step: h });
        if resolved {
            return Ok(last.unwrap());
        }
    }
    let _ = last;
    Err(CriticalError::DegenerateHessian)
}

/// A located critical point of a single-edge eigenvalue curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurveCriticalPoint {
    pub alpha: f64,
    pub value: f64,
    /// True when the curve has a local maximum here.
    pub is_maximum: bool,
    /// Ratio psi_j / psi_i of the branch eigenvector at the critical point.
    pub eigenvector_ratio: f64,
    /// True when alpha = psi_j / psi_i (the branch eigenvector lies in the
    /// perturbation kernel, so the critical value is an eigenvalue of the
    /// operator with the edge restored at its original sign). On the other
    /// branch (alpha = -psi_j / psi_i) the shared eigenvalue lives in the
    /// spectrum of the operator with the edge sign flipped.
    pub plus_branch: bool,
    /// 1-based index of the critical value in the spectrum of the
    /// branch-appropriate restored operator; None when that eigenvalue is
    /// degenerate there (no well-defined shift).
    pub base_index: Option<usize>,
    /// Shift base_index - m of the eigenvalue position when the
    /// perturbation is removed.
    pub index_shift: Option<i64>,
}

/// A sampled single-edge eigenvalue curve with located critical points.
#[derive(Debug, Clone)]
pub struct EdgeCurve {
    pub edge: (usize, usize),
    /// 1-based eigenvalue index of the tracked branch.
    pub branch: usize,
    pub samples: Vec<(f64, f64)>,
    /// Grid points where the branch was not simple; intervals touching them
    /// are excluded from critical-point refinement.
    pub degenerate_alphas: Vec<f64>,
    /// Refined points whose local max/min classification was inconclusive.
    pub ambiguous_alphas: Vec<f64>,
    pub critical_points: Vec<CurveCriticalPoint>,
}

struct CurveEvaluator<'a> {
    graph: &'a WeightedGraph,
    base: SymOperator,
    edge_index: usize,
    weight: f64,
    m0: usize,
}

impl<'a> CurveEvaluator<'a> {
    fn operator(&self, alpha: f64) -> SymOperator {
        let mut m = self.base.matrix().clone();
        let e = self.graph.edge(self.edge_index);
        m[(e.i, e.i)] += self.weight * alpha;
        m[(e.j, e.j)] += self.weight / alpha;
        m[(e.i, e.j)] -= self.weight;
        m[(e.j, e.i)] -= self.weight;
        SymOperator::new(m)
    }

    /// (lambda_m, derivative, simple?, psi) at alpha.
    fn eval(&self, alpha: f64, tol: &Tolerances) -> Result<CurveSample, CriticalError> {
        let report = eigendecompose(&self.operator(alpha))?;
        let e = self.graph.edge(self.edge_index);
        let psi = report.eigenvector(self.m0);
        let derivative =
            self.weight * (psi[e.i] * psi[e.i] - psi[e.j] * psi[e.j] / (alpha * alpha));
        Ok(CurveSample {
            value: report.eigenvalue(self.m0),
            derivative,
            simple: report.is_simple(self.m0, tol),
            psi,
        })
    }
}

struct CurveSample {
    value: f64,
    derivative: f64,
    simple: bool,
    psi: DVector<f64>,
}

/// Samples the eigenvalue curve of the m-th branch (1-based) of
/// L^sigma + w_ij B_ij(alpha) over the grid and locates interior critical
/// points by bisecting derivative sign changes. The edge must be negative
/// under the signature so that the perturbation removes it.
pub fn edge_curve(
    graph: &WeightedGraph,
    signature: &Signature,
    edge: (usize, usize),
    m: usize,
    grid: &[f64],
    tol: &Tolerances,
) -> Result<EdgeCurve, CriticalError> {
    let edge_index = graph
        .edge_index(edge.0, edge.1)
        .ok_or(CriticalError::NotNegativeEdge(edge.0, edge.1))?;
    if !signature.is_negative(edge_index) {
        return Err(CriticalError::NotNegativeEdge(edge.0, edge.1));
    }
    assert!(m >= 1 && m <= graph.vertex_count());
    assert!(grid.iter().all(|&a| a != 0.0), "grid must avoid zero");

    let e = graph.edge(edge_index);
    let evaluator = CurveEvaluator {
        graph,
        base: signed_laplacian(graph, signature),
        edge_index,
        weight: e.weight,
        m0: m - 1,
    };
    let base_report = eigendecompose(&evaluator.base)?;
    // Restored operator of the minus branch: the edge sign flipped positive.
    let flipped = Signature::from_edge_indices(
        graph,
        signature.negative_edges().iter().copied().filter(|&i| i != edge_index),
    );
    let flipped_report = eigendecompose(&signed_laplacian(graph, &flipped))?;

    let mut samples = Vec::with_capacity(grid.len());
    let mut degenerate = Vec::new();
    let mut evals = Vec::with_capacity(grid.len());
    for &a in grid {
        let s = evaluator.eval(a, tol)?;
        samples.push((a, s.value));
        if !s.simple {
            degenerate.push(a);
        }
        evals.push(s);
    }

    let mut critical_points = Vec::new();
    let mut ambiguous = Vec::new();
    for w in 0..grid.len().saturating_sub(1) {
        let (a0, a1) = (grid[w], grid[w + 1]);
        if a0.signum() != a1.signum() {
            continue;
        }
        if !evals[w].simple || !evals[w + 1].simple {
            continue;
        }
        let (d0, d1) = (evals[w].derivative, evals[w + 1].derivative);
        if d0 == 0.0 || d0 * d1 >= 0.0 {
            continue;
        }
        // Bisection on the derivative sign change.
        let mut lo = a0;
        let mut hi = a1;
        let mut dlo = d0;
        let mut degenerate_hit = false;
        while (hi - lo).abs() > 1e-10 * (1.0 + lo.abs()) {
            let mid = 0.5 * (lo + hi);
            let s = evaluator.eval(mid, tol)?;
            if !s.simple {
                degenerate_hit = true;
                break;
            }
            if s.derivative * dlo <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
                dlo = s.derivative;
            }
        }
        if degenerate_hit {
            degenerate.push(0.5 * (lo + hi));
            continue;
        }
        let alpha_c = 0.5 * (lo + hi);
        let s = evaluator.eval(alpha_c, tol)?;
        if !s.simple {
            degenerate.push(alpha_c);
            continue;
        }
        let ratio = s.psi[e.j] / s.psi[e.i];
        // Classify from derivatives local to the refined point; the
        // bracketing cell may contain several critical points.
        let eps = 1e-6 * (1.0 + alpha_c.abs());
        let d_minus = evaluator.eval(alpha_c - eps, tol)?.derivative;
        let d_plus = evaluator.eval(alpha_c + eps, tol)?.derivative;
        let is_maximum = if d_minus > 0.0 && d_plus < 0.0 {
            true
        } else if d_minus < 0.0 && d_plus > 0.0 {
            false
        } else {
            ambiguous.push(alpha_c);
            continue;
        };
        let plus_branch = (alpha_c - ratio).abs() <= (alpha_c + ratio).abs();
        let restored = if plus_branch { &base_report } else { &flipped_report };
        let nearest = restored.nearest_index(s.value);
        let matched = (restored.eigenvalue(nearest) - s.value).abs()
            <= 1e-7 * restored.operator_norm().max(1.0);
        let base_index = if matched && restored.is_simple(nearest, tol) {
            Some(nearest + 1)
        } else {
            None
        };
        critical_points.push(CurveCriticalPoint {
            alpha: alpha_c,
            value: s.value,
            is_maximum,
            eigenvector_ratio: ratio,
            plus_branch,
            base_index,
            index_shift: base_index.map(|n| n as i64 - m as i64),
        });
    }

    Ok(EdgeCurve {
        edge: (e.i, e.j),
        branch: m,
        samples,
        degenerate_alphas: degenerate,
        ambiguous_alphas: ambiguous,
        critical_points,
    })
}

/// Per-edge classification from the restoration pass.
#[derive(Debug, Clone, Serialize)]
pub struct RestorationStep {
    pub edge: (usize, usize),
    pub alpha: f64,
    /// 1 when the energy sits at a local maximum of this edge's curve.
    pub is_maximum: bool,
    /// 1-based index of the energy in the spectrum before restoring the edge.
    pub index_before: usize,
    /// 1-based index after restoring the edge.
    pub index_after: usize,
}

/// Result of predicting the eigen index by restoring cycle edges one at a
/// time from the tree reduction.
#[derive(Debug, Clone, Serialize)]
pub struct RestorationReport {
    /// nu + number of local maxima.
    pub predicted_index: usize,
    pub steps: Vec<RestorationStep>,
    /// Edges removed to break all cycles of the partition multigraph.
    pub removed_edges: Vec<(usize, usize)>,
}

/// Chooses a cycle-breaking set R of boundary edges via a spanning tree of
/// the partition multigraph in deterministic edge order.
fn cycle_breaking_edges(partition: &Partition) -> Vec<usize> {
    let mg = partition_multigraph(partition);
    let mut parent: Vec<usize> = (0..mg.node_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut removed = Vec::new();
    for &(k, l, edge_index) in &mg.edges {
        let (rk, rl) = (find(&mut parent, k), find(&mut parent, l));
        if rk == rl {
            removed.push(edge_index);
        } else {
            parent[rk] = rl;
        }
    }
    removed
}

/// Index (1-based) of `value` in the spectrum, requiring a simple match.
fn index_of_value(
    report: &SpectrumReport,
    value: f64,
    tol: &Tolerances,
) -> Result<usize, CriticalError> {
    let k = report.nearest_index(value);
    let scale = report.operator_norm().max(1.0);
    if (report.eigenvalue(k) - value).abs() > 1e-7 * scale {
        return Err(CriticalError::InconsistentIndex);
    }
    if !report.is_simple(k, tol) {
        return Err(CriticalError::DegenerateSegment(value));
    }
    Ok(k + 1)
}

/// Predicts the eigen index of the critical eigenvector by starting from the
/// tree reduction (all cycle edges replaced by their potentials, index nu)
/// and restoring the removed edges one at a time, counting local maxima.
pub fn deficiency_via_edge_restoration(
    partition: &Partition,
    cp: &CriticalPoint,
    tol: &Tolerances,
) -> Result<RestorationReport, CriticalError> {
    let graph = partition.graph();
    let removed = cycle_breaking_edges(partition);
    if removed.is_empty() {
        return Ok(RestorationReport {
            predicted_index: partition.nu(),
            steps: Vec::new(),
            removed_edges: Vec::new(),
        });
    }
    let boundary_pos: std::collections::HashMap<usize, usize> = partition
        .boundary()
        .iter()
        .enumerate()
        .map(|(t, &idx)| (idx, t))
        .collect();

    // Operator with the perturbations of a suffix of `removed` applied.
    let operator_with = |suffix_from: usize| -> SymOperator {
        let mut m = partition_laplacian(partition).matrix().clone();
        for &edge_index in &removed[suffix_from..] {
            let a = cp.point.alpha()[boundary_pos[&edge_index]];
            param::add_edge_perturbation(&mut m, partition, edge_index, a);
        }
        SymOperator::new(m)
    };

    // Tree reduction: the energy must sit at index nu (Courant-sharp).
    let tree_report = eigendecompose(&operator_with(0))?;
    let mut index = index_of_value(&tree_report, cp.energy, tol)?;
    if index != partition.nu() {
        return Err(CriticalError::InconsistentIndex);
    }

    let mut steps = Vec::new();
    let mut maxima = 0usize;
    for (t, &edge_index) in removed.iter().enumerate() {
        let e = graph.edge(edge_index);
        let alpha_c = cp.point.alpha()[boundary_pos[&edge_index]];
        // Curve through the pre-restoration operator: the suffix after this
        // edge stays perturbed, this edge's own parameter varies.
        let after = operator_with(t + 1);
        let curve_op = |a: f64| -> SymOperator {
            let mut m = after.matrix().clone();
            param::add_edge_perturbation(&mut m, partition, edge_index, a);
            SymOperator::new(m)
        };
        let m0 = index - 1;
        let derivative_at = |a: f64| -> Result<f64, CriticalError> {
            let report = eigendecompose(&curve_op(a))?;
            if !report.is_simple(m0, tol) {
                return Err(CriticalError::DegenerateSegment(a));
            }
            let psi = report.eigenvector(m0);
            Ok(e.weight * (psi[e.i] * psi[e.i] - psi[e.j] * psi[e.j] / (a * a)))
        };
        let eps = 1e-4 * alpha_c;
        let d_minus = derivative_at(alpha_c - eps)?;
        let d_plus = derivative_at(alpha_c + eps)?;
        let scale = eigendecompose(&curve_op(alpha_c))?.operator_norm().max(1.0);
        let threshold = 1e-11 * scale;
        let is_maximum = if d_minus > threshold && d_plus < -threshold {
            true
        } else if d_minus < -threshold && d_plus > threshold {
            false
        } else {
            return Err(CriticalError::ClassificationAmbiguous(alpha_c));
        };

        let after_report = eigendecompose(&after)?;
        let index_after = index_of_value(&after_report, cp.energy, tol)?;
        // Positive critical parameter: a maximum shifts the index up by one,
        // a minimum leaves it in place.
        let expected = index + usize::from(is_maximum);
        if index_after != expected {
            return Err(CriticalError::InconsistentIndex);
        }
        if is_maximum {
            maxima += 1;
        }
        steps.push(RestorationStep {
            edge: (e.i, e.j),
            alpha: alpha_c,
            is_maximum,
            index_before: index,
            index_after,
        });
        index = index_after;
    }

    Ok(RestorationReport {
        predicted_index: partition.nu() + maxima,
        steps,
        removed_edges: removed
            .iter()
            .map(|&idx| {
                let e = graph.edge(idx);
                (e.i, e.j)
            })
            .collect(),
    })
}

/// JSON report for a critical point.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalPointJson {
    pub alpha: std::collections::BTreeMap<String, f64>,
    pub eigen_index: usize,
    pub nu: usize,
    pub deficiency: usize,
    pub energy: f64,
    pub morse_index: Option<usize>,
    pub hessian_eigenvalues: Vec<f64>,
    pub certificate_c: Vec<f64>,
    pub projected_gradient_norm: f64,
}

impl CriticalPoint {
    pub fn to_json(&self, partition: &Partition, morse: Option<&MorseReport>) -> CriticalPointJson {
        CriticalPointJson {
            alpha: self.point.to_keyed(partition),
            eigen_index: self.eigen_index,
            nu: self.nu,
            deficiency: self.deficiency,
            energy: self.energy,
            morse_index: morse.map(|m| m.index),
            hessian_eigenvalues: morse.map(|m| m.hessian_eigenvalues.clone()).unwrap_or_default(),
            certificate_c: self.certificate.clone(),
            projected_gradient_norm: self.projected_gradient_norm,
        }
    }
}
