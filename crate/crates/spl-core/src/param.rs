//! Parameter-dependent partitions: rank-1 boundary-edge perturbations, the
//! decoupled block operator, component ground states, the partition energy,
//! the component-eigenvalue map with its analytic Jacobian, and Newton solves
//! on the equipartition manifold.
//!
//! For a boundary edge (i, j) with i < j, the parameter alpha adds the
//! potential w*alpha at vertex i and w/alpha at vertex j while cancelling the
//! off-diagonal coupling, so the perturbed operator is block diagonal over
//! the partition components. The equipartition set (all component ground
//! energies equal, alpha > 0) is a smooth manifold of dimension
//! |boundary| - (nu - 1) wherever the eigenvalue map is transversal to the
//! diagonal.

use nalgebra::{DMatrix, DVector, Matrix2};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Partition;
use crate::signed::{partition_laplacian, SymOperator};
use crate::spectral::{eigendecompose, SpectralError};
use crate::Tolerances;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("alpha vector length {0} does not match boundary size {1}")]
    LengthMismatch(usize, usize),
    #[error("alpha entries must be strictly positive for this operation")]
    NonPositiveAlpha,
    #[error("eigensolver failure: {0}")]
    Eigensolver(#[from] SpectralError),
    #[error("component {0} ground state is degenerate")]
    DegenerateBlock(usize),
    #[error("eigenvector has zero entries (degenerate)")]
    DegenerateEigenvector,
    #[error("eigenvector nodal partition does not match the given partition")]
    WrongNodalPartition,
    #[error("Newton iteration left the positive orthant")]
    LeftPositiveOrthant,
    #[error("no convergence after {0} Newton iterations (residual {1:.3e})")]
    NoConvergence(usize, f64),
}

/// A boundary-parameter vector, one entry per boundary edge in the
/// partition's canonical (ascending edge index) order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoint {
    alpha: DVector<f64>,
}

impl ParamPoint {
    pub fn new(partition: &Partition, alpha: Vec<f64>) -> Result<Self, ParamError> {
        if alpha.len() != partition.boundary_len() {
            return Err(ParamError::LengthMismatch(alpha.len(), partition.boundary_len()));
        }
        if alpha.iter().any(|&a| a == 0.0 || !a.is_finite()) {
            return Err(ParamError::ZeroAlpha);
        }
        Ok(ParamPoint { alpha: DVector::from_vec(alpha) })
    }

    pub fn uniform(partition: &Partition, a: f64) -> Result<Self, ParamError> {
        Self::new(partition, vec![a; partition.boundary_len()])
    }

    pub(crate) fn from_vector(alpha: DVector<f64>) -> Self {
        ParamPoint { alpha }
    }

    pub fn alpha(&self) -> &DVector<f64> {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.len() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.alpha.iter().all(|&a| a > 0.0)
    }

    /// Keyed map "i-j" -> alpha for serialization.
    pub fn to_keyed(&self, partition: &Partition) -> std::collections::BTreeMap<String, f64> {
        partition
            .boundary()
            .iter()
            .zip(self.alpha.iter())
            .map(|(&idx, &a)| {
                let e = partition.graph().edge(idx);
                (format!("{}-{}", e.i, e.j), a)
            })
            .collect()
    }
}

/// The 2x2 block [[alpha, -1], [-1, 1/alpha]]: rank 1, PSD for alpha > 0 and
/// NSD for alpha < 0.
pub fn edge_perturbation(alpha: f64) -> Result<Matrix2<f64>, ParamError> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(ParamError::ZeroAlpha);
    }
    Ok(Matrix2::new(alpha, -1.0, -1.0, 1.0 / alpha))
}

/// Adds w * B(alpha) for one edge (by graph edge index) to a matrix in place.
pub(crate) fn add_edge_perturbation(
    m: &mut DMatrix<f64>,
    partition: &Partition,
    edge_index: usize,
    alpha: f64,
) {
    let e = partition.graph().edge(edge_index);
    m[(e.i, e.i)] += e.weight * alpha;
    m[(e.j, e.j)] += e.weight / alpha;
    m[(e.i, e.j)] -= e.weight;
    m[(e.j, e.i)] -= e.weight;
}

/// The block-diagonal operator: partition Laplacian plus w_ij * B(alpha_ij)
/// summed over the boundary. Entries across the boundary cancel exactly.
pub fn perturbed_operator(partition: &Partition, point: &ParamPoint) -> SymOperator {
    assert_eq!(point.len(), partition.boundary_len());
    let mut m = partition_laplacian(partition).matrix().clone();
    for (t, &edge_index) in partition.boundary().iter().enumerate() {
        add_edge_perturbation(&mut m, partition, edge_index, point.alpha[t]);
    }
    SymOperator::new(m)
}

/// Ground state of one component block, extended by zero to the whole graph.
#[derive(Debug, Clone)]
pub struct ComponentGroundState {
    pub component: usize,
    /// First eigenvalue of the block.
    pub value: f64,
    /// Positive normalized eigenvector on the component, zero elsewhere.
    pub vector: DVector<f64>,
    /// Gap to the second block eigenvalue (infinite for 1x1 blocks).
    pub block_gap: f64,
    /// Spectral norm of the block.
    pub block_norm: f64,
}

/// Extracts the submatrix of `op` on the component's vertices (ascending).
pub(crate) fn component_block(op: &SymOperator, vertices: &[usize]) -> DMatrix<f64> {
    let k = vertices.len();
    let mut b = DMatrix::zeros(k, k);
    for (r, &i) in vertices.iter().enumerate() {
        for (c, &j) in vertices.iter().enumerate() {
            b[(r, c)] = op.matrix()[(i, j)];
        }
    }
    b
}

/// Per-component first eigenpairs of the perturbed operator, sign-fixed
/// positive and normalized over the component.
pub fn ground_states(
    partition: &Partition,
    point: &ParamPoint,
) -> Result<Vec<ComponentGroundState>, ParamError> {
    if !point.is_positive() {
        return Err(ParamError::NonPositiveAlpha);
    }
    let op = perturbed_operator(partition, point);
    let n = partition.graph().vertex_count();
    let mut out = Vec::with_capacity(partition.nu());
    for (k, comp) in partition.components().iter().enumerate() {
        let block = component_block(&op, &comp.vertices);
        let report = eigendecompose(&SymOperator::new(block))?;
        let value = report.eigenvalue(0);
        let local = report.eigenvector(0);
        let mut vector = DVector::zeros(n);
        // Perron: the block ground state has one sign; fix it positive.
        let flip = if local.sum() < 0.0 { -1.0 } else { 1.0 };
        for (r, &v) in comp.vertices.iter().enumerate() {
            vector[v] = flip * local[r];
        }
        out.push(ComponentGroundState {
            component: k,
            value,
            vector,
            block_gap: report.simplicity_gap(0),
            block_norm: report.operator_norm(),
        });
    }
    Ok(out)
}

/// The component-eigenvalue map: lambda_1 of each block, in component order.
pub fn phi(partition: &Partition, point: &ParamPoint) -> Result<DVector<f64>, ParamError> {
    Ok(DVector::from_iterator(
        partition.nu(),
        ground_states(partition, point)?.iter().map(|g| g.value),
    ))
}

/// The partition energy: the maximum component ground energy.
pub fn energy(partition: &Partition, point: &ParamPoint) -> Result<f64, ParamError> {
    Ok(phi(partition, point)?.max())
}

fn spread_and_max(values: &DVector<f64>) -> (f64, f64) {
    (values.max() - values.min(), values.max())
}

/// True iff max - min of the component energies is within eq_tol relative to
/// max(1, energy).
pub fn is_equipartition(
    partition: &Partition,
    point: &ParamPoint,
    tol: &Tolerances,
) -> Result<bool, ParamError> {
    let v = phi(partition, point)?;
    let (spread, max) = spread_and_max(&v);
    Ok(spread <= tol.eq_tol * max.abs().max(1.0))
}

/// Analytic Jacobian of the component-eigenvalue map: nu x |boundary|.
///
/// Column (i, j): w_ij |f_i|^2 in row s(i), -w_ij |f_j|^2 / alpha^2 in row
/// s(j), zero elsewhere. Requires every block ground state simple.
pub fn phi_jacobian(
    partition: &Partition,
    point: &ParamPoint,
    tol: &Tolerances,
) -> Result<DMatrix<f64>, ParamError> {
    let states = ground_states(partition, point)?;
    phi_jacobian_from_states(partition, point, &states, tol)
}

pub fn phi_jacobian_from_states(
    partition: &Partition,
    point: &ParamPoint,
    states: &[ComponentGroundState],
    tol: &Tolerances,
) -> Result<DMatrix<f64>, ParamError> {
    for g in states {
        if g.block_gap <= tol.gap_factor * g.block_norm.max(1.0) {
            return Err(ParamError::DegenerateBlock(g.component));
        }
    }
    let nu = partition.nu();
    let m = partition.boundary_len();
    let mut jac = DMatrix::zeros(nu, m);
    for (t, &edge_index) in partition.boundary().iter().enumerate() {
        let e = partition.graph().edge(edge_index);
        let a = point.alpha[t];
        let si = partition.component_of(e.i);
        let sj = partition.component_of(e.j);
        let fi = states[si].vector[e.i];
        let fj = states[sj].vector[e.j];
        jac[(si, t)] = e.weight * fi * fi;
        jac[(sj, t)] = -e.weight * fj * fj / (a * a);
    }
    Ok(jac)
}

/// Reads the boundary parameters off an eigenvector whose nodal partition is
/// exactly the given partition: alpha_ij = psi_j / psi_i, all positive.
pub fn alpha_from_eigenvector(
    partition: &Partition,
    psi: &DVector<f64>,
    tol: &Tolerances,
) -> Result<ParamPoint, ParamError> {
    let graph = partition.graph();
    assert_eq!(psi.len(), graph.vertex_count());
    let max = psi.amax();
    if max == 0.0 || psi.iter().any(|&x| x.abs() <= tol.zero_tol * max) {
        return Err(ParamError::DegenerateEigenvector);
    }
    // Under the boundary signature the nodal set must equal the boundary:
    // psi_i psi_j > 0 across boundary edges and across internal edges alike.
    let boundary: std::collections::HashSet<usize> =
        partition.boundary().iter().copied().collect();
    for idx in 0..graph.edge_count() {
        let e = graph.edge(idx);
        let is_boundary = boundary.contains(&idx);
        let sign = if is_boundary { -1.0 } else { 1.0 };
        let in_nodal = psi[e.i] * sign * psi[e.j] < 0.0;
        if in_nodal != is_boundary {
            return Err(ParamError::WrongNodalPartition);
        }
    }
    let alpha: Vec<f64> = partition
        .boundary()
        .iter()
        .map(|&idx| {
            let e = graph.edge(idx);
            psi[e.j] / psi[e.i]
        })
        .collect();
    ParamPoint::new(partition, alpha)
}

/// Thin SVD with singular triples sorted descending.
struct SvdParts {
    singular: Vec<f64>,
    /// Left singular vectors as columns, nrows x k.
    u: DMatrix<f64>,
    /// Right singular vectors as columns, ncols x k.
    v: DMatrix<f64>,
}

fn svd_parts(a: &DMatrix<f64>) -> SvdParts {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let mut singular = Vec::with_capacity(k);
    let mut u_sorted = DMatrix::zeros(u.nrows(), k);
    let mut v_sorted = DMatrix::zeros(v_t.ncols(), k);
    for (c, &idx) in order.iter().enumerate() {
        singular.push(svd.singular_values[idx]);
        u_sorted.set_column(c, &u.column(idx));
        v_sorted.set_column(c, &v_t.row(idx).transpose());
    }
    SvdParts { singular, u: u_sorted, v: v_sorted }
}

fn numerical_rank(singular: &[f64], rank_tol: f64) -> usize {
    let smax = singular.first().copied().unwrap_or(0.0);
    if smax <= 0.0 {
        return 0;
    }
    singular.iter().filter(|&&s| s > rank_tol * smax).count()
}

/// Deterministic pivoted Gram-Schmidt completion: orthonormal columns
/// spanning the complement of `basis` in R^dim.
fn orthonormal_complement(basis: &DMatrix<f64>, dim: usize, want: usize) -> DMatrix<f64> {
    let mut accepted: Vec<DVector<f64>> = Vec::with_capacity(want);
    let mut out = DMatrix::zeros(dim, want);
    for _ in 0..want {
        // Project every standard basis vector and pick the largest residual.
        let mut best: Option<(f64, DVector<f64>)> = None;
        for c in 0..dim {
            let mut v = DVector::zeros(dim);
            v[c] = 1.0;
            for k in 0..basis.ncols() {
                let b = basis.column(k);
                let dot = b.dot(&v);
                v -= b.into_owned() * dot;
            }
            for a in &accepted {
                let dot = a.dot(&v);
                v -= a * dot;
            }
            let norm = v.norm();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, v));
            }
        }
        let (norm, v) = best.expect("dim > 0");
        assert!(norm > 1e-12, "complement dimension exhausted");
        let v = v / norm;
        out.set_column(accepted.len(), &v);
        accepted.push(v);
    }
    out
}

/// Minimum-norm least-squares solve.
fn pseudo_solve(a: &DMatrix<f64>, b: &DVector<f64>, rank_tol: f64) -> DVector<f64> {
    let parts = svd_parts(a);
    let rank = numerical_rank(&parts.singular, rank_tol);
    let mut x = DVector::zeros(a.ncols());
    for k in 0..rank {
        let coeff = parts.u.column(k).dot(b) / parts.singular[k];
        x += parts.v.column(k) * coeff;
    }
    x
}

/// Subtracts the column mean from every row: the centered Jacobian whose
/// kernel is the tangent space of the equipartition set.
fn center_rows(jac: &DMatrix<f64>) -> DMatrix<f64> {
    let nu = jac.nrows();
    let mut out = jac.clone();
    for c in 0..jac.ncols() {
        let mean: f64 = (0..nu).map(|r| jac[(r, c)]).sum::<f64>() / nu as f64;
        for r in 0..nu {
            out[(r, c)] -= mean;
        }
    }
    out
}

/// Damped Newton iteration on the centered residual Phi - mean(Phi),
/// optionally restricted to the affine subspace start + span(basis).
/// Step halving preserves the positive orthant.
pub(crate) fn newton_equipartition(
    partition: &Partition,
    start: &ParamPoint,
    basis: Option<&DMatrix<f64>>,
    tol: &Tolerances,
) -> Result<ParamPoint, ParamError> {
    if !start.is_positive() {
        return Err(ParamError::NonPositiveAlpha);
    }
    let nu = partition.nu();
    let mut alpha = start.alpha.clone();
    let mut last_residual = f64::INFINITY;

    for iter in 0..tol.newton_max_iter {
        let point = ParamPoint { alpha: alpha.clone() };
        let states = ground_states(partition, &point)?;
        let values = DVector::from_iterator(nu, states.iter().map(|g| g.value));
        let (spread, vmax) = spread_and_max(&values);
        if spread <= tol.eq_tol * vmax.abs().max(1.0) {
            return Ok(point);
        }
        let mean = values.mean();
        let residual = values.add_scalar(-mean);
        let rnorm = residual.norm();

        let jac = phi_jacobian_from_states(partition, &point, &states, tol)?;
        let jac_q = center_rows(&jac);
        let effective = match basis {
            Some(b) => &jac_q * b,
            None => jac_q,
        };
        let step_sub = pseudo_solve(&effective, &(-&residual), tol.rank_tol);
        let step = match basis {
            Some(b) => b * step_sub,
            None => step_sub,
        };

        let mut t = 1.0;
        loop {
            let cand = &alpha + &step * t;
            if cand.iter().all(|&a| a > 0.0) {
                break;
            }
            t *= 0.5;
            if t < 1e-14 {
                return Err(ParamError::LeftPositiveOrthant);
            }
        }
        // Backtrack until the residual decreases.
        let mut accepted = false;
        while t >= 1e-12 {
            let cand = &alpha + &step * t;
            let cand_point = ParamPoint { alpha: cand.clone() };
            let cand_values = phi(partition, &cand_point)?;
            let cand_res = cand_values.add_scalar(-cand_values.mean()).norm();
            if cand_res < rnorm * (1.0 - 0.25 * t) {
                alpha = cand;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(ParamError::NoConvergence(iter, rnorm));
        }
        if alpha.amax() > 1e9 {
            return Err(ParamError::NoConvergence(iter, rnorm));
        }
        last_residual = rnorm;
    }
    Err(ParamError::NoConvergence(tol.newton_max_iter, last_residual))
}

/// Solves for a point on the equipartition set near `start`, staying in the
/// positive orthant.
pub fn solve_equipartition(
    partition: &Partition,
    start: &ParamPoint,
    tol: &Tolerances,
) -> Result<ParamPoint, ParamError> {
    newton_equipartition(partition, start, None, tol)
}

/// Local chart of the equipartition manifold at a point on it.
#[derive(Debug, Clone)]
pub struct ManifoldChart {
    /// Orthonormal tangent basis: kernel of the centered Jacobian.
    pub tangent: DMatrix<f64>,
    /// Orthonormal complement of the tangent space.
    pub normal: DMatrix<f64>,
    /// The analytic Jacobian of the eigenvalue map at the point.
    pub jacobian: DMatrix<f64>,
}

/// Splits R^{|boundary|} into the kernel of the centered Jacobian (tangent
/// directions of the equipartition set) and its orthogonal complement.
pub fn manifold_chart(
    partition: &Partition,
    point: &ParamPoint,
    tol: &Tolerances,
) -> Result<ManifoldChart, ParamError> {
    let m = partition.boundary_len();
    let jac = phi_jacobian(partition, point, tol)?;
    let jac_q = center_rows(&jac);
    // Row space of the centered Jacobian spans the normal directions; its
    // orthogonal complement is the tangent space.
    let parts = svd_parts(&jac_q);
    let rank = numerical_rank(&parts.singular, tol.rank_tol);
    let normal = parts.v.columns(0, rank).into_owned();
    let tangent = orthonormal_complement(&normal, m, m - rank);
    Ok(ManifoldChart { tangent, normal, jacobian: jac })
}

/// Chart of the equipartition manifold in logarithmic coordinates
/// x = ln(alpha). The Jacobian column for a boundary edge picks up the
/// factor alpha_t; tangent and normal bases live in log space. Morse data
/// computed here has the same signature as in linear coordinates
/// (diffeomorphism invariance) but stays well-scaled for extreme alpha.
pub fn log_chart(
    partition: &Partition,
    point: &ParamPoint,
    tol: &Tolerances,
) -> Result<ManifoldChart, ParamError> {
    let m = partition.boundary_len();
    let jac = phi_jacobian(partition, point, tol)?;
    let mut jac_log = jac.clone();
    for c in 0..m {
        for r in 0..partition.nu() {
            jac_log[(r, c)] *= point.alpha[c];
        }
    }
    let jac_q = center_rows(&jac_log);
    let parts = svd_parts(&jac_q);
    let rank = numerical_rank(&parts.singular, tol.rank_tol);
    let normal = parts.v.columns(0, rank).into_owned();
    let tangent = orthonormal_complement(&normal, m, m - rank);
    Ok(ManifoldChart { tangent, normal, jacobian: jac_log })
}

/// Newton iteration on the centered residual in log coordinates, restricted
/// to the affine subspace start_log + span(basis). Positivity is automatic.
pub(crate) fn newton_equipartition_log(
    partition: &Partition,
    start_log: &DVector<f64>,
    basis: Option<&DMatrix<f64>>,
    eq_tol: f64,
    tol: &Tolerances,
) -> Result<ParamPoint, ParamError> {
    let nu = partition.nu();
    let mut x = start_log.clone();
    let mut last_residual = f64::INFINITY;
    for iter in 0..tol.newton_max_iter {
        if x.amax() > 25.0 {
            return Err(ParamError::NoConvergence(iter, last_residual));
        }
        let point = ParamPoint { alpha: x.map(f64::exp) };
        let states = ground_states(partition, &point)?;
        let values = DVector::from_iterator(nu, states.iter().map(|g| g.value));
        let (spread, vmax) = spread_and_max(&values);
        if spread <= eq_tol * vmax.abs().max(1.0) {
            return Ok(point);
        }
        let mean = values.mean();
        let residual = values.add_scalar(-mean);
        let rnorm = residual.norm();

        let jac = phi_jacobian_from_states(partition, &point, &states, tol)?;
        let mut jac_log = jac;
        for c in 0..jac_log.ncols() {
            for r in 0..nu {
                jac_log[(r, c)] *= point.alpha[c];
            }
        }
        let jac_q = center_rows(&jac_log);
        let effective = match basis {
            Some(b) => &jac_q * b,
            None => jac_q,
        };
        let step_sub = pseudo_solve(&effective, &(-&residual), tol.rank_tol);
        let step = match basis {
            Some(b) => b * step_sub,
            None => step_sub,
        };
        let mut t = 1.0;
        let mut accepted = false;
        while t >= 1e-12 {
            let cand = &x + &step * t;
            let cand_point = ParamPoint { alpha: cand.map(f64::exp) };
            let cand_values = phi(partition, &cand_point)?;
            let cand_res = cand_values.add_scalar(-cand_values.mean()).norm();
            if cand_res < rnorm * (1.0 - 0.25 * t) {
                x = cand;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(ParamError::NoConvergence(iter, rnorm));
        }
        last_residual = rnorm;
    }
    Err(ParamError::NoConvergence(tol.newton_max_iter, last_residual))
}

/// Gradient of the energy along the manifold: the tangential projection of
/// (1/nu) J^T 1.
pub fn projected_gradient(chart: &ManifoldChart, partition: &Partition) -> DVector<f64> {
    let nu = partition.nu() as f64;
    let ones = DVector::from_element(partition.nu(), 1.0 / nu);
    let ambient = chart.jacobian.transpose() * ones;
    &chart.tangent * (chart.tangent.transpose() * ambient)
}

/// Transversality of the eigenvalue map to the diagonal: the span of the
/// all-ones direction plus the Jacobian's range must be all of R^nu.
/// Checked as a rank condition on [1 | J] with the given threshold.
pub fn transversality_holds(
    partition: &Partition,
    point: &ParamPoint,
    tol: &Tolerances,
) -> Result<bool, ParamError> {
    let nu = partition.nu();
    let jac = phi_jacobian(partition, point, tol)?;
    let mut aug = DMatrix::zeros(nu, 1 + partition.boundary_len());
    for r in 0..nu {
        aug[(r, 0)] = 1.0;
        for c in 0..partition.boundary_len() {
            aug[(r, c + 1)] = jac[(r, c)];
        }
    }
    let parts = svd_parts(&aug);
    Ok(numerical_rank(&parts.singular, tol.rank_tol) == nu)
}

/// Kernel of the transposed Jacobian (at most one-dimensional on connected
/// partition multigraphs); returns a spanning vector when nontrivial.
pub fn jacobian_cokernel(
    partition: &Partition,
    point: &ParamPoint,
    tol: &Tolerances,
) -> Result<Option<DVector<f64>>, ParamError> {
    let nu = partition.nu();
    let jac = phi_jacobian(partition, point, tol)?;
    let parts = svd_parts(&jac);
    let rank = numerical_rank(&parts.singular, tol.rank_tol);
    match nu - rank {
        0 => Ok(None),
        1 => {
            // Either a small-sigma left vector, or (when the Jacobian has
            // fewer columns than nu) the completion of the left basis.
            if rank < parts.singular.len() {
                Ok(Some(parts.u.column(rank).into_owned()))
            } else {
                let complement = orthonormal_complement(&parts.u.columns(0, rank).into_owned(), nu, 1);
                Ok(Some(complement.column(0).into_owned()))
            }
        }
        n => panic!("cokernel dimension {n} exceeds 1 on a connected multigraph"),
    }
}

/// JSON form of a boundary-parameter vector keyed by canonical edge names.
#[derive(Debug, Clone, Serialize)]
pub struct ParamPointJson {
    pub alpha: std::collections::BTreeMap<String, f64>,
}

impl ParamPoint {
    pub fn to_json(&self, partition: &Partition) -> ParamPointJson {
        ParamPointJson { alpha: self.to_keyed(partition) }
    }
}
