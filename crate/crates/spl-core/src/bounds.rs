//! Energy lower bounds via switching equivalence, class membership of
//! partitions, global-minimality checks, and the GF(2) cycle/cut-space
//! decomposition that identifies switching equivalence with homology.

use std::collections::BTreeSet;

use nalgebra::DVector;
use serde::Serialize;
use thiserror::Error;

use crate::critical::critical_points_from_spectrum;
use crate::graph::{Partition, WeightedGraph};
use crate::instances::SplitMix64;
use crate::param::{
    self, manifold_chart, newton_equipartition, solve_equipartition, ParamError, ParamPoint,
};
use crate::signed::{signed_laplacian, Signature};
use crate::spectral::{eigendecompose, nodal_report, SpectralError};
use crate::Tolerances;

/// Default cap on |boundary| for exhaustive subset sweeps.
pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("boundary size {0} exceeds subset cap {1}")]
    CapExceeded(usize, usize),
    #[error("partition is not in the switching class of the given signature")]
    NotInClass,
    #[error("eigensolver failure: {0}")]
    Eigensolver(#[from] SpectralError),
    #[error("parameter-space failure: {0}")]
    Param(#[from] ParamError),
}

/// Edge-indexed GF(2) vector packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Vec {
    words: Vec<u64>,
    len: usize,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i);
        }
        v
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the overlap: the bilinear form t(x, y).
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

/// Cycle-space and cut-space bases of the edge space C_1(G, Z_2).
///
/// The cycle basis consists of the fundamental cycles of a BFS spanning
/// tree; the cut basis of the fundamental cuts. The two spaces are mutually
/// orthogonal complements, so membership in the cut space is equivalent to
/// orthogonality against every basis cycle.
#[derive(Debug, Clone)]
pub struct ChainSpace {
    edge_count: usize,
    cycle_basis: Vec<Gf2Vec>,
    cut_basis: Vec<Gf2Vec>,
}

impl ChainSpace {
    pub fn new(graph: &WeightedGraph) -> Self {
        let n = graph.vertex_count();
        let m = graph.edge_count();

        // BFS spanning tree from vertex 0 in deterministic neighbor order.
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(u, idx) in graph.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    parent_edge[u] = Some(idx);
                    queue.push_back(u);
                }
            }
        }
        let tree: BTreeSet<usize> = parent_edge.iter().flatten().copied().collect();

        // Tree path between two vertices as an edge set.
        let mut depth = vec![0usize; n];
        for &v in &order {
            if v != 0 {
                depth[v] = depth[parent[v]] + 1;
            }
        }
        let tree_path = |mut a: usize, mut b: usize| -> Vec<usize> {
            let mut path = Vec::new();
            while depth[a] > depth[b] {
                path.push(parent_edge[a].unwrap());
                a = parent[a];
            }
            while depth[b] > depth[a] {
                path.push(parent_edge[b].unwrap());
                b = parent[b];
            }
            while a != b {
                path.push(parent_edge[a].unwrap());
                path.push(parent_edge[b].unwrap());
                a = parent[a];
                b = parent[b];
            }
            path
        };

        let mut cycle_basis = Vec::new();
        for idx in 0..m {
            if tree.contains(&idx) {
                continue;
            }
            let e = graph.edge(idx);
            let mut cycle = Gf2Vec::from_indices(m, tree_path(e.i, e.j));
            cycle.set(idx);
            cycle_basis.push(cycle);
        }

        // Fundamental cut of a tree edge: edges crossing the split the tree
        // edge induces.
        let mut cut_basis = Vec::new();
        for &tree_idx in &tree {
            let e = graph.edge(tree_idx);
            // The child side of the tree edge.
            let child = if parent_edge[e.i] == Some(tree_idx) { e.i } else { e.j };
            let mut side = vec![false; n];
            side[child] = true;
            for &v in &order {
                if v != child && parent_edge[v].is_some() && side[parent[v]] {
                    side[v] = true;
                }
            }
            let cut = Gf2Vec::from_indices(
                m,
                (0..m).filter(|&idx| {
                    let e = graph.edge(idx);
                    side[e.i] != side[e.j]
                }),
            );
            cut_basis.push(cut);
        }

        ChainSpace { edge_count: m, cycle_basis, cut_basis }
    }

    pub fn cycle_rank(&self) -> usize {
        self.cycle_basis.len()
    }

    pub fn cut_rank(&self) -> usize {
        self.cut_basis.len()
    }

    pub fn cycle_basis(&self) -> &[Gf2Vec] {
        &self.cycle_basis
    }

    pub fn cut_basis(&self) -> &[Gf2Vec] {
        &self.cut_basis
    }

    /// Membership in the cut space: orthogonal to every fundamental cycle.
    pub fn in_cut_space(&self, x: &Gf2Vec) -> bool {
        self.cycle_basis.iter().all(|c| !x.dot(c))
    }

    fn edge_set(&self, edges: &BTreeSet<usize>) -> Gf2Vec {
        Gf2Vec::from_indices(self.edge_count, edges.iter().copied())
    }
}

/// Two negative-edge sets are homologous iff their symmetric difference lies
/// in the cut space; equivalent to switching equivalence of the signatures.
pub fn homologous(space: &ChainSpace, gamma1: &BTreeSet<usize>, gamma2: &BTreeSet<usize>) -> bool {
    let mut d = space.edge_set(gamma1);
    d.xor_assign(&space.edge_set(gamma2));
    space.in_cut_space(&d)
}

/// Searches for a witness subset of the boundary whose signature is
/// switching equivalent to the given one, via a GF(2) linear solve: find
/// x supported on the boundary with t(x, c) = t(gamma, c) for every
/// fundamental cycle c.
pub fn partition_class_membership(
    partition: &Partition,
    gamma: &BTreeSet<usize>,
    cap: usize,
) -> Result<Option<BTreeSet<usize>>, BoundsError> {
    let b = partition.boundary_len();
    if b > cap {
        return Err(BoundsError::CapExceeded(b, cap));
    }
    let space = ChainSpace::new(partition.graph());
    let gamma_vec = space.edge_set(gamma);
    let boundary = partition.boundary();

    // Rows: one per fundamental cycle; columns: boundary edges; augmented
    // with the target parity.
    let rows: Vec<(Gf2Vec, bool)> = space
        .cycle_basis
        .iter()
        .map(|c| {
            let coeffs = Gf2Vec::from_indices(
                b,
                boundary.iter().enumerate().filter(|(_, &e)| c.get(e)).map(|(t, _)| t),
            );
            (coeffs, gamma_vec.dot(c))
        })
        .collect();

    // Gaussian elimination over GF(2).
    let mut rows = rows;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; b];
    let mut r = 0;
    for (col, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i].0.get(col)) else { continue };
        rows.swap(r, pr);
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0.get(col) {
                row.0.xor_assign(&pivot_row);
                row.1 ^= pivot_rhs;
            }
        }
        *pivot_slot = Some(r);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // Inconsistent system: a zero row with nonzero right-hand side.
    for (row, rhs) in &rows {
        if row.is_zero() && *rhs {
            return Ok(None);
        }
    }
    // Particular solution: free variables zero, pivot variables take their
    // right-hand side.
    let mut witness = BTreeSet::new();
    for col in 0..b {
        if let Some(pr) = pivot_of_col[col] {
            if rows[pr].1 {
                witness.insert(boundary[col]);
            }
        }
    }
    Ok(Some(witness))
}

/// Brute-force oracle for membership: sweep all subsets of the boundary.
/// Test-support code; exponential in |boundary|.
pub fn membership_by_enumeration(
    partition: &Partition,
    gamma: &BTreeSet<usize>,
) -> Option<BTreeSet<usize>> {
    let space = ChainSpace::new(partition.graph());
    let boundary = partition.boundary();
    let b = boundary.len();
    for mask in 0u64..(1u64 << b) {
        let subset: BTreeSet<usize> = boundary
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> t & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if homologous(&space, gamma, &subset) {
            return Some(subset);
        }
    }
    None
}

/// Descends the energy along the equipartition manifold from an on-manifold
/// point: projected-gradient steps with backtracking, re-projecting onto the
/// manifold after each step. Returns the best point found.
fn descend_on_manifold(
    partition: &Partition,
    start: &ParamPoint,
    tol: &Tolerances,
) -> Result<(ParamPoint, f64), BoundsError> {
    let mut point = start.clone();
    let mut value = param::phi(partition, &point)?.mean();
    for _ in 0..40 {
        let chart = match manifold_chart(partition, &point, tol) {
            Ok(c) => c,
            Err(_) => break,
        };
        if chart.tangent.ncols() == 0 {
            break;
        }
        let grad = param::projected_gradient(&chart, partition);
        let gnorm = grad.norm();
        if gnorm <= 1e-9 * value.abs().max(1.0) {
            break;
        }
        let mut step = 0.5 * (1.0 + point.alpha().amax()) / (1.0 + gnorm);
        let mut improved = false;
        while step * gnorm > 1e-12 {
            let offset = point.alpha() - &grad * step;
            if offset.iter().all(|&a| a > 0.0) {
                let trial = ParamPoint::from_vector(offset);
                if let Ok(projected) =
                    newton_equipartition(partition, &trial, Some(&chart.normal), tol)
                {
                    let v = param::phi(partition, &projected)?.mean();
                    if v < value - 1e-14 {
                        point = projected;
                        value = v;
                        improved = true;
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Ok((point, value))
}

/// Best-found value of the energy over positive parameters: multistart
/// smoothed descent plus equipartition polishing, seeded deterministically.
/// The returned value is an upper estimate of the infimum. When `target` is
/// given, the search stops as soon as the estimate reaches it (any further
/// descent could only confirm a bound that is already tight).
pub fn minimize_energy(
    partition: &Partition,
    starts: usize,
    seed: u64,
    target: Option<f64>,
    tol: &Tolerances,
) -> Result<f64, BoundsError> {
    if partition.boundary_len() == 0 {
        return Ok(param::energy(partition, &ParamPoint::uniform(partition, 1.0)?)?);
    }
    let mut rng = SplitMix64::new(seed);
    let mut best = f64::INFINITY;
    let reached = |b: f64| target.is_some_and(|t| b <= t);

    // Exact candidates first: critical equipartitions from the spectrum.
    if let Ok(cps) = critical_points_from_spectrum(partition, tol) {
        for cp in cps {
            best = best.min(cp.energy);
        }
    }

    for _ in 0..starts.max(1) {
        if reached(best) {
            break;
        }
        let alpha: Vec<f64> = (0..partition.boundary_len())
            .map(|_| {
                // Log-uniform in [0.25, 4].
                let u = rng.uniform(-1.0, 1.0);
                4.0f64.powf(u)
            })
            .collect();
        let start = ParamPoint::new(partition, alpha)?;
        best = best.min(smoothed_descent(partition, &start, tol)?);
        if reached(best) {
            break;
        }
        if let Ok(on_manifold) = solve_equipartition(partition, &start, tol) {
            let (_, v) = descend_on_manifold(partition, &on_manifold, tol)?;
            best = best.min(v);
        }
    }
    Ok(best)
}

/// Gradient descent on log(alpha) of a softmax smoothing of the maximum
/// component energy, sharpening the smoothing in stages. Tracks the best
/// true maximum seen at any iterate, which upper-bounds the infimum.
fn smoothed_descent(
    partition: &Partition,
    start: &ParamPoint,
    tol: &Tolerances,
) -> Result<f64, BoundsError> {
    let m = partition.boundary_len();
    let mut x: DVector<f64> = start.alpha().map(|a| a.ln());
    let mut best = f64::INFINITY;
    let point_of = |x: &DVector<f64>| ParamPoint::from_vector(x.map(f64::exp));

    for &beta in &[10.0, 100.0, 1000.0] {
        for _ in 0..30 {
            let point = point_of(&x);
            let states = param::ground_states(partition, &point)?;
            let values = DVector::from_iterator(partition.nu(), states.iter().map(|g| g.value));
            let vmax = values.max();
            best = best.min(vmax);
            // Softmax weights relative to the maximum.
            let weights = values.map(|v| (beta * (v - vmax)).exp());
            let wsum = weights.sum();
            let jac = match param::phi_jacobian_from_states(partition, &point, &states, tol) {
                Ok(j) => j,
                Err(_) => return Ok(best),
            };
            // d(smoothed)/dx_t = sum_k w_k/wsum * dlambda_k/dalpha_t * alpha_t.
            let mut grad = DVector::zeros(m);
            for t in 0..m {
                let mut g = 0.0;
                for k in 0..partition.nu() {
                    g += weights[k] / wsum * jac[(k, t)];
                }
                grad[t] = g * point.alpha()[t];
            }
            let gnorm = grad.norm();
            if gnorm <= 1e-10 * vmax.abs().max(1.0) {
                break;
            }
            let mut step = 0.5 / (1.0 + gnorm);
            let f0 = softmax_value(&values, beta);
            let mut moved = false;
            while step > 1e-12 {
                let xc = &x - &grad * step;
                if xc.amax() > 25.0 {
                    step *= 0.5;
                    continue;
                }
                let vc = param::phi(partition, &point_of(&xc))?;
                best = best.min(vc.max());
                if softmax_value(&vc, beta) < f0 {
                    x = xc;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
    }
    Ok(best)
}

fn softmax_value(values: &DVector<f64>, beta: f64) -> f64 {
    let vmax = values.max();
    vmax + values.map(|v| (beta * (v - vmax)).exp()).sum().ln() / beta
}

/// Report for one lower-bound check.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    /// Negative edges as (i, j) pairs.
    pub gamma: Vec<(usize, usize)>,
    pub lambda_nu: f64,
    pub inf_energy_estimate: f64,
    pub slack: f64,
    pub equality_case: bool,
    /// Nodal partition of the nu-th eigenvector matches the partition
    /// (only meaningful when the eigenvector is non-degenerate).
    pub nodal_partition_matches: Option<bool>,
    pub witness_subset: Vec<(usize, usize)>,
}

/// Checks lambda_nu(Gamma) <= inf over positive alpha of the partition
/// energy, for a partition in the switching class of Gamma. When the bound
/// is (numerically) tight, verifies the equality characterization: the
/// partition must be the nodal partition of a lambda_nu eigenvector.
pub fn lower_bound_check(
    partition: &Partition,
    gamma: &BTreeSet<usize>,
    starts: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<BoundReport, BoundsError> {
    let graph = partition.graph();
    let witness = partition_class_membership(partition, gamma, DEFAULT_SUBSET_CAP)?
        .ok_or(BoundsError::NotInClass)?;

    let nu = partition.nu();
    let sig = Signature::from_edge_indices(graph, gamma.iter().copied());
    let report = eigendecompose(&signed_laplacian(graph, &sig))?;
    let lambda_nu = report.eigenvalue(nu - 1);

    // The theorem forbids estimates below lambda_nu; reaching it means the
    // bound is tight and the search can stop.
    let target = lambda_nu + 0.5e-8 * lambda_nu.abs().max(1.0);
    let inf_estimate = minimize_energy(partition, starts, seed, Some(target), tol)?;
    let slack = inf_estimate - lambda_nu;
    let equality = slack.abs() <= 1e-8 * lambda_nu.abs().max(1.0);

    // The partition is the nodal partition of the nu-th eigenvector iff the
    // nodal set coincides with the boundary exactly.
    let nodal_matches = if crate::spectral::is_nondegenerate(&report, nu - 1, tol) {
        let nodal = nodal_report(graph, &sig, &report.eigenvector(nu - 1), Some(nu), tol)?;
        Some(nodal.nodal_edges == partition.boundary())
    } else {
        None
    };

    let pair = |idx: &usize| {
        let e = graph.edge(*idx);
        (e.i, e.j)
    };
    Ok(BoundReport {
        gamma: gamma.iter().map(pair).collect(),
        lambda_nu,
        inf_energy_estimate: inf_estimate,
        slack,
        equality_case: equality,
        nodal_partition_matches: nodal_matches,
        witness_subset: witness.iter().map(pair).collect(),
    })
}

/// Exhaustively maximizes lambda_nu over subsets of the boundary. The value
/// is a certified lower bound on the infimum of the energy. Ties within
/// 1e-9 relative prefer larger subsets, then lexicographically smaller ones.
pub fn maximize_lower_bound(
    partition: &Partition,
    cap: usize,
) -> Result<(BTreeSet<usize>, f64), BoundsError> {
    let b = partition.boundary_len();
    if b > cap {
        return Err(BoundsError::CapExceeded(b, cap));
    }
    let graph = partition.graph();
    let nu = partition.nu();
    let boundary = partition.boundary();
    let mut best: Option<(BTreeSet<usize>, f64)> = None;
    for mask in 0u64..(1u64 << b) {
        let subset: BTreeSet<usize> = boundary
            .iter()
            .enumerate()
            .filter(|(t, _)| mask >> t & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let sig = Signature::from_edge_indices(graph, subset.iter().copied());
        let value = eigendecompose(&signed_laplacian(graph, &sig))?.eigenvalue(nu - 1);
        best = Some(match best {
            None => (subset, value),
            Some((bs, bv)) => {
                let tie = (value - bv).abs() <= 1e-9 * bv.abs().max(1.0);
                if value > bv && !tie {
                    (subset, value)
                } else if tie && (subset.len(), &bs) > (bs.len(), &subset) {
                    // Prefer more edges, then lexicographically smaller.
                    (subset, value.max(bv))
                } else {
                    (bs, bv)
                }
            }
        });
    }
    Ok(best.expect("at least the empty subset"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, make_partition};
    use crate::instances::{random_connected_graph, random_partition, random_signature};
    use crate::signed::switching_equivalent;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn triangle() -> Arc<WeightedGraph> {
        Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap())
    }

    #[test]
    fn chain_space_dimensions() {
        let g = triangle();
        let space = ChainSpace::new(&g);
        assert_eq!(space.cycle_rank(), 1);
        assert_eq!(space.cut_rank(), 2);
        // Bases are mutually orthogonal under the GF(2) form.
        for c in space.cycle_basis() {
            for k in space.cut_basis() {
                assert!(!c.dot(k));
            }
        }
    }

    #[test]
    fn homology_verdicts_on_triangle() {
        let g = triangle();
        let space = ChainSpace::new(&g);
        let empty = BTreeSet::new();
        let one: BTreeSet<usize> = [g.edge_index(1, 2).unwrap()].into();
        let all: BTreeSet<usize> = (0..3).collect();
        assert!(homologous(&space, &empty, &empty));
        assert!(!homologous(&space, &empty, &one));
        // Two negative edges form a cut: homologous to the empty set.
        let two: BTreeSet<usize> =
            [g.edge_index(0, 2).unwrap(), g.edge_index(1, 2).unwrap()].into();
        assert!(homologous(&space, &empty, &two));
        // all minus one is two edges forming a cut, so one ~ all.
        assert!(homologous(&space, &one, &all));
    }

    #[test]
    fn homology_agrees_with_switching_search() {
        let mut rng = SplitMix64::new(404);
        for _ in 0..200 {
            let g = random_connected_graph(&mut rng, 7, 0.45);
            let space = ChainSpace::new(&g);
            let s1 = random_signature(&mut rng, &g);
            let s2 = random_signature(&mut rng, &g);
            let by_switching = switching_equivalent(&g, &s1, &s2).is_some();
            let by_homology = homologous(&space, s1.negative_edges(), s2.negative_edges());
            assert_eq!(by_switching, by_homology);
        }
    }

    #[test]
    fn membership_trivial_cases() {
        let g = triangle();
        let p = make_partition(&g, &[0, 1, 2]).unwrap();
        // Gamma = empty: the empty subset is always a witness.
        let w = partition_class_membership(&p, &BTreeSet::new(), 20).unwrap().unwrap();
        assert!(w.is_empty() || {
            let space = ChainSpace::new(&g);
            homologous(&space, &BTreeSet::new(), &w)
        });
        // Gamma = boundary: reflexivity.
        let boundary: BTreeSet<usize> = p.boundary().iter().copied().collect();
        let w = partition_class_membership(&p, &boundary, 20).unwrap().unwrap();
        let space = ChainSpace::new(&g);
        assert!(homologous(&space, &boundary, &w));
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let mut rng = SplitMix64::new(2718);
        for _ in 0..60 {
            let g = random_connected_graph(&mut rng, 6, 0.5);
            let nu = 2 + rng.below(2);
            let Some(p) = random_partition(&mut rng, &g, nu) else { continue };
            if p.boundary_len() > 12 {
                continue;
            }
            let gamma = random_signature(&mut rng, &g).negative_edges().clone();
            let solved = partition_class_membership(&p, &gamma, 20).unwrap();
            let brute = membership_by_enumeration(&p, &gamma);
            assert_eq!(solved.is_some(), brute.is_some());
            if let Some(w) = solved {
                let space = ChainSpace::new(&g);
                assert!(homologous(&space, &gamma, &w));
                assert!(w.iter().all(|e| p.boundary().contains(e)));
            }
        }
    }

    #[test]
    fn membership_cap() {
        let g = triangle();
        let p = make_partition(&g, &[0, 1, 2]).unwrap();
        assert!(matches!(
            partition_class_membership(&p, &BTreeSet::new(), 2),
            Err(BoundsError::CapExceeded(3, 2))
        ));
    }

    #[test]
    fn triangle_bound_is_tight() {
        let g = triangle();
        let p = make_partition(&g, &[0, 1, 2]).unwrap();
        let gamma: BTreeSet<usize> = (0..3).collect();
        let report = lower_bound_check(&p, &gamma, 8, 7, &tol()).unwrap();
        assert_relative_eq!(report.lambda_nu, 4.0, epsilon = 1e-10);
        assert!(report.slack >= -1e-9);
        assert!(report.equality_case, "slack {}", report.slack);
        assert_eq!(report.nodal_partition_matches, Some(true));
    }

    #[test]
    fn not_in_class_rejected() {
        // Gamma with negative cycle sign cannot be matched by any subset of
        // an empty boundary.
        let g = triangle();
        let whole = make_partition(&g, &[0, 0, 0]).unwrap();
        let one: BTreeSet<usize> = [0usize].into();
        assert!(matches!(
            lower_bound_check(&whole, &one, 4, 1, &tol()),
            Err(BoundsError::NotInClass)
        ));
    }

    #[test]
    fn maximize_bound_on_triangle() {
        let g = triangle();
        let p = make_partition(&g, &[0, 1, 2]).unwrap();
        let (gamma_star, value) = maximize_lower_bound(&p, 20).unwrap();
        assert_relative_eq!(value, 4.0, epsilon = 1e-10);
        // Ties prefer the full boundary.
        assert_eq!(gamma_star.len(), 3);
    }

    #[test]
    fn maximize_bound_single_component() {
        let g = triangle();
        let p = make_partition(&g, &[0, 0, 0]).unwrap();
        let (gamma_star, value) = maximize_lower_bound(&p, 20).unwrap();
        assert!(gamma_star.is_empty());
        assert_relative_eq!(value, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn random_bounds_hold() {
        let mut rng = SplitMix64::new(909);
        let mut checked = 0;
        for trial in 0..25 {
            let g = random_connected_graph(&mut rng, 6, 0.5);
            let nu = 2 + rng.below(2);
            let Some(p) = random_partition(&mut rng, &g, nu) else { continue };
            // Construct Gamma in the class: witness subset xor a random cut.
            let boundary = p.boundary();
            let subset: BTreeSet<usize> = boundary
                .iter()
                .filter(|_| rng.chance(0.5))
                .copied()
                .collect();
            let side: Vec<bool> = (0..g.vertex_count()).map(|_| rng.chance(0.5)).collect();
            let cut: BTreeSet<usize> = (0..g.edge_count())
                .filter(|&idx| {
                    let e = g.edge(idx);
                    side[e.i] != side[e.j]
                })
                .collect();
            let gamma: BTreeSet<usize> = subset.symmetric_difference(&cut).copied().collect();
            let report = lower_bound_check(&p, &gamma, 6, trial as u64, &tol()).unwrap();
            assert!(
                report.slack >= -1e-9,
                "bound violated: lambda_nu {} > inf estimate {}",
                report.lambda_nu,
                report.inf_energy_estimate
            );
            checked += 1;
        }
        assert!(checked >= 10);
    }
}
