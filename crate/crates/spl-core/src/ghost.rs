//! Ghost-point encoding of anticontinuous boundary conditions.
//!
//! Each boundary edge (i, j) is replaced by two degree-1 ghost vertices
//! hanging off i and j with edge weight 2 w_ij. Functions on the base
//! vertices extend uniquely to anticontinuous functions on the augmented
//! graph, and reducing the augmented operator through that extension
//! reproduces the partition Laplacian entrywise.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::graph::Partition;
use crate::signed::partition_laplacian;
use crate::spectral::SpectralError;

#[derive(Debug, Error, PartialEq)]
pub enum GhostError {
    #[error("reduced operator mismatch at entry ({0}, {1}): {2:.3e}")]
    MismatchAt(usize, usize, f64),
    #[error("eigensolver failure: {0}")]
    Eigensolver(#[from] SpectralError),
}

/// One boundary edge with its pair of ghost vertices.
#[derive(Debug, Clone, Copy)]
pub struct GhostPair {
    /// Edge index in the base graph.
    pub edge_index: usize,
    pub i: usize,
    pub j: usize,
    pub weight: f64,
    /// Ghost vertex adjacent to i.
    pub k: usize,
    /// Ghost vertex adjacent to j.
    pub l: usize,
}

/// The augmented graph: base vertices first, then ghost vertices in
/// boundary-edge order (two per edge), which makes the reduction a fixed
/// leading-block projection.
#[derive(Debug, Clone)]
pub struct GhostGraph {
    pub base_vertex_count: usize,
    pub total_vertex_count: usize,
    pub pairs: Vec<GhostPair>,
    /// Edges of the augmented graph as (a, b, weight): internal base edges
    /// plus two ghost edges of weight 2w per boundary edge.
    pub edges: Vec<(usize, usize, f64)>,
}

/// Builds the ghost augmentation of a partition. With an empty boundary the
/// augmented graph is the base graph unchanged.
pub fn build_ghost(partition: &Partition) -> GhostGraph {
    let graph = partition.graph();
    let n = graph.vertex_count();
    let boundary: std::collections::HashSet<usize> =
        partition.boundary().iter().copied().collect();

    let mut edges: Vec<(usize, usize, f64)> = (0..graph.edge_count())
        .filter(|idx| !boundary.contains(idx))
        .map(|idx| {
            let e = graph.edge(idx);
            (e.i, e.j, e.weight)
        })
        .collect();

    let mut pairs = Vec::with_capacity(partition.boundary_len());
    for (t, &edge_index) in partition.boundary().iter().enumerate() {
        let e = graph.edge(edge_index);
        let k = n + 2 * t;
        let l = n + 2 * t + 1;
        edges.push((e.i, k, 2.0 * e.weight));
        edges.push((e.j, l, 2.0 * e.weight));
        pairs.push(GhostPair { edge_index, i: e.i, j: e.j, weight: e.weight, k, l });
    }

    GhostGraph {
        base_vertex_count: n,
        total_vertex_count: n + 2 * partition.boundary_len(),
        pairs,
        edges,
    }
}

/// The unique anticontinuous extension of a base-vertex function: the ghost
/// values are (u_i - u_j)/2 and (u_j - u_i)/2.
pub fn anticontinuous_extension(ghost: &GhostGraph, u: &DVector<f64>) -> DVector<f64> {
    assert_eq!(u.len(), ghost.base_vertex_count);
    let mut out = DVector::zeros(ghost.total_vertex_count);
    for v in 0..ghost.base_vertex_count {
        out[v] = u[v];
    }
    for p in &ghost.pairs {
        out[p.k] = 0.5 * (u[p.i] - u[p.j]);
        out[p.l] = 0.5 * (u[p.j] - u[p.i]);
    }
    out
}

/// The extension as a |V'| x |V| matrix.
pub fn extension_matrix(ghost: &GhostGraph) -> DMatrix<f64> {
    let mut t = DMatrix::zeros(ghost.total_vertex_count, ghost.base_vertex_count);
    for v in 0..ghost.base_vertex_count {
        t[(v, v)] = 1.0;
    }
    for p in &ghost.pairs {
        t[(p.k, p.i)] = 0.5;
        t[(p.k, p.j)] = -0.5;
        t[(p.l, p.i)] = -0.5;
        t[(p.l, p.j)] = 0.5;
    }
    t
}

/// The augmented operator: plain Laplacian rows of the ghost graph for base
/// vertices, and boundary-condition rows for ghost vertices
/// (u_k + u_l for k; u_k - u_i + u_j - u_l for l). Not symmetric as a whole;
/// symmetry reappears after reduction.
pub fn ghost_operator(ghost: &GhostGraph) -> DMatrix<f64> {
    let nt = ghost.total_vertex_count;
    let mut m = DMatrix::zeros(nt, nt);
    // Laplacian rows for base vertices over the augmented edge set.
    for &(a, b, w) in &ghost.edges {
        for (row, other) in [(a, b), (b, a)] {
            if row < ghost.base_vertex_count {
                m[(row, row)] += w;
                m[(row, other)] -= w;
            }
        }
    }
    // Boundary-condition rows.
    for p in &ghost.pairs {
        m[(p.k, p.k)] = 1.0;
        m[(p.k, p.l)] = 1.0;
        m[(p.l, p.k)] = 1.0;
        m[(p.l, p.i)] = -1.0;
        m[(p.l, p.j)] = 1.0;
        m[(p.l, p.l)] = -1.0;
    }
    m
}

/// Diagonal mass matrix: identity on base vertices, zero on ghosts.
pub fn mass_matrix(ghost: &GhostGraph) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(ghost.total_vertex_count, ghost.total_vertex_count);
    for v in 0..ghost.base_vertex_count {
        b[(v, v)] = 1.0;
    }
    b
}

/// The reduced operator: the leading |V| x |V| block of (ghost operator) * T.
pub fn reduced_operator(ghost: &GhostGraph) -> DMatrix<f64> {
    let full = ghost_operator(ghost) * extension_matrix(ghost);
    full.view((0, 0), (ghost.base_vertex_count, ghost.base_vertex_count)).into_owned()
}

/// Checks entrywise that reducing the ghost operator through the
/// anticontinuous extension reproduces the partition Laplacian, and that the
/// ghost rows of the composition vanish identically.
pub fn verify_discretization(partition: &Partition) -> Result<(), GhostError> {
    let ghost = build_ghost(partition);
    let n = ghost.base_vertex_count;
    let composed = ghost_operator(&ghost) * extension_matrix(&ghost);
    let target = partition_laplacian(partition);
    let scale = target
        .matrix()
        .iter()
        .fold(1.0f64, |m, &x| m.max(x.abs()));
    for i in 0..n {
        for j in 0..n {
            let diff = (composed[(i, j)] - target.matrix()[(i, j)]).abs();
            if diff > 1e-13 * scale {
                return Err(GhostError::MismatchAt(i, j, diff));
            }
        }
    }
    for r in n..ghost.total_vertex_count {
        for j in 0..n {
            let v = composed[(r, j)].abs();
            if v > 1e-13 * scale {
                return Err(GhostError::MismatchAt(r, j, v));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, enumerate_partitions, make_partition};
    use crate::spectral::eigendecompose;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    #[test]
    fn ghost_of_weighted_path() {
        let g = Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap());
        let p = make_partition(&g, &[0, 0, 1]).unwrap();
        let ghost = build_ghost(&p);
        assert_eq!(ghost.total_vertex_count, 5);
        assert_eq!(ghost.pairs.len(), 1);
        let pair = ghost.pairs[0];
        assert_eq!((pair.i, pair.j), (1, 2));
        // Ghost edges carry twice the boundary weight.
        let ghost_edges: Vec<_> =
            ghost.edges.iter().filter(|&&(a, b, _)| a >= 3 || b >= 3).collect();
        assert_eq!(ghost_edges.len(), 2);
        for &&(_, _, w) in &ghost_edges {
            assert_eq!(w, 4.0);
        }
        // Ghost vertices have degree 1.
        for v in [pair.k, pair.l] {
            let deg = ghost.edges.iter().filter(|&&(a, b, _)| a == v || b == v).count();
            assert_eq!(deg, 1);
        }
    }

    #[test]
    fn ghost_of_triangle_singletons() {
        let g = Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap());
        let p = make_partition(&g, &[0, 1, 2]).unwrap();
        let ghost = build_ghost(&p);
        assert_eq!(ghost.total_vertex_count, 9);
        assert_eq!(ghost.edges.len(), 6);
    }

    #[test]
    fn empty_boundary_changes_nothing() {
        let g = Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap());
        let p = make_partition(&g, &[0, 0, 0]).unwrap();
        let ghost = build_ghost(&p);
        assert_eq!(ghost.total_vertex_count, 3);
        assert!(ghost.pairs.is_empty());
        verify_discretization(&p).unwrap();
    }

    #[test]
    fn extension_satisfies_anticontinuity() {
        let g = Arc::new(build_graph(4, &[(0, 1, 1.0), (1, 2, 0.7), (2, 3, 1.3), (0, 3, 2.0)]).unwrap());
        let p = make_partition(&g, &[0, 0, 1, 1]).unwrap();
        let ghost = build_ghost(&p);
        let mut rng = crate::instances::SplitMix64::new(11);
        for _ in 0..20 {
            let u = DVector::from_iterator(4, (0..4).map(|_| rng.uniform(-2.0, 2.0)));
            let ext = anticontinuous_extension(&ghost, &u);
            for pair in &ghost.pairs {
                assert_relative_eq!(ext[pair.k], -ext[pair.l], epsilon = 1e-15);
                assert_relative_eq!(
                    ext[pair.k] - u[pair.i],
                    ext[pair.l] - u[pair.j],
                    epsilon = 1e-15
                );
            }
        }
        // Zero extends to zero; equal endpoint values give zero ghosts.
        let zero = DVector::zeros(4);
        assert_eq!(anticontinuous_extension(&ghost, &zero).norm(), 0.0);
        let ones = DVector::from_element(4, 1.0);
        let ext = anticontinuous_extension(&ghost, &ones);
        for pair in &ghost.pairs {
            assert_eq!(ext[pair.k], 0.0);
        }
    }

    #[test]
    fn reduction_matches_partition_laplacian() {
        let g = Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap());
        let p = make_partition(&g, &[0, 0, 1]).unwrap();
        verify_discretization(&p).unwrap();

        let g = Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap());
        let p = make_partition(&g, &[0, 1, 2]).unwrap();
        verify_discretization(&p).unwrap();
        // Reduced operator equals the all-negative triangle Laplacian.
        let ghost = build_ghost(&p);
        let reduced = reduced_operator(&ghost);
        assert_relative_eq!(reduced[(0, 1)], 1.0, epsilon = 1e-14);
        assert_relative_eq!(reduced[(0, 0)], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn reduction_on_all_partitions_of_small_graphs() {
        let g = Arc::new(
            build_graph(5, &[(0, 1, 0.9), (1, 2, 1.4), (2, 3, 0.6), (3, 4, 1.1), (0, 4, 1.7), (1, 3, 0.8)])
                .unwrap(),
        );
        for nu in 1..=4 {
            for p in enumerate_partitions(&g, nu, 12).unwrap() {
                verify_discretization(&p).unwrap();
            }
        }
    }

    #[test]
    fn pullback_eigenpairs_solve_generalized_problem() {
        // For each eigenpair of the partition Laplacian, the anticontinuous
        // extension solves the generalized problem with the mass matrix.
        let g = Arc::new(build_graph(4, &[(0, 1, 1.0), (1, 2, 0.7), (2, 3, 1.3), (0, 3, 2.0)]).unwrap());
        let p = make_partition(&g, &[0, 1, 1, 0]).unwrap();
        let ghost = build_ghost(&p);
        let lg = ghost_operator(&ghost);
        let b = mass_matrix(&ghost);
        let report = eigendecompose(&partition_laplacian(&p)).unwrap();
        for k in 0..report.dim() {
            let v = report.eigenvector(k);
            let ext = anticontinuous_extension(&ghost, &v);
            let residual = &lg * &ext - &b * &ext * report.eigenvalue(k);
            assert!(
                residual.norm() <= 1e-9 * report.operator_norm().max(1.0),
                "generalized residual {}",
                residual.norm()
            );
        }
    }
}
