//! Dense symmetric eigendecomposition, non-degeneracy classification, and
//! nodal sets/domains/deficiency on signed graphs.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::signed::{Signature, SymOperator};
use crate::Tolerances;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("eigensolver failed to meet residual bounds (worst residual {0:.3e})")]
    ConvergenceFailure(f64),
    #[error("input vector is identically zero")]
    AllZeroVector,
    #[error("Courant bound violated at eigen index {index}: {domains} domains")]
    CourantViolation { index: usize, domains: usize },
}

/// Sorted eigenvalues with orthonormal, sign-fixed eigenvectors.
///
/// Eigen indices are 0-based in this API; the 1-based index of the paper is
/// `k + 1` and only appears in reports as `eigen_index`.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    eigenvalues: Vec<f64>,
    /// Column k pairs with eigenvalues[k].
    vectors: DMatrix<f64>,
    /// Spectral norm max|lambda| of the decomposed operator.
    operator_norm: f64,
}

impl SpectrumReport {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k]
    }

    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.vectors.column(k).into_owned()
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn operator_norm(&self) -> f64 {
        self.operator_norm
    }

    /// min(lambda_k - lambda_{k-1}, lambda_{k+1} - lambda_k); infinite at the
    /// spectrum ends and for 1x1 operators.
    pub fn simplicity_gap(&self, k: usize) -> f64 {
        let mut gap = f64::INFINITY;
        if k > 0 {
            gap = gap.min(self.eigenvalues[k] - self.eigenvalues[k - 1]);
        }
        if k + 1 < self.eigenvalues.len() {
            gap = gap.min(self.eigenvalues[k + 1] - self.eigenvalues[k]);
        }
        gap
    }

    pub fn is_simple(&self, k: usize, tol: &Tolerances) -> bool {
        self.simplicity_gap(k) > tol.gap_factor * self.operator_norm
    }

    /// Index of the eigenvalue closest to `value`.
    pub fn nearest_index(&self, value: f64) -> usize {
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let d = (l - value).abs();
            if d < dist {
                dist = d;
                best = k;
            }
        }
        best
    }
}

/// Full symmetric eigendecomposition with ascending eigenvalues.
///
/// Eigenvectors are orthonormal and sign-fixed so the first entry of largest
/// magnitude is positive, which makes outputs deterministic across runs.
pub fn eigendecompose(op: &SymOperator) -> Result<SpectrumReport, SpectralError> {
    let m = op.matrix();
    let n = m.nrows();
    let eig = m.clone().symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(k).into_owned();
        let lead = v.iter().enumerate().fold((0usize, 0.0f64), |acc, (i, &x)| {
            if x.abs() > acc.1 { (i, x.abs()) } else { acc }
        });
        if v[lead.0] < 0.0 {
            v.neg_mut();
        }
        vectors.set_column(col, &v);
    }

    let operator_norm = eigenvalues
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs()));

    // Residual and orthonormality invariants.
    let scale = operator_norm.max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let v = vectors.column(k);
        let r = m * v - lambda * v.into_owned();
        worst = worst.max(r.norm());
    }
    if worst > 1e-9 * scale {
        return Err(SpectralError::ConvergenceFailure(worst));
    }
    let gram = vectors.transpose() * &vectors;
    let mut ortho = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((gram[(i, j)] - target).abs());
        }
    }
    if ortho > 1e-9 {
        return Err(SpectralError::ConvergenceFailure(ortho));
    }

    Ok(SpectrumReport { eigenvalues, vectors, operator_norm })
}

/// Non-degenerate: the eigenvalue is simple and the eigenvector has no zero
/// entries (relative to its largest entry).
pub fn is_nondegenerate(report: &SpectrumReport, k: usize, tol: &Tolerances) -> bool {
    if !report.is_simple(k, tol) {
        return false;
    }
    let v = report.vectors.column(k);
    let max = v.amax();
    v.iter().all(|&x| x.abs() > tol.zero_tol * max)
}

/// Nodal structure of a vector on a signed graph.
#[derive(Debug, Clone, Serialize)]
pub struct NodalReport {
    /// Edge indices with u_i sigma_ij u_j < 0 (both endpoints nonzero).
    pub nodal_edges: Vec<usize>,
    /// Domain index per vertex; None for zero vertices.
    pub domain_of: Vec<Option<usize>>,
    /// Number of strong nodal domains.
    pub domain_count: usize,
    /// Vertices with |u_i| <= zero_tol * max|u|.
    pub zero_vertices: Vec<usize>,
    /// 1-based eigen index when supplied.
    pub eigen_index: Option<usize>,
    /// n - domain_count when the eigen index is supplied and the vector has
    /// no zero entries.
    pub deficiency: Option<i64>,
}

impl NodalReport {
    /// Domains as sorted vertex sets, for switching-invariance comparisons.
    pub fn domains_as_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.domain_count];
        for (v, d) in self.domain_of.iter().enumerate() {
            if let Some(k) = d {
                sets[*k].push(v);
            }
        }
        sets.sort();
        sets
    }
}

/// Strong nodal domains of `u` on (G, sigma). Zero vertices are deleted
/// before component counting; when `eigen_index` (1-based) is given and no
/// entry is zero, the deficiency n - nu is attached.
pub fn nodal_report(
    graph: &WeightedGraph,
    signature: &Signature,
    u: &DVector<f64>,
    eigen_index: Option<usize>,
    tol: &Tolerances,
) -> Result<NodalReport, SpectralError> {
    assert_eq!(u.len(), graph.vertex_count());
    let max = u.amax();
    if max == 0.0 {
        return Err(SpectralError::AllZeroVector);
    }
    let is_zero: Vec<bool> = u.iter().map(|&x| x.abs() <= tol.zero_tol * max).collect();
    let zero_vertices: Vec<usize> =
        (0..u.len()).filter(|&v| is_zero[v]).collect();

    let mut nodal_edges = Vec::new();
    for idx in 0..graph.edge_count() {
        let e = graph.edge(idx);
        if !is_zero[e.i] && !is_zero[e.j] && u[e.i] * signature.sign(idx) * u[e.j] < 0.0 {
            nodal_edges.push(idx);
        }
    }

    let nodal: std::collections::HashSet<usize> = nodal_edges.iter().copied().collect();
    let mut domain_of = vec![None; graph.vertex_count()];
    let mut domain_count = 0;
    for start in 0..graph.vertex_count() {
        if is_zero[start] || domain_of[start].is_some() {
            continue;
        }
        let d = domain_count;
        domain_count += 1;
        domain_of[start] = Some(d);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(w, idx) in graph.neighbors(v) {
                if !is_zero[w] && domain_of[w].is_none() && !nodal.contains(&idx) {
                    domain_of[w] = Some(d);
                    stack.push(w);
                }
            }
        }
    }

    let deficiency = match eigen_index {
        Some(n) if zero_vertices.is_empty() => Some(n as i64 - domain_count as i64),
        _ => None,
    };

    Ok(NodalReport {
        nodal_edges,
        domain_of,
        domain_count,
        zero_vertices,
        eigen_index,
        deficiency,
    })
}

/// One row per non-degenerate eigenvector of L^sigma.
#[derive(Debug, Clone, Serialize)]
pub struct CourantRow {
    /// 1-based eigen index.
    pub eigen_index: usize,
    pub domain_count: usize,
    pub deficiency: usize,
}

/// Verifies the nodal-domain bound nu(psi) <= n for every non-degenerate
/// eigenvector. A violation signals an eigensolver or tolerance bug.
pub fn courant_check(
    graph: &WeightedGraph,
    signature: &Signature,
    tol: &Tolerances,
) -> Result<Vec<CourantRow>, SpectralError> {
    let report = eigendecompose(&crate::signed::signed_laplacian(graph, signature))?;
    let mut rows = Vec::new();
    for k in 0..report.dim() {
        if !is_nondegenerate(&report, k, tol) {
            continue;
        }
        let n = k + 1;
        let nodal = nodal_report(graph, signature, &report.eigenvector(k), Some(n), tol)?;
        if nodal.domain_count > n {
            return Err(SpectralError::CourantViolation {
                index: n,
                domains: nodal.domain_count,
            });
        }
        rows.push(CourantRow {
            eigen_index: n,
            domain_count: nodal.domain_count,
            deficiency: n - nodal.domain_count,
        });
    }
    Ok(rows)
}

/// JSON form of a spectrum: eigenvalues as decimal strings with 15
/// significant digits, plus per-pair simplicity gaps.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumJson {
    pub eigenvalues: Vec<String>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub simplicity_gaps: Vec<f64>,
}

impl SpectrumReport {
    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|&l| format!("{:.14e}", l))
                .collect(),
            eigenvectors: (0..self.dim())
                .map(|k| self.vectors.column(k).iter().copied().collect())
                .collect(),
            simplicity_gaps: (0..self.dim()).map(|k| self.simplicity_gap(k)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::signed::{signed_laplacian, Signature};
    use approx::assert_relative_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn weighted_path_spectrum() {
        let g = build_graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        let l = signed_laplacian(&g, &Signature::all_positive(&g));
        let r = eigendecompose(&l).unwrap();
        let sqrt3 = 3.0f64.sqrt();
        assert_relative_eq!(r.eigenvalue(0), 0.0, epsilon = 1e-12);
        assert_relative_eq!(r.eigenvalue(1), 3.0 - sqrt3, epsilon = 1e-12);
        assert_relative_eq!(r.eigenvalue(2), 3.0 + sqrt3, epsilon = 1e-12);
        // Ground state of a plain Laplacian is constant.
        let v0 = r.eigenvector(0);
        assert_relative_eq!(v0[0], v0[1], epsilon = 1e-10);
        assert_relative_eq!(v0[1], v0[2], epsilon = 1e-10);
        assert!(v0[0] > 0.0);
    }

    #[test]
    fn all_negative_triangle_spectrum() {
        let g = build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let s = Signature::from_edge_indices(&g, 0..3);
        let r = eigendecompose(&signed_laplacian(&g, &s)).unwrap();
        assert_relative_eq!(r.eigenvalue(0), 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.eigenvalue(1), 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.eigenvalue(2), 4.0, epsilon = 1e-12);
        // lambda = 4 is simple with constant positive eigenvector.
        assert!(is_nondegenerate(&r, 2, &tol()));
        assert!(!is_nondegenerate(&r, 0, &tol()));
        let v = r.eigenvector(2);
        for x in v.iter() {
            assert_relative_eq!(*x, 1.0 / 3.0f64.sqrt(), epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_entry_vector_is_degenerate() {
        let g = build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let l = signed_laplacian(&g, &Signature::all_positive(&g));
        let r = eigendecompose(&l).unwrap();
        // Unit path spectrum {0, 1, 3}; lambda_2 = 1 has eigenvector (1, 0, -1).
        assert_relative_eq!(r.eigenvalue(1), 1.0, epsilon = 1e-12);
        assert!(!is_nondegenerate(&r, 1, &tol()));
        assert!(is_nondegenerate(&r, 2, &tol()));
    }

    #[test]
    fn star_strong_domains() {
        let g = build_graph(
            5,
            &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)],
        )
        .unwrap();
        let s = Signature::all_positive(&g);
        let u = DVector::from_row_slice(&[0.0, 1.0, 1.0, -1.0, -1.0]);
        let rep = nodal_report(&g, &s, &u, None, &tol()).unwrap();
        assert_eq!(rep.domain_count, 4);
        assert_eq!(rep.zero_vertices, vec![0]);
        assert!(rep.nodal_edges.is_empty());
        assert_eq!(rep.deficiency, None);
    }

    #[test]
    fn positive_vector_single_domain() {
        let g = build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let s = Signature::all_positive(&g);
        let u = DVector::from_row_slice(&[0.5, 1.0, 2.0]);
        let rep = nodal_report(&g, &s, &u, Some(1), &tol()).unwrap();
        assert_eq!(rep.domain_count, 1);
        assert!(rep.nodal_edges.is_empty());
        assert_eq!(rep.deficiency, Some(0));
    }

    #[test]
    fn all_negative_triangle_nodal() {
        let g = build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let s = Signature::from_edge_indices(&g, 0..3);
        let u = DVector::from_row_slice(&[1.0, 1.0, 1.0]);
        let rep = nodal_report(&g, &s, &u, Some(3), &tol()).unwrap();
        assert_eq!(rep.nodal_edges, vec![0, 1, 2]);
        assert_eq!(rep.domain_count, 3);
        assert_eq!(rep.deficiency, Some(0));
    }

    #[test]
    fn all_zero_vector_rejected() {
        let g = build_graph(2, &[(0, 1, 1.0)]).unwrap();
        let s = Signature::all_positive(&g);
        let u = DVector::zeros(2);
        assert_eq!(
            nodal_report(&g, &s, &u, None, &tol()).unwrap_err(),
            SpectralError::AllZeroVector
        );
    }

    #[test]
    fn courant_rows_on_triangle() {
        let g = build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let s = Signature::from_edge_indices(&g, 0..3);
        let rows = courant_check(&g, &s, &tol()).unwrap();
        // Only lambda_3 = 4 is simple; nu = 3, delta = 0.
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].eigen_index, 3);
        assert_eq!(rows[0].domain_count, 3);
        assert_eq!(rows[0].deficiency, 0);
    }

    #[test]
    fn spectrum_json_has_15_digit_strings() {
        let g = build_graph(2, &[(0, 1, 1.5)]).unwrap();
        let r = eigendecompose(&signed_laplacian(&g, &Signature::all_positive(&g))).unwrap();
        let json = r.to_json();
        assert_eq!(json.eigenvalues.len(), 2);
        assert!(json.eigenvalues[1].starts_with("3."));
    }
}
