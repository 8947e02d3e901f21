//! Spectral minimal partitions of finite weighted graphs.
//!
//! Builds signed and partition Laplacians, locates critical equipartitions of
//! the partition energy, computes Morse indices and nodal deficiencies, and
//! provides the switching-equivalence and homology machinery for energy lower
//! bounds. Everything is dense and double-precision, sized for graphs of up to
//! a few hundred vertices.

pub mod bounds;
pub mod critical;
pub mod ghost;
pub mod graph;
pub mod instances;
pub mod param;
pub mod signed;
pub mod spectral;

/// Numerical tolerances shared across the library.
///
/// All defaults sit well above double-precision eigensolver noise (~1e-12
/// relative) and well below generic spectral gaps at desk scale.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Entries with |u_i| <= zero_tol * max|u| count as zero.
    pub zero_tol: f64,
    /// An eigenvalue is simple when its gap exceeds gap_factor * ||M||.
    pub gap_factor: f64,
    /// Relative equipartition tolerance: max-min of Phi <= eq_tol * max(1, energy).
    pub eq_tol: f64,
    /// Projected-gradient norm below which a point counts as critical.
    pub grad_tol: f64,
    /// Hessian eigenvalues within hess_factor * max|eig| of zero are degenerate.
    pub hess_factor: f64,
    /// Rank threshold for transversality and tangent-space extraction.
    pub rank_tol: f64,
    /// Iteration cap for the equipartition Newton solver.
    pub newton_max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero_tol: 1e-9,
            gap_factor: 1e-8,
            eq_tol: 1e-10,
            grad_tol: 1e-7,
            hess_factor: 1e-6,
            rank_tol: 1e-8,
            newton_max_iter: 100,
        }
    }
}
