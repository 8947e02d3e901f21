//! Signatures, switching functions, balance, and signed Laplacian assembly.
//!
//! A signature is stored as its set of negative edges, the native object for
//! switching-equivalence arguments and for the GF(2) machinery downstream.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::graph::{Partition, WeightedGraph};

#[derive(Debug, Error, PartialEq)]
pub enum SignedError {
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),
    #[error("walk is not closed or leaves the edge set")]
    NotAClosedWalk,
    #[error("switching function length {0} does not match vertex count {1}")]
    SwitchingLengthMismatch(usize, usize),
}

/// A ±1 edge labeling, stored as the set Γ of negative edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    edge_count: usize,
    negative: BTreeSet<usize>,
}

impl Signature {
    pub fn all_positive(graph: &WeightedGraph) -> Self {
        Signature { edge_count: graph.edge_count(), negative: BTreeSet::new() }
    }

    /// Builds a signature from negative edges given as vertex pairs.
    pub fn from_edge_pairs(
        graph: &WeightedGraph,
        negative_pairs: &[(usize, usize)],
    ) -> Result<Self, SignedError> {
        let mut negative = BTreeSet::new();
        for &(a, b) in negative_pairs {
            let idx = graph
                .edge_index(a, b)
                .ok_or(SignedError::UnknownEdge(a, b))?;
            negative.insert(idx);
        }
        Ok(Signature { edge_count: graph.edge_count(), negative })
    }

    pub fn from_edge_indices<I: IntoIterator<Item = usize>>(
        graph: &WeightedGraph,
        indices: I,
    ) -> Self {
        let negative = indices
            .into_iter()
            .inspect(|&e| assert!(e < graph.edge_count()))
            .collect();
        Signature { edge_count: graph.edge_count(), negative }
    }

    /// The boundary signature σ^∂P: negative exactly on ∂P.
    pub fn from_boundary(partition: &Partition) -> Self {
        Signature {
            edge_count: partition.graph().edge_count(),
            negative: partition.boundary().iter().copied().collect(),
        }
    }

    pub fn sign(&self, edge_index: usize) -> f64 {
        if self.negative.contains(&edge_index) {
            -1.0
        } else {
            1.0
        }
    }

    pub fn is_negative(&self, edge_index: usize) -> bool {
        self.negative.contains(&edge_index)
    }

    pub fn negative_edges(&self) -> &BTreeSet<usize> {
        &self.negative
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// σ^{Γ1 Δ Γ2} = σ^{Γ1}·σ^{Γ2} entrywise.
    pub fn symmetric_difference(&self, other: &Signature) -> Signature {
        assert_eq!(self.edge_count, other.edge_count);
        Signature {
            edge_count: self.edge_count,
            negative: self
                .negative
                .symmetric_difference(&other.negative)
                .copied()
                .collect(),
        }
    }
}

/// A ±1 vertex labeling τ used to switch signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingFunction {
    values: Vec<i8>,
}

impl SwitchingFunction {
    pub fn identity(vertex_count: usize) -> Self {
        SwitchingFunction { values: vec![1; vertex_count] }
    }

    pub fn new(values: Vec<i8>) -> Self {
        assert!(values.iter().all(|&v| v == 1 || v == -1));
        SwitchingFunction { values }
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v] as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// σ^τ_ij = τ_i σ_ij τ_j.
pub fn switch(
    graph: &WeightedGraph,
    signature: &Signature,
    tau: &SwitchingFunction,
) -> Result<Signature, SignedError> {
    if tau.len() != graph.vertex_count() {
        return Err(SignedError::SwitchingLengthMismatch(
            tau.len(),
            graph.vertex_count(),
        ));
    }
    let negative = (0..graph.edge_count())
        .filter(|&idx| {
            let e = graph.edge(idx);
            tau.value(e.i) * signature.sign(idx) * tau.value(e.j) < 0.0
        })
        .collect();
    Ok(Signature { edge_count: graph.edge_count(), negative })
}

/// Sign of a closed edge walk given as a vertex sequence v0, ..., vk = v0.
pub fn cycle_sign(
    graph: &WeightedGraph,
    signature: &Signature,
    walk: &[usize],
) -> Result<f64, SignedError> {
    if walk.len() < 2 || walk.first() != walk.last() {
        return Err(SignedError::NotAClosedWalk);
    }
    let mut sign = 1.0;
    for pair in walk.windows(2) {
        let idx = graph
            .edge_index(pair[0], pair[1])
            .ok_or(SignedError::NotAClosedWalk)?;
        sign *= signature.sign(idx);
    }
    Ok(sign)
}

/// Decides balance by spanning-tree sign propagation. Returns the switching
/// function with σ^τ ≡ +1 when balanced.
pub fn is_balanced(graph: &WeightedGraph, signature: &Signature) -> Option<SwitchingFunction> {
    let n = graph.vertex_count();
    let mut tau = vec![0i8; n];
    tau[0] = 1;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for &(u, idx) in graph.neighbors(v) {
            let s = if signature.is_negative(idx) { -1 } else { 1 };
            if tau[u] == 0 {
                tau[u] = tau[v] * s;
                stack.push(u);
            }
        }
    }
    // Connected input: every vertex was reached. Check all edges switch positive.
    let tau = SwitchingFunction::new(tau);
    for idx in 0..graph.edge_count() {
        let e = graph.edge(idx);
        if tau.value(e.i) * signature.sign(idx) * tau.value(e.j) < 0.0 {
            return None;
        }
    }
    Some(tau)
}

/// Decides switching equivalence; Some(τ) satisfies σ1^τ = σ2.
pub fn switching_equivalent(
    graph: &WeightedGraph,
    s1: &Signature,
    s2: &Signature,
) -> Option<SwitchingFunction> {
    is_balanced(graph, &s1.symmetric_difference(s2))
}

/// A dense symmetric operator on R^{|V|}.
#[derive(Debug, Clone, PartialEq)]
pub struct SymOperator {
    matrix: DMatrix<f64>,
}

impl SymOperator {
    /// Wraps a matrix that was assembled exactly symmetric.
    pub fn new(matrix: DMatrix<f64>) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols());
        debug_assert!({
            let mut ok = true;
            for i in 0..matrix.nrows() {
                for j in 0..i {
                    ok &= matrix[(i, j)] == matrix[(j, i)];
                }
            }
            ok
        });
        SymOperator { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// L^σ = D − A^σ: diagonal of weighted degrees, off-diagonal −σ_ij w_ij.
pub fn signed_laplacian(graph: &WeightedGraph, signature: &Signature) -> SymOperator {
    let n = graph.vertex_count();
    let mut m = DMatrix::zeros(n, n);
    for idx in 0..graph.edge_count() {
        let e = graph.edge(idx);
        let s = signature.sign(idx);
        m[(e.i, e.i)] += e.weight;
        m[(e.j, e.j)] += e.weight;
        m[(e.i, e.j)] -= s * e.weight;
        m[(e.j, e.i)] -= s * e.weight;
    }
    SymOperator::new(m)
}

/// The signed Laplacian whose negative edges are exactly the boundary ∂P.
pub fn partition_laplacian(partition: &Partition) -> SymOperator {
    signed_laplacian(partition.graph(), &Signature::from_boundary(partition))
}

/// D^τ M D^τ: entrywise τ_i M_ij τ_j. Preserves the spectrum.
pub fn conjugate_by_switching(op: &SymOperator, tau: &SwitchingFunction) -> SymOperator {
    assert_eq!(op.dim(), tau.len());
    let n = op.dim();
    let mut m = op.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] *= tau.value(i) * tau.value(j);
        }
    }
    SymOperator::new(m)
}

/// The quadratic form Σ w_ij (u_i − σ_ij u_j)^2 evaluated directly.
pub fn quadratic_form(graph: &WeightedGraph, signature: &Signature, u: &[f64]) -> f64 {
    (0..graph.edge_count())
        .map(|idx| {
            let e = graph.edge(idx);
            let d = u[e.i] - signature.sign(idx) * u[e.j];
            e.weight * d * d
        })
        .sum()
}
