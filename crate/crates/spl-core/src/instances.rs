//! Seeded random instances for property suites.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood: "Fast splittable
//! pseudorandom number generators"), chosen because the algorithm is small
//! enough to restate exactly: state advances by 0x9E3779B97F4A7C15 and the
//! output is the finalizer `z ^= z >> 31` after two xor-multiply rounds with
//! 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. Identical seeds therefore
//! reproduce identical instances across implementations.

use std::sync::Arc;

use crate::graph::{build_graph, make_partition, Partition, WeightedGraph};
use crate::signed::Signature;

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// Erdős–Rényi graph with connectivity rejection and weights uniform in
/// [0.5, 2.0]. Resamples the whole edge set until connected.
pub fn random_connected_graph(
    rng: &mut SplitMix64,
    vertex_count: usize,
    edge_prob: f64,
) -> Arc<WeightedGraph> {
    loop {
        let mut edges = Vec::new();
        for i in 0..vertex_count {
            for j in i + 1..vertex_count {
                if rng.chance(edge_prob) {
                    edges.push((i, j, rng.uniform(0.5, 2.0)));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        if let Ok(g) = build_graph(vertex_count, &edges) {
            return Arc::new(g);
        }
    }
}

/// Like [`random_connected_graph`] but rejects graphs whose cyclomatic
/// number exceeds `max_beta`; keeps exhaustive sweeps with numerical
/// Hessians cheap.
pub fn random_sparse_graph(
    rng: &mut SplitMix64,
    vertex_count: usize,
    edge_prob: f64,
    max_beta: usize,
) -> Arc<WeightedGraph> {
    loop {
        let g = random_connected_graph(rng, vertex_count, edge_prob);
        if g.cyclomatic_number() <= max_beta {
            return g;
        }
    }
}

/// Each edge negative with probability 1/2.
pub fn random_signature(rng: &mut SplitMix64, graph: &WeightedGraph) -> Signature {
    let negative: Vec<usize> = (0..graph.edge_count()).filter(|_| rng.chance(0.5)).collect();
    Signature::from_edge_indices(graph, negative)
}

/// Random ±1 vertex labeling.
pub fn random_switching(
    rng: &mut SplitMix64,
    vertex_count: usize,
) -> crate::signed::SwitchingFunction {
    crate::signed::SwitchingFunction::new(
        (0..vertex_count).map(|_| if rng.chance(0.5) { 1 } else { -1 }).collect(),
    )
}

/// Random connected nu-partition grown from nu random roots by randomized
/// multi-source flooding. Returns None when nu exceeds the vertex count.
pub fn random_partition(
    rng: &mut SplitMix64,
    graph: &Arc<WeightedGraph>,
    nu: usize,
) -> Option<Partition> {
    let n = graph.vertex_count();
    if nu == 0 || nu > n {
        return None;
    }
    loop {
        let mut labels = vec![usize::MAX; n];
        let mut roots = Vec::new();
        while roots.len() < nu {
            let v = rng.below(n);
            if !roots.contains(&v) {
                roots.push(v);
            }
        }
        for (k, &r) in roots.iter().enumerate() {
            labels[r] = k;
        }
        // Grow: repeatedly label a random unlabeled endpoint of a cross edge.
        loop {
            let mut frontier = Vec::new();
            for v in 0..n {
                if labels[v] == usize::MAX {
                    continue;
                }
                for &(u, _) in graph.neighbors(v) {
                    if labels[u] == usize::MAX {
                        frontier.push((v, u));
                    }
                }
            }
            if frontier.is_empty() {
                break;
            }
            let (v, u) = frontier[rng.below(frontier.len())];
            labels[u] = labels[v];
        }
        if labels.iter().all(|&l| l != usize::MAX) {
            if let Ok(p) = make_partition(graph, &labels) {
                return Some(p);
            }
        }
    }
}

/// Multiplies each weight by 1 + rel * u with u uniform in [-1, 1); used to
/// escape spectral degeneracies, which are non-generic in the weights.
pub fn jitter_weights(
    rng: &mut SplitMix64,
    graph: &WeightedGraph,
    rel: f64,
) -> Arc<WeightedGraph> {
    let edges: Vec<(usize, usize, f64)> = graph
        .edges()
        .iter()
        .map(|e| (e.i, e.j, e.weight * (1.0 + rel * rng.uniform(-1.0, 1.0))))
        .collect();
    Arc::new(build_graph(graph.vertex_count(), &edges).expect("jitter keeps the graph valid"))
}
