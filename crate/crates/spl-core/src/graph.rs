//! Weighted graphs, vertex partitions, the partition multigraph and
//! connected-partition enumeration.
//!
//! Vertices are dense 0-based indices; edges are stored canonically with
//! `i < j` and sorted by `(i, j)`, so an edge index is a stable key for
//! signatures and boundary-parameter vectors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default vertex cap for partition enumeration (Bell-number growth).
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("non-positive weight {weight} on edge ({i}, {j})")]
    NonPositiveWeight { i: usize, j: usize, weight: f64 },
    #[error("vertex {0} out of range (vertex count {1})")]
    VertexOutOfRange(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("labels do not cover 0..nu without gaps: component {0} is empty")]
    EmptyComponent(usize),
    #[error("component {0} is not connected")]
    DisconnectedComponent(usize),
    #[error("label vector length {0} does not match vertex count {1}")]
    LabelLengthMismatch(usize, usize),
    #[error("vertex count {0} exceeds enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("requested {0} components for {1} vertices")]
    TooManyComponents(usize, usize),
}

/// A weighted edge with canonical orientation `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// A finite, simple, connected graph with strictly positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    /// vertex -> list of (neighbor, edge index)
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl WeightedGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Neighbors of `v` as (neighbor, edge index) pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Canonical edge index for the unordered pair (a, b), if present.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.i, e.j).cmp(&(i, j)))
            .ok()
    }

    pub fn degree(&self, v: usize) -> f64 {
        self.adjacency[v]
            .iter()
            .map(|&(_, e)| self.edges[e].weight)
            .sum()
    }

    /// First Betti number |E| - |V| + 1 of the graph itself.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }
}

/// Validates and builds a graph from an edge list.
pub fn build_graph(
    vertex_count: usize,
    edge_list: &[(usize, usize, f64)],
) -> Result<WeightedGraph, GraphError> {
    if edge_list.is_empty() {
        return Err(GraphError::EmptyEdgeList);
    }
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(a, b, w) in edge_list {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for &v in &[a, b] {
            if v >= vertex_count {
                return Err(GraphError::VertexOutOfRange(v, vertex_count));
            }
        }
        if w <= 0.0 || !w.is_finite() {
            return Err(GraphError::NonPositiveWeight { i: a, j: b, weight: w });
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        edges.push(Edge { i, j, weight: w });
    }
    edges.sort_by_key(|e| (e.i, e.j));
    for pair in edges.windows(2) {
        if (pair[0].i, pair[0].j) == (pair[1].i, pair[1].j) {
            return Err(GraphError::DuplicateEdge(pair[0].i, pair[0].j));
        }
    }

    let mut adjacency = vec![Vec::new(); vertex_count];
    for (idx, e) in edges.iter().enumerate() {
        adjacency[e.i].push((e.j, idx));
        adjacency[e.j].push((e.i, idx));
    }

    let graph = WeightedGraph { vertex_count, edges, adjacency };
    if !is_connected(&graph) {
        return Err(GraphError::Disconnected);
    }
    Ok(graph)
}

fn is_connected(graph: &WeightedGraph) -> bool {
    let n = graph.vertex_count;
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(u, _) in graph.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

/// One connected component of a partition: its vertices (ascending) and the
/// indices of its induced edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edge_indices: Vec<usize>,
}

/// A decomposition of the vertex set into connected induced subgraphs.
///
/// The boundary is the set of edges whose endpoints carry distinct labels;
/// together with the components' induced edges it partitions `E` disjointly.
#[derive(Debug, Clone)]
pub struct Partition {
    graph: Arc<WeightedGraph>,
    labels: Vec<usize>,
    nu: usize,
    components: Vec<Component>,
    /// Boundary edge indices, ascending.
    boundary: Vec<usize>,
}

impl Partition {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> Arc<WeightedGraph> {
        Arc::clone(&self.graph)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Component index of a vertex (the map s(i)).
    pub fn component_of(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Boundary edge indices, ascending.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    /// Labels relabeled by first occurrence; partitions are equal as set
    /// decompositions iff these agree.
    pub fn canonical_labels(&self) -> Vec<usize> {
        canonicalize(&self.labels)
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.canonical_labels() == other.canonical_labels()
    }
}

fn canonicalize(labels: &[usize]) -> Vec<usize> {
    let mut map = vec![usize::MAX; labels.len()];
    let mut next = 0;
    labels
        .iter()
        .map(|&l| {
            if map[l] == usize::MAX {
                map[l] = next;
                next += 1;
            }
            map[l]
        })
        .collect()
}

/// Builds a partition from a label vector covering 0..nu without gaps.
pub fn make_partition(
    graph: &Arc<WeightedGraph>,
    labels: &[usize],
) -> Result<Partition, GraphError> {
    let n = graph.vertex_count();
    if labels.len() != n {
        return Err(GraphError::LabelLengthMismatch(labels.len(), n));
    }
    let nu = labels.iter().copied().max().map_or(0, |m| m + 1);
    if nu == 0 {
        return Err(GraphError::EmptyComponent(0));
    }

    let mut components: Vec<Component> = (0..nu)
        .map(|_| Component { vertices: Vec::new(), edge_indices: Vec::new() })
        .collect();
    for (v, &l) in labels.iter().enumerate() {
        components[l].vertices.push(v);
    }
    for (k, c) in components.iter().enumerate() {
        if c.vertices.is_empty() {
            return Err(GraphError::EmptyComponent(k));
        }
    }

    let mut boundary = Vec::new();
    for (idx, e) in graph.edges().iter().enumerate() {
        if labels[e.i] == labels[e.j] {
            components[labels[e.i]].edge_indices.push(idx);
        } else {
            boundary.push(idx);
        }
    }

    for (k, c) in components.iter().enumerate() {
        if !component_connected(graph, c) {
            return Err(GraphError::DisconnectedComponent(k));
        }
    }

    Ok(Partition {
        graph: Arc::clone(graph),
        labels: labels.to_vec(),
        nu,
        components,
        boundary,
    })
}

fn component_connected(graph: &WeightedGraph, c: &Component) -> bool {
    if c.vertices.is_empty() {
        return false;
    }
    let member: std::collections::HashSet<usize> = c.vertices.iter().copied().collect();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![c.vertices[0]];
    seen.insert(c.vertices[0]);
    while let Some(v) = stack.pop() {
        for &(u, _) in graph.neighbors(v) {
            if member.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == c.vertices.len()
}

/// The multigraph on partition components with one edge per boundary edge.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionMultigraph {
    pub node_count: usize,
    /// (component k, component l, source edge index), k < l.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn partition_multigraph(partition: &Partition) -> PartitionMultigraph {
    let labels = partition.labels();
    let edges = partition
        .boundary()
        .iter()
        .map(|&idx| {
            let e = partition.graph().edge(idx);
            let (a, b) = (labels[e.i], labels[e.j]);
            let (k, l) = if a < b { (a, b) } else { (b, a) };
            (k, l, idx)
        })
        .collect();
    PartitionMultigraph { node_count: partition.nu(), edges }
}

/// First Betti number of the partition multigraph: |boundary| - (nu - 1).
pub fn betti_number(partition: &Partition) -> usize {
    partition.boundary_len() + 1 - partition.nu()
}

/// True iff the partition multigraph is two-colorable. Parallel edges form
/// even cycles, so only odd cycles obstruct.
pub fn is_bipartite_partition(partition: &Partition) -> bool {
    let mg = partition_multigraph(partition);
    let mut adj = vec![Vec::new(); mg.node_count];
    for &(k, l, _) in &mg.edges {
        adj[k].push(l);
        adj[l].push(k);
    }
    let mut color = vec![-1i8; mg.node_count];
    for start in 0..mg.node_count {
        if color[start] >= 0 {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if color[u] < 0 {
                    color[u] = 1 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff the partition multigraph is acyclic, i.e. the Betti number is 0.
pub fn is_tree_partition(partition: &Partition) -> bool {
    betti_number(partition) == 0
}

/// Streams all partitions of `graph` into exactly `nu` connected components,
/// deduplicated by first-occurrence labels, in lexicographic label order.
pub fn enumerate_partitions(
    graph: &Arc<WeightedGraph>,
    nu: usize,
    cap: usize,
) -> Result<PartitionEnumerator, GraphError> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(GraphError::CapExceeded(n, cap));
    }
    if nu == 0 || nu > n {
        return Err(GraphError::TooManyComponents(nu, n));
    }
    Ok(PartitionEnumerator {
        graph: Arc::clone(graph),
        nu,
        labels: vec![0; n],
        prefix_max: vec![0; n],
        started: false,
        done: false,
    })
}

/// Iterator over restricted-growth label strings with exactly `nu` blocks,
/// filtered by per-component connectivity.
pub struct PartitionEnumerator {
    graph: Arc<WeightedGraph>,
    nu: usize,
    labels: Vec<usize>,
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionEnumerator {
    /// Advance to the next restricted-growth string; false when exhausted.
    fn next_rgs(&mut self) -> bool {
        let n = self.labels.len();
        if !self.started {
            self.started = true;
            return true;
        }
        for i in (1..n).rev() {
            if self.labels[i] <= self.prefix_max[i - 1] && self.labels[i] + 1 < self.nu {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionEnumerator {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.labels.len();
        loop {
            if !self.next_rgs() {
                self.done = true;
                return None;
            }
            if self.prefix_max[n - 1] + 1 != self.nu {
                continue;
            }
            if let Ok(p) = make_partition(&self.graph, &self.labels.clone()) {
                return Some(p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Arc<WeightedGraph> {
        Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap())
    }

    fn path3() -> Arc<WeightedGraph> {
        Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap())
    }

    #[test]
    fn build_accepts_triangle_and_path() {
        let t = triangle();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_count(), 3);
        let p = path3();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.edge_index(2, 1), Some(1));
    }

    #[test]
    fn build_rejects_disconnected() {
        assert_eq!(
            build_graph(3, &[(0, 1, 1.0)]).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            build_graph(2, &[(0, 0, 1.0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            build_graph(2, &[(0, 1, 1.0), (1, 0, 2.0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            build_graph(2, &[(0, 1, 0.0)]).unwrap_err(),
            GraphError::NonPositiveWeight { .. }
        ));
        assert_eq!(build_graph(2, &[]).unwrap_err(), GraphError::EmptyEdgeList);
    }

    #[test]
    fn singleton_partition_of_triangle() {
        let p = make_partition(&triangle(), &[0, 1, 2]).unwrap();
        assert_eq!(p.nu(), 3);
        assert_eq!(p.boundary_len(), 3);
        assert_eq!(betti_number(&p), 1);
        assert!(!is_bipartite_partition(&p));
        assert!(!is_tree_partition(&p));
        let mg = partition_multigraph(&p);
        assert_eq!(mg.node_count, 3);
        assert_eq!(mg.edges.len(), 3);
    }

    #[test]
    fn path_two_partition() {
        let p = make_partition(&path3(), &[0, 0, 1]).unwrap();
        assert_eq!(p.nu(), 2);
        assert_eq!(p.boundary(), &[1]); // edge (1,2)
        assert_eq!(betti_number(&p), 0);
        assert!(is_bipartite_partition(&p));
        assert!(is_tree_partition(&p));
        let mg = partition_multigraph(&p);
        assert_eq!(mg.edges, vec![(0, 1, 1)]);
    }

    #[test]
    fn star_leaves_disconnected() {
        let star = Arc::new(
            build_graph(5, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]).unwrap(),
        );
        let err = make_partition(&star, &[0, 0, 1, 1, 1]).unwrap_err();
        assert_eq!(err, GraphError::DisconnectedComponent(1));
    }

    #[test]
    fn double_boundary_edge_is_bipartite_not_tree() {
        // Two K_2 components joined by exactly two boundary edges.
        let g = Arc::new(
            build_graph(4, &[(0, 1, 1.0), (2, 3, 1.0), (0, 2, 1.0), (1, 3, 1.0)]).unwrap(),
        );
        let p = make_partition(&g, &[0, 0, 1, 1]).unwrap();
        assert_eq!(p.boundary_len(), 2);
        assert!(is_bipartite_partition(&p));
        assert!(!is_tree_partition(&p));
    }

    /// Nine-vertex graph of three triangles with boundary edges forming a
    /// multigraph on 3 nodes with 4 edges (one doubled pair).
    fn three_triangles() -> Arc<WeightedGraph> {
        let mut edges = vec![];
        for base in [0, 3, 6] {
            edges.push((base, base + 1, 1.0));
            edges.push((base + 1, base + 2, 1.0));
            edges.push((base, base + 2, 1.0));
        }
        edges.extend([(2, 3, 1.0), (0, 6, 1.0), (5, 6, 1.0), (4, 8, 1.0)]);
        Arc::new(build_graph(9, &edges).unwrap())
    }

    #[test]
    fn three_triangle_partition_multigraph() {
        let p =
            make_partition(&three_triangles(), &[0, 0, 0, 1, 1, 1, 2, 2, 2]).unwrap();
        assert_eq!(p.nu(), 3);
        assert_eq!(p.boundary_len(), 4);
        let mg = partition_multigraph(&p);
        assert_eq!(mg.node_count, 3);
        assert_eq!(mg.edges.len(), 4);
        assert_eq!(betti_number(&p), 2);
    }

    #[test]
    fn enumerate_triangle_three_blocks() {
        let parts: Vec<_> =
            enumerate_partitions(&triangle(), 3, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .collect();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn enumerate_path_two_blocks() {
        let parts: Vec<_> =
            enumerate_partitions(&path3(), 2, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .collect();
        assert_eq!(parts.len(), 2);
    }

    /// Brute-force oracle: sweep all nu^V labelings, keep connected covers,
    /// dedup by canonical labels.
    fn brute_force_count(graph: &Arc<WeightedGraph>, nu: usize) -> usize {
        let n = graph.vertex_count();
        let mut seen = std::collections::HashSet::new();
        for code in 0..nu.pow(n as u32) {
            let mut c = code;
            let labels: Vec<usize> = (0..n)
                .map(|_| {
                    let l = c % nu;
                    c /= nu;
                    l
                })
                .collect();
            let distinct = labels.iter().collect::<std::collections::HashSet<_>>().len();
            if distinct != nu {
                continue;
            }
            if make_partition(graph, &labels).is_ok() {
                seen.insert(canonicalize(&labels));
            }
        }
        seen.len()
    }

    #[test]
    fn enumerate_c4_matches_brute_force() {
        let c4 = Arc::new(
            build_graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)]).unwrap(),
        );
        let count = enumerate_partitions(&c4, 2, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .count();
        assert_eq!(count, brute_force_count(&c4, 2));
        assert_eq!(count, 6);
    }

    #[test]
    fn enumerate_cap() {
        let g = triangle();
        assert!(matches!(
            enumerate_partitions(&g, 2, 2),
            Err(GraphError::CapExceeded(3, 2))
        ));
    }

    #[test]
    fn enumerated_partitions_invariants() {
        let g = three_triangles();
        for nu in 1..=4 {
            for p in enumerate_partitions(&g, nu, DEFAULT_ENUMERATION_CAP).unwrap() {
                assert!(p.boundary_len() + 1 >= p.nu());
                assert_eq!(partition_multigraph(&p).edges.len(), p.boundary_len());
                // Rebuilding from the produced labels is idempotent.
                let rebuilt = make_partition(&p.graph_arc(), p.labels()).unwrap();
                assert_eq!(rebuilt.boundary(), p.boundary());
                if is_tree_partition(&p) {
                    assert!(is_bipartite_partition(&p));
                }
                // Induced edges and boundary partition E disjointly.
                let total: usize =
                    p.components().iter().map(|c| c.edge_indices.len()).sum::<usize>()
                        + p.boundary_len();
                assert_eq!(total, g.edge_count());
            }
        }
    }
}
