//! Graphviz DOT export: nodal/boundary edges dashed, domains colored.

use spl_core::graph::{Partition, WeightedGraph};
use spl_core::spectral::NodalReport;

const PALETTE: &[&str] = &[
    "#4a90d9", "#f5a623", "#7ed321", "#d0021b", "#9013fe", "#50e3c2", "#b8e986", "#f8e71c",
    "#8b572a", "#417505",
];

fn color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

/// Renders a nodal report: vertices colored by domain (zero vertices gray),
/// nodal edges dashed.
pub fn nodal_dot(graph: &WeightedGraph, report: &NodalReport) -> String {
    let nodal: std::collections::HashSet<usize> = report.nodal_edges.iter().copied().collect();
    let mut out = String::from("graph nodal {\n  node [style=filled];\n");
    for v in 0..graph.vertex_count() {
        match report.domain_of[v] {
            Some(d) => out.push_str(&format!(
                "  {v} [fillcolor=\"{}\", label=\"{v}\\nD{d}\"];\n",
                color(d)
            )),
            None => out.push_str(&format!(
                "  {v} [fillcolor=\"#bbbbbb\", label=\"{v}\\n0\"];\n"
            )),
        }
    }
    for idx in 0..graph.edge_count() {
        let e = graph.edge(idx);
        let style = if nodal.contains(&idx) { ", style=dashed" } else { "" };
        out.push_str(&format!(
            "  {} -- {} [label=\"{}\"{}];\n",
            e.i, e.j, e.weight, style
        ));
    }
    out.push_str("}\n");
    out
}

/// Renders a partition: vertices colored by component, boundary dashed.
pub fn partition_dot(partition: &Partition) -> String {
    let graph = partition.graph();
    let boundary: std::collections::HashSet<usize> =
        partition.boundary().iter().copied().collect();
    let mut out = String::from("graph partition {\n  node [style=filled];\n");
    for v in 0..graph.vertex_count() {
        out.push_str(&format!(
            "  {v} [fillcolor=\"{}\", label=\"{v}\\nG{}\"];\n",
            color(partition.component_of(v)),
            partition.component_of(v)
        ));
    }
    for idx in 0..graph.edge_count() {
        let e = graph.edge(idx);
        let style = if boundary.contains(&idx) { ", style=dashed" } else { "" };
        out.push_str(&format!(
            "  {} -- {} [label=\"{}\"{}];\n",
            e.i, e.j, e.weight, style
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spl_core::graph::{build_graph, make_partition};
    use std::sync::Arc;

    #[test]
    fn partition_dot_marks_boundary_dashed() {
        let g = Arc::new(build_graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap());
        let p = make_partition(&g, &[0, 0, 1]).unwrap();
        let dot = partition_dot(&p);
        assert!(dot.contains("1 -- 2 [label=\"2\", style=dashed]"));
        assert!(dot.contains("0 -- 1 [label=\"1\"]"));
    }
}
