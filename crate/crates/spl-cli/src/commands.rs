//! Subcommand implementations. Each returns a serializable report; errors
//! carry an exit code and a machine-readable payload for stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use spl_core::bounds::{lower_bound_check, maximize_lower_bound, minimize_energy, BoundsError};
use spl_core::critical::{
    critical_points_from_spectrum, deficiency_via_edge_restoration, morse_index, CriticalError,
    CriticalPointJson,
};
use spl_core::ghost::verify_discretization;
use spl_core::graph::{
    betti_number, enumerate_partitions, is_tree_partition, GraphError, Partition, WeightedGraph,
};
use spl_core::instances::{jitter_weights, SplitMix64};
use spl_core::signed::{partition_laplacian, signed_laplacian, Signature};
use spl_core::spectral::{eigendecompose, is_nondegenerate, nodal_report};
use spl_core::Tolerances;

use crate::dot;
use crate::io::{self, IoError};
use crate::suites;

/// A command failure with its process exit code.
#[derive(Debug)]
pub struct CmdError {
    pub exit_code: i32,
    pub code: String,
    pub message: String,
}

impl CmdError {
    fn new(exit_code: i32, code: &str, message: impl Into<String>) -> Self {
        CmdError { exit_code, code: code.to_string(), message: message.into() }
    }

    pub fn to_stderr_json(&self) -> String {
        json!({"error": self.code, "message": self.message}).to_string()
    }
}

impl From<IoError> for CmdError {
    fn from(e: IoError) -> Self {
        let exit = match e.code() {
            "ParseError" | "ReadError" => 2,
            "CapExceeded" => 3,
            _ => 2,
        };
        CmdError::new(exit, e.code(), e.to_string())
    }
}

impl From<spl_core::spectral::SpectralError> for CmdError {
    fn from(e: spl_core::spectral::SpectralError) -> Self {
        CmdError::new(1, "SpectralError", e.to_string())
    }
}

impl From<CriticalError> for CmdError {
    fn from(e: CriticalError) -> Self {
        CmdError::new(1, "CriticalError", e.to_string())
    }
}

impl From<BoundsError> for CmdError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::CapExceeded(..) => CmdError::new(3, "CapExceeded", e.to_string()),
            BoundsError::NotInClass => CmdError::new(1, "NotInClass", e.to_string()),
            _ => CmdError::new(1, "BoundsError", e.to_string()),
        }
    }
}

impl From<GraphError> for CmdError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CapExceeded(..) => CmdError::new(3, "CapExceeded", e.to_string()),
            _ => CmdError::new(2, "InvalidGraph", e.to_string()),
        }
    }
}

impl From<spl_core::ghost::GhostError> for CmdError {
    fn from(e: spl_core::ghost::GhostError) -> Self {
        CmdError::new(1, "GhostError", e.to_string())
    }
}

/// Shared run options decoded from flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub count: Option<usize>,
    pub tolerances: Tolerances,
    pub vertex_cap: usize,
    pub subset_cap: usize,
    pub jitter: Option<f64>,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub starts: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            count: None,
            tolerances: Tolerances::default(),
            vertex_cap: spl_core::graph::DEFAULT_ENUMERATION_CAP,
            subset_cap: spl_core::bounds::DEFAULT_SUBSET_CAP,
            jitter: None,
            out: None,
            dot: None,
            starts: 16,
        }
    }
}

fn load_graph_with_jitter(path: &Path, cfg: &RunConfig) -> Result<Arc<WeightedGraph>, CmdError> {
    let graph = io::load_graph(path)?;
    Ok(match cfg.jitter {
        Some(rel) => {
            let mut rng = SplitMix64::new(cfg.seed);
            jitter_weights(&mut rng, &graph, rel)
        }
        None => graph,
    })
}

pub fn cmd_spectrum(
    graph_path: &Path,
    signature_path: Option<&Path>,
    cfg: &RunConfig,
) -> Result<(), CmdError> {
    let graph = load_graph_with_jitter(graph_path, cfg)?;
    let signature = match signature_path {
        Some(p) => io::load_signature(p, &graph)?,
        None => Signature::all_positive(&graph),
    };
    let report = eigendecompose(&signed_laplacian(&graph, &signature))?;
    io::emit_json(&report.to_json(), cfg.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct NodalJson {
    eigen_index: usize,
    eigenvalue: String,
    nondegenerate: bool,
    nodal_edges: Vec<(usize, usize)>,
    domain_of: Vec<i64>,
    domain_count: usize,
    zero_vertices: Vec<usize>,
    deficiency: Option<i64>,
}

pub fn cmd_nodal(
    graph_path: &Path,
    signature_path: Option<&Path>,
    index: usize,
    cfg: &RunConfig,
) -> Result<(), CmdError> {
    let graph = load_graph_with_jitter(graph_path, cfg)?;
    let signature = match signature_path {
        Some(p) => io::load_signature(p, &graph)?,
        None => Signature::all_positive(&graph),
    };
    if index == 0 || index > graph.vertex_count() {
        return Err(CmdError::new(2, "InvalidIndex", "eigen index is 1-based"));
    }
    let spectrum = eigendecompose(&signed_laplacian(&graph, &signature))?;
    let psi = spectrum.eigenvector(index - 1);
    let report = nodal_report(&graph, &signature, &psi, Some(index), &cfg.tolerances)?;
    if let Some(dot_path) = &cfg.dot {
        std::fs::write(dot_path, dot::nodal_dot(&graph, &report)).map_err(|source| {
            IoError::Write { path: dot_path.display().to_string(), source }
        })?;
    }
    let payload = NodalJson {
        eigen_index: index,
        eigenvalue: format!("{:.14e}", spectrum.eigenvalue(index - 1)),
        nondegenerate: is_nondegenerate(&spectrum, index - 1, &cfg.tolerances),
        nodal_edges: report
            .nodal_edges
            .iter()
            .map(|&idx| {
                let e = graph.edge(idx);
                (e.i, e.j)
            })
            .collect(),
        domain_of: report
            .domain_of
            .iter()
            .map(|d| d.map_or(-1, |k| k as i64))
            .collect(),
        domain_count: report.domain_count,
        zero_vertices: report.zero_vertices.clone(),
        deficiency: report.deficiency,
    };
    io::emit_json(&payload, cfg.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct CriticalReportJson {
    nu: usize,
    boundary_size: usize,
    betti_number: usize,
    tree_partition: bool,
    critical_points: Vec<CriticalPointJson>,
    notes: Vec<String>,
}

pub fn cmd_critical(
    graph_path: &Path,
    partition_path: &Path,
    cfg: &RunConfig,
) -> Result<(), CmdError> {
    let graph = load_graph_with_jitter(graph_path, cfg)?;
    let partition = io::load_partition(partition_path, &graph)?;
    let cps = critical_points_from_spectrum(&partition, &cfg.tolerances)?;
    let mut notes = Vec::new();
    let tree = is_tree_partition(&partition);
    if tree && !cps.is_empty() {
        notes.push(
            "tree partition: the equipartition is unique and Courant-sharp".to_string(),
        );
    }
    let mut out = Vec::new();
    for cp in &cps {
        let morse = if tree {
            None
        } else {
            match morse_index(&partition, cp, None, &cfg.tolerances) {
                Ok(m) => Some(m),
                Err(e) => {
                    notes.push(format!("morse index unavailable: {e}"));
                    None
                }
            }
        };
        match deficiency_via_edge_restoration(&partition, cp, &cfg.tolerances) {
            Ok(r) if r.predicted_index != cp.eigen_index => {
                notes.push("edge restoration disagrees with the eigen index".to_string());
            }
            Err(e) => notes.push(format!("edge restoration unavailable: {e}")),
            _ => {}
        }
        out.push(cp.to_json(&partition, morse.as_ref()));
    }
    let payload = CriticalReportJson {
        nu: partition.nu(),
        boundary_size: partition.boundary_len(),
        betti_number: betti_number(&partition),
        tree_partition: tree,
        critical_points: out,
        notes,
    };
    io::emit_json(&payload, cfg.out.as_deref())?;
    Ok(())
}

pub fn cmd_verify(suite: &str, cfg: &RunConfig) -> Result<bool, CmdError> {
    let count = cfg.count.unwrap_or_else(|| default_count(suite));
    let report = suites::run_suite(suite, cfg.seed, count, &cfg.tolerances).ok_or_else(|| {
        CmdError::new(
            2,
            "UnknownSuite",
            format!("unknown suite '{suite}'; available: {}", suites::SUITE_NAMES.join(", ")),
        )
    })?;
    io::emit_json(&report, cfg.out.as_deref())?;
    Ok(report.passed)
}

pub fn default_count(suite: &str) -> usize {
    match suite {
        "courant" | "invariance" | "lower-bound" => 100,
        "interlacing" | "homology" => 200,
        "shift" | "correspondence" | "jacobian" => 50,
        "equipartition" | "transversality" => 60,
        "tree-unique" => 8,
        "morse" => 3,
        "global-min" => 4,
        "ghost" => 20,
        _ => 50,
    }
}

#[derive(Serialize)]
struct EnumerateMinJson {
    nu: usize,
    partitions_enumerated: usize,
    best_labels: Vec<usize>,
    best_value: f64,
    /// lambda_nu of the plain Laplacian with its Courant-sharp status.
    lambda_nu: f64,
    lambda_nu_courant_sharp: bool,
    /// Set when the Courant-sharp nodal partition attains the minimum.
    nodal_partition_is_minimal: Option<bool>,
}

pub fn cmd_enumerate_min(
    graph_path: &Path,
    nu: usize,
    cfg: &RunConfig,
) -> Result<(), CmdError> {
    let graph = load_graph_with_jitter(graph_path, cfg)?;
    let tol = &cfg.tolerances;
    let mut best: Option<(Partition, f64)> = None;
    let mut enumerated = 0usize;
    for p in enumerate_partitions(&graph, nu, cfg.vertex_cap)? {
        enumerated += 1;
        let v = minimize_energy(&p, cfg.starts.min(6), cfg.seed, None, tol)?;
        let better = match &best {
            None => true,
            Some((_, bv)) => v < *bv,
        };
        if better {
            best = Some((p, v));
        }
    }
    let (best_p, best_v) =
        best.ok_or_else(|| CmdError::new(1, "NoPartitions", "no connected partition found"))?;

    let plain = eigendecompose(&signed_laplacian(&graph, &Signature::all_positive(&graph)))?;
    let lambda_nu = plain.eigenvalue(nu - 1);
    let mut sharp = false;
    let mut nodal_minimal = None;
    if is_nondegenerate(&plain, nu - 1, tol) {
        let nodal = nodal_report(&graph, &Signature::all_positive(&graph), &plain.eigenvector(nu - 1), Some(nu), tol)?;
        if nodal.domain_count == nu {
            sharp = true;
            nodal_minimal = Some((best_v - lambda_nu).abs() <= 1e-7 * lambda_nu.abs().max(1.0));
        }
    }
    let payload = EnumerateMinJson {
        nu,
        partitions_enumerated: enumerated,
        best_labels: best_p.canonical_labels(),
        best_value: best_v,
        lambda_nu,
        lambda_nu_courant_sharp: sharp,
        nodal_partition_is_minimal: nodal_minimal,
    };
    io::emit_json(&payload, cfg.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct LowerBoundJson {
    gamma: Vec<(usize, usize)>,
    lambda_nu: f64,
    inf_energy_estimate: f64,
    slack: f64,
    equality_case: bool,
    nodal_partition_matches: Option<bool>,
    witness_subset: Vec<(usize, usize)>,
    /// Best subset of the boundary and its lambda_nu.
    gamma_star: Vec<(usize, usize)>,
    gamma_star_value: f64,
}

pub fn cmd_lower_bound(
    graph_path: &Path,
    gamma_path: &Path,
    partition_path: &Path,
    cfg: &RunConfig,
) -> Result<(), CmdError> {
    let graph = load_graph_with_jitter(graph_path, cfg)?;
    let partition = io::load_partition(partition_path, &graph)?;
    let gamma_sig = io::load_signature(gamma_path, &graph)?;
    let gamma = io::signature_indices(&gamma_sig);
    let report = lower_bound_check(&partition, &gamma, cfg.starts, cfg.seed, &cfg.tolerances)?;
    let (gamma_star, star_value) = maximize_lower_bound(&partition, cfg.subset_cap)?;
    let pair = |idx: &usize| {
        let e = graph.edge(*idx);
        (e.i, e.j)
    };
    let payload = LowerBoundJson {
        gamma: report.gamma.clone(),
        lambda_nu: report.lambda_nu,
        inf_energy_estimate: report.inf_energy_estimate,
        slack: report.slack,
        equality_case: report.equality_case,
        nodal_partition_matches: report.nodal_partition_matches,
        witness_subset: report.witness_subset.clone(),
        gamma_star: gamma_star.iter().map(pair).collect(),
        gamma_star_value: star_value,
    };
    io::emit_json(&payload, cfg.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct GhostCheckJson {
    base_vertices: usize,
    ghost_vertices: usize,
    boundary_size: usize,
    identity_holds: bool,
    details: BTreeMap<String, String>,
}

pub fn cmd_ghost_check(
    graph_path: &Path,
    partition_path: &Path,
    cfg: &RunConfig,
) -> Result<bool, CmdError> {
    let graph = load_graph_with_jitter(graph_path, cfg)?;
    let partition = io::load_partition(partition_path, &graph)?;
    let ghost = spl_core::ghost::build_ghost(&partition);
    let result = verify_discretization(&partition);
    let mut details = BTreeMap::new();
    if let Err(e) = &result {
        details.insert("mismatch".to_string(), e.to_string());
    }
    // Partition Laplacian spectrum through the ghost pullback.
    let report = eigendecompose(&partition_laplacian(&partition))?;
    details.insert(
        "spectrum_head".to_string(),
        report
            .eigenvalues()
            .iter()
            .take(4)
            .map(|l| format!("{l:.6}"))
            .collect::<Vec<_>>()
            .join(", "),
    );
    let ok = result.is_ok();
    let payload = GhostCheckJson {
        base_vertices: ghost.base_vertex_count,
        ghost_vertices: ghost.total_vertex_count - ghost.base_vertex_count,
        boundary_size: partition.boundary_len(),
        identity_holds: ok,
        details,
    };
    io::emit_json(&payload, cfg.out.as_deref())?;
    Ok(ok)
}
