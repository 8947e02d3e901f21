//! JSON file formats consumed and produced by the CLI.
//!
//! Graph: {"vertices": N, "edges": [[i, j, w], ...]}
//! Partition: {"labels": [k_0, ..., k_{N-1}]}
//! Signature: {"negative_edges": [[i, j], ...]}
//! Alpha: {"alpha": {"i-j": value, ...}}

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use spl_core::graph::{build_graph, make_partition, GraphError, Partition, WeightedGraph};
use spl_core::param::{ParamError, ParamPoint};
use spl_core::signed::{Signature, SignedError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid signature: {0}")]
    Signature(#[from] SignedError),
    #[error("invalid parameters: {0}")]
    Param(#[from] ParamError),
    #[error("{0}")]
    Invalid(String),
}

impl IoError {
    /// Short machine-readable error code for stderr reports.
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Read { .. } => "ReadError",
            IoError::Write { .. } => "WriteError",
            IoError::Parse { .. } => "ParseError",
            IoError::Graph(GraphError::CapExceeded(..)) => "CapExceeded",
            IoError::Graph(_) => "InvalidGraph",
            IoError::Signature(_) => "InvalidSignature",
            IoError::Param(_) => "InvalidAlpha",
            IoError::Invalid(_) => "InvalidInput",
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionFile {
    pub labels: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SignatureFile {
    pub negative_edges: Vec<(usize, usize)>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_graph(path: &Path) -> Result<Arc<WeightedGraph>, IoError> {
    let file: GraphFile = parse_json(path)?;
    Ok(Arc::new(build_graph(file.vertices, &file.edges)?))
}

pub fn load_partition(path: &Path, graph: &Arc<WeightedGraph>) -> Result<Partition, IoError> {
    let file: PartitionFile = parse_json(path)?;
    Ok(make_partition(graph, &file.labels)?)
}

pub fn load_signature(path: &Path, graph: &WeightedGraph) -> Result<Signature, IoError> {
    let file: SignatureFile = parse_json(path)?;
    Ok(Signature::from_edge_pairs(graph, &file.negative_edges)?)
}

/// Negative edges as a set of edge indices, for the bounds module.
pub fn signature_indices(sig: &Signature) -> BTreeSet<usize> {
    sig.negative_edges().clone()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlphaFile {
    pub alpha: std::collections::BTreeMap<String, f64>,
}

pub fn load_alpha(path: &Path, partition: &Partition) -> Result<ParamPoint, IoError> {
    let file: AlphaFile = parse_json(path)?;
    let graph = partition.graph();
    let mut alpha = Vec::with_capacity(partition.boundary_len());
    for &idx in partition.boundary() {
        let e = graph.edge(idx);
        let key = format!("{}-{}", e.i, e.j);
        let value = file
            .alpha
            .get(&key)
            .copied()
            .ok_or_else(|| IoError::Invalid(format!("missing alpha entry for edge {key}")))?;
        alpha.push(value);
    }
    Ok(ParamPoint::new(partition, alpha)?)
}

/// Serializes a value as pretty JSON with a trailing newline, either to the
/// given path or to stdout.
pub fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| IoError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
