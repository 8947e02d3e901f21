//! `spl`: spectral partition analysis of weighted graphs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spl_cli::commands::{self, CmdError, RunConfig};
use spl_core::Tolerances;

#[derive(Parser)]
#[command(
    name = "spl",
    about = "Signed-Laplacian spectral partition analysis: spectra, nodal domains, \
             critical equipartitions, Morse indices, energy lower bounds and \
             theorem-verification suites",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonFlags {
    /// Seed for randomized work (fallback: SPL_SEED, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Instance count for randomized suites.
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Relative equipartition tolerance.
    #[arg(long = "tol-eq", global = true)]
    tol_eq: Option<f64>,
    /// Relative zero-entry tolerance for nodal computations.
    #[arg(long = "tol-zero", global = true)]
    tol_zero: Option<f64>,
    /// Relative simplicity-gap tolerance.
    #[arg(long = "tol-gap", global = true)]
    tol_gap: Option<f64>,
    /// Relative Hessian degeneracy tolerance.
    #[arg(long = "tol-hess", global = true)]
    tol_hess: Option<f64>,
    /// Vertex cap for partition enumeration.
    #[arg(long = "cap-vertices", global = true)]
    cap_vertices: Option<usize>,
    /// Boundary-size cap for exhaustive subset sweeps.
    #[arg(long = "cap-subset", global = true)]
    cap_subset: Option<usize>,
    /// Relative seeded weight jitter to escape spectral degeneracies.
    #[arg(long, global = true)]
    jitter: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a Graphviz DOT rendering here (where supported).
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Multistart count for energy minimization.
    #[arg(long, default_value_t = 16, global = true)]
    starts: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and eigenvectors of the (signed) Laplacian.
    Spectrum {
        graph: PathBuf,
        #[arg(long)]
        signature: Option<PathBuf>,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Nodal set, strong nodal domains and deficiency of one eigenvector.
    Nodal {
        graph: PathBuf,
        #[arg(long)]
        signature: Option<PathBuf>,
        /// 1-based eigenvalue index.
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Critical equipartitions of a partition with Morse data.
    Critical {
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run a randomized theorem-verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Enumerate all nu-partitions and minimize the energy on each.
    EnumerateMin {
        graph: PathBuf,
        #[arg(long)]
        nu: usize,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Check the switching-class lower bound for a (signature, partition) pair.
    LowerBound {
        graph: PathBuf,
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Self-test: ghost-point reduction reproduces the partition Laplacian.
    GhostCheck {
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

fn config_from(flags: &CommonFlags) -> RunConfig {
    let mut tol = Tolerances::default();
    if let Some(v) = flags.tol_eq {
        tol.eq_tol = v;
    }
    if let Some(v) = flags.tol_zero {
        tol.zero_tol = v;
    }
    if let Some(v) = flags.tol_gap {
        tol.gap_factor = v;
    }
    if let Some(v) = flags.tol_hess {
        tol.hess_factor = v;
    }
    let seed = flags
        .seed
        .or_else(|| std::env::var("SPL_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    RunConfig {
        seed,
        count: flags.count,
        tolerances: tol,
        vertex_cap: flags
            .cap_vertices
            .unwrap_or(spl_core::graph::DEFAULT_ENUMERATION_CAP),
        subset_cap: flags.cap_subset.unwrap_or(spl_core::bounds::DEFAULT_SUBSET_CAP),
        jitter: flags.jitter,
        out: flags.out.clone(),
        dot: flags.dot.clone(),
        starts: flags.starts,
    }
}

fn run() -> Result<ExitCode, CmdError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Spectrum { graph, signature, flags } => {
            let cfg = config_from(&flags);
            commands::cmd_spectrum(&graph, signature.as_deref(), &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Nodal { graph, signature, index, flags } => {
            let cfg = config_from(&flags);
            commands::cmd_nodal(&graph, signature.as_deref(), index, &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Critical { graph, partition, flags } => {
            let cfg = config_from(&flags);
            commands::cmd_critical(&graph, &partition, &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, flags } => {
            let cfg = config_from(&flags);
            let passed = commands::cmd_verify(&suite, &cfg)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::EnumerateMin { graph, nu, flags } => {
            let cfg = config_from(&flags);
            commands::cmd_enumerate_min(&graph, nu, &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LowerBound { graph, gamma, partition, flags } => {
            let cfg = config_from(&flags);
            commands::cmd_lower_bound(&graph, &gamma, &partition, &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GhostCheck { graph, partition, flags } => {
            let cfg = config_from(&flags);
            let ok = commands::cmd_ghost_check(&graph, &partition, &cfg)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_stderr_json());
            ExitCode::from(e.exit_code.clamp(1, 255) as u8)
        }
    }
}
