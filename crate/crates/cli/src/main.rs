//! `jacobian`: exact Jacobian-ideal computations from the command line.
//!
//! Every subcommand prints one JSON document on standard output. Exit status
//! is 0 on success, 2 when an input or precondition is rejected and 1 when an
//! internal consistency check fails.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use jacobian_core::expr::VarStyle;
use jacobian_core::{AnalysisError, PreconditionError};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(
    name = "jacobian",
    version,
    about = "Exact computations with Jacobian ideals of homogeneous forms"
)]
struct Cli {
    /// Number of variables of the ambient ring (inferred from the input when omitted).
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Print polynomials with x, y, z, t, u instead of x0, x1, ...
    #[arg(long, global = true)]
    alias: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gradient of a form.
    Grad { file: PathBuf },
    /// Hessian matrix, optionally with its determinant.
    Hess {
        file: PathBuf,
        #[arg(long)]
        det: bool,
    },
    /// Degree-m component of the Jacobian ideal.
    Jac {
        file: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Compare E(f), E(g) (degree d-1) or E'(f), E'(g) (degree d).
    SpanEq {
        file_f: PathBuf,
        file_g: PathBuf,
        #[arg(long, value_enum, default_value_t = SpanDegree::DMinus1)]
        degree: SpanDegree,
    },
    /// Relation matrix C with grad f = C grad g.
    Relate { file_f: PathBuf, file_g: PathBuf },
    /// Sebastiani-Thom splitting or multiplicity witness for a pair.
    Classify { file_f: PathBuf, file_g: PathBuf },
    /// Lowest degree of a syzygy among the partials.
    Mdr0 { file: PathBuf },
    /// Syzygies of degree m among the partials.
    Syzygies {
        file: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Rebuild a form from a basis of its gradient span.
    Reconstruct {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Each file holds several newline-separated basis elements.
        #[arg(long)]
        lines: bool,
    },
    /// From E'(f) = E'(g) to E(f) = E(g) and a classification.
    EprimePipeline { file_f: PathBuf, file_g: PathBuf },
    /// Multiplicity of V(f) at a projective point.
    Mult {
        file: PathBuf,
        /// Comma-separated rational coordinates, e.g. "0,1/2,1".
        #[arg(long)]
        point: String,
    },
    /// Generate an explicit pair with the same Jacobian ideal.
    Witness {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: u32,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long = "H")]
        h: Option<PathBuf>,
    },
    /// Sample random forms and count cones, unique reconstructions and Hessian obstructions.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SpanDegree {
    #[value(name = "d-1")]
    DMinus1,
    #[value(name = "d")]
    D,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Jordan,
    Case1,
    Case2,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Precondition(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Precondition(_) => "precondition",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Precondition(p) => CliError::Precondition(p),
            AnalysisError::Internal(msg) => CliError::Internal(msg),
        }
    }
}

pub struct Context {
    pub vars: Option<usize>,
    pub style: VarStyle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        vars: cli.vars,
        style: if cli.alias {
            VarStyle::Alias
        } else {
            VarStyle::Indexed
        },
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let (doc, code) = match commands::run(&ctx, cli.command) {
        Ok(doc) => (doc, 0),
        Err(e) => {
            eprintln!("error: {e}");
            (
                render::error_doc(name, e.kind(), &e.to_string()),
                e.exit_code(),
            )
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("documents serialize")
    );
    eprintln!(
        "{}",
        serde_json::json!({ "timings": { "elapsed_us": started.elapsed().as_micros() as u64 } })
    );
    ExitCode::from(code)
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Grad { .. } => "grad",
        Command::Hess { .. } => "hess",
        Command::Jac { .. } => "jac",
        Command::SpanEq { .. } => "span-eq",
        Command::Relate { .. } => "relate",
        Command::Classify { .. } => "classify",
        Command::Mdr0 { .. } => "mdr0",
        Command::Syzygies { .. } => "syzygies",
        Command::Reconstruct { .. } => "reconstruct",
        Command::EprimePipeline { .. } => "eprime-pipeline",
        Command::Mult { .. } => "mult",
        Command::Witness { .. } => "witness",
        Command::Probe { .. } => "probe",
    }
}
