//! `kgtwist`: command-line front end for twisted k-graph algebras.
//!
//! Exit codes: 0 pass, 1 semantic failure, 2 input error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kgtwist", version, about = "Cocycle-twisted k-graph algebras: products, checks and norm scans")]
pub struct Cli {
    /// Graph file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Cocycle: a name from the graph file or a path to a cocycle file.
    #[arg(long, global = true, value_name = "NAME|FILE")]
    pub cocycle: Option<String>,
    /// Functor name from the graph file.
    #[arg(long, global = true, value_name = "NAME", default_value = "degree")]
    pub functor: String,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Degree bound K, used as (K,…,K).
    #[arg(long, global = true, value_name = "K")]
    pub bound: Option<u32>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Cyclotomic arithmetic; needs rational phases.
    Exact,
    /// Complex floating point.
    Float,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the graph, every functor and every cocycle.
    Validate,
    /// Product of two elements.
    Mul { a: String, b: String },
    /// Adjoint of an element.
    Star { a: String },
    /// Homogeneous components with respect to the functor.
    Grade { a: String },
    /// Fejér mean and its defect.
    Fejer {
        a: String,
        /// Truncation N, either one value or one per color.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        n: Vec<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Aperiodicity, cofinality, simplicity and total skewness.
    Structure,
    /// Fibre norms over θ = j/den as CSV.
    Scan {
        a: String,
        #[arg(long, default_value_t = 24)]
        den: u32,
        /// Box radius for the truncated regular representation.
        #[arg(long = "box", default_value_t = 12)]
        radius: i64,
        /// Torus grid resolution per axis.
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    #[command(subcommand)]
    Extension(ExtensionCmd),
    #[command(subcommand)]
    Fiber(FiberCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ck,
    MatrixUnits,
    Grading,
    Fejer,
    Intocore,
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// σ(g, h).
    Eval { g: String, h: String },
    /// Cocycle identity, normalization and inverse symmetry.
    Check {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        radius: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Upper triangular representative of a matrix cocycle class.
    NormalForm,
    TotallySkew,
}

#[derive(Subcommand, Debug)]
pub enum ExtensionCmd {
    /// Product in the central extension; elements are written "z;g".
    Mul { x: String, y: String },
    Inv { x: String },
}

#[derive(Subcommand, Debug)]
pub enum FiberCmd {
    /// Image of a lifted element in the fibre over a character.
    Eval {
        a: String,
        /// Character angles, one per coefficient coordinate.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<String>,
        /// Central part of every lifted term; zero by default.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<i64>,
    },
}

/// A failure that is a verdict rather than bad input.
#[derive(Debug)]
pub struct Semantic(pub String);

impl std::fmt::Display for Semantic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Semantic {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let mut msg = e.to_string();
            for cause in e.chain().skip(1) {
                let c = cause.to_string();
                if !msg.contains(&c) {
                    msg = format!("{msg}: {c}");
                }
            }
            eprintln!("error: {msg}");
            if e.downcast_ref::<Semantic>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
