//! `liefields`: command-line access to the vector-field analyses.
//!
//! Exit status is 0 on success, 1 when a computed property or certificate
//! fails, and 2 on usage or parse errors.

mod commands;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "liefields", version, about = "Lie algebras of polynomial vector fields on affine varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Initial jet order for local expansions.
    #[arg(long, env = "LIEFIELDS_JET_ORDER", default_value_t = 6, global = true)]
    pub jet_order: u32,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where the variety comes from: `--vars` with repeated `--ideal`, or a file.
#[derive(Args, Debug, Clone)]
pub struct VarietyArgs {
    /// Space-separated variable names.
    #[arg(long)]
    pub vars: Option<String>,
    /// An ideal generator; repeat for several.
    #[arg(long = "ideal")]
    pub ideal: Vec<String>,
    /// A variety file: a `vars:` line followed by one generator per line.
    #[arg(long, conflicts_with_all = ["vars", "ideal"])]
    pub file: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobian smoothness test with a cofactor certificate.
    Smooth(VarietyArgs),
    /// Generators of the module of tangent vector fields.
    Generators(VarietyArgs),
    /// Lie bracket of two tangent fields.
    Bracket {
        #[command(flatten)]
        variety: VarietyArgs,
        /// First field, components separated by commas.
        #[arg(long)]
        eta: String,
        /// Second field.
        #[arg(long)]
        mu: String,
    },
    /// A field in the Lie ideal of a seed that moves a local parameter at a point.
    Witness {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long)]
        field: String,
        /// Coordinates separated by commas, e.g. `1/2,0`.
        #[arg(long)]
        point: String,
        /// Largest jet order tried.
        #[arg(long, default_value_t = 48)]
        jet_cap: u32,
    },
    /// Certificate that the Lie ideal generated by a seed contains 1 times every field.
    Simplicity {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long)]
        field: String,
        /// Sample point; repeat for several.
        #[arg(long = "point")]
        points: Vec<String>,
        /// Height bound for automatically sampled points.
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Singular-locus invariance and the filtration level of a field.
    Filtration {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Harmonic analysis on the sphere in `N` variables.
    Sphere {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Harmonic degree to examine.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// A homogeneous polynomial in `x1..xN` to decompose.
        #[arg(long)]
        decompose: Option<String>,
    },
    /// The curve `y^2 = 2 h(x)`.
    Curve {
        /// The polynomial `h` in `x`.
        #[arg(long)]
        h: String,
        /// Degree window for the bounded checks.
        #[arg(long, default_value_t = 12)]
        bound: u32,
    },
    /// Invariant fields on `SL_n`.
    Group {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Allow `n = 3`.
        #[arg(long)]
        slow: bool,
    },
    /// Randomized property checks across the library.
    Selftest {
        /// Instances per property.
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
}

/// What a command produced.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize")),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
