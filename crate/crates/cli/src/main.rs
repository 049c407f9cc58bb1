//! `fiberlab`: batch front end for definition files, invariants and
//! verification reports.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fiberlab", version, about = "Homological invariants of monomial ideals and fiber products")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Coefficient field characteristic: 0 or a prime.
    #[arg(long = "char", global = true, value_name = "P")]
    pub characteristic: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<std::path::PathBuf>,
    /// Cap overrides such as `lattice=5000000,basis=400000`, applied on top
    /// of FIBERLAB_CAPS.
    #[arg(long, global = true, value_name = "SPEC")]
    pub caps: Option<String>,
    /// Include elapsed times in reports (output is then not reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Evaluate an expression over a definition file.
    Eval { file: String, expr: String },
    /// Multigraded and graded Betti numbers of a named ideal.
    Betti { file: String, name: String },
    /// Regularity, projective dimension, depth and linearity of a named ideal.
    Invariants { file: String, name: String },
    /// Graded Tor dimensions from the Koszul complex, or the induced map
    /// into a larger ideal.
    Tor {
        file: String,
        name: String,
        #[arg(long, value_name = "NAME")]
        into: Option<String>,
    },
    /// Whether the inclusion of one ideal into another is Tor-vanishing.
    Torvanish { file: String, source: String, target: String },
    /// Check a single claim on given inputs.
    Verify {
        claim: String,
        /// First ideal as FILE:NAME.
        #[arg(long = "I", value_name = "FILE:NAME")]
        i: Option<String>,
        /// Second ideal as FILE:NAME.
        #[arg(long = "J", value_name = "FILE:NAME")]
        j: Option<String>,
        #[arg(long = "s", default_value_t = 2)]
        s: u32,
        /// Graph as `N: 1-2, 2-3`.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
    /// Run a scripted scenario.
    Scenario { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Certificate,
    Exact,
    Both,
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
    ExitCode::from(commands::run(cli))
}
