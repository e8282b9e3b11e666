//! `mucalc`: command-line front end for the modal μ-calculus toolkit.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INPUT: u8 = 65;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl From<mucalc_core::Error> for CliError {
    fn from(e: mucalc_core::Error) -> Self {
        match e {
            mucalc_core::Error::Invariant(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

/// Modal μ-calculus toolkit: continuity fragments, normal forms, Kripke and
/// parity-game semantics, closure ordinals.
///
/// FORMULA arguments are formula text, or `@path` to read a file (`@-` for
/// stdin). MODEL arguments are a model file, `-` for stdin, or one of the
/// shorthands `chain:N`, `ordchain:N`, `sum:M,N`.
#[derive(Debug, Parser)]
#[command(name = "mucalc", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock limit in seconds for searches.
    #[arg(long, global = true, value_name = "SECS")]
    pub time_limit: Option<f64>,
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Accept reserved boxed-copy names such as `x#b` in formulas.
    #[arg(long, global = true)]
    pub allow_reserved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Lift,
    Flatten,
    Boxing,
    Cnf,
    Translate,
    Thomason,
    Sum,
    Totalize,
    MasterBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Submodel,
    Referee,
    Thomason,
}

#[derive(Debug, Subcommand)]
pub enum GenModel {
    /// `s0 -a-> s1 -a-> … s{N-1}` with the variable true at the last state.
    Chain {
        n: usize,
        #[arg(long, default_value = "p")]
        prop: String,
        #[arg(long, default_value = "a")]
        action: String,
    },
    /// The finite ordinal chain `0 … N-1` over actions `h` and `v`.
    Ordchain { n: usize },
    /// The sum witness of a `q`-chain of length M and one of length N.
    Sum { m: usize, n: usize },
    /// The monomodal Thomason coding of a model over `h` and `v`.
    Thomason { model: String },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and report its basic shape.
    Parse { formula: String },
    /// Print a formula in concrete syntax.
    Print {
        formula: String,
        /// Rename binders apart first.
        #[arg(long)]
        well_named: bool,
        /// List the closure instead.
        #[arg(long)]
        closure: bool,
    },
    /// Classify free-variable occurrences as not-bad, boxed or very-bad.
    Classify {
        formula: String,
        /// Only report these variables.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Membership in the fragments C(X) and C0(X).
    Fragment {
        formula: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Apply a formula construction.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        formula: String,
        /// The distinguished variable.
        #[arg(long, default_value = "x")]
        var: String,
        /// Variable set for boxing (defaults to `--var`).
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// Translation scheme for `--op translate`.
        #[arg(long, value_enum, default_value_t = Scheme::Submodel)]
        scheme: Scheme,
        /// Marker variable of the translation or sum.
        #[arg(long, default_value = "p")]
        marker: String,
        /// Action(s) of the sum and master-box constructions.
        #[arg(long, value_delimiter = ',')]
        actions: Vec<String>,
        /// Second summand for `--op sum` (defaults to FORMULA).
        #[arg(long, value_name = "FORMULA")]
        with: Option<String>,
    },
    /// Evaluate a formula on a model.
    Eval {
        #[arg(long)]
        model: String,
        formula: String,
        /// Print whether this state satisfies the formula.
        #[arg(long)]
        state: Option<String>,
    },
    /// Print the approximants of the least fixpoint of FORMULA in `--var`.
    Approx {
        #[arg(long)]
        model: String,
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Print the closure ordinal of FORMULA in `--var` on a model.
    Clord {
        #[arg(long)]
        model: String,
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Build and solve the model-checking parity game.
    Game {
        #[arg(long)]
        model: String,
        formula: String,
        /// Print the arena.
        #[arg(long)]
        dump: bool,
        /// Print the winner at this state.
        #[arg(long, value_name = "STATE")]
        check: Option<String>,
    },
    /// Bisimulation classes of a model, or bisimilar pairs across two.
    Bisim {
        model: String,
        other: Option<String>,
        /// Decide one pair `S T` (T in the second model if given).
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        pair: Option<Vec<String>>,
    },
    /// Print a generated model.
    #[command(subcommand)]
    GenModel(GenModel),
    /// Classify FORMULA as continuous in `--var` or find a counterexample.
    CheckContinuity {
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
            } else {
                if let Some(note) = &out.note {
                    eprintln!("note: {note}");
                }
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
