//! `ncalg`: rational series, Hopf bases and Chen series from the command line.
//!
//! Exit status: 0 on success (or when an identity holds), 1 when an
//! identity fails, 2 on usage and input errors.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ncalg", version, about = "Noncommutative rational series and Chen series")]
pub struct Cli {
    /// Coefficient ring: Q, Q[t] or Q(z).
    #[arg(long, global = true, default_value = "Q")]
    pub ring: String,
    /// Seed for `random:<dim>` operands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Sum,
    Conc,
    Shuffle,
    Stuffle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphabetArg {
    X,
    Y,
}

/// Operands are expressions such as `(x0.x1)* shuffle x1`, paths to
/// representation files, or `random:<dim>` (two letters, `--seed`).
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the polynomial, or the expansion up to `--max-length`.
    Expand {
        expr: String,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Combine two operands; prints the representation or its expansion.
    Op {
        #[arg(value_enum)]
        op: Op,
        lhs: String,
        rhs: String,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Kleene star of a proper operand.
    Star {
        operand: String,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Tab-separated table of the dual bases up to `--max-length`.
    Bases {
        #[arg(long, value_enum, default_value = "x")]
        alphabet: AlphabetArg,
        /// Number of letters of X.
        #[arg(long, default_value_t = 2)]
        letters: u32,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
    },
    /// Minimal representation (over the fraction field of the ring).
    Minimize { operand: String },
    /// exchangeable, nilpotent, solvable or general.
    Classify { operand: String },
    /// Exit 0 when both sides denote the same series, 1 otherwise.
    CheckIdentity {
        lhs: String,
        rhs: String,
        /// Compare expansions up to this length instead of exactly.
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Table of Chen coefficients: word, value, error estimate.
    Chen {
        #[arg(long)]
        inputs: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z0: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// `<C, R>` by truncated series (with tail bound) and by the linear ODE.
    Pair {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        inputs: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z0: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Least-order scalar ODE satisfied by `<C, R>`.
    DeriveOde {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        inputs: String,
        /// Defaults to the dimension of the representation.
        #[arg(long)]
        max_order: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("ncalg: {e}");
            ExitCode::from(2)
        }
    }
}
