use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fibsum_core::{Parity, Sign};
use serde::Deserialize;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "fibsum",
    version,
    about = "Fibonacci/Lucas arithmetic and the search for F_n ± F_m = y^p"
)]
pub struct Cli {
    /// TOML file whose keys are long flag names; explicit flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print F_n or L_n, optionally reduced modulo M.
    Seq {
        kind: SeqArg,
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<String>,
    },
    /// Factor F_n ± F_m as F_N · L_M.
    Factor {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_parser = parse_sign)]
        sign: Sign,
    },
    /// Exhaustive search for F_n ± F_m = y^p with 0 ≤ m ≤ n ≤ max-n.
    Search {
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long, value_parser = parse_sign_choice)]
        sign: Option<SignChoice>,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        workers: Option<NonZeroUsize>,
        /// Emit rows whose value is 0 or 1 (default: true).
        #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
        include_degenerate: Option<bool>,
    },
    /// Run a finite-range verification; exit status 1 on failure.
    Verify {
        target: VerifyTarget,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        workers: Option<NonZeroUsize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    Fib,
    Lucas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SignChoice {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "both")]
    Both,
}

impl SignChoice {
    pub fn flags(self) -> (bool, bool) {
        match self {
            SignChoice::Plus => (true, false),
            SignChoice::Minus => (false, true),
            SignChoice::Both => (true, true),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Any,
    Same,
    Mixed,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Any => Parity::Any,
            ParityArg::Same => Parity::Same,
            ParityArg::Mixed => Parity::Mixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Powers2,
    Powers3,
    RatioSquares,
    Fnlm,
    L18,
    Theorem1,
}

impl VerifyTarget {
    pub fn default_bound(self) -> u64 {
        match self {
            VerifyTarget::Powers2 | VerifyTarget::Powers3 => 1000,
            VerifyTarget::RatioSquares => 400,
            VerifyTarget::Fnlm => 60,
            VerifyTarget::L18 => 20000,
            VerifyTarget::Theorem1 => 300,
        }
    }
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse()
        .map_err(|_| format!("expected '+' or '-', got '{s}'"))
}

fn parse_sign_choice(s: &str) -> Result<SignChoice, String> {
    match s {
        "+" | "plus" => Ok(SignChoice::Plus),
        "-" | "minus" => Ok(SignChoice::Minus),
        "both" => Ok(SignChoice::Both),
        _ => Err(format!("expected '+', '-' or 'both', got '{s}'")),
    }
}
