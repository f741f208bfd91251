//! `transys`: enumerate, close, transport and classify global transfer
//! systems on finite truncations of group families.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// List every transfer system on the family.
    Enumerate,
    /// Label a system (read from the input, or the closure of --pair seeds).
    Label,
    /// Answer --pair membership queries in T^N (--label) or an input system.
    Query,
    /// Close the --pair seeds into the least transfer system.
    Close,
    /// Right adjoint of an input system into the family.
    Radjoint,
    /// Restrict an input system to the family.
    Restrict,
    /// Split an input system into its p-primary parts.
    Split,
    /// Merge split parts back into a system on the family.
    Merge,
    /// Hasse diagram of all systems on the family.
    Hasse,
    /// Run the classification and structural checks.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DefaultExponent {
    #[value(name = "0")]
    Zero,
    #[value(name = "TOP", alias = "top")]
    Top,
}

#[derive(Debug, Parser)]
#[command(name = "transys", version, about)]
pub struct Cli {
    pub verb: Verb,
    /// e.g. cycp:p=2,maxexp=3, abp:p=2,maxorder=16, cyc:maxorder=12,
    /// ab:maxorder=12, sigma3, custom:groups=C1+C2+C4
    pub family: String,
    /// A subgroup pair `H : generators`; repeatable.
    #[arg(long = "pair", value_name = "H : gens")]
    pub pairs: Vec<String>,
    /// A generalized prime factorization such as 2^1*3^TOP.
    #[arg(long, value_name = "N")]
    pub label: Option<String>,
    /// Exponent of primes not listed in --label.
    #[arg(long, value_enum, default_value = "0")]
    pub default: DefaultExponent,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for enumeration and adjoints.
    #[arg(long, value_name = "k")]
    pub jobs: Option<usize>,
    /// Seed for the randomized checks.
    #[arg(long, value_name = "s", default_value_t = commands::DEFAULT_SEED)]
    pub seed: u64,
    /// Cross-check enumeration against the exhaustive subset search.
    #[arg(long)]
    pub oracle: bool,
    /// Read the input system from a file instead of standard input.
    #[arg(long, value_name = "path")]
    pub input: Option<PathBuf>,
    /// Randomized trials run by `check`.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("transys: {e:#}");
            ExitCode::from(2)
        }
    }
}
