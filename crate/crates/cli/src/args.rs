use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "ay", version, about = "Periodic points of the cubic Arnoux-Yoccoz scaling dynamics")]
pub struct Cli {
    /// Worker threads for enumeration and survey loops.
    #[arg(long, global = true, default_value_t = default_workers(), value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Significant digits (or decimal places, for coordinates) of display
    /// values. Exact values are always printed in full.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=40))]
    pub precision: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Re-derive the IET path data, permutation and incidence data.
    VerifyTables,
    /// Symbolic code of a point given as "c0;c1;c2".
    Code {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Emit only the first k symbols.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        depth: Option<u64>,
    },
    /// All γ-periodic points of period dividing n.
    Cycles {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        period: u32,
    },
    /// Multiplicity and core-region statistics for n = 1..max.
    Stats {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        max_period: u32,
    },
    /// Densities of integer parts β at the largest periods.
    CoreRegion {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        max_period: u32,
    },
    /// Fractional parts of the n-cycles as points of the unit cube.
    Embed {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        period: u32,
    },
    /// Splitting of the prime factors of m, the bound T(m) and orders mod m.
    Order {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        modulus: u64,
    },
    /// Periodic points ordered by denominator.
    Denominators {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=64))]
        max_m: u64,
    },
    /// The factorization of 1−ωⁿ into cyclotomic values.
    Cyclotomic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
        max_n: u64,
    },
    /// Run the acceptance criteria and report a verdict for each.
    ReproduceAll {
        #[arg(long, default_value_t = 60)]
        budget_minutes: u64,
    },
}

fn default_workers() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}
