use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rft",
    version,
    about = "Ramanujan sums, DFT and Ramanujan-Fourier transforms of functions mod r"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Tolerance for floating-point comparisons (exact paths ignore it).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ramanujan's sum C(n, r): `csum N R`, or `csum --table R` for the
    /// divisor-indexed table C(r/e, d).
    Csum {
        /// Print the table C(r/e, d) for all d, e dividing R.
        #[arg(long)]
        table: bool,

        /// `N R`, or just `R` with --table.
        #[arg(required = true, num_args = 1..=2, allow_negative_numbers = true)]
        args: Vec<i64>,
    },

    /// DFT/IDFT of a periodic file or RFT/IRFT of an even file.
    Transform {
        input: PathBuf,

        #[arg(long, value_enum)]
        kind: Kind,

        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
    },

    /// Cauchy product of two functions with the same modulus.
    Cauchy {
        f: PathBuf,
        g: PathBuf,

        /// Naive double sum, or the spectral (transform) route.
        #[arg(long, value_enum, default_value_t = ProductPath::Naive)]
        path: ProductPath,

        /// Compute both routes and report the largest entrywise difference.
        #[arg(long)]
        check: bool,
    },

    /// Check the transform identities for every modulus 1..=RMAX.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,

        #[arg(long)]
        rmax: u64,

        /// Seed for the random even functions used by the bridge suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dft,
    Rft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductPath {
    Naive,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthogonality,
    Symmetry,
    Bridge,
    CauchyKernel,
    All,
}
