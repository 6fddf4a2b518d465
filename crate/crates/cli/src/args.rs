use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlv_core::kernel::YConvention;
use hlv_core::partitions::MultiPartition;

#[derive(Parser, Debug)]
#[command(
    name = "hlv",
    version,
    about = "Exact kernel polynomials, their specializations, and verification sweeps"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Output format. `text` prints only the main polynomial or value where
    /// that makes sense and falls back to JSON otherwise.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory holding the Macdonald cache.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Keep Macdonald expansions in memory only.
    #[arg(long, global = true, conflicts_with = "cache_dir")]
    pub no_cache: bool,
    /// Worker threads for sweeps; 0 picks the number of cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ℍ_μ(z,w) with its specializations and checks.
    Kernel(Instance),
    /// E-polynomial of the character variety.
    Epoly(EvalInstance),
    /// Kac polynomial of the comet-shaped quiver.
    Kac(EvalInstance),
    /// Conjectural mixed Hodge polynomial.
    Mhp(Instance),
    /// Genus-one identity against Göttsche's product.
    HilbertCheck {
        /// Order in T of the check at (z,w) = (1/s, s).
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        /// Order in T of the check in z and w.
        #[arg(long, default_value_t = 5)]
        trunc: u32,
    },
    /// Eisenstein-series expansion of the genus-one hook kernels.
    QuasimodularCheck {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 8)]
        u_order: u32,
    },
    /// Log Ω against the Schur expansion in the alphabet y.
    ExpansionCheck {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long, default_value_t = YConvention::Geometric)]
        y_convention: YConvention,
    },
    /// Lowest q-powers of the summands A_λ(q).
    OptimSweep {
        #[arg(long)]
        g: u32,
        /// Sweep only this μ; otherwise every μ = (1ⁿ), (n) with k copies.
        #[arg(long, value_parser = parse_mu)]
        mu: Option<MultiPartition>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = YConvention::Geometric)]
        y_convention: YConvention,
    },
    /// Brute-force counts over finite fields.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Points of the character variety for a generic class tuple of type μ.
    PointCount {
        #[arg(long)]
        g: u32,
        #[arg(long, value_parser = parse_mu)]
        mu: MultiPartition,
        #[arg(long)]
        q: u32,
    },
    /// Absolutely indecomposable representations of a comet-shaped quiver.
    KacCount {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Every suite over a bounded range of instances.
    All {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        g_max: u32,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 8)]
        u_order: u32,
    },
}

#[derive(Args, Debug)]
pub struct Instance {
    #[arg(long)]
    pub g: u32,
    #[command(flatten)]
    pub target: Target,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Multipartition such as "2,1|1,1,1".
    #[arg(long, value_parser = parse_mu)]
    pub mu: Option<MultiPartition>,
    /// Dimension vector "v0; leg / leg ..." such as "2; 1 / 1 / 1".
    #[arg(long)]
    pub dimvec: Option<String>,
}

#[derive(Args, Debug)]
pub struct EvalInstance {
    #[command(flatten)]
    pub instance: Instance,
    /// Evaluate the polynomial at this q.
    #[arg(long, allow_negative_numbers = true)]
    pub eval_q: Option<i64>,
}

fn parse_mu(s: &str) -> Result<MultiPartition, String> {
    s.parse().map_err(|e| format!("{e}"))
}
