use clap::{Args, Parser, Subcommand, ValueEnum};
use stacky_core::arith::DEFAULT_SIEVE_LIMIT;

#[derive(Debug, Parser)]
#[command(
    name = "stacky",
    version,
    about = "Heights and point counts on the projective line with half-points"
)]
pub struct Cli {
    /// Largest table the sieve may build.
    #[arg(long, global = true, default_value_t = DEFAULT_SIEVE_LIMIT)]
    pub sieve_limit: usize,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Oracle,
    Stratified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Filter,
    Parametrize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Height of [a:b] with its local breakdown.
    Height(HeightArgs),
    /// Count points of height at most T.
    Census(CensusArgs),
    /// Count tuples by direct enumeration.
    Tuples {
        #[arg(long)]
        t: u64,
    },
    /// Count integral points of height at most T.
    Integral {
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Filter)]
        method: MethodArg,
    },
    /// Decide whether x1 y1^2 + x2 y2^2 = x3 y3^2 has a nonzero solution.
    Soluble {
        #[arg(long)]
        x1: u64,
        #[arg(long)]
        x2: u64,
        #[arg(long)]
        x3: u64,
    },
    /// Weighted sums over soluble triples with x1 x2 x3 <= X.
    Ssum {
        #[arg(long)]
        x: u64,
    },
    /// Summatory divisor function of order k.
    Divsum {
        #[arg(long)]
        z: u64,
        #[arg(long)]
        k: u32,
        /// Sum d_k(n)/n instead.
        #[arg(long)]
        harmonic: bool,
    },
    /// Growth ratio N(T) / (sqrt(T) (ln T)^3) over a geometric range.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct HeightArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    /// Marked points as "c:d,c:d,...".
    #[arg(long, allow_hyphen_values = true, default_value = "0:1,-1:1,1:0")]
    pub points: String,
    /// Multiplicities, one per marked point.
    #[arg(long, default_value = "2,2,2")]
    pub mults: String,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub t: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Stratified)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Largest T the oracle will sweep.
    #[arg(long, default_value_t = stacky_core::census::DEFAULT_ORACLE_BUDGET)]
    pub oracle_budget: u64,
    /// Fill the elapsed_s column.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub t_min: u64,
    #[arg(long)]
    pub t_max: u64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Stratified)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    #[arg(long, default_value_t = stacky_core::census::DEFAULT_ORACLE_BUDGET)]
    pub oracle_budget: u64,
}
