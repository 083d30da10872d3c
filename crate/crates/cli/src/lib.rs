//! Command-line front end for `stacky-core`.
//!
//! [`run`] parses arguments, dispatches a subcommand and writes CSV or JSON
//! to `out`; diagnostics go to `err`. Exit codes: 0 success, 1 usage or
//! invalid input, 2 capacity, budget or overflow.

mod args;
pub mod output;
pub mod shard;

use std::ffi::OsString;
use std::io::{self, Write};
use std::time::Instant;

use clap::Parser;
use stacky_core::arith::{d3_summatory, dk_summatory, isqrt_u128, SpfTable};
use stacky_core::census::{
    growth_ratio, integral_census, tuple_census, CensusConfig, IntegralMethod, Mode,
};
use stacky_core::conics::{
    decide_soluble_search, legendre_indicator, soluble_census, QuadTriple, Verdict,
};
use stacky_core::heights::{canonicalize, stacky_height, MCurveSpec};
use stacky_core::Error;

use args::{CensusArgs, Cli, Command, FitArgs, FormatArg, HeightArgs, MethodArg, ModeArg};
use output::{Cell, Format, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;

pub const CENSUS_COLUMNS: [&str; 5] = ["T", "n_points", "n_tuples", "n_integral", "elapsed_s"];
pub const FIT_COLUMNS: [&str; 5] = ["T", "n_points", "sqrt_T", "ln_T_cubed", "ratio"];
pub const SSUM_COLUMNS: [&str; 5] = ["X", "S", "S1", "S2", "soluble_count"];
pub const DIVSUM_COLUMNS: [&str; 3] = ["Z", "sum", "normalized_ratio"];
pub const HEIGHT_COLUMNS: [&str; 8] = [
    "a",
    "b",
    "total",
    "classical",
    "point",
    "multiplicity",
    "lambda",
    "stacky_local",
];
pub const TUPLES_COLUMNS: [&str; 2] = ["T", "n_tuples"];
pub const INTEGRAL_COLUMNS: [&str; 3] = ["T", "method", "n_integral"];
pub const SOLUBLE_COLUMNS: [&str; 9] = [
    "x1",
    "x2",
    "x3",
    "verdict",
    "y1",
    "y2",
    "y3",
    "obstruction",
    "indicator",
];

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            }
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let limit = cli.sieve_limit;
    let record = match &cli.command {
        Command::Height(a) => height(a, limit)?,
        Command::Census(a) => census(a, limit, err)?,
        Command::Tuples { t } => {
            let mut r = single("tuples", &TUPLES_COLUMNS);
            r.push(vec![
                Cell::Int(*t as i128),
                Cell::Int(tuple_census(*t)? as i128),
            ]);
            r
        }
        Command::Integral { t, method } => integral(*t, *method, limit)?,
        Command::Soluble { x1, x2, x3 } => soluble(*x1, *x2, *x3)?,
        Command::Ssum { x } => ssum(*x, limit)?,
        Command::Divsum { z, k, harmonic } => divsum(*z, *k, *harmonic, limit)?,
        Command::Fit(a) => fit(a, limit, err)?,
    };
    record.write(format, out)?;
    Ok(())
}

fn single(schema: &'static str, columns: &[&'static str]) -> OutputRecord {
    let mut r = OutputRecord::new(schema, columns);
    r.single = true;
    r
}

fn need_table(what: String, required: u128, limit: usize) -> CliResult<()> {
    if required > limit as u128 {
        return Err(Error::Capacity {
            what,
            required,
            limit: limit as u128,
        }
        .into());
    }
    Ok(())
}

fn table(size: usize) -> CliResult<SpfTable> {
    Ok(SpfTable::new(size.max(2))?)
}

fn parse_spec(points: &str, mults: &str) -> CliResult<MCurveSpec> {
    let split = |s: &str| -> Vec<String> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(String::from)
            .collect()
    };
    let pts = split(points);
    let ms = split(mults);
    if pts.len() != ms.len() {
        return Err(CliError::Usage(format!(
            "{} marked points but {} multiplicities",
            pts.len(),
            ms.len()
        )));
    }
    let mut marked = Vec::with_capacity(pts.len());
    for (p, m) in pts.iter().zip(&ms) {
        let (c, d) = p
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("marked point {p:?} is not of the form c:d")))?;
        let num = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad coordinate {s:?}")))
        };
        let m = m
            .parse::<u32>()
            .map_err(|_| CliError::Usage(format!("bad multiplicity {m:?}")))?;
        marked.push((canonicalize(num(c)?, num(d)?)?, m));
    }
    Ok(MCurveSpec::new(marked)?)
}

fn height(args: &HeightArgs, limit: usize) -> CliResult<OutputRecord> {
    let spec = parse_spec(&args.points, &args.mults)?;
    let t = canonicalize(args.a, args.b)?;
    let coord = spec
        .marked()
        .iter()
        .map(|(p, _)| p.classical_height())
        .max()
        .unwrap_or(1);
    let lambda_max = 2 * t.classical_height() as u128 * coord as u128;
    let size = (isqrt_u128(lambda_max) + 2).min(limit as u128) as usize;
    let h = stacky_height(&spec, &t, &table(size)?)?;
    let mut r = OutputRecord::new("height", &HEIGHT_COLUMNS);
    let head = [
        Cell::Int(t.a() as i128),
        Cell::Int(t.b() as i128),
        Cell::Int(h.total as i128),
        Cell::Int(h.classical as i128),
    ];
    if h.local_parts.is_empty() {
        let mut row = head.to_vec();
        row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
        r.push(row);
    }
    for part in &h.local_parts {
        let mut row = head.to_vec();
        row.extend([
            Cell::Text(part.point.to_string()),
            Cell::Int(part.multiplicity as i128),
            Cell::Int(part.lambda as i128),
            Cell::Int(part.stacky_local as i128),
        ]);
        r.push(row);
    }
    Ok(r)
}

fn census_config(
    t: u64,
    mode: ModeArg,
    oracle_budget: u64,
    limit: usize,
) -> CliResult<CensusConfig> {
    let mode = match mode {
        ModeArg::Oracle => Mode::Oracle,
        ModeArg::Stratified => Mode::Stratified,
    };
    // the oracle tabulates squarefree parts up to 2T, the stratified engine up to T
    let required = match mode {
        Mode::Oracle => 2 * t as u128,
        Mode::Stratified => t as u128,
    };
    need_table(format!("census at T = {t}"), required, limit)?;
    let mut cfg = CensusConfig::new(t, mode);
    cfg.oracle_budget = oracle_budget;
    Ok(cfg)
}

fn census(args: &CensusArgs, limit: usize, err: &mut dyn Write) -> CliResult<OutputRecord> {
    let cfg = census_config(args.t, args.mode, args.oracle_budget, limit)?;
    let start = Instant::now();
    let c = shard::sharded_census(&cfg, args.shards)?;
    let elapsed = start.elapsed().as_secs_f64();
    writeln!(err, "elapsed_s={}", output::decimal(elapsed))?;
    let mut r = single("census", &CENSUS_COLUMNS);
    r.push(vec![
        Cell::Int(c.t as i128),
        Cell::Int(c.n_points as i128),
        c.n_tuples.map_or(Cell::Empty, |n| Cell::Int(n as i128)),
        Cell::Int(c.n_integral as i128),
        if args.timing {
            Cell::Decimal(elapsed)
        } else {
            Cell::Empty
        },
    ]);
    if !args.timing {
        r.json_skip = vec!["elapsed_s"];
    }
    Ok(r)
}

fn integral(t: u64, method: MethodArg, limit: usize) -> CliResult<OutputRecord> {
    let (method, name) = match method {
        MethodArg::Filter => (IntegralMethod::Filter, "filter"),
        MethodArg::Parametrize => (IntegralMethod::Parametrize, "parametrize"),
    };
    if method == IntegralMethod::Filter {
        need_table(
            format!("integral filter at T = {t}"),
            isqrt_u128(2 * t as u128) + 2,
            limit,
        )?;
    }
    let mut r = single("integral", &INTEGRAL_COLUMNS);
    r.push(vec![
        Cell::Int(t as i128),
        Cell::Text(name.into()),
        Cell::Int(integral_census(t, method)? as i128),
    ]);
    Ok(r)
}

fn soluble(x1: u64, x2: u64, x3: u64) -> CliResult<OutputRecord> {
    let q = QuadTriple::new(x1, x2, x3)?;
    let cert = decide_soluble_search(&q)?;
    let indicator = legendre_indicator(&q);
    let verdict = match cert.verdict {
        Verdict::Soluble => "soluble",
        Verdict::Insoluble => "insoluble",
    };
    let (y1, y2, y3) = match cert.solution {
        Some((a, b, c)) => (
            Cell::Int(a as i128),
            Cell::Int(b as i128),
            Cell::Int(c as i128),
        ),
        None => (Cell::Empty, Cell::Empty, Cell::Empty),
    };
    let mut r = single("soluble", &SOLUBLE_COLUMNS);
    r.push(vec![
        Cell::Int(x1 as i128),
        Cell::Int(x2 as i128),
        Cell::Int(x3 as i128),
        Cell::Text(verdict.into()),
        y1,
        y2,
        y3,
        cert.obstruction
            .map_or(Cell::Empty, |p| Cell::Int(p as i128)),
        Cell::Int(indicator as i128),
    ]);
    Ok(r)
}

fn ssum(x: u64, limit: usize) -> CliResult<OutputRecord> {
    need_table(format!("soluble sums up to X = {x}"), x as u128, limit)?;
    let c = soluble_census(x, &table(x as usize)?)?;
    let mut r = single("ssum", &SSUM_COLUMNS);
    r.push(vec![
        Cell::Int(x as i128),
        Cell::Rational(c.s),
        Cell::Rational(c.s1),
        Cell::Rational(c.s2),
        Cell::Int(c.count as i128),
    ]);
    Ok(r)
}

fn divsum(z: u64, k: u32, harmonic: bool, limit: usize) -> CliResult<OutputRecord> {
    need_table(format!("divisor sums up to Z = {z}"), z as u128, limit)?;
    let tb = table(z as usize)?;
    let sum = if k == 3 {
        d3_summatory(z, harmonic, &tb)?
    } else {
        dk_summatory(z, k, harmonic, &tb)?
    };
    let value = match &sum {
        stacky_core::arith::DivisorSum::Count(n) => Cell::Int(*n as i128),
        stacky_core::arith::DivisorSum::Harmonic(f) => Cell::Decimal(f.to_f64()),
    };
    let mut r = single("divsum", &DIVSUM_COLUMNS);
    r.push(vec![
        Cell::Int(z as i128),
        value,
        sum.normalized_ratio(z, k)
            .map_or(Cell::Empty, Cell::Decimal),
    ]);
    Ok(r)
}

/// `steps` geometrically spaced bounds from `lo` to `hi`, rounded and deduplicated.
pub fn geometric_bounds(lo: u64, hi: u64, steps: usize) -> Vec<u64> {
    if steps <= 1 || lo == hi {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).ln() / (steps - 1) as f64;
    let mut ts: Vec<u64> = (0..steps)
        .map(|i| match i {
            0 => lo,
            i if i == steps - 1 => hi,
            i => ((lo as f64) * (ratio * i as f64).exp()).round() as u64,
        })
        .map(|t| t.clamp(lo, hi))
        .collect();
    ts.dedup();
    ts
}

fn fit(args: &FitArgs, limit: usize, err: &mut dyn Write) -> CliResult<OutputRecord> {
    if args.t_min < 2 || args.t_max < args.t_min || args.steps == 0 {
        return Err(CliError::Usage(
            "fit needs 2 <= t-min <= t-max and steps >= 1".into(),
        ));
    }
    let mut r = OutputRecord::new("fit", &FIT_COLUMNS);
    for t in geometric_bounds(args.t_min, args.t_max, args.steps) {
        let cfg = census_config(t, args.mode, args.oracle_budget, limit)?;
        let start = Instant::now();
        let c = shard::sharded_census(&cfg, args.shards)?;
        writeln!(
            err,
            "T={t} elapsed_s={}",
            output::decimal(start.elapsed().as_secs_f64())
        )?;
        let row = growth_ratio(t, c.n_points)?;
        r.push(vec![
            Cell::Int(t as i128),
            Cell::Int(c.n_points as i128),
            Cell::Decimal(row.sqrt_t),
            Cell::Decimal(row.ln_t_cubed),
            Cell::Decimal(row.ratio),
        ]);
    }
    Ok(r)
}
