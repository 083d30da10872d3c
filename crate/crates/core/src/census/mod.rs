//! Counting points of bounded height on the curve with half-points at
//! `0`, `-1` and `infinity`.
//!
//! Writing `a = x1 y1^2`, `b = x2 y2^2`, `a + b = x3 y3^2` with squarefree
//! `x_i`, a point `[a:b]` with `a, b, a+b` nonzero gives a solution of
//!
//! ```text
//! x1 y1^2 + x2 y2^2 = x3 y3^2,   x1 > 0,  x1 y1^2 >= |x2 y2^2|
//! ```
//!
//! with pairwise coprime `x_i` and `y_i` and height `(x1 y1)^2 |x2 x3|`.
//! The normalisation `x1 y1^2 >= |x2 y2^2|` sends `[a:b]` and `[b:a]` to the
//! same tuple, so the tuple count `N(T)` is eight times the number of such
//! pairs: `N(T) = 4 n_points + 4` once `[1:1]` is in range.
//!
//! Two engines count the points: [`OracleEngine`] sweeps coordinate pairs,
//! [`StratifiedEngine`] splits tuple space at `y1 y2 y3 = sqrt(T)` into a
//! linear part (lattice progressions in `x`) and a quadratic part (conic
//! fibres over `x`). Both expose disjoint shards so callers can run them in
//! parallel and add the results.

mod integral;
mod lattice;
mod oracle;
mod ratio;
mod stratified;
mod tuples;

pub use integral::{integral_census, integral_points, IntegralMethod};
pub use lattice::{count_primitive_in_box, dichotomy_holds, primitive_points_in_box, LatticeBox};
pub use oracle::OracleEngine;
pub use ratio::{band, growth_ratio, ratio_series, RatioRow};
pub use stratified::StratifiedEngine;
pub use tuples::tuple_census;

use crate::heights::MCurveSpec;
use crate::Result;

/// Default largest `T` accepted by the oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    Oracle,
    #[default]
    Stratified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub t: u64,
    pub mode: Mode,
    pub spec: MCurveSpec,
    pub oracle_budget: u64,
}

impl CensusConfig {
    pub fn new(t: u64, mode: Mode) -> Self {
        CensusConfig {
            t,
            mode,
            spec: MCurveSpec::three_half_points(),
            oracle_budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

/// Counts for one height bound. `n_tuples` counts the signed tuples above and
/// is only defined for the three-half-point curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusCounts {
    pub t: u64,
    pub n_points: u64,
    pub n_tuples: Option<u64>,
    pub n_integral: u64,
}

impl CensusCounts {
    pub(crate) fn empty(t: u64, with_tuples: bool) -> Self {
        CensusCounts {
            t,
            n_points: 0,
            n_tuples: with_tuples.then_some(0),
            n_integral: 0,
        }
    }

    /// Adds counts from a disjoint shard.
    pub fn merge(self, other: CensusCounts) -> CensusCounts {
        debug_assert_eq!(self.t, other.t);
        CensusCounts {
            t: self.t,
            n_points: self.n_points + other.n_points,
            n_tuples: self.n_tuples.zip(other.n_tuples).map(|(a, b)| a + b),
            n_integral: self.n_integral + other.n_integral,
        }
    }
}

/// A prepared engine; tables are built once and shared by all shards.
pub enum CensusEngine {
    Oracle(OracleEngine),
    Stratified(StratifiedEngine),
}

impl CensusEngine {
    pub fn prepare(cfg: &CensusConfig) -> Result<Self> {
        Ok(match cfg.mode {
            Mode::Oracle => CensusEngine::Oracle(OracleEngine::new(cfg)?),
            Mode::Stratified => CensusEngine::Stratified(StratifiedEngine::new(cfg)?),
        })
    }

    /// Counts over shard `shard` of `shards`; shards partition the work.
    pub fn count_shard(&self, shard: usize, shards: usize) -> Result<CensusCounts> {
        match self {
            CensusEngine::Oracle(e) => e.count_shard(shard, shards),
            CensusEngine::Stratified(e) => e.count_shard(shard, shards),
        }
    }

    pub fn count(&self) -> Result<CensusCounts> {
        self.count_shard(0, 1)
    }
}

/// Single-threaded census.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusCounts> {
    CensusEngine::prepare(cfg)?.count()
}

pub fn oracle_census(t: u64) -> Result<CensusCounts> {
    run_census(&CensusConfig::new(t, Mode::Oracle))
}

pub fn stratified_census(t: u64) -> Result<CensusCounts> {
    run_census(&CensusConfig::new(t, Mode::Stratified))
}

pub(crate) fn check_shard(shard: usize, shards: usize) -> Result<()> {
    if shards == 0 || shard >= shards {
        return Err(crate::Error::invalid(alloc::format!(
            "shard {shard} out of range for {shards} shards"
        )));
    }
    Ok(())
}
