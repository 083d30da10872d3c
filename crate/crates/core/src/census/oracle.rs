use alloc::vec::Vec;

use super::{check_shard, CensusConfig, CensusCounts};
use crate::arith::{gcd, isqrt_u128, squarefree_parts, SpfTable};
use crate::heights::{canonicalize, is_integral, stacky_height, MCurveSpec, ProjectivePoint};
use crate::{Error, Result};

/// Brute-force point count.
///
/// For the three-half-point curve every squarefree part is at least 1, so
/// `H(a, b) <= T` forces `|a| sqf(a) <= T` and `b sqf(b) <= T`; the sweep runs
/// over pairs of such coordinates and evaluates the height directly. For any
/// other marked-point configuration it visits every pair with
/// `max(|a|, |b|) <= T` and runs the general height machine.
pub struct OracleEngine {
    t: u64,
    spec: MCurveSpec,
    table: SpfTable,
    kind: Kind,
}

enum Kind {
    ThreeHalf {
        /// squarefree part of every n <= 2T
        sqf: Vec<u32>,
        /// all n <= T with n * sqf(n) <= T, ascending
        candidates: Vec<u32>,
    },
    General,
}

impl OracleEngine {
    pub fn new(cfg: &CensusConfig) -> Result<Self> {
        let t = cfg.t;
        if t == 0 {
            return Err(Error::invalid("height bound must be at least 1"));
        }
        if t > cfg.oracle_budget {
            return Err(Error::Budget {
                t,
                budget: cfg.oracle_budget,
            });
        }
        if t > (u32::MAX / 2) as u64 {
            return Err(Error::Overflow("oracle tables"));
        }
        // largest |ad - bc| the sweep can meet
        let coord = cfg
            .spec
            .marked()
            .iter()
            .map(|(p, _)| p.classical_height())
            .max()
            .unwrap_or(1) as u128;
        let lambda_max = 2 * t as u128 * coord;
        let limit = (isqrt_u128(lambda_max) + 2).max(2);
        let limit = usize::try_from(limit).map_err(|_| Error::Overflow("oracle sieve"))?;
        let table = SpfTable::new(limit)?;
        let kind = if cfg.spec.is_three_half_points() {
            let sqf = squarefree_parts(2 * t as usize);
            let candidates = (1..=t as u32)
                .filter(|&n| n as u64 * sqf[n as usize] as u64 <= t)
                .collect();
            Kind::ThreeHalf { sqf, candidates }
        } else {
            Kind::General
        };
        Ok(OracleEngine {
            t,
            spec: cfg.spec.clone(),
            table,
            kind,
        })
    }

    pub fn count_shard(&self, shard: usize, shards: usize) -> Result<CensusCounts> {
        check_shard(shard, shards)?;
        match &self.kind {
            Kind::ThreeHalf { sqf, candidates } => {
                self.sweep_three_half(sqf, candidates, shard, shards)
            }
            Kind::General => self.sweep_general(shard, shards),
        }
    }

    fn sweep_three_half(
        &self,
        sqf: &[u32],
        candidates: &[u32],
        shard: usize,
        shards: usize,
    ) -> Result<CensusCounts> {
        let t = self.t;
        let mut out = CensusCounts::empty(t, true);
        // points with |a| >= b, one per tuple with positive y
        let mut normalized = 0u64;
        for &b in candidates.iter().skip(shard).step_by(shards) {
            let b = b as u64;
            let sb = sqf[b as usize] as u64;
            for &a_abs in candidates {
                let a_abs = a_abs as u64;
                if sb * a_abs > t {
                    break;
                }
                if gcd(a_abs, b) != 1 {
                    continue;
                }
                for a in [a_abs as i64, -(a_abs as i64)] {
                    let sum = a + b as i64;
                    if sum == 0 {
                        continue;
                    }
                    let h = sqf[a_abs as usize] as u128
                        * sb as u128
                        * sqf[sum.unsigned_abs() as usize] as u128
                        * a_abs.max(b) as u128;
                    debug_assert!(h >= a_abs.max(b) as u128);
                    if h > t as u128 {
                        continue;
                    }
                    out.n_points += 1;
                    normalized += (a_abs >= b) as u64;
                    let point = canonicalize(a, b as i64)?;
                    if is_integral(&self.spec, &point, &self.table)?.integral {
                        out.n_integral += 1;
                    }
                }
            }
        }
        out.n_tuples = Some(8 * normalized);
        Ok(out)
    }

    fn sweep_general(&self, shard: usize, shards: usize) -> Result<CensusCounts> {
        let t = self.t as i64;
        let mut out = CensusCounts::empty(self.t, false);
        let visit = |p: ProjectivePoint, out: &mut CensusCounts| -> Result<()> {
            if self.spec.is_marked(&p) {
                return Ok(());
            }
            if stacky_height(&self.spec, &p, &self.table)?.total <= self.t as u128 {
                out.n_points += 1;
                if is_integral(&self.spec, &p, &self.table)?.integral {
                    out.n_integral += 1;
                }
            }
            Ok(())
        };
        // b = 0 contributes the single point [1:0]
        for b in (0..=t).skip(shard).step_by(shards) {
            if b == 0 {
                visit(ProjectivePoint::INFINITY, &mut out)?;
                continue;
            }
            for a in -t..=t {
                if gcd(a.unsigned_abs(), b as u64) == 1 {
                    visit(canonicalize(a, b)?, &mut out)?;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{oracle_census, Mode};
    use crate::heights::eszb_height_222;

    /// Plain double loop over every pair with max(|a|, b) <= T.
    fn brute(t: i64) -> u64 {
        let tb = SpfTable::new(1000).unwrap();
        let mut n = 0;
        for b in 1..=t {
            for a in -t..=t {
                if a == 0 || a + b == 0 || gcd(a.unsigned_abs(), b as u64) != 1 {
                    continue;
                }
                if eszb_height_222(a, b, &tb).unwrap() <= t as u128 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn examples() {
        assert_eq!(brute(1), 0);
        assert_eq!(oracle_census(1).unwrap().n_points, 0);
        assert_eq!(brute(2), 1);
        assert_eq!(oracle_census(2).unwrap().n_points, 1);
        assert_eq!(brute(4), 3);
        let c = oracle_census(4).unwrap();
        assert_eq!((c.n_points, c.n_tuples, c.n_integral), (3, Some(16), 0));
    }

    #[test]
    fn candidate_sweep_matches_full_loop() {
        for t in [5, 16, 25, 50, 120, 333, 700] {
            assert_eq!(
                oracle_census(t).unwrap().n_points,
                brute(t as i64),
                "T = {t}"
            );
        }
    }

    #[test]
    fn general_sweep_agrees_on_the_default_curve() {
        // same curve, written so that the fast path is not taken
        let spec = MCurveSpec::new([
            (ProjectivePoint::INFINITY, 2),
            (ProjectivePoint::ZERO, 2),
            (ProjectivePoint::MINUS_ONE, 2),
        ])
        .unwrap();
        assert!(spec.is_three_half_points());
        let mut cfg = CensusConfig::new(300, Mode::Oracle);
        let e = OracleEngine::new(&cfg).unwrap();
        let fast = e.count_shard(0, 1).unwrap();
        cfg.spec = spec;
        let e = OracleEngine {
            kind: Kind::General,
            ..OracleEngine::new(&cfg).unwrap()
        };
        let slow = e.count_shard(0, 1).unwrap();
        assert_eq!(fast.n_points, slow.n_points);
        assert_eq!(fast.n_integral, slow.n_integral);
    }

    #[test]
    fn general_curve_counts_classical_points() {
        // no marked points: every primitive point with max <= T, including [1:0] and [0:1]
        let mut cfg = CensusConfig::new(10, Mode::Oracle);
        cfg.spec = MCurveSpec::new([]).unwrap();
        let c = OracleEngine::new(&cfg).unwrap().count_shard(0, 1).unwrap();
        let mut want = 1; // [1:0]
        for b in 1..=10i64 {
            for a in -10i64..=10 {
                if gcd(a.unsigned_abs(), b as u64) == 1 {
                    want += 1;
                }
            }
        }
        assert_eq!(c.n_points, want);
        assert_eq!(c.n_integral, want);
        assert_eq!(c.n_tuples, None);
    }

    #[test]
    fn shards_partition_the_sweep() {
        let cfg = CensusConfig::new(2000, Mode::Oracle);
        let e = OracleEngine::new(&cfg).unwrap();
        let whole = e.count_shard(0, 1).unwrap();
        let merged = (0..7)
            .map(|s| e.count_shard(s, 7).unwrap())
            .reduce(CensusCounts::merge)
            .unwrap();
        assert_eq!(whole, merged);
        assert!(e.count_shard(7, 7).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let mut cfg = CensusConfig::new(10, Mode::Oracle);
        cfg.oracle_budget = 9;
        assert!(matches!(
            OracleEngine::new(&cfg),
            Err(Error::Budget { t: 10, budget: 9 })
        ));
        assert!(OracleEngine::new(&CensusConfig::new(0, Mode::Oracle)).is_err());
    }
}
