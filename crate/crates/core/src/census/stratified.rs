use alloc::vec::Vec;

use super::{check_shard, CensusConfig, CensusCounts};
use crate::arith::{exact_sqrt, gcd, is_squarefree_trial, isqrt, squarefree_flags};
use crate::{Error, Result};

/// Counts normalised tuples `(x, y)` with `y_i > 0`. Such a tuple stands for
/// the points `[x1 y1^2 : x2 y2^2]` and `[x2 y2^2 : x1 y1^2]`, which coincide
/// only for `[1:1]`.
///
/// Linear stratum (`y1 y2 y3 <= sqrt(T)`): for fixed `y` and `x1`, the
/// equation pins `x3` to a residue class modulo `y2^2`, and `x3` ranges over
/// `[1, min(T / (x1 y1)^2, 2 x1 y1^2 / y3^2)]`; `x2` then follows.
///
/// Quadratic stratum (`y1 y2 y3 > sqrt(T)`): here `(x1 x2 x3)^4 < 2 T^2`, so
/// the `x` triples are few; for each, `y1` and `y2` run over the box given by
/// the height bound and the normalisation, and `y3` is read off when
/// `(x1 y1^2 + x2 y2^2) / x3` is a perfect square.
pub struct StratifiedEngine {
    t: u64,
    squarefree: Vec<bool>,
    /// pairwise coprime (y1, y2, y3) with y1 y2 y3 <= sqrt(T)
    linear: Vec<[u64; 3]>,
    /// squarefree pairwise coprime (x1, x2, x3), x1, x3 > 0, (x1 |x2| x3)^4 < 2 T^2
    quadratic: Vec<(u64, i64, u64)>,
}

impl StratifiedEngine {
    pub fn new(cfg: &CensusConfig) -> Result<Self> {
        let t = cfg.t;
        if t == 0 {
            return Err(Error::invalid("height bound must be at least 1"));
        }
        if !cfg.spec.is_three_half_points() {
            return Err(Error::invalid(
                "the stratified engine only counts on the curve with half-points at 0, -1, infinity",
            ));
        }
        if t > u32::MAX as u64 {
            return Err(Error::Overflow("stratified tables"));
        }
        Ok(StratifiedEngine {
            t,
            squarefree: squarefree_flags(t as usize),
            linear: linear_strata(t),
            quadratic: quadratic_strata(t),
        })
    }

    pub fn strata_sizes(&self) -> (usize, usize) {
        (self.linear.len(), self.quadratic.len())
    }

    pub fn count_shard(&self, shard: usize, shards: usize) -> Result<CensusCounts> {
        check_shard(shard, shards)?;
        let mut out = CensusCounts::empty(self.t, true);
        for y in self.linear.iter().skip(shard).step_by(shards) {
            self.count_linear(*y, &mut out)?;
        }
        for x in self.quadratic.iter().skip(shard).step_by(shards) {
            self.count_quadratic(*x, &mut out)?;
        }
        out.n_tuples = out.n_tuples.map(|n| n * 8);
        Ok(out)
    }

    fn is_sqf(&self, n: u64) -> bool {
        self.squarefree[n as usize]
    }

    fn count_linear(&self, [y1, y2, y3]: [u64; 3], out: &mut CensusCounts) -> Result<()> {
        let t = self.t;
        let m = y2 * y2;
        let y1s = y1 * y1;
        let y3s = y3 * y3;
        // x3 = x1 * c (mod y2^2)
        let c = if m == 1 {
            0
        } else {
            mul_mod(y1s % m, inverse_mod(y3s % m, m), m)
        };
        let x1_max = isqrt(t) / y1;
        for x1 in 1..=x1_max {
            if !self.is_sqf(x1) {
                continue;
            }
            let a = x1 * y1s;
            let x1y1_sq = (x1 * y1) * (x1 * y1);
            let lim = (t / x1y1_sq).min(2 * a / y3s);
            let r = mul_mod(x1 % m, c, m);
            let mut x3 = if r == 0 { m } else { r };
            while x3 <= lim {
                let num = x3 as i128 * y3s as i128 - a as i128;
                if num != 0 {
                    debug_assert_eq!(num % m as i128, 0);
                    let x2 = (num / m as i128) as i64;
                    let ax2 = x2.unsigned_abs();
                    debug_assert!(ax2 * m <= a);
                    if self.keep(x1, ax2, x3, x1y1_sq)? {
                        tally(out, (x1, x2, x3), a, m);
                    }
                }
                x3 += m;
            }
        }
        Ok(())
    }

    fn count_quadratic(&self, (x1, x2, x3): (u64, i64, u64), out: &mut CensusCounts) -> Result<()> {
        let t = self.t;
        let ax2 = x2.unsigned_abs();
        let base = x1 * x1 * ax2 * x3;
        let y1_max = isqrt(t / base);
        for y1 in 1..=y1_max {
            let a = x1 * y1 * y1;
            let x1y1_sq = (x1 * y1) * (x1 * y1);
            for y2 in 1..=isqrt(a / ax2) {
                let v = a as i128 + x2 as i128 * (y2 * y2) as i128;
                if v <= 0 || v % x3 as i128 != 0 {
                    continue;
                }
                let Some(y3) = exact_sqrt((v / x3 as i128) as u64) else {
                    continue;
                };
                let prod = y1 as u128 * y2 as u128 * y3 as u128;
                if prod * prod <= t as u128 {
                    continue;
                }
                if gcd(y1, y2) != 1 || gcd(y1, y3) != 1 || gcd(y2, y3) != 1 {
                    continue;
                }
                if self.keep(x1, ax2, x3, x1y1_sq)? {
                    tally(out, (x1, x2, x3), a, y2 * y2);
                }
            }
        }
        Ok(())
    }

    /// Height bound, squarefreeness and coprimality of the `x` triple.
    fn keep(&self, x1: u64, ax2: u64, x3: u64, x1y1_sq: u64) -> Result<bool> {
        let h = (x1y1_sq as u128)
            .checked_mul(ax2 as u128 * x3 as u128)
            .ok_or(Error::Overflow("height"))?;
        Ok(h <= self.t as u128
            && self.is_sqf(ax2)
            && self.is_sqf(x3)
            && gcd(x1, x3) == 1
            && gcd(x1, ax2) == 1
            && gcd(ax2, x3) == 1)
    }
}

/// Records one normalised tuple with `a = x1 y1^2`, `b = x2 y2^2`.
fn tally(out: &mut CensusCounts, (x1, x2, x3): (u64, i64, u64), a: u64, y2_sq: u64) {
    let points = if x2 > 0 && x2 as u64 * y2_sq == a {
        1
    } else {
        2
    };
    out.n_points += points;
    if x1 == 1 && x2.unsigned_abs() == 1 && x3 == 1 {
        out.n_integral += points;
    }
    *out.n_tuples.as_mut().unwrap() += 1;
}

fn linear_strata(t: u64) -> Vec<[u64; 3]> {
    let s = isqrt(t);
    let mut out = Vec::new();
    for y1 in 1..=s {
        for y2 in 1..=s / y1 {
            if gcd(y1, y2) != 1 {
                continue;
            }
            for y3 in 1..=s / (y1 * y2) {
                if gcd(y1, y3) == 1 && gcd(y2, y3) == 1 {
                    out.push([y1, y2, y3]);
                }
            }
        }
    }
    out
}

fn quadratic_strata(t: u64) -> Vec<(u64, i64, u64)> {
    let two_t_sq = 2 * t as u128 * t as u128;
    let mut out = Vec::new();
    for n in 1u64.. {
        let n4 = (n as u128).pow(4);
        if n4 >= two_t_sq {
            break;
        }
        if !is_squarefree_trial(n) {
            continue;
        }
        for x1 in (1..=n).filter(|x1| n % x1 == 0) {
            let rest = n / x1;
            for ax2 in (1..=rest).filter(|d| rest % d == 0) {
                let x3 = rest / ax2;
                // coprimality is automatic for divisors of a squarefree n
                if (x1 * x1) as u128 * ax2 as u128 * x3 as u128 > t as u128 {
                    continue;
                }
                out.push((x1, ax2 as i64, x3));
                out.push((x1, -(ax2 as i64), x3));
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`.
fn inverse_mod(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{oracle_census, stratified_census, Mode};

    #[test]
    fn inverse() {
        for m in 2..200u64 {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    assert_eq!(mul_mod(a, inverse_mod(a, m), m), 1);
                }
            }
        }
    }

    #[test]
    fn small_bounds_match_oracle() {
        for t in 1..=300 {
            assert_eq!(
                stratified_census(t).unwrap(),
                oracle_census(t).unwrap(),
                "T = {t}"
            );
        }
    }

    #[test]
    fn examples() {
        let c = stratified_census(2).unwrap();
        assert_eq!(c.n_points, 1);
        assert_eq!(stratified_census(4).unwrap().n_points, 3);
        assert_eq!(stratified_census(4).unwrap().n_tuples, Some(16));
    }

    #[test]
    fn strata_do_not_overlap() {
        // every quadratic-stratum x triple really is small
        let e = StratifiedEngine::new(&CensusConfig::new(10_000, Mode::Stratified)).unwrap();
        for &(x1, x2, x3) in &e.quadratic {
            assert!(((x1 * x2.unsigned_abs() * x3) as u128).pow(4) < 2 * 10_000u128.pow(2));
        }
        for &[y1, y2, y3] in &e.linear {
            assert!((y1 * y2 * y3).pow(2) <= 10_000);
        }
        let (l, q) = e.strata_sizes();
        assert!(l > 0 && q > 0);
    }

    #[test]
    fn shards_partition() {
        let e = StratifiedEngine::new(&CensusConfig::new(50_000, Mode::Stratified)).unwrap();
        let whole = e.count_shard(0, 1).unwrap();
        for shards in [2, 3, 8] {
            let merged = (0..shards)
                .map(|s| e.count_shard(s, shards).unwrap())
                .reduce(CensusCounts::merge)
                .unwrap();
            assert_eq!(whole, merged);
        }
    }

    #[test]
    fn rejects_other_curves() {
        let mut cfg = CensusConfig::new(10, Mode::Stratified);
        cfg.spec = crate::heights::MCurveSpec::pqr(3, 3, 3).unwrap();
        assert!(StratifiedEngine::new(&cfg).is_err());
    }
}
