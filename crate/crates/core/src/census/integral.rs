use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::arith::{exact_sqrt, gcd, isqrt, SpfTable};
use crate::heights::{canonicalize, eszb_height_222, is_integral, MCurveSpec, ProjectivePoint};
use crate::{Error, Result};

/// Largest `T` accepted by [`integral_census`].
pub const INTEGRAL_BUDGET: u64 = 1_000_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IntegralMethod {
    /// Sweep candidate points and keep those passing the integrality test.
    #[default]
    Filter,
    /// Generate points from primitive Pythagorean triples.
    Parametrize,
}

/// Integral points of height at most `t`, sorted.
pub fn integral_points(t: u64, method: IntegralMethod) -> Result<Vec<ProjectivePoint>> {
    if t > INTEGRAL_BUDGET {
        return Err(Error::Budget {
            t,
            budget: INTEGRAL_BUDGET,
        });
    }
    match method {
        IntegralMethod::Filter => filter(t),
        IntegralMethod::Parametrize => parametrize(t),
    }
}

pub fn integral_census(t: u64, method: IntegralMethod) -> Result<u64> {
    Ok(integral_points(t, method)?.len() as u64)
}

/// An integral point has height `max(|a|, |b|)` and all of `a`, `b`, `a + b`
/// are plus or minus squares, so only square coordinates are swept.
fn filter(t: u64) -> Result<Vec<ProjectivePoint>> {
    let spec = MCurveSpec::three_half_points();
    let table = SpfTable::new((isqrt(2 * t) + 2) as usize)?;
    let s = isqrt(t) as i64;
    let mut out = Vec::new();
    for j in 1..=s {
        let b = j * j;
        for i in 1..=s {
            for a in [i * i, -i * i] {
                if a + b == 0 || gcd(a.unsigned_abs(), b as u64) != 1 {
                    continue;
                }
                let p = canonicalize(a, b)?;
                if is_integral(&spec, &p, &table)?.integral
                    && eszb_height_222(a, b, &table)? <= t as u128
                {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn parametrize(t: u64) -> Result<Vec<ProjectivePoint>> {
    let mut points = BTreeSet::new();
    // the largest square in a triple is (u^2 + v^2)^2 >= u^4
    let mut u = 2u64;
    while u * u <= 2 * isqrt(t) + 2 {
        for v in 1..u {
            if (u + v).is_multiple_of(2) || gcd(u, v) != 1 {
                continue;
            }
            let p = (u * u - v * v) as i64;
            let q = (2 * u * v) as i64;
            let r = (u * u + v * v) as i64;
            let (a2, b2, c2) = (p * p, q * q, r * r);
            // a2 + b2 = c2, rearranged into the slots (a, b, a + b)
            for (a, b) in [
                (a2, b2),
                (b2, a2),
                (-a2, c2),
                (c2, -a2),
                (-b2, c2),
                (c2, -b2),
            ] {
                if a.unsigned_abs().max(b.unsigned_abs()) > t {
                    continue;
                }
                debug_assert!(exact_sqrt((a + b).unsigned_abs()).is_some());
                points.insert(canonicalize(a, b)?);
            }
        }
        u += 1;
    }
    Ok(points.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        for m in [IntegralMethod::Filter, IntegralMethod::Parametrize] {
            assert_eq!(integral_census(15, m).unwrap(), 0);
            assert_eq!(integral_census(16, m).unwrap(), 2);
            assert_eq!(integral_census(25, m).unwrap(), 6);
        }
        let pts = integral_points(25, IntegralMethod::Parametrize).unwrap();
        let have: Vec<(i64, i64)> = pts.iter().map(|p| (p.a(), p.b())).collect();
        for want in [(9, 16), (16, 9), (-9, 25), (-16, 25), (-25, 16), (-25, 9)] {
            assert!(have.contains(&want), "{want:?}");
        }
    }

    #[test]
    fn methods_agree() {
        for t in (1..=2000).step_by(7).chain([10_000, 65_000, 100_000]) {
            assert_eq!(
                integral_points(t, IntegralMethod::Filter).unwrap(),
                integral_points(t, IntegralMethod::Parametrize).unwrap(),
                "T = {t}"
            );
        }
    }

    #[test]
    fn filter_matches_oracle_integral_count() {
        for t in [16, 100, 625, 3000] {
            assert_eq!(
                integral_census(t, IntegralMethod::Filter).unwrap(),
                crate::census::oracle_census(t).unwrap().n_integral
            );
        }
    }
}
