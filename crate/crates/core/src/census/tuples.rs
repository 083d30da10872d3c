use crate::arith::{gcd, is_squarefree_trial, isqrt};
use crate::{Error, Result};

/// Largest `T` accepted by [`tuple_census`].
pub const TUPLE_BUDGET: u64 = 1_000_000;

/// Counts integer 6-tuples `(x, y)` with nonzero entries satisfying
///
/// ```text
/// x1 y1^2 + x2 y2^2 = x3 y3^2
/// gcd(x_i, x_j) = gcd(y_i, y_j) = 1 (i != j),  x_i squarefree
/// x1 > 0,  x1 y1^2 >= |x2 y2^2|,  |(x1 y1)^2 x2 x3| <= T
/// ```
///
/// by direct enumeration over every sign.
pub fn tuple_census(t: u64) -> Result<u64> {
    if t > TUPLE_BUDGET {
        return Err(Error::Budget {
            t,
            budget: TUPLE_BUDGET,
        });
    }
    let mut count = 0u64;
    let s = isqrt(t) as i64;
    for x1 in 1..=s {
        if !is_squarefree_trial(x1 as u64) {
            continue;
        }
        for y1 in (-s / x1..=s / x1).filter(|&y| y != 0) {
            let lead = (x1 * y1) * (x1 * y1);
            let a = x1 * y1 * y1;
            let x2_max = t as i64 / lead;
            for x2 in (-x2_max..=x2_max).filter(|&x| x != 0) {
                if !is_squarefree_trial(x2.unsigned_abs()) || gcd(x1 as u64, x2.unsigned_abs()) != 1
                {
                    continue;
                }
                let y2_max = isqrt((a / x2.abs()) as u64) as i64;
                for y2 in (-y2_max..=y2_max).filter(|&y| y != 0) {
                    if gcd(y1.unsigned_abs(), y2.unsigned_abs()) != 1 {
                        continue;
                    }
                    let v = a + x2 * y2 * y2;
                    count += count_third_slot(t, lead, x1, x2, y1, y2, v);
                }
            }
        }
    }
    Ok(count)
}

fn count_third_slot(t: u64, lead: i64, x1: i64, x2: i64, y1: i64, y2: i64, v: i64) -> u64 {
    if v == 0 {
        return 0;
    }
    let mut count = 0;
    let y3_max = isqrt(v.unsigned_abs()) as i64;
    for y3 in (-y3_max..=y3_max).filter(|&y| y != 0) {
        if v % (y3 * y3) != 0 {
            continue;
        }
        let x3 = v / (y3 * y3);
        let ok = (lead as i128 * (x2 as i128 * x3 as i128).abs()) <= t as i128
            && is_squarefree_trial(x3.unsigned_abs())
            && gcd(x1 as u64, x3.unsigned_abs()) == 1
            && gcd(x2.unsigned_abs(), x3.unsigned_abs()) == 1
            && gcd(y1.unsigned_abs(), y3.unsigned_abs()) == 1
            && gcd(y2.unsigned_abs(), y3.unsigned_abs()) == 1;
        count += ok as u64;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::oracle_census;

    #[test]
    fn examples() {
        assert_eq!(tuple_census(1).unwrap(), 0);
        assert_eq!(tuple_census(2).unwrap(), 8);
        // [1:1] alone, then [-2:1] and [-1:2] share one tuple
        assert_eq!(tuple_census(4).unwrap(), 16);
    }

    #[test]
    fn eight_per_swap_pair() {
        for t in (1..=200).chain([333, 500]) {
            let c = oracle_census(t).unwrap();
            let n = tuple_census(t).unwrap();
            assert_eq!(Some(n), c.n_tuples, "T = {t}");
            assert_eq!(n, 4 * c.n_points + if t >= 2 { 4 } else { 0 }, "T = {t}");
        }
    }

    #[test]
    fn budget() {
        assert!(tuple_census(TUPLE_BUDGET + 1).unwrap_err().is_capacity());
    }
}
