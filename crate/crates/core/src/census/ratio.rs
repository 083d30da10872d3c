use alloc::vec::Vec;

use crate::{Error, Result};

/// One row of the growth table `N(T) / (sqrt(T) (ln T)^3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioRow {
    pub t: u64,
    pub n_points: u64,
    pub sqrt_t: f64,
    pub ln_t_cubed: f64,
    pub ratio: f64,
}

pub fn growth_ratio(t: u64, n_points: u64) -> Result<RatioRow> {
    if t < 2 {
        return Err(Error::invalid("growth ratio needs T >= 2"));
    }
    let tf = t as f64;
    let sqrt_t = libm::sqrt(tf);
    let ln_t_cubed = libm::pow(libm::log(tf), 3.0);
    Ok(RatioRow {
        t,
        n_points,
        sqrt_t,
        ln_t_cubed,
        ratio: n_points as f64 / (sqrt_t * ln_t_cubed),
    })
}

/// Ratio table for strictly increasing `ts`, counting with `count`.
pub fn ratio_series(
    ts: &[u64],
    mut count: impl FnMut(u64) -> Result<u64>,
) -> Result<Vec<RatioRow>> {
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("height bounds must be strictly increasing"));
    }
    ts.iter().map(|&t| growth_ratio(t, count(t)?)).collect()
}

/// `max / min` of the ratios; `None` for an empty table or a zero ratio.
pub fn band(rows: &[RatioRow]) -> Option<f64> {
    let max = rows
        .iter()
        .map(|r| r.ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    let min = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    (!rows.is_empty() && min > 0.0).then(|| max / min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::stratified_census;

    #[test]
    fn two() {
        let r = growth_ratio(2, 1).unwrap();
        let ln2 = core::f64::consts::LN_2;
        assert!((r.ratio - 1.0 / (core::f64::consts::SQRT_2 * ln2 * ln2 * ln2)).abs() < 1e-12);
        assert!((r.ratio - 2.1233).abs() < 1e-3);
        assert!(growth_ratio(1, 0).is_err());
    }

    #[test]
    fn series() {
        assert!(ratio_series(&[], |_| unreachable!()).unwrap().is_empty());
        assert!(ratio_series(&[10, 10], |_| Ok(0)).is_err());
        let rows =
            ratio_series(&[100, 1000, 10_000], |t| Ok(stratified_census(t)?.n_points)).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(band(&rows).unwrap() >= 1.0);
        assert_eq!(band(&[]), None);
    }
}
