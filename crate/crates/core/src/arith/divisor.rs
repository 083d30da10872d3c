use alloc::format;
use alloc::string::String;
use core::fmt;

use super::{FactoredInteger, SpfTable};
use crate::{Error, Result};

/// Fractional digits kept by the fixed-point harmonic sums.
pub const HARMONIC_FRAC_DIGITS: u32 = 18;

/// `binomial(n, r)` in 128 bits, `None` on overflow.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `d_k(n)`: ordered factorizations of `n` into `k` positive factors.
pub fn divisor_count_k(n: &FactoredInteger, k: u32) -> Result<u128> {
    if n.value() <= 0 {
        return Err(Error::invalid(format!(
            "d_k needs a positive argument, got {}",
            n.value()
        )));
    }
    if k == 0 {
        return Err(Error::invalid("d_k needs k >= 1"));
    }
    n.factors().iter().try_fold(1u128, |acc, &(_, e)| {
        let c = binomial(e as u64 + k as u64 - 1, k as u64 - 1).ok_or(Error::Overflow("d_k"))?;
        acc.checked_mul(c).ok_or(Error::Overflow("d_k"))
    })
}

/// A truncated decimal: the true value lies in
/// `[scaled, scaled + max_error] / 10^frac_digits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub scaled: u128,
    pub frac_digits: u32,
    pub max_error: u128,
}

impl FixedPoint {
    pub fn to_f64(&self) -> f64 {
        let scale = 10u128.pow(self.frac_digits);
        (self.scaled / scale) as f64 + (self.scaled % scale) as f64 / scale as f64
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = 10u128.pow(self.frac_digits);
        let frac: String = format!(
            "{:0width$}",
            self.scaled % scale,
            width = self.frac_digits as usize
        );
        write!(f, "{}.{}", self.scaled / scale, frac)
    }
}

/// Result of a `d_k` summatory sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorSum {
    /// `sum_{n <= Z} d_k(n)`, exact.
    Count(u128),
    /// `sum_{n <= Z} d_k(n) / n` as a truncated fixed-point decimal.
    Harmonic(FixedPoint),
}

impl DivisorSum {
    pub fn to_f64(&self) -> f64 {
        match self {
            DivisorSum::Count(c) => *c as f64,
            DivisorSum::Harmonic(fp) => fp.to_f64(),
        }
    }

    /// The sum divided by its expected order: `Z (ln Z)^(k-1)` for plain sums,
    /// `(ln Z)^k` for harmonic ones. `None` at `Z = 1`.
    pub fn normalized_ratio(&self, z: u64, k: u32) -> Option<f64> {
        if z < 2 {
            return None;
        }
        let ln = libm::log(z as f64);
        let denom = match self {
            DivisorSum::Count(_) => z as f64 * libm::pow(ln, (k - 1) as f64),
            DivisorSum::Harmonic(_) => libm::pow(ln, k as f64),
        };
        Some(self.to_f64() / denom)
    }
}

/// `sum_{n <= z} d_k(n)`, or `sum d_k(n)/n` when `harmonic` is set.
pub fn dk_summatory(z: u64, k: u32, harmonic: bool, table: &SpfTable) -> Result<DivisorSum> {
    if z == 0 {
        return Err(Error::invalid("summatory bound must be at least 1"));
    }
    if k == 0 {
        return Err(Error::invalid("d_k needs k >= 1"));
    }
    if z > table.limit() as u64 {
        return Err(Error::Capacity {
            what: format!("summing d_{k} up to {z}"),
            required: z as u128,
            limit: table.limit() as u128,
        });
    }
    let scale = 10u128.pow(HARMONIC_FRAC_DIGITS);
    let mut plain: u128 = 0;
    let mut scaled: u128 = 0;
    // d_k(p^e) depends only on e; cache the first few exponents
    let mut by_exponent = [0u128; 64];
    for (e, slot) in by_exponent.iter_mut().enumerate() {
        *slot = binomial(e as u64 + k as u64 - 1, k as u64 - 1).unwrap_or(0);
    }
    for n in 1..=z as usize {
        let mut d: u128 = 1;
        let mut rest = n;
        while rest > 1 {
            let p = table.spf(rest).unwrap_or(rest as u32) as usize;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            let c = by_exponent[e];
            if c == 0 {
                return Err(Error::Overflow("d_k"));
            }
            d = d.checked_mul(c).ok_or(Error::Overflow("d_k"))?;
        }
        if harmonic {
            let term = d
                .checked_mul(scale)
                .ok_or(Error::Overflow("harmonic d_k sum"))?
                / n as u128;
            scaled = scaled
                .checked_add(term)
                .ok_or(Error::Overflow("harmonic d_k sum"))?;
        } else {
            plain = plain.checked_add(d).ok_or(Error::Overflow("d_k sum"))?;
        }
    }
    Ok(if harmonic {
        DivisorSum::Harmonic(FixedPoint {
            scaled,
            frac_digits: HARMONIC_FRAC_DIGITS,
            max_error: z as u128,
        })
    } else {
        DivisorSum::Count(plain)
    })
}

/// `sum_{n <= z} d_3(n)` (or the harmonic variant).
pub fn d3_summatory(z: u64, harmonic: bool, table: &SpfTable) -> Result<DivisorSum> {
    dk_summatory(z, 3, harmonic, table)
}
