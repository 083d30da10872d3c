use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

use super::factor::{FactoredInteger, SquarefreeSplit};

pub const DEFAULT_SIEVE_LIMIT: usize = 10_000_000;

/// Smallest prime factor of every integer in `[2, limit]`.
///
/// Immutable once built; share it freely between workers.
#[derive(Clone, Debug)]
pub struct SpfTable {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

pub fn build_spf_table(limit: usize) -> Result<SpfTable> {
    SpfTable::new(limit)
}

impl SpfTable {
    /// Linear sieve over `[2, limit]`.
    pub fn new(limit: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::invalid(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        if limit > u32::MAX as usize {
            return Err(Error::invalid(format!(
                "sieve limit {limit} does not fit 32-bit entries"
            )));
        }
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for n in 2..=limit {
            if spf[n] == 0 {
                spf[n] = n as u32;
                primes.push(n as u32);
            }
            let sn = spf[n];
            for &p in &primes {
                let m = n * p as usize;
                if p > sn || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfTable { spf, primes })
    }

    /// Bytes needed for a table of the given limit.
    pub fn memory_bytes(limit: usize) -> usize {
        // spf entries plus roughly limit / ln(limit) primes
        (limit + 1) * 4 + limit / 4
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Smallest prime factor of `n`, or `None` outside `[2, limit]`.
    pub fn spf(&self, n: usize) -> Option<u32> {
        if n < 2 {
            return None;
        }
        self.spf.get(n).copied()
    }

    pub fn is_prime(&self, n: usize) -> Option<bool> {
        self.spf(n).map(|p| p as usize == n)
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Largest magnitude this table can factor.
    pub fn capacity(&self) -> u128 {
        let l = self.limit() as u128;
        l * l
    }

    pub fn factorize(&self, n: i64) -> Result<FactoredInteger> {
        if n == 0 {
            return Err(Error::invalid("cannot factor 0"));
        }
        let factors = self.factor_abs(n.unsigned_abs() as u128)?;
        Ok(FactoredInteger::from_parts(n, factors))
    }

    /// Prime factorization of a positive `m`, as increasing `(prime, exponent)` pairs.
    pub fn factor_abs(&self, m: u128) -> Result<Vec<(u64, u32)>> {
        debug_assert!(m > 0);
        if m > self.capacity() {
            return Err(Error::Capacity {
                what: format!("factoring {m}"),
                required: super::isqrt_u128(m - 1) + 1,
                limit: self.limit() as u128,
            });
        }
        let limit = self.limit() as u128;
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut rest = m;
        if rest > limit {
            for &p in &self.primes {
                let p = p as u128;
                if p * p > rest || rest <= limit {
                    break;
                }
                if rest.is_multiple_of(p) {
                    let mut e = 0;
                    while rest.is_multiple_of(p) {
                        rest /= p;
                        e += 1;
                    }
                    out.push((p as u64, e));
                }
            }
            if rest > limit {
                // no prime up to sqrt(rest) divides it
                out.push((rest as u64, 1));
                return Ok(out);
            }
        }
        let mut rest = rest as usize;
        while rest > 1 {
            let p = self.spf[rest];
            let mut e = 0;
            while rest.is_multiple_of(p as usize) {
                rest /= p as usize;
                e += 1;
            }
            out.push((p as u64, e));
        }
        Ok(out)
    }

    /// `|n|` divided by its largest square divisor.
    pub fn squarefree_part(&self, n: i64) -> Result<u64> {
        self.m_free_part(n, 2)
    }

    /// Product of `p^(e mod m)` over the factorization of `|n|`; 1 when `m == 1`.
    pub fn m_free_part(&self, n: i64, m: u32) -> Result<u64> {
        if n == 0 {
            return Err(Error::invalid("m-free part of 0 is undefined"));
        }
        self.m_free_part_abs(n.unsigned_abs() as u128, m)
            .map(|v| v as u64)
    }

    pub(crate) fn m_free_part_abs(&self, n: u128, m: u32) -> Result<u128> {
        if m == 0 {
            return Err(Error::invalid("multiplicity must be at least 1"));
        }
        if n == 0 {
            return Err(Error::invalid("m-free part of 0 is undefined"));
        }
        if m == 1 {
            return Ok(1);
        }
        let mut out = 1u128;
        for (p, e) in self.factor_abs(n)? {
            out *= (p as u128).pow(e % m);
        }
        Ok(out)
    }

    /// Writes `n = core * cofactor^2` with `core` squarefree and signed like `n`.
    pub fn squarefree_split(&self, n: i64) -> Result<SquarefreeSplit> {
        if n == 0 {
            return Err(Error::invalid("cannot split 0"));
        }
        let mut core = 1i64;
        let mut cofactor = 1u64;
        for (p, e) in self.factor_abs(n.unsigned_abs() as u128)? {
            if e % 2 == 1 {
                core *= p as i64;
            }
            cofactor *= p.pow(e / 2);
        }
        Ok(SquarefreeSplit {
            core: if n < 0 { -core } else { core },
            cofactor,
        })
    }
}

/// Squarefree part of every `n` in `[0, limit]` (entry 0 is 0).
pub fn squarefree_parts(limit: usize) -> Vec<u32> {
    assert!(limit <= u32::MAX as usize);
    let mut sqf: Vec<u32> = (0..=limit as u32).collect();
    for p in small_primes(super::isqrt(limit as u64) as usize) {
        let p2 = p * p;
        let mut k = p2;
        while k <= limit {
            while (sqf[k] as usize).is_multiple_of(p2) {
                sqf[k] /= p2 as u32;
            }
            k += p2;
        }
    }
    sqf
}

/// `flags[n]` is true iff `n` is squarefree, for `n` in `[0, limit]` (0 is not).
pub fn squarefree_flags(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    flags[0] = false;
    for p in small_primes(super::isqrt(limit as u64) as usize) {
        let p2 = p * p;
        let mut k = p2;
        while k <= limit {
            flags[k] = false;
            k += p2;
        }
    }
    flags
}

/// Squarefree test by trial division; fine for the small values used in validation.
pub fn is_squarefree_trial(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

fn small_primes(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for n in 2..=limit {
        if !composite[n] {
            out.push(n);
            let mut k = n * n;
            while k <= limit {
                composite[k] = true;
                k += n;
            }
        }
    }
    out
}
