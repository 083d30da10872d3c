//! Integer arithmetic: sieves, factorization, squarefree and m-free parts,
//! Jacobi symbols and divisor functions.

mod divisor;
mod factor;
mod jacobi;
mod sieve;

pub use divisor::{
    binomial, d3_summatory, divisor_count_k, dk_summatory, DivisorSum, FixedPoint,
    HARMONIC_FRAC_DIGITS,
};
pub use factor::{FactoredInteger, SquarefreeSplit};
pub use jacobi::{jacobi, jacobi_unchecked};
pub use sieve::{
    build_spf_table, is_squarefree_trial, squarefree_flags, squarefree_parts, SpfTable,
    DEFAULT_SIEVE_LIMIT,
};

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = libm::sqrt(n as f64) as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Largest `r` with `r * r <= n`, for 128-bit inputs.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = libm::sqrt(n as f64) as u128;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// `Some(r)` when `n == r * r`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Exponent of the prime `p` in `n`; `n` must be nonzero.
pub fn valuation(mut n: u128, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let p = p as u128;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}
