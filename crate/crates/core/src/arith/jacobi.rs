use alloc::format;

use crate::{Error, Result};

/// Jacobi symbol `(a / n)` for odd positive `n`.
///
/// Even or nonpositive `n` is rejected; there is no Kronecker extension.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::invalid(format!(
            "Jacobi symbol needs an odd positive lower argument, got {n}"
        )));
    }
    let n = n as u64;
    let a = a.rem_euclid(n as i64) as u64;
    Ok(jacobi_unchecked(a, n))
}

/// Jacobi symbol for `0 <= a` and odd `n >= 1`, without validation.
pub fn jacobi_unchecked(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 exactly when n = 3, 5 mod 8
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
