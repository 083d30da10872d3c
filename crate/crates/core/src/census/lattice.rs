use alloc::vec::Vec;

use crate::arith::gcd;
use crate::{Error, Result};

/// Integer pairs `(u, v)` with `alpha u + beta v = 0 (mod d)`, `|u| <= r1`,
/// `|v| <= r2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub alpha: i64,
    pub beta: i64,
    pub d: u64,
    pub r1: u64,
    pub r2: u64,
}

impl LatticeBox {
    pub fn new(alpha: i64, beta: i64, d: u64, r1: u64, r2: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if gcd(beta.unsigned_abs(), d) != 1 {
            return Err(Error::invalid("beta must be invertible modulo d"));
        }
        if r1 > i64::MAX as u64 / 2 || r2 > i64::MAX as u64 / 2 || d > i64::MAX as u64 {
            return Err(Error::Overflow("lattice box"));
        }
        Ok(LatticeBox {
            alpha,
            beta,
            d,
            r1,
            r2,
        })
    }

    /// `v = slope * u (mod d)` on the lattice.
    fn slope(&self) -> u64 {
        let d = self.d as i128;
        let inv = inverse(self.beta.rem_euclid(self.d as i64) as u64, self.d) as i128;
        ((-(self.alpha as i128) * inv).rem_euclid(d)) as u64
    }

    fn for_each_primitive(&self, mut f: impl FnMut(i64, i64)) {
        let d = self.d as i64;
        let slope = self.slope() as i128;
        let (r1, r2) = (self.r1 as i64, self.r2 as i64);
        for u in -r1..=r1 {
            let base = ((slope * u as i128).rem_euclid(d as i128)) as i64;
            // smallest v >= -r2 with v = base (mod d)
            let mut v = -r2 + (base + r2).rem_euclid(d);
            while v <= r2 {
                if gcd(u.unsigned_abs(), v.unsigned_abs()) == 1 {
                    f(u, v);
                }
                v += d;
            }
        }
    }
}

fn inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (a as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m as i128) as u64
}

/// Number of primitive lattice points in the box.
pub fn count_primitive_in_box(b: &LatticeBox) -> u64 {
    let mut n = 0;
    b.for_each_primitive(|_, _| n += 1);
    n
}

pub fn primitive_points_in_box(b: &LatticeBox) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    b.for_each_primitive(|u, v| out.push((u, v)));
    out
}

/// True unless the box holds two primitive points that are not negatives of
/// each other while `2 r1 r2 < d`.
pub fn dichotomy_holds(b: &LatticeBox) -> bool {
    let pts = primitive_points_in_box(b);
    let spread = match pts.first() {
        Some(&(u, v)) => pts.iter().any(|&q| q != (u, v) && q != (-u, -v)),
        None => false,
    };
    !spread || 2 * b.r1 as u128 * b.r2 as u128 >= b.d as u128
}
