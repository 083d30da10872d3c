//! Exact sums of the form `sum c_n / n` over squarefree `n`.
//!
//! The common denominator of such a sum divides the product of the primes
//! involved, so the terms are combined pairwise in a balanced tree whose nodes
//! keep the (squarefree) denominator together with its prime set. Merging two
//! nodes multiplies each numerator by the primes missing from the other side,
//! which keeps every intermediate denominator equal to an lcm rather than a
//! product of all denominators.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
use num_traits::{One, Zero};

/// One term `coeff / n` where `n` is the product of the distinct `primes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeTerm {
    pub coeff: i64,
    pub primes: Vec<u32>,
}

struct Node {
    num: BigInt,
    den: BigUint,
    primes: Vec<u32>,
}

fn product(primes: &[u32]) -> BigUint {
    match primes.len() {
        0 => BigUint::one(),
        1..=8 => primes.iter().fold(BigUint::one(), |acc, &p| acc * p),
        n => {
            let (lo, hi) = primes.split_at(n / 2);
            product(lo) * product(hi)
        }
    }
}

/// Elements of `a` missing from `b`, both sorted.
fn difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn combine(terms: &[SquarefreeTerm]) -> Node {
    match terms.len() {
        0 => Node {
            num: BigInt::zero(),
            den: BigUint::one(),
            primes: Vec::new(),
        },
        1 => {
            let t = &terms[0];
            debug_assert!(t.primes.windows(2).all(|w| w[0] < w[1]));
            Node {
                num: BigInt::from(t.coeff),
                den: product(&t.primes),
                primes: t.primes.clone(),
            }
        }
        n => {
            let (lo, hi) = terms.split_at(n / 2);
            let left = combine(lo);
            let right = combine(hi);
            let only_left = product(&difference(&left.primes, &right.primes));
            let only_right = product(&difference(&right.primes, &left.primes));
            let num =
                left.num * BigInt::from(only_right.clone()) + right.num * BigInt::from(only_left);
            Node {
                num,
                den: left.den * only_right,
                primes: union(&left.primes, &right.primes),
            }
        }
    }
}

/// `sum coeff / prod(primes)` in lowest terms.
pub fn sum_squarefree_terms(terms: &[SquarefreeTerm]) -> BigRational {
    let Node {
        mut num,
        mut den,
        primes,
    } = combine(terms);
    if num.is_zero() {
        return BigRational::zero();
    }
    for p in primes {
        if (&num % p).is_zero() {
            num /= p;
            den /= p;
        }
    }
    BigRational::new_raw(num, BigInt::from(den))
}

/// Compensated floating-point evaluation of the same sum.
pub fn approx_squarefree_terms(terms: &[SquarefreeTerm]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let n: f64 = t.primes.iter().map(|&p| p as f64).product();
        let x = t.coeff as f64 / n;
        let s = sum + x;
        if libm::fabs(sum) >= libm::fabs(x) {
            comp += (sum - s) + x;
        } else {
            comp += (x - s) + sum;
        }
        sum = s;
    }
    sum + comp
}
