//! Solubility of `x1*y1^2 + x2*y2^2 = x3*y3^2` for positive, squarefree,
//! pairwise coprime coefficients.
//!
//! Two independent deciders are provided: the quadratic residue criterion
//! ([`legendre_indicator`]) and a bounded exhaustive search over the box
//! `|y1| <= sqrt(x2 x3)`, `|y2| <= sqrt(x1 x3)` ([`decide_soluble_search`]),
//! which is complete because a soluble form has a solution in that box
//! (Holzer). At the prime 2 no residue condition is imposed.

use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::arith::{exact_sqrt, gcd, is_squarefree_trial, isqrt, jacobi_unchecked, SpfTable};
use crate::exact::{approx_squarefree_terms, sum_squarefree_terms, SquarefreeTerm};
use crate::{Error, Result};

/// Coefficients of the diagonal form `x1*y1^2 + x2*y2^2 - x3*y3^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadTriple {
    x1: u64,
    x2: u64,
    x3: u64,
}

impl QuadTriple {
    pub fn new(x1: u64, x2: u64, x3: u64) -> Result<Self> {
        for x in [x1, x2, x3] {
            if x == 0 || !is_squarefree_trial(x) {
                return Err(Error::invalid(format!(
                    "{x} is not a positive squarefree integer"
                )));
            }
        }
        if gcd(x1, x2) != 1 || gcd(x1, x3) != 1 || gcd(x2, x3) != 1 {
            return Err(Error::invalid(format!(
                "({x1}, {x2}, {x3}) is not pairwise coprime"
            )));
        }
        Ok(QuadTriple { x1, x2, x3 })
    }

    pub fn x1(&self) -> u64 {
        self.x1
    }

    pub fn x2(&self) -> u64 {
        self.x2
    }

    pub fn x3(&self) -> u64 {
        self.x3
    }

    pub fn product(&self) -> u64 {
        self.x1 * self.x2 * self.x3
    }

    /// Evaluates `x1*y1^2 + x2*y2^2 - x3*y3^2`.
    pub fn form(&self, y1: i64, y2: i64, y3: i64) -> i128 {
        let sq = |y: i64| (y as i128) * (y as i128);
        self.x1 as i128 * sq(y1) + self.x2 as i128 * sq(y2) - self.x3 as i128 * sq(y3)
    }
}

fn odd_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            if p != 2 {
                out.push(p);
            }
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 2 {
        out.push(n);
    }
    out
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// 1 when `x2 x3` is a square modulo every odd prime dividing `x1`,
/// `x1 x3` modulo every odd prime dividing `x2`, and `-x1 x2` modulo every
/// odd prime dividing `x3`; 0 otherwise.
pub fn legendre_indicator(t: &QuadTriple) -> u8 {
    let holds = |x: u64, residue: &dyn Fn(u64) -> u64| {
        odd_prime_factors(x)
            .into_iter()
            .all(|p| jacobi_unchecked(residue(p), p) == 1)
    };
    let ok = holds(t.x1, &|p| mulmod(t.x2, t.x3, p))
        && holds(t.x2, &|p| mulmod(t.x1, t.x3, p))
        && holds(t.x3, &|p| p - mulmod(t.x1, t.x2, p));
    ok as u8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Soluble,
    Insoluble,
}

/// Outcome of the exhaustive search, with a witness either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolubilityCertificate {
    pub verdict: Verdict,
    /// Nontrivial solution `(y1, y2, y3)` when soluble.
    pub solution: Option<(u64, u64, u64)>,
    /// A prime dividing `x1 x2 x3` whose residue condition fails, when insoluble.
    pub obstruction: Option<u64>,
}

/// Is `r` a square modulo the prime `p`, by squaring every residue.
fn is_square_mod_brute(r: u64, p: u64) -> bool {
    let r = r % p;
    (0..p).any(|y| mulmod(y, y, p) == r)
}

/// Exhaustive search for a nontrivial zero inside the Holzer box.
pub fn decide_soluble_search(t: &QuadTriple) -> Result<SolubilityCertificate> {
    let (x1, x2, x3) = (t.x1 as u128, t.x2 as u128, t.x3 as u128);
    let b1 = isqrt(t.x2 * t.x3);
    let b2 = isqrt(t.x1 * t.x3);
    for y2 in 0..=b2 {
        for y1 in 0..=b1 {
            if y1 == 0 && y2 == 0 {
                continue;
            }
            let v = x1 * (y1 as u128).pow(2) + x2 * (y2 as u128).pow(2);
            if !v.is_multiple_of(x3) {
                continue;
            }
            let Some(y3) = u64::try_from(v / x3).ok().and_then(exact_sqrt) else {
                continue;
            };
            if t.form(y1 as i64, y2 as i64, y3 as i64) != 0 {
                return Err(Error::Inconsistent(format!(
                    "bad witness ({y1}, {y2}, {y3}) for {t:?}"
                )));
            }
            return Ok(SolubilityCertificate {
                verdict: Verdict::Soluble,
                solution: Some((y1, y2, y3)),
                obstruction: None,
            });
        }
    }
    let residue_of = [
        (t.x1, (t.x2, t.x3, false)),
        (t.x2, (t.x1, t.x3, false)),
        (t.x3, (t.x1, t.x2, true)),
    ];
    let obstruction = residue_of.iter().find_map(|&(x, (u, v, negate))| {
        odd_prime_factors(x).into_iter().find(|&p| {
            let r = mulmod(u, v, p);
            let r = if negate { (p - r) % p } else { r };
            !is_square_mod_brute(r, p)
        })
    });
    match obstruction {
        Some(p) => Ok(SolubilityCertificate {
            verdict: Verdict::Insoluble,
            solution: None,
            obstruction: Some(p),
        }),
        None => Err(Error::Inconsistent(format!(
            "no zero in the Holzer box for {t:?} yet every residue condition holds"
        ))),
    }
}

/// Every admissible triple with `x1 x2 x3 <= x_max`, ordered by product and
/// then by the assignment of primes to slots.
pub fn admissible_triples(x_max: u64) -> Vec<QuadTriple> {
    let mut out = Vec::new();
    for n in 1..=x_max {
        if !is_squarefree_trial(n) {
            continue;
        }
        let mut primes = odd_prime_factors(n);
        if n % 2 == 0 {
            primes.insert(0, 2);
        }
        for_each_split(&primes, |slots| {
            let mut x = [1u64; 3];
            for (p, &s) in primes.iter().zip(slots) {
                x[s as usize] *= p;
            }
            out.push(QuadTriple {
                x1: x[0],
                x2: x[1],
                x3: x[2],
            });
        });
    }
    out
}

/// Calls `f` with every assignment of `primes.len()` items to three slots.
fn for_each_split(primes: &[u64], mut f: impl FnMut(&[u8])) {
    let k = primes.len();
    let mut slots = [0u8; 16];
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        for s in slots.iter_mut().take(k) {
            *s = (c % 3) as u8;
            c /= 3;
        }
        f(&slots[..k]);
    }
}

/// Weighted census of soluble triples with `x1 x2 x3 <= X`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolubleCensus {
    pub x: u64,
    /// `sum d(x1x2x3)/(x1x2x3)` over soluble triples.
    pub s: BigRational,
    /// `sum (1 + J(x))/(x1x2x3)` over all-odd triples, `J` the product of the three Jacobi symbols.
    pub s1: BigRational,
    /// `s - s1`.
    pub s2: BigRational,
    pub count: u64,
    pub s_approx: f64,
    pub s1_approx: f64,
}

impl SolubleCensus {
    pub fn s2_approx(&self) -> f64 {
        self.s_approx - self.s1_approx
    }
}

/// `S(X)`, `S1(X)`, `S2(X)` and the number of soluble triples.
///
/// Iterates over squarefree `n <= X`, splitting its primes between the three
/// slots. For each split the residue conditions are products of the pairwise
/// symbols `(q/p)`, which are computed once per `n`.
pub fn soluble_census(x: u64, table: &SpfTable) -> Result<SolubleCensus> {
    if x == 0 {
        return Err(Error::invalid("X must be at least 1"));
    }
    if x > table.limit() as u64 {
        return Err(Error::Capacity {
            what: format!("soluble census up to {x}"),
            required: x as u128,
            limit: table.limit() as u128,
        });
    }
    let mut s_terms: Vec<SquarefreeTerm> = Vec::new();
    let mut s1_terms: Vec<SquarefreeTerm> = Vec::new();
    let mut count = 0u64;
    let mut primes: Vec<u32> = Vec::with_capacity(16);
    for n in 1..=x as usize {
        primes.clear();
        let mut rest = n;
        let mut squarefree = true;
        while rest > 1 {
            let p = table.spf(rest).expect("within sieve") as usize;
            rest /= p;
            if rest % p == 0 {
                squarefree = false;
                break;
            }
            primes.push(p as u32);
        }
        if !squarefree {
            continue;
        }
        let k = primes.len();
        // sym[i][j] = (p_j / p_i) for odd p_i, neg[i] = (-1 / p_i)
        let mut sym = [[1i8; 16]; 16];
        let mut neg = [1i8; 16];
        for i in 0..k {
            let p = primes[i] as u64;
            if p == 2 {
                continue;
            }
            neg[i] = jacobi_unchecked(p - 1, p);
            for j in 0..k {
                if i != j {
                    sym[i][j] = jacobi_unchecked(primes[j] as u64, p);
                }
            }
        }
        let odd = n % 2 == 1;
        let mut soluble = 0i64;
        let mut s1_coeff = 0i64;
        let prime_list: Vec<u64> = primes.iter().map(|&p| p as u64).collect();
        for_each_split(&prime_list, |slots| {
            let mut all_hold = true;
            let mut j_product = 1i8;
            for i in 0..k {
                if primes[i] == 2 {
                    continue;
                }
                let mut c = if slots[i] == 2 { neg[i] } else { 1 };
                for j in 0..k {
                    if slots[j] != slots[i] {
                        c *= sym[i][j];
                    }
                }
                j_product *= c;
                all_hold &= c == 1;
            }
            if all_hold {
                soluble += 1;
            }
            if odd {
                s1_coeff += 1 + j_product as i64;
            }
        });
        count += soluble as u64;
        if soluble > 0 {
            s_terms.push(SquarefreeTerm {
                coeff: soluble << k,
                primes: primes.clone(),
            });
        }
        if s1_coeff != 0 {
            s1_terms.push(SquarefreeTerm {
                coeff: s1_coeff,
                primes: primes.clone(),
            });
        }
    }
    let s = sum_squarefree_terms(&s_terms);
    let s1 = sum_squarefree_terms(&s1_terms);
    let s2 = &s - &s1;
    Ok(SolubleCensus {
        x,
        s,
        s1,
        s2,
        count,
        s_approx: approx_squarefree_terms(&s_terms),
        s1_approx: approx_squarefree_terms(&s1_terms),
    })
}

/// Primitive solutions with `1 <= |y_i| <= R_i`, every sign pattern listed, sorted.
pub fn quad_fibre_enumerate(t: &QuadTriple, bounds: (u64, u64, u64)) -> Vec<(i64, i64, i64)> {
    let (r1, r2, r3) = bounds;
    let mut out = Vec::new();
    for y1 in 1..=r1 {
        for y2 in 1..=r2 {
            let v = t.x1 as u128 * (y1 as u128).pow(2) + t.x2 as u128 * (y2 as u128).pow(2);
            if !v.is_multiple_of(t.x3 as u128) {
                continue;
            }
            let Some(y3) = u64::try_from(v / t.x3 as u128).ok().and_then(exact_sqrt) else {
                continue;
            };
            if y3 > r3 || gcd(gcd(y1, y2), y3) != 1 {
                continue;
            }
            for s in 0..8 {
                let sign = |bit: i32| if s >> bit & 1 == 1 { -1 } else { 1 };
                out.push((
                    sign(0) * y1 as i64,
                    sign(1) * y2 as i64,
                    sign(2) * y3 as i64,
                ));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Primitive fibre count divided by `d(x1x2x3) ((R1R2R3 / x1x2x3)^(1/3) + 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibreRatio {
    pub triple: QuadTriple,
    pub solutions: usize,
    pub ratio: f64,
}

/// Fibre ratios for every soluble triple with product at most `x_max`, using
/// the same bound `r` for all three coordinates.
pub fn fibre_count_ratios(x_max: u64, r: u64) -> Result<Vec<FibreRatio>> {
    let mut out = Vec::new();
    for t in admissible_triples(x_max) {
        if decide_soluble_search(&t)?.verdict != Verdict::Soluble {
            continue;
        }
        let n = t.product();
        let d = 1u64 << (odd_prime_factors(n).len() + (n % 2 == 0) as usize);
        let solutions = quad_fibre_enumerate(&t, (r, r, r)).len();
        let scale = d as f64 * (libm::cbrt((r * r * r) as f64 / n as f64) + 1.0);
        out.push(FibreRatio {
            triple: t,
            solutions,
            ratio: solutions as f64 / scale,
        });
    }
    Ok(out)
}
