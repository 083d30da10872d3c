use alloc::vec::Vec;

/// A nonzero integer together with the prime factorization of its absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    value: i64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub(crate) fn from_parts(value: i64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e >= 1));
        FactoredInteger { value, factors }
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// `value = core * cofactor^2` with `core` squarefree and carrying the sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquarefreeSplit {
    pub core: i64,
    pub cofactor: u64,
}

#[cfg(test)]
mod tests {
    use crate::arith::{build_spf_table, SpfTable};
    use crate::Error;
    use proptest::prelude::*;

    fn table() -> SpfTable {
        build_spf_table(10_000).unwrap()
    }

    /// Largest `k` with `k^m | n`, by scanning every candidate.
    fn largest_power_divisor(n: u64, m: u32) -> u64 {
        (1..=n)
            .filter(|k| k.pow(m) <= n && n.is_multiple_of(k.pow(m)))
            .max()
            .unwrap()
    }

    #[test]
    fn factorize_examples() {
        let t = table();
        let f = t.factorize(360).unwrap();
        assert_eq!(f.factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(f.omega(), 3);
        assert!(!f.is_squarefree());
        let f = t.factorize(-7).unwrap();
        assert_eq!(f.value(), -7);
        assert_eq!(f.factors(), &[(7, 1)]);
        assert!(t.factorize(1).unwrap().factors().is_empty());
        assert!(matches!(t.factorize(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn squarefree_part_examples() {
        let t = table();
        assert_eq!(t.squarefree_part(12).unwrap(), 3);
        assert_eq!(t.squarefree_part(1).unwrap(), 1);
        assert_eq!(
            t.squarefree_part(360).unwrap(),
            360 / largest_power_divisor(360, 2).pow(2)
        );
        assert_eq!(t.squarefree_part(360).unwrap(), 10);
        assert_eq!(t.squarefree_part(-12).unwrap(), 3);
        assert!(t.squarefree_part(0).is_err());
    }

    #[test]
    fn m_free_part_examples() {
        let t = table();
        assert_eq!(24 / largest_power_divisor(24, 3).pow(3), 3);
        assert_eq!(t.m_free_part(24, 3).unwrap(), 3);
        assert_eq!(t.m_free_part(16, 2).unwrap(), 1);
        for n in [-9, 1, 2, 17, 360] {
            assert_eq!(t.m_free_part(n, 1).unwrap(), 1);
        }
        assert!(t.m_free_part(0, 3).is_err());
        assert!(t.m_free_part(5, 0).is_err());
    }

    #[test]
    fn squarefree_split_examples() {
        let t = table();
        let s = t.squarefree_split(12).unwrap();
        assert_eq!((s.core, s.cofactor), (3, 2));
        let s = t.squarefree_split(-50).unwrap();
        assert_eq!((s.core, s.cofactor), (-2, 5));
        // exhaustive scan for the -50 case
        let scan: alloc::vec::Vec<(i64, u64)> = (-50i64..=50)
            .flat_map(|x| (1u64..=50).map(move |y| (x, y)))
            .filter(|&(x, y)| {
                x * (y * y) as i64 == -50 && crate::arith::is_squarefree_trial(x.unsigned_abs())
            })
            .collect();
        assert_eq!(scan, [(-2, 5)]);
        let s = t.squarefree_split(7).unwrap();
        assert_eq!((s.core, s.cofactor), (7, 1));
        assert!(t.squarefree_split(0).is_err());
    }

    #[test]
    fn squarefree_times_largest_square() {
        let t = table();
        for n in 1..=10_000u64 {
            let k = largest_square_divisor_root(n);
            assert_eq!(t.squarefree_part(n as i64).unwrap() * k * k, n);
            assert_eq!(t.squarefree_part(-(n as i64)).unwrap() * k * k, n);
        }
    }

    fn largest_square_divisor_root(n: u64) -> u64 {
        let mut k = crate::arith::isqrt(n);
        while !n.is_multiple_of(k * k) {
            k -= 1;
        }
        k
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn m_free_part_divides_and_is_m_free(n in 1i64..100_000_000, m in 2u32..6) {
            let t = table();
            let f = t.m_free_part(n, m).unwrap();
            prop_assert_eq!(n as u64 % f, 0);
            for (_, e) in t.factorize(f as i64).unwrap().factors() {
                prop_assert!(*e < m);
            }
            prop_assert_eq!(t.m_free_part(f as i64, m).unwrap(), f);
            prop_assert_eq!(t.m_free_part(-n, m).unwrap(), f);
        }

        #[test]
        fn m_free_part_two_is_squarefree_part(n in -100_000_000i64..100_000_000) {
            prop_assume!(n != 0);
            let t = table();
            prop_assert_eq!(t.m_free_part(n, 2).unwrap(), t.squarefree_part(n).unwrap());
        }

        #[test]
        fn factorization_multiplies_back(n in -100_000_000i64..100_000_000) {
            prop_assume!(n != 0);
            let f = table().factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, n.unsigned_abs());
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn squarefree_split_round_trip_many() {
        // 10^5 pseudo-random values from a fixed LCG
        let t = table();
        let mut state = 0x2545F4914F6CDD1Du64;
        for _ in 0..100_000 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let n = ((state >> 20) % 200_000_001) as i64 - 100_000_000;
            if n == 0 {
                continue;
            }
            let s = t.squarefree_split(n).unwrap();
            assert_eq!(s.core * (s.cofactor * s.cofactor) as i64, n);
            assert!(crate::arith::is_squarefree_trial(s.core.unsigned_abs()));
            assert_eq!(s.core.signum(), n.signum());
        }
    }
}
