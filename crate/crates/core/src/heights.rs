//! Heights on the projective line over the rationals with marked points.
//!
//! The model is the standard integral projective line with `S = {infinity}`.
//! For primitive `t = [a:b]` and a marked point `P = [c:d]` the local
//! intersection multiplicity at `p` is `ord_p(a*d - b*c)`, so the global
//! lambda factor is `|a*d - b*c|`. The height is
//!
//! ```text
//! H(t) = max(|a|, |b|) * prod_P  m_P-free part(lambda(P, t))
//! ```
//!
//! With `{0, -1, infinity}` at multiplicity 2 this is
//! `sqf(a) sqf(b) sqf(a+b) max(|a|, |b|)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{valuation, SpfTable};
use crate::{Error, Result};

/// A rational point `[a:b]` with coprime coordinates and `b > 0`, or `[1:0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    a: i64,
    b: i64,
}

impl ProjectivePoint {
    pub const ZERO: ProjectivePoint = ProjectivePoint { a: 0, b: 1 };
    pub const MINUS_ONE: ProjectivePoint = ProjectivePoint { a: -1, b: 1 };
    pub const INFINITY: ProjectivePoint = ProjectivePoint { a: 1, b: 0 };

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `max(|a|, |b|)`, the height attached to O(1).
    pub fn classical_height(&self) -> u64 {
        self.a.unsigned_abs().max(self.b.unsigned_abs())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

/// Divides out the gcd and fixes the sign so `[a:b]` and `[-a:-b]` agree.
pub fn canonicalize(a: i64, b: i64) -> Result<ProjectivePoint> {
    if a == 0 && b == 0 {
        return Err(Error::invalid("[0:0] is not a projective point"));
    }
    let g = num_integer::gcd(a.unsigned_abs(), b.unsigned_abs());
    // i64::MIN / 1 would overflow on negation below
    let (mut a, mut b) = (a as i128 / g as i128, b as i128 / g as i128);
    if b < 0 || (b == 0 && a < 0) {
        a = -a;
        b = -b;
    }
    match (i64::try_from(a), i64::try_from(b)) {
        (Ok(a), Ok(b)) => Ok(ProjectivePoint { a, b }),
        _ => Err(Error::Overflow("canonicalize")),
    }
}

/// Marked points with their finite multiplicities; every other point has multiplicity 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCurveSpec {
    marked: Vec<(ProjectivePoint, u32)>,
}

impl MCurveSpec {
    /// Entries with multiplicity 1 are dropped. Repeated points or a zero multiplicity
    /// are rejected.
    pub fn new(marked: impl IntoIterator<Item = (ProjectivePoint, u32)>) -> Result<Self> {
        let mut out: Vec<(ProjectivePoint, u32)> = Vec::new();
        for (p, m) in marked {
            if m == 0 {
                return Err(Error::invalid(format!(
                    "multiplicity of [{p}] must be at least 1"
                )));
            }
            if out.iter().any(|(q, _)| *q == p) {
                return Err(Error::invalid(format!("[{p}] is marked twice")));
            }
            if m >= 2 {
                out.push((p, m));
            }
        }
        Ok(MCurveSpec { marked: out })
    }

    /// `{0, -1, infinity}` with multiplicities `(p, q, r)`.
    pub fn pqr(p: u32, q: u32, r: u32) -> Result<Self> {
        Self::new([
            (ProjectivePoint::ZERO, p),
            (ProjectivePoint::MINUS_ONE, q),
            (ProjectivePoint::INFINITY, r),
        ])
    }

    /// The curve with three half-points at `0`, `-1` and `infinity`.
    pub fn three_half_points() -> Self {
        Self::pqr(2, 2, 2).expect("valid multiplicities")
    }

    pub fn marked(&self) -> &[(ProjectivePoint, u32)] {
        &self.marked
    }

    pub fn is_marked(&self, t: &ProjectivePoint) -> bool {
        self.marked.iter().any(|(p, _)| p == t)
    }

    pub fn is_three_half_points(&self) -> bool {
        let mut sorted = self.marked.clone();
        sorted.sort();
        let mut want = Self::three_half_points().marked;
        want.sort();
        sorted == want
    }
}

impl Default for MCurveSpec {
    fn default() -> Self {
        Self::three_half_points()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalPart {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    pub lambda: u128,
    pub stacky_local: u128,
}

/// `total = classical * prod stacky_local`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightBreakdown {
    pub classical: u128,
    pub local_parts: Vec<LocalPart>,
    pub total: u128,
}

impl HeightBreakdown {
    pub fn stacky_part(&self) -> u128 {
        self.local_parts.iter().map(|l| l.stacky_local).product()
    }
}

fn cross(t: &ProjectivePoint, p: &ProjectivePoint) -> Result<u128> {
    if t == p {
        return Err(Error::invalid(format!(
            "intersection with itself is infinite at [{t}]"
        )));
    }
    let det = t.a as i128 * p.b as i128 - t.b as i128 * p.a as i128;
    debug_assert!(det != 0);
    Ok(det.unsigned_abs())
}

/// `ord_p(a*d - b*c)` for `t = [a:b]`, `P = [c:d]`.
pub fn intersection_multiplicity(
    t: &ProjectivePoint,
    p: &ProjectivePoint,
    prime: u64,
) -> Result<u32> {
    if prime < 2
        || (2..)
            .take_while(|d: &u64| d * d <= prime)
            .any(|d| prime.is_multiple_of(d))
    {
        return Err(Error::invalid(format!("{prime} is not prime")));
    }
    Ok(valuation(cross(t, p)?, prime))
}

/// The global lambda factor `|a*d - b*c|`, the product of `p^(t.P)_p` over all primes.
pub fn lambda_product(t: &ProjectivePoint, p: &ProjectivePoint) -> Result<u128> {
    cross(t, p)
}

/// `m`-free part of `lambda(P, t)`; 1 whenever `m == 1`.
pub fn stacky_local_height(
    t: &ProjectivePoint,
    p: &ProjectivePoint,
    m: u32,
    table: &SpfTable,
) -> Result<u128> {
    let lambda = lambda_product(t, p)?;
    table.m_free_part_abs(lambda, m)
}

fn reject_marked(spec: &MCurveSpec, t: &ProjectivePoint) -> Result<()> {
    if spec.is_marked(t) {
        return Err(Error::StackyPoint { a: t.a, b: t.b });
    }
    Ok(())
}

pub fn stacky_height(
    spec: &MCurveSpec,
    t: &ProjectivePoint,
    table: &SpfTable,
) -> Result<HeightBreakdown> {
    reject_marked(spec, t)?;
    let classical = t.classical_height() as u128;
    let mut total = classical;
    let mut local_parts = Vec::with_capacity(spec.marked.len());
    for &(point, multiplicity) in &spec.marked {
        let lambda = lambda_product(t, &point)?;
        let stacky_local = table.m_free_part_abs(lambda, multiplicity)?;
        total = total
            .checked_mul(stacky_local)
            .ok_or(Error::Overflow("stacky height"))?;
        local_parts.push(LocalPart {
            point,
            multiplicity,
            lambda,
            stacky_local,
        });
    }
    Ok(HeightBreakdown {
        classical,
        local_parts,
        total,
    })
}

/// `sqf(a) sqf(b) sqf(a+b) max(|a|, |b|)` for coprime nonzero `a`, `b` with `a + b != 0`.
pub fn eszb_height_222(a: i64, b: i64, table: &SpfTable) -> Result<u128> {
    height_pqr(a, b, 2, 2, 2, table)
}

/// `p-free(|a|) q-free(|a+b|) r-free(|b|) max(|a|, |b|)`.
pub fn height_pqr(a: i64, b: i64, p: u32, q: u32, r: u32, table: &SpfTable) -> Result<u128> {
    let sum = a as i128 + b as i128;
    if a == 0 || b == 0 || sum == 0 {
        return Err(Error::StackyPoint { a, b });
    }
    if num_integer::gcd(a.unsigned_abs(), b.unsigned_abs()) != 1 {
        return Err(Error::invalid(format!("({a}, {b}) is not a coprime pair")));
    }
    let classical = a.unsigned_abs().max(b.unsigned_abs()) as u128;
    let h = [
        table.m_free_part_abs(a.unsigned_abs() as u128, p)?,
        table.m_free_part_abs(sum.unsigned_abs(), q)?,
        table.m_free_part_abs(b.unsigned_abs() as u128, r)?,
    ]
    .into_iter()
    .try_fold(classical, |acc, x| acc.checked_mul(x))
    .ok_or(Error::Overflow("height"))?;
    assert!(
        h >= classical,
        "height below the classical height at ({a}, {b})"
    );
    Ok(h)
}

/// Outcome of the integrality test. `witness` names a marked point and a prime
/// where the intersection multiplicity is not divisible by the multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integrality {
    pub integral: bool,
    pub witness: Option<(ProjectivePoint, u64)>,
}

/// Darmon integrality, checked two ways: by the valuation congruences
/// `(t.P)_p = 0 mod m_P` at every prime, and by `H(P, t) = 1` at every marked
/// point. Over the rationals these agree; a disagreement is reported as an error.
pub fn is_integral(
    spec: &MCurveSpec,
    t: &ProjectivePoint,
    table: &SpfTable,
) -> Result<Integrality> {
    reject_marked(spec, t)?;
    let mut witness = None;
    for &(point, m) in &spec.marked {
        let lambda = lambda_product(t, &point)?;
        let failing_prime = table
            .factor_abs(lambda)?
            .into_iter()
            .find(|&(_, e)| e % m != 0)
            .map(|(p, _)| p);
        let height_trivial = table.m_free_part_abs(lambda, m)? == 1;
        let congruent = failing_prime.is_none();
        // congruences force an m-th power, so H(P, t) = 1
        if congruent && !height_trivial {
            return Err(Error::Inconsistent(format!(
                "[{t}] meets the congruences at [{point}] but H(P, t) != 1"
            )));
        }
        // over Q the converse holds as well
        if height_trivial && !congruent {
            return Err(Error::Inconsistent(format!(
                "[{t}] has H(P, t) = 1 at [{point}] but fails a congruence"
            )));
        }
        if let (None, Some(p)) = (witness, failing_prime) {
            witness = Some((point, p));
        }
    }
    Ok(Integrality {
        integral: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_spf_table;

    fn pt(a: i64, b: i64) -> ProjectivePoint {
        canonicalize(a, b).unwrap()
    }

    fn table() -> SpfTable {
        build_spf_table(100_000).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(pt(2, -4), ProjectivePoint { a: -1, b: 2 });
        assert_eq!(pt(0, -5), ProjectivePoint::ZERO);
        assert_eq!(pt(7, 0), ProjectivePoint::INFINITY);
        assert_eq!(pt(-7, 0), ProjectivePoint::INFINITY);
        assert_eq!(pt(-3, -6), pt(3, 6));
        assert!(canonicalize(0, 0).is_err());
        assert_eq!(pt(i64::MIN, 1).a(), i64::MIN);
        assert!(matches!(
            canonicalize(i64::MIN, -1),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn intersection_examples() {
        let t = pt(4, 9);
        assert_eq!(
            intersection_multiplicity(&t, &ProjectivePoint::ZERO, 2).unwrap(),
            2
        );
        assert_eq!(
            intersection_multiplicity(&t, &ProjectivePoint::ZERO, 3).unwrap(),
            0
        );
        assert_eq!(
            intersection_multiplicity(&t, &ProjectivePoint::MINUS_ONE, 13).unwrap(),
            1
        );
        assert_eq!(
            intersection_multiplicity(&t, &ProjectivePoint::INFINITY, 3).unwrap(),
            2
        );
        assert!(intersection_multiplicity(&t, &t, 2).is_err());
        assert!(intersection_multiplicity(&t, &ProjectivePoint::ZERO, 4).is_err());
    }

    #[test]
    fn lambda_examples() {
        let t = pt(4, 9);
        assert_eq!(lambda_product(&t, &ProjectivePoint::ZERO).unwrap(), 4);
        assert_eq!(lambda_product(&t, &ProjectivePoint::INFINITY).unwrap(), 9);
        assert_eq!(lambda_product(&t, &ProjectivePoint::MINUS_ONE).unwrap(), 13);
        assert!(lambda_product(&t, &t).is_err());
    }

    #[test]
    fn stacky_local_examples() {
        let tb = table();
        let t = pt(4, 9);
        assert_eq!(
            stacky_local_height(&t, &ProjectivePoint::ZERO, 2, &tb).unwrap(),
            1
        );
        assert_eq!(
            stacky_local_height(&t, &ProjectivePoint::MINUS_ONE, 2, &tb).unwrap(),
            13
        );
        for (a, b) in [(4, 9), (-5, 3), (1, 0), (12, 7)] {
            let p = pt(a, b);
            assert_eq!(stacky_local_height(&t, &p, 1, &tb).unwrap_or(1), 1);
        }
    }

    #[test]
    fn stacky_height_examples() {
        let tb = table();
        let spec = MCurveSpec::three_half_points();
        let h = stacky_height(&spec, &pt(1, 1), &tb).unwrap();
        assert_eq!(h.total, 2);
        assert_eq!(h.total, eszb_height_222(1, 1, &tb).unwrap());
        let h = stacky_height(&spec, &pt(4, 9), &tb).unwrap();
        assert_eq!(h.total, 117);
        assert_eq!(h.classical, 9);
        assert_eq!(h.stacky_part(), 13);
        assert_eq!(h.total, eszb_height_222(4, 9, &tb).unwrap());
        let empty = MCurveSpec::new([]).unwrap();
        assert_eq!(stacky_height(&empty, &pt(3, 5), &tb).unwrap().total, 5);
        assert!(matches!(
            stacky_height(&spec, &ProjectivePoint::MINUS_ONE, &tb),
            Err(Error::StackyPoint { a: -1, b: 1 })
        ));
    }

    #[test]
    fn breakdown_invariants() {
        let tb = table();
        let spec = MCurveSpec::new([(pt(0, 1), 3), (pt(2, 3), 2), (pt(1, 0), 5)]).unwrap();
        for (a, b) in [(7, 11), (-8, 27), (1, 1), (64, 81)] {
            let h = stacky_height(&spec, &pt(a, b), &tb).unwrap();
            assert_eq!(h.total, h.classical * h.stacky_part());
            for l in &h.local_parts {
                assert_eq!(
                    l.stacky_local,
                    tb.m_free_part_abs(l.lambda, l.multiplicity).unwrap()
                );
            }
        }
    }

    #[test]
    fn eszb_examples() {
        let tb = table();
        assert_eq!(eszb_height_222(1, 1, &tb).unwrap(), 2);
        assert_eq!(eszb_height_222(3, 1, &tb).unwrap(), 9);
        assert_eq!(eszb_height_222(9, 16, &tb).unwrap(), 16);
        assert!(matches!(
            eszb_height_222(0, 1, &tb),
            Err(Error::StackyPoint { .. })
        ));
        assert!(matches!(
            eszb_height_222(1, 0, &tb),
            Err(Error::StackyPoint { .. })
        ));
        assert!(matches!(
            eszb_height_222(3, -3, &tb),
            Err(Error::StackyPoint { .. })
        ));
        assert!(matches!(
            eszb_height_222(2, 4, &tb),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn pqr_examples() {
        let tb = table();
        assert_eq!(height_pqr(8, 1, 3, 3, 3, &tb).unwrap(), 72);
        for (a, b) in [(3, 1), (-7, 12), (25, 36)] {
            assert_eq!(
                height_pqr(a, b, 1, 1, 1, &tb).unwrap(),
                a.unsigned_abs().max(b.unsigned_abs()) as u128
            );
        }
        assert_eq!(
            height_pqr(3, 1, 2, 2, 2, &tb).unwrap(),
            eszb_height_222(3, 1, &tb).unwrap()
        );
    }

    #[test]
    fn pqr_matches_the_general_machine() {
        let tb = table();
        let spec = MCurveSpec::pqr(3, 2, 5).unwrap();
        for a in -40i64..=40 {
            for b in 1i64..=40 {
                if a == 0 || a + b == 0 || num_integer::gcd(a.unsigned_abs(), b as u64) != 1 {
                    continue;
                }
                assert_eq!(
                    stacky_height(&spec, &pt(a, b), &tb).unwrap().total,
                    height_pqr(a, b, 3, 2, 5, &tb).unwrap()
                );
            }
        }
    }

    #[test]
    fn integrality_examples() {
        let tb = table();
        let spec = MCurveSpec::three_half_points();
        assert!(is_integral(&spec, &pt(9, 16), &tb).unwrap().integral);
        let v = is_integral(&spec, &pt(1, 1), &tb).unwrap();
        assert!(!v.integral);
        assert_eq!(v.witness, Some((ProjectivePoint::MINUS_ONE, 2)));
        let v = is_integral(&spec, &pt(2, 1), &tb).unwrap();
        assert!(!v.integral);
        assert_eq!(v.witness, Some((ProjectivePoint::ZERO, 2)));
        assert!(matches!(
            is_integral(&spec, &ProjectivePoint::ZERO, &tb),
            Err(Error::StackyPoint { .. })
        ));
    }

    #[test]
    fn integral_iff_classical_and_symmetric() {
        let tb = table();
        let spec = MCurveSpec::three_half_points();
        for a in -300i64..=300 {
            for b in 1i64..=300 {
                if a == 0 || a + b == 0 || num_integer::gcd(a.unsigned_abs(), b as u64) != 1 {
                    continue;
                }
                let t = pt(a, b);
                let h = stacky_height(&spec, &t, &tb).unwrap();
                assert_eq!(
                    is_integral(&spec, &t, &tb).unwrap().integral,
                    h.total == h.classical
                );
                assert_eq!(
                    eszb_height_222(a, b, &tb).unwrap(),
                    eszb_height_222(b, a, &tb).unwrap()
                );
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(MCurveSpec::new([(ProjectivePoint::ZERO, 2), (ProjectivePoint::ZERO, 3)]).is_err());
        assert!(MCurveSpec::new([(ProjectivePoint::ZERO, 0)]).is_err());
        let s =
            MCurveSpec::new([(ProjectivePoint::ZERO, 1), (ProjectivePoint::INFINITY, 2)]).unwrap();
        assert_eq!(s.marked().len(), 1);
        assert!(!s.is_marked(&ProjectivePoint::ZERO));
        assert!(MCurveSpec::pqr(2, 2, 2).unwrap().is_three_half_points());
        assert!(!MCurveSpec::pqr(2, 3, 2).unwrap().is_three_half_points());
    }
}
