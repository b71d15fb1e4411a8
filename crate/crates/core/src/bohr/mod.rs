//! Bohr sets `B_N(α, σ) = {n : |n| ≤ N, ‖nα‖ < σ}` and the extraction of
//! proper progressions of dimension at most two from them.
//!
//! All frequencies are exact rationals (given directly or as a finite
//! continued fraction), so every membership test is exact.

pub mod cf;
mod extract;
pub mod lattice;

pub use extract::{
    extract_gap, extract_gap_inhomogeneous, extract_gap_unchecked, Certificate, Extraction,
    InhomogeneousOutcome, Route, TorusInterval,
};
pub use lattice::{successive_minima_2d, Lattice2, MinimaResult};

use num_integer::Integer;

use crate::error::{budget, Error, Result};
use crate::sets::IntSet;
use crate::Rational;

/// The frequency of a Bohr set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alpha {
    Rational(Rational),
    /// Partial quotients `[a0; a1, a2, ...]`.
    ContinuedFraction(Vec<i128>),
}

impl Alpha {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Alpha::Rational(r) => Ok(*r),
            Alpha::ContinuedFraction(t) => cf::value(t),
        }
    }

    pub fn terms(&self) -> Vec<i128> {
        match self {
            Alpha::Rational(r) => cf::expand(*r),
            Alpha::ContinuedFraction(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BohrSpec {
    pub alpha: Alpha,
    pub sigma: Rational,
    pub n: u64,
}

/// Largest `N` for which [`bohr_set`] enumerates `[-N, N]`.
pub const MAX_ENUMERATION_N: u64 = 100_000_000;

impl BohrSpec {
    pub fn new(alpha: Alpha, sigma: Rational, n: u64) -> Result<Self> {
        let spec = BohrSpec { alpha, sigma, n };
        spec.validate()?;
        Ok(spec)
    }

    /// `0 < α < 1`, `0 < σ < 1/100`, `N ≥ 1`.
    pub fn validate(&self) -> Result<Rational> {
        let a = self.alpha.value()?;
        if a <= Rational::from(0) || a >= Rational::from(1) {
            return Err(Error::Precondition(format!("alpha = {a} is not in (0, 1)")));
        }
        if self.sigma <= Rational::from(0) || self.sigma >= Rational::new(1, 100) {
            return Err(Error::Precondition(format!(
                "sigma = {} is not in (0, 1/100)",
                self.sigma
            )));
        }
        if self.n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        Ok(a)
    }

    pub fn contains(&self, n: i128) -> Result<bool> {
        let a = self.validate()?;
        Ok(n.unsigned_abs() <= self.n as u128 && torus_norm(a * Rational::from(n)) < self.sigma)
    }
}

/// Distance to the nearest integer.
pub fn torus_norm(x: Rational) -> Rational {
    let f = x - x.floor();
    f.min(Rational::from(1) - f)
}

/// `‖n u / v‖ < σ`, in integer arithmetic (big integers on overflow).
#[inline]
pub(crate) fn near_zero(n: i128, u: i128, v: i128, sigma: Rational) -> bool {
    let fast = (n % v).checked_mul(u).and_then(|p| {
        let r = p.rem_euclid(v);
        let d = r.min(v - r);
        Some(d.checked_mul(*sigma.denom())? < sigma.numer().checked_mul(v)?)
    });
    fast.unwrap_or_else(|| {
        use num_bigint::BigInt;
        let v = BigInt::from(v);
        let r = (BigInt::from(n) * u).mod_floor(&v);
        let d = (&v - &r).min(r);
        d * sigma.denom() < BigInt::from(*sigma.numer()) * v
    })
}

/// Exact enumeration of `B_N(α, σ)`.
pub fn bohr_set(spec: &BohrSpec) -> Result<IntSet> {
    let a = spec.validate()?;
    if spec.n > MAX_ENUMERATION_N {
        return Err(budget("Bohr set enumeration", spec.n as u128, MAX_ENUMERATION_N as u128));
    }
    let (u, v) = (*a.numer(), *a.denom());
    let n = spec.n as i128;
    Ok((-n..=n).filter(|&m| near_zero(m, u, v, spec.sigma)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalityReport {
    pub irrational: bool,
    /// First `m` (sign-normalised, lexicographic) with `‖m·θ‖ < A/N`.
    pub violator: Option<Vec<i64>>,
    pub vectors_checked: u128,
}

pub const DEFAULT_IRRATIONALITY_BUDGET: u128 = 100_000_000;

/// Whether `θ ∈ T^d` is `(A, N)`-irrational: `‖m·θ‖ ≥ A/N` for every
/// nonzero `m ∈ Z^d` with `‖m‖₁ ≤ A`.
///
/// Since `‖-x‖ = ‖x‖`, only `m` whose first nonzero entry is positive are
/// scanned, in lexicographic order.
pub fn certify_irrational(theta: &[Rational], a: Rational, n: u64, max_vectors: u128) -> Result<IrrationalityReport> {
    if theta.is_empty() {
        return Err(Error::Domain("theta must have at least one coordinate".into()));
    }
    if a <= Rational::from(0) || n == 0 {
        return Err(Error::Domain("A and N must be positive".into()));
    }
    let d = theta.len() as u32;
    let k = a.floor().to_integer();
    let box_size = (2 * k as u128 + 1).checked_pow(d).unwrap_or(u128::MAX);
    if box_size / 2 > max_vectors {
        return Err(budget("irrationality scan", box_size / 2, max_vectors));
    }
    let threshold = a / Rational::from(n as i128);
    let mut m = vec![-k; theta.len()];
    let mut checked = 0u128;
    loop {
        let l1: i128 = m.iter().map(|x| x.abs()).sum();
        let lead_positive = m.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if lead_positive && l1 <= k {
            checked += 1;
            let dot = m
                .iter()
                .zip(theta)
                .fold(Rational::from(0), |acc, (&mi, &t)| acc + t * Rational::from(mi));
            if torus_norm(dot) < threshold {
                return Ok(IrrationalityReport {
                    irrational: false,
                    violator: Some(m.iter().map(|&x| x as i64).collect()),
                    vectors_checked: checked,
                });
            }
        }
        // Odometer increment, last coordinate fastest.
        let mut i = m.len();
        loop {
            if i == 0 {
                return Ok(IrrationalityReport {
                    irrational: true,
                    violator: None,
                    vectors_checked: checked,
                });
            }
            i -= 1;
            if m[i] < k {
                m[i] += 1;
                break;
            }
            m[i] = -k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn half_and_fifth() {
        let s = BohrSpec::new(Alpha::Rational(r(1, 2)), r(9, 1000), 6).unwrap();
        assert_eq!(bohr_set(&s).unwrap(), [-6, -4, -2, 0, 2, 4, 6].into_iter().collect());
        let s = BohrSpec::new(Alpha::Rational(r(1, 5)), r(9, 1000), 20).unwrap();
        assert_eq!(
            bohr_set(&s).unwrap(),
            [-20, -15, -10, -5, 0, 5, 10, 15, 20].into_iter().collect()
        );
    }

    #[test]
    fn three_sevenths_matches_direct_evaluation() {
        let s = BohrSpec::new(Alpha::Rational(r(3, 7)), r(1, 200), 100).unwrap();
        let b = bohr_set(&s).unwrap();
        let direct: IntSet = (-100i128..=100)
            .filter(|&n| torus_norm(r(3 * n, 7)) < r(1, 200))
            .collect();
        assert_eq!(b, direct);
        assert!(b.contains_i128(0));
        // Only multiples of 7 have ‖3n/7‖ < 1/200.
        assert_eq!(b.len(), 29);
    }

    #[test]
    fn spec_validation() {
        assert!(BohrSpec::new(Alpha::Rational(r(1, 2)), r(1, 100), 10).is_err());
        assert!(BohrSpec::new(Alpha::Rational(r(3, 2)), r(1, 200), 10).is_err());
        assert!(BohrSpec::new(Alpha::Rational(r(1, 2)), r(1, 200), 0).is_err());
        let big = BohrSpec::new(Alpha::Rational(r(1, 2)), r(1, 200), MAX_ENUMERATION_N + 1).unwrap();
        assert!(matches!(bohr_set(&big), Err(Error::Resource { .. })));
    }

    #[test]
    fn continued_fraction_alpha() {
        let a = Alpha::ContinuedFraction(vec![0, 2, 3]);
        assert_eq!(a.value().unwrap(), r(3, 7));
        assert_eq!(Alpha::Rational(r(3, 7)).terms(), vec![0, 2, 3]);
    }

    #[test]
    fn irrationality_examples() {
        let rep = certify_irrational(&[r(1, 2)], r(3, 1), 12, 1000).unwrap();
        assert!(!rep.irrational);
        assert_eq!(rep.violator, Some(vec![2]));
        // Exhaustive check for 377/1000 with A = 5: ‖m·377/1000‖ for m = 1..5
        // is 0.377, 0.246, 0.131, 0.492, 0.115, all ≥ 5e-5.
        let rep = certify_irrational(&[r(377, 1000)], r(5, 1), 100_000, 1000).unwrap();
        assert!(rep.irrational);
        assert_eq!(rep.vectors_checked, 5);
        // A/N > 1/2 forces failure.
        let rep = certify_irrational(&[r(377, 1000)], r(3, 1), 4, 1000).unwrap();
        assert!(!rep.irrational);
        assert_eq!(rep.violator, Some(vec![1]));
    }

    #[test]
    fn two_dimensional_irrationality() {
        let theta = [r(1, 3), r(2, 3)];
        let rep = certify_irrational(&theta, r(2, 1), 100, 1000).unwrap();
        // (1, 1): 1/3 + 2/3 = 1.
        assert_eq!(rep.violator, Some(vec![1, 1]));
        assert!(matches!(
            certify_irrational(&theta, r(100, 1), 100, 10),
            Err(Error::Resource { .. })
        ));
    }
}
