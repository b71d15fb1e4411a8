//! Witness-producing covering checks.
//!
//! Each check materialises a signed combination `lX - mX` and reports
//! whether a target progression lies inside it, returning the smallest
//! missing element when it does not. Preconditions are enforced in
//! [`Enforcement::Strict`] mode and merely recorded in
//! [`Enforcement::Advisory`] mode, so sharpness examples can be run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::progressions::{smallest_containing_ap, Gap2, Progression1D};
use crate::sets::{difference_gcd, iterated_sumset, signed_combination, IntSet};
use crate::Rational;

/// `k` and `r` with `k ≤ (l-1)/(|X|-2) ≤ k+1` and
/// `r = (k+1)(|X|-2) - (l-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevParams {
    pub l: u64,
    pub card_x: u64,
    pub k: u64,
    pub r: i64,
}

impl LevParams {
    /// Both containments checked for these parameters:
    /// `[kl - kr, kl + kr]` and `[kl - kr, (k+1)l + kr]`.
    pub fn even_interval(&self) -> (i128, i128) {
        let (k, l, r) = (self.k as i128, self.l as i128, self.r as i128);
        (k * l - k * r, k * l + k * r)
    }

    pub fn odd_interval(&self) -> (i128, i128) {
        let (k, l, r) = (self.k as i128, self.l as i128, self.r as i128);
        (k * l - k * r, (k + 1) * l + k * r)
    }
}

// l = max X, after checking 0, l ∈ X, |X| ≥ 3 and gcd 1.
fn lev_shape(x: &IntSet) -> Result<(u64, u64)> {
    if x.len() < 3 {
        return Err(Error::Precondition(format!(
            "Lev parameters need |X| >= 3 (got {})",
            x.len()
        )));
    }
    if !x.min().unwrap().is_zero() {
        return Err(Error::Precondition("Lev parameters need min X = 0".into()));
    }
    if !difference_gcd(x).is_one() {
        return Err(Error::Precondition("Lev parameters need gcd(X) = 1".into()));
    }
    let l = x
        .max()
        .unwrap()
        .to_u64()
        .ok_or_else(|| Error::Domain("max X too large".into()))?;
    Ok((l, x.len() as u64))
}

/// Every `k` satisfying the bracketing: one value, or two when the ratio is
/// an integer `t ≥ 2` (then `t - 1` and `t`).
pub fn lev_admissible_ks(x: &IntSet) -> Result<Vec<u64>> {
    let (l, n) = lev_shape(x)?;
    let (t, rem) = (l - 1).div_rem(&(n - 2));
    Ok(if rem == 0 && t >= 2 { vec![t - 1, t] } else { vec![t] })
}

/// Lev parameters with `k = ⌊(l-1)/(|X|-2)⌋`, i.e. the larger choice at
/// integer ratios.
pub fn lev_parameters(x: &IntSet) -> Result<LevParams> {
    let (l, n) = lev_shape(x)?;
    lev_with_k(l, n, (l - 1) / (n - 2))
}

fn lev_with_k(l: u64, n: u64, k: u64) -> Result<LevParams> {
    let lhs_ok = k * (n - 2) <= l - 1;
    let rhs_ok = l - 1 <= (k + 1) * (n - 2);
    if k == 0 || !lhs_ok || !rhs_ok {
        return Err(Error::Domain(format!(
            "k = {k} does not bracket (l-1)/(|X|-2) = {}/{}",
            l - 1,
            n - 2
        )));
    }
    let r = ((k + 1) * (n - 2)) as i64 - (l as i64 - 2);
    Ok(LevParams { l, card_x: n, k, r })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevReport {
    pub params: LevParams,
    pub contains_even: bool,
    pub contains_odd: bool,
    /// Smallest element of each target interval missing from `2kX` / `(2k+1)X`.
    pub missing_even: Option<i128>,
    pub missing_odd: Option<i128>,
}

impl LevReport {
    pub fn holds(&self) -> bool {
        self.contains_even && self.contains_odd
    }
}

/// Check both interval containments with `k` from [`lev_parameters`].
pub fn lev_verify(x: &IntSet) -> Result<LevReport> {
    let p = lev_parameters(x)?;
    lev_verify_with_k(x, p.k)
}

/// As [`lev_verify`] with an explicit admissible `k`.
pub fn lev_verify_with_k(x: &IntSet, k: u64) -> Result<LevReport> {
    let (l, n) = lev_shape(x)?;
    let params = lev_with_k(l, n, k)?;
    let k32 = u32::try_from(k).map_err(|_| Error::Domain("k too large".into()))?;
    let even = iterated_sumset(x, 2 * k32)?;
    let odd = iterated_sumset(x, 2 * k32 + 1)?;
    let missing = |s: &IntSet, (lo, hi): (i128, i128)| (lo..=hi).find(|&v| !s.contains_i128(v));
    let missing_even = missing(&even, params.even_interval());
    let missing_odd = missing(&odd, params.odd_interval());
    Ok(LevReport {
        params,
        contains_even: missing_even.is_none(),
        contains_odd: missing_odd.is_none(),
        missing_even,
        missing_odd,
    })
}

/// Whether violated preconditions abort the call or are only recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Enforcement {
    #[default]
    Strict,
    Advisory,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// `(l, m)` of the signed combination `lX - mX`.
    pub combination: (u32, u32),
    pub target_size: usize,
    pub holds: bool,
    /// Smallest target element outside `lX - mX`.
    pub missing: Option<BigInt>,
    /// Preconditions that failed (only non-empty in advisory mode).
    pub precondition_failures: Vec<String>,
}

fn gate(failures: Vec<String>, mode: Enforcement) -> Result<Vec<String>> {
    if mode == Enforcement::Strict && !failures.is_empty() {
        return Err(Error::Precondition(failures.join("; ")));
    }
    Ok(failures)
}

fn cover(x: &IntSet, target: &IntSet, l: u32, m: u32, failures: Vec<String>) -> Result<CoverReport> {
    let combo = signed_combination(x, l, m)?;
    let missing = target.first_missing_from(&combo).cloned();
    if let Some(w) = &missing {
        if combo.contains(w) || !target.contains(w) {
            return Err(Error::Internal("unsound cover witness".into()));
        }
    }
    Ok(CoverReport {
        combination: (l, m),
        target_size: target.len(),
        holds: missing.is_none(),
        missing,
        precondition_failures: failures,
    })
}

/// `P ⊆ 5X - 4X` for `X ⊆ P`, `|P| ≥ 12`, `|X|/|P| > 1/2`.
pub fn cover_5_4(x: &IntSet, p: &Progression1D, mode: Enforcement) -> Result<CoverReport> {
    if x.is_empty() {
        return Err(Error::Precondition("cover_5_4: X is empty".into()));
    }
    let target = p.elements();
    let mut failures = Vec::new();
    if !x.is_subset(&target) {
        failures.push("X is not contained in P".to_string());
    }
    if p.len < 12 {
        failures.push(format!("|P| = {} < 12", p.len));
    }
    if Rational::new(x.len() as i128, p.len as i128) <= Rational::new(1, 2) {
        failures.push(format!("|X|/|P| = {}/{} is not > 1/2", x.len(), p.len));
    }
    let failures = gate(failures, mode)?;
    cover(x, &target, 5, 4, failures)
}

/// `P ⊆ 9X - 8X` where `P` is the smallest AP containing `X`,
/// `|X| ≥ 100` and `|X|/|P| > 2/5`.
pub fn cover_9_8(x: &IntSet, mode: Enforcement) -> Result<CoverReport> {
    let p = smallest_containing_ap(x)?;
    let mut failures = Vec::new();
    if x.len() < 100 {
        failures.push(format!("|X| = {} < 100", x.len()));
    }
    if Rational::new(x.len() as i128, p.len as i128) <= Rational::new(2, 5) {
        failures.push(format!("|X|/|P| = {}/{} is not > 2/5", x.len(), p.len));
    }
    let failures = gate(failures, mode)?;
    cover(x, &p.elements(), 9, 8, failures)
}

/// `Q ⊆ 41X - 40X` for proper `Q`, `X ⊆ Q`, `|X| ≥ 100` and
/// `|X| ≥ (1 - c)|Q|` for some `c < 1/10`.
pub fn cover_41_40(x: &IntSet, q: &Gap2, mode: Enforcement) -> Result<CoverReport> {
    if x.is_empty() {
        return Err(Error::Precondition("cover_41_40: X is empty".into()));
    }
    let mut failures = Vec::new();
    if let crate::progressions::Properness::Collision { first, second } = q.properness() {
        failures.push(format!("Q is not proper: indices {first:?} and {second:?} collide"));
    }
    let target = q.elements();
    if !x.is_subset(&target) {
        failures.push("X is not contained in Q".to_string());
    }
    if x.len() < 100 {
        failures.push(format!("|X| = {} < 100", x.len()));
    }
    // |X| ≥ (1 - c)|Q| for some c < 1/10  ⇔  |X| > 9|Q|/10.
    if 10 * x.len() <= 9 * target.len() {
        failures.push(format!("|X|/|Q| = {}/{} is not > 9/10", x.len(), target.len()));
    }
    let failures = gate(failures, mode)?;
    cover(x, &target, 41, 40, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[i64]) -> IntSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn lev_parameter_examples() {
        let p = lev_parameters(&set(&[0, 1, 3])).unwrap();
        assert_eq!((p.l, p.k, p.r), (3, 2, 2));
        let p = lev_parameters(&IntSet::interval(0, 9)).unwrap();
        assert_eq!(p.k, 1);
        let p = lev_parameters(&set(&[0, 1, 2, 7])).unwrap();
        assert_eq!((p.l, p.k, p.r), (7, 3, 3));
        assert_eq!(lev_admissible_ks(&set(&[0, 1, 2, 7])).unwrap(), vec![2, 3]);
        assert_eq!(lev_admissible_ks(&set(&[0, 1, 2, 6])).unwrap(), vec![2]);
    }

    #[test]
    fn lev_rejects_bad_inputs() {
        assert!(matches!(lev_parameters(&set(&[0, 1])), Err(Error::Precondition(_))));
        assert!(matches!(lev_parameters(&set(&[0, 2, 4])), Err(Error::Precondition(_))));
        assert!(matches!(lev_parameters(&set(&[1, 2, 4])), Err(Error::Precondition(_))));
        assert!(matches!(lev_verify_with_k(&set(&[0, 1, 3]), 5), Err(Error::Domain(_))));
    }

    #[test]
    fn lev_verify_examples() {
        let r = lev_verify(&set(&[0, 1, 3])).unwrap();
        assert_eq!(r.params.even_interval(), (2, 10));
        assert!(r.holds());
        let r = lev_verify(&set(&[0, 1, 2, 7])).unwrap();
        assert_eq!(r.params.even_interval(), (12, 30));
        assert!(r.holds());
        assert!(lev_verify_with_k(&set(&[0, 1, 2, 7]), 2).unwrap().holds());
    }

    #[test]
    fn five_four_examples() {
        let p = Progression1D::interval(0, 12).unwrap();
        let x = IntSet::interval(5, 12).union(&set(&[3]));
        let r = cover_5_4(&x, &p, Enforcement::Strict).unwrap();
        assert!(r.holds);
        assert!(cover_5_4(&p.elements(), &p, Enforcement::Strict).unwrap().holds);
    }

    #[test]
    fn five_four_sharpness() {
        let p = Progression1D::interval(1, 12).unwrap();
        let evens: IntSet = (1..=6).map(|i| 2 * i as i64).collect();
        assert!(matches!(
            cover_5_4(&evens, &p, Enforcement::Strict),
            Err(Error::Precondition(_))
        ));
        let r = cover_5_4(&evens, &p, Enforcement::Advisory).unwrap();
        assert!(!r.holds);
        assert_eq!(r.missing, Some(BigInt::from(1)));
        assert_eq!(r.precondition_failures.len(), 1);
    }

    #[test]
    fn nine_eight_boundary_and_full() {
        assert!(cover_9_8(&IntSet::interval(0, 99), Enforcement::Strict).unwrap().holds);
        assert!(matches!(
            cover_9_8(&IntSet::interval(0, 98), Enforcement::Strict),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn forty_one_forty_examples() {
        let q = Gap2::new(0, 1, 1000, 12, 12).unwrap();
        assert!(cover_41_40(&q.elements(), &q, Enforcement::Strict).unwrap().holds);
        let bad = Gap2::new(0, 1, 2, 12, 12).unwrap();
        assert!(matches!(
            cover_41_40(&bad.elements(), &bad, Enforcement::Strict),
            Err(Error::Precondition(_))
        ));
    }
}
