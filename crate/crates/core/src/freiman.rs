//! Affine normalisation and Freiman isomorphism verification.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{budget, Error, Result};
use crate::sets::{difference_gcd, IntSet};

/// The affine map `x ↦ (x - u) / v` and its inverse `y ↦ u + v y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub u: BigInt,
    pub v: BigInt,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            u: BigInt::zero(),
            v: BigInt::from(1),
        }
    }

    /// `(x - u) / v`, or `None` when `v` does not divide `x - u`.
    pub fn forward(&self, x: &BigInt) -> Option<BigInt> {
        let d = x - &self.u;
        if (&d % &self.v).is_zero() {
            Some(d / &self.v)
        } else {
            None
        }
    }

    pub fn inverse(&self, y: &BigInt) -> BigInt {
        &self.u + &self.v * y
    }

    pub fn forward_set(&self, x: &IntSet) -> Option<IntSet> {
        x.iter().map(|e| self.forward(e)).collect::<Option<Vec<_>>>().map(IntSet::from_iter)
    }

    pub fn inverse_set(&self, y: &IntSet) -> IntSet {
        y.affine_image(&self.u, &self.v)
    }
}

/// Translate and dilate `X` so that `0 ∈ Y`, `gcd(Y) = 1` and
/// `max Y = (max X - min X) / g`. A singleton maps to `{0}`.
pub fn normalize_affine(x: &IntSet) -> Result<(IntSet, AffineMap)> {
    let Some(min) = x.min() else {
        return Err(Error::Precondition("normalize_affine: empty set".into()));
    };
    let g = difference_gcd(x);
    let v = if g.is_zero() { BigInt::from(1) } else { g };
    let map = AffineMap { u: min.clone(), v };
    let y = map.forward_set(x).expect("gcd divides every difference");
    Ok((y, map))
}

/// A `2k`-tuple of indices into `A` on which the sum condition fails in one
/// direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreimanViolation {
    /// `a_{i_1} + ... + a_{i_k}` vs `a_{i_{k+1}} + ... + a_{i_{2k}}`.
    pub indices: Vec<usize>,
    pub equal_in_a: bool,
    pub equal_in_b: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreimanReport {
    pub k: u32,
    pub tuples_checked: u128,
    pub violation: Option<FreimanViolation>,
}

impl FreimanReport {
    pub fn is_isomorphism(&self) -> bool {
        self.violation.is_none()
    }
}

pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

/// Check that `a_i ↦ b_{phi[i]}` is a Freiman `k`-isomorphism by scanning all
/// `2k`-tuples in lexicographic order; the first violation is returned.
pub fn verify_freiman_isomorphism(
    a: &IntSet,
    b: &IntSet,
    phi: &[usize],
    k: u32,
    tuple_budget: u128,
) -> Result<FreimanReport> {
    if k == 0 {
        return Err(Error::Domain("Freiman order k must be >= 1".into()));
    }
    if a.len() != b.len() || phi.len() != a.len() {
        return Err(Error::Precondition(format!(
            "need |A| = |B| = |phi| (got {}, {}, {})",
            a.len(),
            b.len(),
            phi.len()
        )));
    }
    let n = a.len();
    let mut seen = vec![false; n];
    for &j in phi {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::Structural(
                "index map is not a bijection onto B".into(),
            ));
        }
    }
    let needed = (n as u128).checked_pow(2 * k).unwrap_or(u128::MAX);
    if needed > tuple_budget {
        return Err(budget("Freiman 2k-tuple scan", needed, tuple_budget));
    }
    let b_mapped: Vec<BigInt> = phi.iter().map(|&j| b.as_slice()[j].clone()).collect();
    let violation = match (small_values(a.as_slice(), k), small_values(&b_mapped, k)) {
        (Some(av), Some(bv)) => scan(&av, &bv, k),
        _ => scan(a.as_slice(), &b_mapped, k),
    };
    Ok(FreimanReport {
        k,
        tuples_checked: needed,
        violation,
    })
}

// i128 copies when k-fold sums cannot overflow.
fn small_values(xs: &[BigInt], k: u32) -> Option<Vec<i128>> {
    let bound = i128::MAX / (k as i128 + 1);
    xs.iter()
        .map(|x| x.to_i128().filter(|v| v.abs() < bound))
        .collect()
}

fn scan<T>(a: &[T], b: &[T], k: u32) -> Option<FreimanViolation>
where
    T: Clone + PartialEq + for<'x> std::ops::AddAssign<&'x T> + Default,
{
    let n = a.len();
    let k = k as usize;
    let tuples = n.pow(k as u32);
    // Sums of every k-tuple, indexed in lexicographic order.
    let sums = |vals: &[T]| -> Vec<T> {
        (0..tuples)
            .map(|mut t| {
                let mut s = T::default();
                for _ in 0..k {
                    s += &vals[t % n];
                    t /= n;
                }
                s
            })
            .collect()
    };
    let (sa, sb) = (sums(a), sums(b));
    // Digits of a tuple index, most significant first, so numeric order on
    // indices is lexicographic order on tuples.
    let digits = |mut t: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = t % n;
            t /= n;
        }
        d
    };
    for s in 0..tuples {
        for t in 0..tuples {
            let ea = sa[s] == sa[t];
            let eb = sb[s] == sb[t];
            if ea != eb {
                let mut indices = digits(s);
                indices.extend(digits(t));
                return Some(FreimanViolation {
                    indices,
                    equal_in_a: ea,
                    equal_in_b: eb,
                });
            }
        }
    }
    None
}

/// `phi2 ∘ phi1` as index maps.
pub fn compose(phi1: &[usize], phi2: &[usize]) -> Vec<usize> {
    phi1.iter().map(|&j| phi2[j]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[i64]) -> IntSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn normalize_examples() {
        let (y, m) = normalize_affine(&set(&[6, 10, 18])).unwrap();
        assert_eq!(y, set(&[0, 1, 3]));
        assert_eq!((m.u, m.v), (BigInt::from(6), BigInt::from(4)));
        let (y, m) = normalize_affine(&set(&[0, 1, 3])).unwrap();
        assert_eq!(y, set(&[0, 1, 3]));
        assert_eq!(m, AffineMap::identity());
        let (y, m) = normalize_affine(&set(&[7])).unwrap();
        assert_eq!(y, set(&[0]));
        assert_eq!((m.u, m.v), (BigInt::from(7), BigInt::from(1)));
        assert!(normalize_affine(&IntSet::empty()).is_err());
    }

    #[test]
    fn inverse_undoes_forward() {
        let x = set(&[-9, -3, 12, 30]);
        let (y, m) = normalize_affine(&x).unwrap();
        assert_eq!(m.inverse_set(&y), x);
        assert_eq!(m.forward(&BigInt::from(1)), None);
    }

    #[test]
    fn dilation_is_an_isomorphism() {
        let r = verify_freiman_isomorphism(&set(&[0, 1, 2]), &set(&[0, 5, 10]), &[0, 1, 2], 2, DEFAULT_TUPLE_BUDGET)
            .unwrap();
        assert!(r.is_isomorphism());
        assert_eq!(r.tuples_checked, 81);
    }

    #[test]
    fn first_violation_is_lexicographic() {
        let r = verify_freiman_isomorphism(&set(&[0, 1, 2]), &set(&[0, 1, 3]), &[0, 1, 2], 2, DEFAULT_TUPLE_BUDGET)
            .unwrap();
        let v = r.violation.unwrap();
        // 0 + 2 = 1 + 1 in A, but 0 + 3 != 1 + 1 in B.
        assert_eq!(v.indices, vec![0, 2, 1, 1]);
        assert!(v.equal_in_a && !v.equal_in_b);
    }

    #[test]
    fn identity_passes_every_order() {
        let a = set(&[2, 3, 7, 20]);
        for k in 1..=4 {
            let r = verify_freiman_isomorphism(&a, &a, &[0, 1, 2, 3], k, DEFAULT_TUPLE_BUDGET).unwrap();
            assert!(r.is_isomorphism(), "k = {k}");
        }
    }

    #[test]
    fn errors() {
        let a = set(&[0, 1, 2]);
        assert!(matches!(
            verify_freiman_isomorphism(&a, &set(&[0, 1]), &[0, 1, 2], 2, DEFAULT_TUPLE_BUDGET),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            verify_freiman_isomorphism(&a, &a, &[0, 0, 2], 2, DEFAULT_TUPLE_BUDGET),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            verify_freiman_isomorphism(&a, &a, &[0, 1, 2], 2, 80),
            Err(Error::Resource { needed: 81, limit: 80, .. })
        ));
    }

    #[test]
    fn permutation_can_break_order_two() {
        // Swapping the ends of {0,1,2} is the reflection x ↦ 2 - x, still affine.
        let a = set(&[0, 1, 2]);
        let r = verify_freiman_isomorphism(&a, &a, &[2, 1, 0], 3, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.is_isomorphism());
        let r = verify_freiman_isomorphism(&a, &a, &[1, 0, 2], 2, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(!r.is_isomorphism());
        assert_eq!(compose(&[2, 1, 0], &[2, 1, 0]), vec![0, 1, 2]);
    }
}
