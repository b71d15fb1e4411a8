//! One- and two-dimensional arithmetic progressions.
//!
//! Indices run over `1 ≤ l ≤ L`, so `Progression1D { a0, step, len }` is
//! `{a0 + step, a0 + 2 step, ..., a0 + len step}`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::sets::{difference_gcd, IntSet};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Progression1D {
    pub a0: i128,
    pub step: i128,
    pub len: u64,
}

impl Progression1D {
    /// Requires `step >= 1` and `len >= 1`.
    pub fn new(a0: i128, step: i128, len: u64) -> Result<Self> {
        if step < 1 || len < 1 {
            return Err(Error::Domain(format!(
                "1-dim progression needs step >= 1 and length >= 1 (got step {step}, length {len})"
            )));
        }
        Ok(Progression1D { a0, step, len })
    }

    /// The progression `first, first + step, ..., first + (len-1) step`.
    pub fn starting_at(first: i128, step: i128, len: u64) -> Result<Self> {
        Progression1D::new(first - step, step, len)
    }

    /// `{lo, ..., hi}` as a step-1 progression.
    pub fn interval(lo: i128, hi: i128) -> Result<Self> {
        if hi < lo {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Progression1D::starting_at(lo, 1, (hi - lo + 1) as u64)
    }

    pub fn first(&self) -> i128 {
        self.a0 + self.step
    }

    pub fn last(&self) -> i128 {
        self.a0 + self.len as i128 * self.step
    }

    pub fn element(&self, l: u64) -> i128 {
        self.a0 + l as i128 * self.step
    }

    pub fn contains(&self, x: i128) -> bool {
        let d = x - self.a0;
        d.rem_euclid(self.step) == 0 && (1..=self.len as i128).contains(&(d / self.step))
    }

    pub fn iter(&self) -> impl Iterator<Item = i128> + '_ {
        (1..=self.len).map(|l| self.element(l))
    }

    pub fn elements(&self) -> IntSet {
        self.iter().collect()
    }
}

/// `{a0 + l1 a1 + l2 a2 : 1 ≤ l1 ≤ L1, 1 ≤ l2 ≤ L2}`; steps may be negative
/// or zero, and properness is checked, not assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gap2 {
    pub a0: i128,
    pub a1: i128,
    pub a2: i128,
    pub l1: u64,
    pub l2: u64,
}

/// Result of [`Gap2::properness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Properness {
    Proper,
    /// Two distinct index pairs hitting the same element.
    Collision { first: (u64, u64), second: (u64, u64) },
}

impl Properness {
    pub fn is_proper(&self) -> bool {
        matches!(self, Properness::Proper)
    }
}

impl Gap2 {
    pub fn new(a0: i128, a1: i128, a2: i128, l1: u64, l2: u64) -> Result<Self> {
        if l1 < 1 || l2 < 1 {
            return Err(Error::Domain(format!(
                "2-dim progression needs lengths >= 1 (got {l1} x {l2})"
            )));
        }
        Ok(Gap2 { a0, a1, a2, l1, l2 })
    }

    pub fn element(&self, l1: u64, l2: u64) -> i128 {
        self.a0 + l1 as i128 * self.a1 + l2 as i128 * self.a2
    }

    /// `L1 · L2`, the size when proper.
    pub fn index_count(&self) -> u128 {
        self.l1 as u128 * self.l2 as u128
    }

    /// Elements in index order `(1,1), (1,2), ..., (L1, L2)`, with repeats.
    pub fn iter(&self) -> impl Iterator<Item = i128> + '_ {
        (1..=self.l1).flat_map(move |i| (1..=self.l2).map(move |j| self.element(i, j)))
    }

    pub fn elements(&self) -> IntSet {
        self.iter().collect()
    }

    /// Properness by solving `d1 a1 + d2 a2 = 0` with `|d1| < L1`, `|d2| < L2`.
    pub fn properness(&self) -> Properness {
        let (a1, a2) = (self.a1, self.a2);
        let (l1, l2) = (self.l1 as i128, self.l2 as i128);
        // Smallest nonzero (d1, d2) with d1 a1 = d2 a2, as (|d1|, e) where the
        // collision is (1, ·) vs (1 + |d1|, ·) and e shifts the second index.
        let (d1, e) = match (a1, a2) {
            (0, 0) if l1 > 1 => (1, 0),
            (0, 0) if l2 > 1 => {
                return Properness::Collision {
                    first: (1, 1),
                    second: (1, 2),
                }
            }
            (0, 0) => return Properness::Proper,
            (0, _) => (1, 0),
            (_, 0) => {
                return if l2 > 1 {
                    Properness::Collision {
                        first: (1, 1),
                        second: (1, 2),
                    }
                } else {
                    Properness::Proper
                }
            }
            _ => {
                let g = a1.gcd(&a2);
                (a2.abs() / g, a1 / g * a2.signum())
            }
        };
        if d1 >= l1 || e.abs() >= l2 {
            return Properness::Proper;
        }
        let (j, j2) = if e >= 0 { (1 + e, 1) } else { (1, 1 - e) };
        Properness::Collision {
            first: (1, j as u64),
            second: ((1 + d1) as u64, j2 as u64),
        }
    }

    pub fn is_proper(&self) -> bool {
        self.properness().is_proper()
    }

    /// True cardinality of the element set.
    pub fn cardinality(&self) -> usize {
        if self.is_proper() {
            self.index_count() as usize
        } else {
            self.iter().collect::<HashSet<_>>().len()
        }
    }
}

/// A progression of dimension one or two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Progression {
    OneDim(Progression1D),
    TwoDim(Gap2),
}

impl Progression {
    pub fn dimension(&self) -> usize {
        match self {
            Progression::OneDim(_) => 1,
            Progression::TwoDim(_) => 2,
        }
    }

    pub fn elements(&self) -> IntSet {
        match self {
            Progression::OneDim(p) => p.elements(),
            Progression::TwoDim(q) => q.elements(),
        }
    }

    pub fn cardinality(&self) -> usize {
        match self {
            Progression::OneDim(p) => p.len as usize,
            Progression::TwoDim(q) => q.cardinality(),
        }
    }

    pub fn is_proper(&self) -> bool {
        match self {
            Progression::OneDim(_) => true,
            Progression::TwoDim(q) => q.is_proper(),
        }
    }

    /// Image under `x ↦ u + v x`. A negative `v` re-bases a 1-dim
    /// progression so its step stays positive.
    pub fn affine_image(&self, u: i128, v: i128) -> Result<Progression> {
        if v == 0 {
            return Err(Error::Domain("affine map needs a nonzero dilation".into()));
        }
        Ok(match *self {
            Progression::OneDim(p) => {
                let (first, step) = if v > 0 {
                    (u + v * p.first(), v * p.step)
                } else {
                    (u + v * p.last(), -v * p.step)
                };
                Progression::OneDim(Progression1D::starting_at(first, step, p.len)?)
            }
            Progression::TwoDim(q) => {
                Progression::TwoDim(Gap2::new(u + v * q.a0, v * q.a1, v * q.a2, q.l1, q.l2)?)
            }
        })
    }
}

impl From<Progression1D> for Progression {
    fn from(p: Progression1D) -> Self {
        Progression::OneDim(p)
    }
}

impl From<Gap2> for Progression {
    fn from(q: Gap2) -> Self {
        Progression::TwoDim(q)
    }
}

/// Least AP containing `X`: first element `min X`, step the gcd of the
/// differences (1 for a singleton).
pub fn smallest_containing_ap(x: &IntSet) -> Result<Progression1D> {
    let (Some(min), Some(max)) = (x.min(), x.max()) else {
        return Err(Error::Precondition("smallest_containing_ap: empty set".into()));
    };
    let g = difference_gcd(x);
    let step = if g == BigInt::from(0) { BigInt::from(1) } else { g };
    let len: BigInt = (max - min) / &step + 1;
    let fit = |v: &BigInt, what: &str| {
        v.to_i128()
            .ok_or_else(|| Error::Domain(format!("{what} {v} exceeds the progression range")))
    };
    let len = len
        .to_u64()
        .ok_or_else(|| Error::Domain("progression length too large".into()))?;
    Progression1D::starting_at(fit(min, "base")?, fit(&step, "step")?, len)
}

/// `|A ∩ P| / |P|`, using the true cardinality of `P`.
pub fn density_on(a: &IntSet, p: &Progression) -> Rational {
    let elems = p.elements();
    Rational::new(a.intersection_len(&elems) as i128, elems.len() as i128)
}
