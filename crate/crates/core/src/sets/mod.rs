//! Exact finite-set arithmetic over the integers.
//!
//! [`IntSet`] holds arbitrary-magnitude integers. Sumsets run on a dense
//! bitset or FFT kernel whenever the result span fits in
//! [`SumsetConfig::bitset_window_bits`], and fall back to pairwise sums on
//! big integers otherwise.

mod kernel;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use kernel::Kernel;

/// A finite set of integers, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntSet {
    elems: Vec<BigInt>,
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter().map(|x| x.to_string())).finish()
    }
}

impl<T: Into<BigInt>> FromIterator<T> for IntSet {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut elems: Vec<BigInt> = iter.into_iter().map(Into::into).collect();
        elems.sort_unstable();
        elems.dedup();
        IntSet { elems }
    }
}

impl IntSet {
    pub fn empty() -> Self {
        IntSet { elems: Vec::new() }
    }

    pub fn singleton(x: impl Into<BigInt>) -> Self {
        IntSet {
            elems: vec![x.into()],
        }
    }

    /// `{lo, lo+1, ..., hi}`; empty when `hi < lo`.
    pub fn interval(lo: i128, hi: i128) -> Self {
        IntSet {
            elems: (lo..=hi).map(BigInt::from).collect(),
        }
    }

    fn from_sorted(elems: Vec<BigInt>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        IntSet { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> Option<&BigInt> {
        self.elems.first()
    }

    pub fn max(&self) -> Option<&BigInt> {
        self.elems.last()
    }

    /// `max - min`, or `None` for the empty set.
    pub fn diameter(&self) -> Option<BigInt> {
        Some(self.max()? - self.min()?)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.elems
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        self.elems.binary_search(x).is_ok()
    }

    pub fn contains_i128(&self, x: i128) -> bool {
        self.contains(&BigInt::from(x))
    }

    /// All elements as `i128`, if every one fits.
    pub fn to_i128s(&self) -> Option<Vec<i128>> {
        self.elems.iter().map(ToPrimitive::to_i128).collect()
    }

    pub fn intersection_len(&self, other: &IntSet) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            match self.elems[i].cmp(&other.elems[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    /// First element of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &IntSet) -> Option<&BigInt> {
        self.elems.iter().find(|x| !other.contains(x))
    }

    /// `{u + v x : x in self}`.
    pub fn affine_image(&self, u: &BigInt, v: &BigInt) -> IntSet {
        self.elems.iter().map(|x| u + v * x).collect()
    }

    pub fn negate(&self) -> IntSet {
        IntSet::from_sorted(self.elems.iter().rev().map(|x| -x).collect())
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        self.elems.iter().chain(other.elems.iter()).cloned().collect()
    }

    fn require_nonempty(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            Err(Error::Precondition(format!("{what}: operand set is empty")))
        } else {
            Ok(())
        }
    }

    /// Offsets from the minimum as `u64`, when the diameter is below `limit`.
    fn offsets_within(&self, limit: u64) -> Option<Vec<u64>> {
        let min = self.min()?;
        let diam = (self.max()? - min).to_u64()?;
        if diam >= limit {
            return None;
        }
        Some(
            self.elems
                .iter()
                .map(|x| (x - min).to_u64().expect("offset bounded by diameter"))
                .collect(),
        )
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Tuning for the sumset kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumsetConfig {
    /// Largest result span (in bits) handled by the dense kernels.
    pub bitset_window_bits: u64,
    /// Force a specific dense kernel; `None` picks by estimated cost.
    pub force_kernel: Option<Kernel>,
}

impl Default for SumsetConfig {
    fn default() -> Self {
        SumsetConfig {
            bitset_window_bits: 1 << 26,
            force_kernel: None,
        }
    }
}

/// `A + B` with the default configuration.
pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    sumset_with(a, b, &SumsetConfig::default())
}

pub fn sumset_with(a: &IntSet, b: &IntSet, cfg: &SumsetConfig) -> Result<IntSet> {
    a.require_nonempty("sumset")?;
    b.require_nonempty("sumset")?;
    Ok(sumset_unchecked(a, b, cfg))
}

fn sumset_unchecked(a: &IntSet, b: &IntSet, cfg: &SumsetConfig) -> IntSet {
    let base = a.min().unwrap() + b.min().unwrap();
    let dense = a.diameter().unwrap() + b.diameter().unwrap() < BigInt::from(cfg.bitset_window_bits);
    if dense {
        let ao = a.offsets_within(cfg.bitset_window_bits).unwrap();
        let bo = b.offsets_within(cfg.bitset_window_bits).unwrap();
        let span = ao.last().unwrap() + bo.last().unwrap();
        let k = cfg
            .force_kernel
            .unwrap_or_else(|| kernel::choose(ao.len(), bo.len(), span));
        let sums = kernel::run(k, &ao, &bo);
        return IntSet::from_sorted(sums.into_iter().map(|s| &base + BigInt::from(s)).collect());
    }
    sumset_big(a, b)
}

/// Pairwise sums on big integers; used when the span is too wide for a bitset.
fn sumset_big(a: &IntSet, b: &IntSet) -> IntSet {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            out.push(x + y);
        }
    }
    out.sort_unstable();
    out.dedup();
    IntSet::from_sorted(out)
}

/// Reference double loop, kept public for oracle tests.
pub fn sumset_naive(a: &IntSet, b: &IntSet) -> IntSet {
    sumset_big(a, b)
}

/// `A - B`.
pub fn difference_set(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    a.require_nonempty("difference_set")?;
    b.require_nonempty("difference_set")?;
    Ok(sumset_unchecked(a, &b.negate(), &SumsetConfig::default()))
}

/// `hA = {x_1 + ... + x_h}` for `h >= 1`, by repeated doubling.
pub fn iterated_sumset(a: &IntSet, h: u32) -> Result<IntSet> {
    iterated_sumset_with(a, h, &SumsetConfig::default())
}

pub fn iterated_sumset_with(a: &IntSet, h: u32, cfg: &SumsetConfig) -> Result<IntSet> {
    if h == 0 {
        return Err(Error::Domain("iterated_sumset requires h >= 1".into()));
    }
    a.require_nonempty("iterated_sumset")?;
    Ok(multiple(a, h, cfg))
}

// hA for h >= 0 with 0A = {0}.
fn multiple(a: &IntSet, h: u32, cfg: &SumsetConfig) -> IntSet {
    let mut acc: Option<IntSet> = None;
    let mut pow = a.clone();
    let mut k = h;
    while k > 0 {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => pow.clone(),
                Some(s) => sumset_unchecked(&s, &pow, cfg),
            });
        }
        k >>= 1;
        if k > 0 {
            pow = sumset_unchecked(&pow, &pow, cfg);
        }
    }
    acc.unwrap_or_else(|| IntSet::singleton(0))
}

/// `lA - mA`, with `0A = {0}`.
pub fn signed_combination(a: &IntSet, l: u32, m: u32) -> Result<IntSet> {
    signed_combination_with(a, l, m, &SumsetConfig::default())
}

pub fn signed_combination_with(a: &IntSet, l: u32, m: u32, cfg: &SumsetConfig) -> Result<IntSet> {
    if l == 0 && m == 0 {
        return Err(Error::Domain("signed_combination requires l + m >= 1".into()));
    }
    a.require_nonempty("signed_combination")?;
    let plus = multiple(a, l, cfg);
    let minus = multiple(a, m, cfg).negate();
    Ok(sumset_unchecked(&plus, &minus, cfg))
}

/// A set of index pairs into some [`IntSet`], i.e. a relation `Γ ⊆ A × A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRelation {
    pairs: BTreeSet<(usize, usize)>,
    set_len: usize,
}

impl PairRelation {
    /// Zero-based index pairs into a set of `set_len` elements.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>, set_len: usize) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= set_len || j >= set_len) {
            return Err(Error::Structural(format!(
                "pair ({i}, {j}) out of range for a set of {set_len} elements"
            )));
        }
        Ok(PairRelation { pairs, set_len })
    }

    pub fn full(set_len: usize) -> Self {
        let pairs = (0..set_len).flat_map(|i| (0..set_len).map(move |j| (i, j))).collect();
        PairRelation { pairs, set_len }
    }

    pub fn diagonal(set_len: usize) -> Self {
        PairRelation {
            pairs: (0..set_len).map(|i| (i, i)).collect(),
            set_len,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

/// `A +_Γ A = {a_i + a_j : (i, j) ∈ Γ}`.
pub fn restricted_sumset(a: &IntSet, gamma: &PairRelation) -> Result<IntSet> {
    if gamma.is_empty() {
        return Err(Error::Domain("restricted_sumset requires a non-empty relation".into()));
    }
    if gamma.set_len != a.len() {
        return Err(Error::Structural(format!(
            "relation built for {} elements, set has {}",
            gamma.set_len,
            a.len()
        )));
    }
    let s = a.as_slice();
    Ok(gamma.iter().map(|(i, j)| &s[i] + &s[j]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublingMode {
    Plus,
    Minus,
}

/// `|A ± A| / |A|` as an exact rational.
pub fn doubling(a: &IntSet, mode: DoublingMode) -> Result<Rational> {
    a.require_nonempty("doubling")?;
    let s = match mode {
        DoublingMode::Plus => sumset_unchecked(a, a, &SumsetConfig::default()),
        DoublingMode::Minus => sumset_unchecked(a, &a.negate(), &SumsetConfig::default()),
    };
    Ok(Rational::new(s.len() as i128, a.len() as i128))
}

/// Representation counts `r(s) = #{(a, b) in A×A : a + b = s}`, sorted by `s`.
pub fn representation_counts(a: &IntSet) -> Vec<(BigInt, u64)> {
    if a.is_empty() {
        return Vec::new();
    }
    if let Some(off) = a.offsets_within(1 << 24) {
        let span = 2 * *off.last().unwrap() as usize + 1;
        let mut r = vec![0u64; span];
        for &x in &off {
            for &y in &off {
                r[(x + y) as usize] += 1;
            }
        }
        let base = a.min().unwrap() * 2;
        return r
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(s, c)| (&base + BigInt::from(s), c))
            .collect();
    }
    let mut r: HashMap<BigInt, u64> = HashMap::new();
    for x in a.iter() {
        for y in a.iter() {
            *r.entry(x + y).or_insert(0) += 1;
        }
    }
    let mut out: Vec<_> = r.into_iter().collect();
    out.sort_unstable();
    out
}

/// Additive energy `E(A) = Σ_s r(s)^2`.
pub fn additive_energy(a: &IntSet) -> Result<u128> {
    a.require_nonempty("additive_energy")?;
    Ok(representation_counts(a)
        .into_iter()
        .map(|(_, c)| (c as u128) * (c as u128))
        .sum())
}

/// gcd of `{x - min X}`; zero for singletons.
pub fn difference_gcd(x: &IntSet) -> BigInt {
    use num_integer::Integer;
    let Some(min) = x.min() else {
        return BigInt::zero();
    };
    x.iter().fold(BigInt::zero(), |g, v| g.gcd(&(v - min)))
}

/// Whether `x` is an arithmetic progression (any set of size at most two is).
pub fn is_arithmetic_progression(x: &IntSet) -> bool {
    if x.len() <= 2 {
        return true;
    }
    let s = x.as_slice();
    let d = &s[1] - &s[0];
    s.windows(2).all(|w| w[1].clone() - &w[0] == d)
}
