//! Brute-force search for dense progressions in a finite set, and the
//! expansion / AP-dense / GAP-dense classification built on it.
//!
//! All scores are exact. Candidates are ranked by density, then by size
//! (larger first), then by step (smaller first), then by first element.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::progressions::{density_on, Gap2, Progression, Progression1D};
use crate::sets::{doubling, DoublingMode, IntSet};
use crate::Rational;

/// Default cap on candidate evaluations for a single search.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1_000_000_000;

/// Steps `1..=SMALL_STEPS` are always searched.
pub const SMALL_STEPS: i128 = 32;
/// Number of most frequent differences added to the step candidates.
pub const POPULAR_STEPS: usize = 64;

// Elements bounded by 2^120 keep every difference and window end in range.
fn to_i128s(a: &IntSet) -> Result<Vec<i128>> {
    a.to_i128s()
        .filter(|xs| xs.iter().all(|x| x.unsigned_abs() <= 1 << 120))
        .ok_or_else(|| Error::Domain("progression search needs elements of absolute value at most 2^120".into()))
}

fn budget_error(what: &str, needed: u128, limit: u128) -> Error {
    Error::Resource {
        what: what.to_string(),
        needed,
        limit,
        partial: true,
    }
}

/// Exact membership for a sorted slice: a bitmap when the span is small.
enum Members {
    Bits { min: i128, bits: Vec<bool> },
    Hash(HashSet<i128>),
}

impl Members {
    fn new(xs: &[i128]) -> Self {
        match (xs.first(), xs.last()) {
            (Some(&lo), Some(&hi)) if hi.checked_sub(lo).is_some_and(|d| d < 1 << 26) => {
                let mut bits = vec![false; (hi - lo + 1) as usize];
                for &x in xs {
                    bits[(x - lo) as usize] = true;
                }
                Members::Bits { min: lo, bits }
            }
            _ => Members::Hash(xs.iter().copied().collect()),
        }
    }

    fn contains(&self, x: i128) -> bool {
        match self {
            Members::Bits { min, bits } => x
                .checked_sub(*min)
                .and_then(|d| usize::try_from(d).ok())
                .is_some_and(|d| d < bits.len() && bits[d]),
            Members::Hash(h) => h.contains(&x),
        }
    }
}

/// Positive differences ranked by how often they occur, most frequent first
/// (ties: smaller difference first).
pub fn popular_differences(a: &IntSet, top: usize) -> Result<Vec<i128>> {
    let xs = to_i128s(a)?;
    let mut counts: HashMap<i128, u64> = HashMap::new();
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            if let Some(d) = y.checked_sub(x) {
                *counts.entry(d).or_insert(0) += 1;
            }
        }
    }
    let mut ranked: Vec<(i128, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(ranked.into_iter().take(top).map(|(d, _)| d).collect())
}

/// `1..=32` together with the 64 most popular differences, ascending.
pub fn candidate_steps(a: &IntSet) -> Result<Vec<i128>> {
    let mut steps: Vec<i128> = (1..=SMALL_STEPS).collect();
    steps.extend(popular_differences(a, POPULAR_STEPS)?);
    steps.sort_unstable();
    steps.dedup();
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApCandidate {
    pub progression: Progression1D,
    pub hits: u64,
    pub density: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ApScore {
    hits: u64,
    len: u64,
    step: i128,
    first: i128,
}

impl ApScore {
    // Greater is better.
    fn rank(&self, o: &ApScore) -> Ordering {
        let l = self.hits as u128 * o.len as u128;
        let r = o.hits as u128 * self.len as u128;
        l.cmp(&r)
            .then(self.len.cmp(&o.len))
            .then(o.step.cmp(&self.step))
            .then(o.first.cmp(&self.first))
    }
}

fn keep_best<T: Copy>(best: Option<T>, cand: T, rank: impl Fn(&T, &T) -> Ordering) -> Option<T> {
    match best {
        Some(b) if rank(&b, &cand) != Ordering::Less => Some(b),
        _ => Some(cand),
    }
}

// Elements of A grouped by residue class mod `step`, relative to min A.
fn classes(xs: &[i128], step: i128) -> BTreeMap<i128, Vec<i128>> {
    let mut out: BTreeMap<i128, Vec<i128>> = BTreeMap::new();
    for &x in xs {
        out.entry((x - xs[0]) % step).or_default().push(x);
    }
    out
}

fn ap_cost(xs: &[i128], step: i128) -> u128 {
    classes(xs, step)
        .values()
        .map(|v| {
            let k = v.len() as u128;
            k * (k + 1) / 2 + k + 1
        })
        .sum()
}

fn best_ap_for_step(xs: &[i128], min_len: u64, step: i128) -> Option<ApScore> {
    let (lo, hi) = (xs[0], *xs.last().unwrap());
    let l0 = min_len as i128;
    let mut best: Option<ApScore> = None;
    let rank = |a: &ApScore, b: &ApScore| a.rank(b);
    for (r, e) in classes(xs, step) {
        let start = lo + r;
        let count = (hi - start) / step + 1;
        if count < l0 {
            continue;
        }
        let end = start + (count - 1) * step;
        let span = (l0 - 1) * step;
        // Both endpoints in A.
        for i in 0..e.len() {
            for j in i..e.len() {
                let len = (e[j] - e[i]) / step + 1;
                if len >= l0 && len <= u64::MAX as i128 {
                    let s = ApScore {
                        hits: (j - i + 1) as u64,
                        len: len as u64,
                        step,
                        first: e[i],
                    };
                    best = keep_best(best, s, rank);
                }
            }
        }
        // Length exactly min_len ending at an element of A.
        for (j, &last) in e.iter().enumerate() {
            let first = last - span;
            if first >= start {
                let i = e.partition_point(|&x| x < first);
                let s = ApScore {
                    hits: (j - i + 1) as u64,
                    len: min_len,
                    step,
                    first,
                };
                best = keep_best(best, s, rank);
            }
        }
        // Length exactly min_len starting at the bottom of the class.
        if start + span <= end {
            let hits = e.partition_point(|&x| x <= start + span) as u64;
            let s = ApScore {
                hits,
                len: min_len,
                step,
                first: start,
            };
            best = keep_best(best, s, rank);
        }
    }
    best
}

/// The densest progression `P ⊆ [min A, max A]` with step in `steps` and at
/// least `min_len` terms. `None` when no such progression fits.
///
/// An optimal window longer than `min_len` has both ends in `A` (otherwise
/// trimming an end raises the density), and the first-ranked window of
/// length exactly `min_len` either ends in `A` or starts at the bottom of
/// its residue class. Only those windows are scored.
pub fn densest_ap_over_steps(a: &IntSet, min_len: u64, steps: &[i128], budget: u128) -> Result<Option<ApCandidate>> {
    if min_len < 2 {
        return Err(Error::Domain("densest_ap needs min_len >= 2".into()));
    }
    if a.is_empty() {
        return Err(Error::Precondition("densest_ap: empty set".into()));
    }
    if steps.iter().any(|&s| s < 1) {
        return Err(Error::Domain("progression steps must be positive".into()));
    }
    let xs = to_i128s(a)?;
    let diameter = xs.last().unwrap().checked_sub(xs[0]);
    // Steps whose min_len-term progression cannot fit are skipped.
    let usable: Vec<i128> = steps
        .iter()
        .copied()
        .filter(|&s| {
            s.checked_mul(min_len as i128 - 1)
                .zip(diameter)
                .is_some_and(|(span, d)| span <= d)
        })
        .collect();
    let cost: u128 = usable.iter().map(|&s| ap_cost(&xs, s)).sum();
    if cost > budget {
        return Err(budget_error("densest AP search", cost, budget));
    }
    let best = usable
        .par_iter()
        .filter_map(|&s| best_ap_for_step(&xs, min_len, s))
        .reduce_with(|x, y| if x.rank(&y) == Ordering::Less { y } else { x });
    Ok(match best {
        None => None,
        Some(s) => {
            let progression = Progression1D::starting_at(s.first, s.step, s.len)?;
            Some(ApCandidate {
                progression,
                hits: s.hits,
                density: Rational::new(s.hits as i128, s.len as i128),
            })
        }
    })
}

/// [`densest_ap_over_steps`] with every step in `1..=max_step`.
pub fn densest_ap(a: &IntSet, min_len: u64, max_step: i128) -> Result<Option<ApCandidate>> {
    if max_step < 1 {
        return Err(Error::Domain("max_step must be positive".into()));
    }
    let steps: Vec<i128> = (1..=max_step).collect();
    densest_ap_over_steps(a, min_len, &steps, DEFAULT_SEARCH_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gap2Bounds {
    pub max_v1: i128,
    pub max_v2: i128,
    /// Largest side length tried in each direction.
    pub max_l: u64,
}

impl Default for Gap2Bounds {
    fn default() -> Self {
        Gap2Bounds {
            max_v1: i128::MAX,
            max_v2: i128::MAX,
            max_l: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap2Candidate {
    pub gap: Gap2,
    pub hits: u64,
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap2Search {
    pub best: Option<Gap2Candidate>,
    /// Every step pair within the bounds was examined (true when
    /// `max_v2 ≤ 32`, since then all steps are candidates).
    pub exhaustive: bool,
    pub step_pairs: u64,
    pub evaluations: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct GapScore {
    hits: u64,
    l1: u64,
    l2: u64,
    v1: i128,
    v2: i128,
    corner: i128,
}

impl GapScore {
    fn rank(&self, o: &GapScore) -> Ordering {
        let (sa, sb) = (self.l1 * self.l2, o.l1 * o.l2);
        let l = self.hits as u128 * sb as u128;
        let r = o.hits as u128 * sa as u128;
        l.cmp(&r)
            .then(sa.cmp(&sb))
            .then(o.v1.cmp(&self.v1))
            .then(o.v2.cmp(&self.v2))
            .then(o.corner.cmp(&self.corner))
            .then(o.l1.cmp(&self.l1))
    }
}

// d1 v1 = d2 v2 has its smallest positive solution at (v2/g, v1/g).
fn gap_is_proper(v1: i128, v2: i128, l1: u64, l2: u64) -> bool {
    use num_integer::Integer;
    let g = v1.gcd(&v2);
    (v2 / g) as u128 >= l1 as u128 || (v1 / g) as u128 >= l2 as u128
}

/// The densest proper 2-dimensional progression
/// `{c + i v1 + j v2 : 0 ≤ i < L1, 0 ≤ j < L2}` with `0 < v1 < v2` drawn from
/// [`candidate_steps`], `2 ≤ L1, L2 ≤ max_l` and corner `c ∈ A`, containing
/// at least `min_size` elements of `A`.
pub fn densest_gap2(a: &IntSet, min_size: u64, bounds: Gap2Bounds, budget: u128) -> Result<Gap2Search> {
    if a.is_empty() {
        return Err(Error::Precondition("densest_gap2: empty set".into()));
    }
    if bounds.max_l < 2 {
        return Err(Error::Domain("max_l must be at least 2".into()));
    }
    let xs = to_i128s(a)?;
    let members = Members::new(&xs);
    let steps: Vec<i128> = candidate_steps(a)?
        .into_iter()
        .filter(|&s| s <= bounds.max_v2)
        .collect();
    let pairs: Vec<(i128, i128)> = steps
        .iter()
        .enumerate()
        .filter(|(_, &v1)| v1 <= bounds.max_v1)
        .flat_map(|(i, &v1)| steps[i + 1..].iter().map(move |&v2| (v1, v2)))
        .collect();
    let ml = bounds.max_l as usize;
    let evaluations = pairs.len() as u128 * xs.len() as u128 * (ml * ml) as u128;
    if evaluations > budget {
        return Err(budget_error("densest GAP2 search", evaluations, budget));
    }
    let best = pairs
        .par_iter()
        .filter_map(|&(v1, v2)| {
            let mut best: Option<GapScore> = None;
            let mut prefix = vec![0u64; (ml + 1) * (ml + 1)];
            let shapes: Vec<(u64, u64)> = (2..=bounds.max_l)
                .flat_map(|l1| (2..=bounds.max_l).map(move |l2| (l1, l2)))
                .filter(|&(l1, l2)| l1 * l2 >= min_size && gap_is_proper(v1, v2, l1, l2))
                .collect();
            if shapes.is_empty() {
                return None;
            }
            for &c in &xs {
                for i in 0..ml {
                    let mut x = c + i as i128 * v1;
                    for j in 0..ml {
                        let hit = members.contains(x) as u64;
                        x += v2;
                        prefix[(i + 1) * (ml + 1) + j + 1] =
                            hit + prefix[i * (ml + 1) + j + 1] + prefix[(i + 1) * (ml + 1) + j] - prefix[i * (ml + 1) + j];
                    }
                }
                for &(l1, l2) in &shapes {
                    let hits = prefix[l1 as usize * (ml + 1) + l2 as usize];
                    if hits < min_size {
                        continue;
                    }
                    let s = GapScore {
                        hits,
                        l1,
                        l2,
                        v1,
                        v2,
                        corner: c,
                    };
                    best = keep_best(best, s, |a, b| a.rank(b));
                }
            }
            best
        })
        .reduce_with(|x, y| if x.rank(&y) == Ordering::Less { y } else { x });
    let best = match best {
        None => None,
        Some(s) => Some(Gap2Candidate {
            gap: Gap2::new(s.corner - s.v1 - s.v2, s.v1, s.v2, s.l1, s.l2)?,
            hits: s.hits,
            density: Rational::new(s.hits as i128, (s.l1 * s.l2) as i128),
        }),
    };
    Ok(Gap2Search {
        best,
        exhaustive: bounds.max_v2 <= SMALL_STEPS,
        step_pairs: pairs.len() as u64,
        evaluations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Expansion,
    ApDense,
    GapDense,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DichotomyParams {
    pub delta: Rational,
    pub eps: Rational,
    pub min_frac: Rational,
    /// Side-length bound for the GAP2 search.
    pub max_l: u64,
}

impl DichotomyParams {
    pub fn new(delta: Rational, eps: Rational, min_frac: Rational) -> Self {
        DichotomyParams {
            delta,
            eps,
            min_frac,
            max_l: Gap2Bounds::default().max_l,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub branch: Branch,
    /// `|A + A| / |A|`.
    pub sigma: Rational,
    pub witness: Option<Progression>,
    pub density: Option<Rational>,
    pub params: DichotomyParams,
    /// `⌈min_frac |A|⌉`, at least 2.
    pub min_size: u64,
    pub best_ap: Option<ApCandidate>,
    pub best_gap: Option<Gap2Candidate>,
}

impl StructureReport {
    /// Recompute the witness's density and size from scratch and check the
    /// branch's defining inequalities.
    pub fn verify(&self, a: &IntSet) -> Result<bool> {
        let sigma = doubling(a, DoublingMode::Plus)?;
        if sigma != self.sigma {
            return Ok(false);
        }
        let four_delta = Rational::from(4) + self.params.delta;
        let witness_ok = |threshold: Rational, dim: usize| -> bool {
            let Some(w) = &self.witness else { return false };
            let d = density_on(a, w);
            w.dimension() == dim
                && w.is_proper()
                && Some(d) == self.density
                && d >= threshold
                && Rational::from(w.cardinality() as i128) >= self.params.min_frac * Rational::from(a.len() as i128)
        };
        Ok(match self.branch {
            Branch::Expansion => sigma > four_delta,
            Branch::ApDense => sigma <= four_delta && witness_ok(Rational::new(1, 2) - self.params.eps, 1),
            Branch::GapDense => sigma <= four_delta && witness_ok(Rational::from(1) - self.params.eps, 2),
            Branch::Inconclusive => sigma <= four_delta && self.witness.is_none(),
        })
    }
}

/// Classify `A` as expanding (`|A+A| > (4+δ)|A|`), AP-dense (a progression
/// of at least `min_frac |A|` terms on which `A` has density `≥ 1/2 - ε'`),
/// GAP-dense (a proper 2-dimensional progression with density `≥ 1 - ε'`),
/// or inconclusive when the bounded searches find neither.
pub fn dichotomy_check(a: &IntSet, params: DichotomyParams) -> Result<StructureReport> {
    if a.is_empty() {
        return Err(Error::Precondition("dichotomy_check: empty set".into()));
    }
    let (zero, one) = (Rational::from(0), Rational::from(1));
    if !(params.delta > zero && params.delta < one && params.eps > zero && params.eps < one) {
        return Err(Error::Precondition("delta and eps must lie in (0, 1)".into()));
    }
    if !(params.min_frac > zero && params.min_frac <= one) {
        return Err(Error::Precondition("min_frac must lie in (0, 1]".into()));
    }
    let sigma = doubling(a, DoublingMode::Plus)?;
    let min_size = ((params.min_frac * Rational::from(a.len() as i128)).ceil().to_integer() as u64).max(2);
    let mut report = StructureReport {
        branch: Branch::Expansion,
        sigma,
        witness: None,
        density: None,
        params,
        min_size,
        best_ap: None,
        best_gap: None,
    };
    if sigma > Rational::from(4) + params.delta {
        return Ok(report);
    }
    let steps = candidate_steps(a)?;
    report.best_ap = densest_ap_over_steps(a, min_size, &steps, DEFAULT_SEARCH_BUDGET)?;
    if let Some(ap) = &report.best_ap {
        if ap.density >= Rational::new(1, 2) - params.eps {
            report.branch = Branch::ApDense;
            report.witness = Some(ap.progression.into());
            report.density = Some(ap.density);
            return Ok(report);
        }
    }
    let bounds = Gap2Bounds {
        max_l: params.max_l,
        ..Gap2Bounds::default()
    };
    report.best_gap = densest_gap2(a, min_size, bounds, DEFAULT_SEARCH_BUDGET)?.best;
    if let Some(g) = &report.best_gap {
        if g.density >= one - params.eps {
            report.branch = Branch::GapDense;
            report.witness = Some(g.gap.into());
            report.density = Some(g.density);
            return Ok(report);
        }
    }
    report.branch = Branch::Inconclusive;
    Ok(report)
}
