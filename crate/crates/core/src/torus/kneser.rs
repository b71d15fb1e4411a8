//! Superlevel sets of `1_{S1} * 1_{S2}` against `min(1, μ(S1) + μ(S2))`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{convolve_with, Method, TorusGrid};
use crate::error::{Error, Result};
use crate::Rational;

/// Calibration constant `C` in the tolerance `C √λ + 2d/m`.
pub const KNESER_CONSTANT: f64 = 3.0;

#[derive(Clone, Debug, PartialEq)]
pub struct KneserReport {
    pub mu1: Rational,
    pub mu2: Rational,
    /// `μ({x : 1_{S1} * 1_{S2}(x) ≥ λ})`.
    pub measure: Rational,
    /// `min(1, μ1 + μ2)`.
    pub bound: Rational,
    /// `measure - bound`.
    pub deficiency: f64,
    /// `C √λ + 2d/m`.
    pub allowed: f64,
    pub within: bool,
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Deficiency of the superlevel set of `1_{S1} * 1_{S2}` at height `λ`,
/// for `0 < λ < min(μ(S1)², μ(S2)²)`.
pub fn kneser_deficiency(s1: &TorusGrid, s2: &TorusGrid, lambda: f64) -> Result<KneserReport> {
    if !s1.is_indicator() || !s2.is_indicator() {
        return Err(Error::Structural("Kneser deficiency needs 0/1 grids".into()));
    }
    let mu1 = s1.superlevel_measure(0.5);
    let mu2 = s2.superlevel_measure(0.5);
    let cap = to_f64(mu1.min(mu2)).powi(2);
    if !(lambda > 0.0 && lambda < cap) {
        return Err(Error::Precondition(format!(
            "lambda = {lambda} is not in (0, min(mu1, mu2)^2 = {cap})"
        )));
    }
    let conv = convolve_with(s1, s2, Method::Auto)?;
    let n = conv.size() as f64;
    // Convolution values are counts / n; snap before thresholding.
    let hits = conv
        .values()
        .iter()
        .filter(|&&v| (v * n).round() >= lambda * n)
        .count();
    let measure = Rational::new(hits as i128, conv.size() as i128);
    let bound = (mu1 + mu2).min(Rational::from(1));
    let deficiency = to_f64(measure - bound);
    let allowed = KNESER_CONSTANT * lambda.sqrt() + 2.0 * s1.d() as f64 / s1.m() as f64;
    Ok(KneserReport {
        mu1,
        mu2,
        measure,
        bound,
        deficiency,
        allowed,
        within: deficiency >= -allowed,
    })
}

/// How a random test set was drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetFamily {
    /// Union of `pieces` random arcs (one arc when `pieces == 1`).
    Arcs { pieces: usize },
    /// `{x : a1 x1 + a2 x2 mod m ∈ U}` for a union `U` of arcs.
    Pullback { a1: usize, a2: usize, pieces: usize },
    /// Product of two arcs.
    Box,
}

/// A union of `pieces` arcs on `Z_m`, each of length in `[m/16, m/6]`.
pub fn random_arc_union(rng: &mut impl Rng, m: usize, pieces: usize) -> Vec<bool> {
    let mut out = vec![false; m];
    let (lo, hi) = ((m / 16).max(1), (m / 6).max(2));
    for _ in 0..pieces {
        let start = rng.gen_range(0..m);
        let len = rng.gen_range(lo..=hi);
        for k in 0..len {
            out[(start + k) % m] = true;
        }
    }
    out
}

// Homomorphisms Z_m² → Z_m with one odd coefficient, so they are onto
// whenever m is a power of two (and for every m when a coefficient is 1).
const PULLBACKS: [(usize, usize); 6] = [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (3, 1)];

fn random_set(rng: &mut impl Rng, d: usize, m: usize) -> Result<(SetFamily, TorusGrid)> {
    if d == 1 {
        let pieces = rng.gen_range(1..=3);
        let u = random_arc_union(rng, m, pieces);
        return Ok((SetFamily::Arcs { pieces }, TorusGrid::indicator(1, m, |p| u[p[0]])?));
    }
    if rng.gen_bool(0.25) {
        let a = random_arc_union(rng, m, 1);
        let b = random_arc_union(rng, m, 1);
        // Widen boxes so their measure is not negligible.
        let wide = |v: Vec<bool>| -> Vec<bool> { (0..m).map(|i| v[i] || v[(i + m / 4) % m]).collect() };
        let (a, b) = (wide(a), wide(b));
        return Ok((SetFamily::Box, TorusGrid::indicator(2, m, |p| a[p[0]] && b[p[1]])?));
    }
    let (a1, a2) = PULLBACKS[rng.gen_range(0..PULLBACKS.len())];
    let pieces = rng.gen_range(1..=3);
    let u = random_arc_union(rng, m, pieces);
    let grid = TorusGrid::indicator(2, m, |p| u[(a1 * p[0] + a2 * p[1]) % m])?;
    Ok((SetFamily::Pullback { a1, a2, pieces }, grid))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KneserLambda {
    /// The same `λ` every trial; trials where it breaks the precondition are skipped.
    Fixed(f64),
    /// `λ = u · min(μ1, μ2)²` with `u` uniform in `[0.05, 0.95]`.
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KneserTrial {
    pub family1: SetFamily,
    pub family2: SetFamily,
    pub lambda: f64,
    pub report: KneserReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KneserSuiteReport {
    pub m: usize,
    pub d: usize,
    pub seed: u64,
    pub constant: f64,
    pub trials: Vec<KneserTrial>,
    pub skipped: usize,
    pub violations: usize,
    /// Smallest `deficiency + allowed` over the trials run.
    pub worst_margin: f64,
}

/// Run `trials` random Kneser checks on `(Z_m)^d` from a fixed seed.
pub fn kneser_suite(m: usize, d: usize, trials: usize, lambda: KneserLambda, seed: u64) -> Result<KneserSuiteReport> {
    super::check_shape(d, m)?;
    if m < 16 {
        return Err(Error::Domain("Kneser suite needs a grid side of at least 16".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut skipped = 0;
    for _ in 0..trials {
        let (family1, s1) = random_set(&mut rng, d, m)?;
        let (family2, s2) = random_set(&mut rng, d, m)?;
        let u: f64 = rng.gen_range(0.05..0.95);
        let cap = to_f64(s1.superlevel_measure(0.5).min(s2.superlevel_measure(0.5))).powi(2);
        let lam = match lambda {
            KneserLambda::Fixed(l) if l > 0.0 && l < cap => l,
            KneserLambda::Fixed(_) => {
                skipped += 1;
                continue;
            }
            KneserLambda::Random => u * cap,
        };
        let report = kneser_deficiency(&s1, &s2, lam)?;
        out.push(KneserTrial {
            family1,
            family2,
            lambda: lam,
            report,
        });
    }
    let violations = out.iter().filter(|t| !t.report.within).count();
    let worst_margin = out
        .iter()
        .map(|t| t.report.deficiency + t.report.allowed)
        .fold(f64::INFINITY, f64::min);
    Ok(KneserSuiteReport {
        m,
        d,
        seed,
        constant: KNESER_CONSTANT,
        trials: out,
        skipped,
        violations,
        worst_margin,
    })
}
