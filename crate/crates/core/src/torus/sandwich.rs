//! Lipschitz functions `f1 ≤ 1_I ≤ f2` on `Z_m` from mollified arcs.
//!
//! With `B = [-τ/2, τ/2]`, `f1 = τ⁻¹ 1_{I1} * 1_B` and `f2 = τ⁻¹ 1_{I2} * 1_B`
//! where `I1` is `I` shrunk by `τ` at both ends and `I2` is `I` grown by `τ`.
//! Both are `1/τ`-Lipschitz, and `∫ (f2 - f1) = μ(I2) - μ(I1) ≤ 4τ`.

use super::TorusGrid;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    /// `f1 ≤ 1_I ≤ f2` at every grid point.
    pub sandwich_ok: bool,
    /// `m⁻¹ Σ (f2 - f1)`.
    pub gap: f64,
    /// `4τ + 4/m`.
    pub gap_bound: f64,
    pub gap_ok: bool,
    /// Largest `m |f(x + 1/m) - f(x)|` over both functions.
    pub lipschitz: f64,
    /// `2/τ` plus rounding slack.
    pub lipschitz_bound: f64,
    pub lipschitz_ok: bool,
    /// `μ(I2) - μ(I1)` in the continuum.
    pub measure_gap: f64,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.sandwich_ok && self.gap_ok && self.lipschitz_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich {
    pub lower: TorusGrid,
    pub upper: TorusGrid,
    pub report: SandwichReport,
}

fn circle_dist(x: f64, c: f64) -> f64 {
    let t = (x - c).rem_euclid(1.0);
    t.min(1.0 - t)
}

// τ⁻¹ |[d - τ/2, d + τ/2] ∩ [-r, r]| for 0 ≤ d ≤ 1/2, with r + τ < 1/2 so
// there is no wrap-around.
fn mollified(d: f64, r: f64, tau: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let (lo, hi) = (d - tau / 2.0, d + tau / 2.0);
    if lo >= -r && hi <= r {
        return 1.0;
    }
    let overlap = hi.min(r) - lo.max(-r);
    (overlap / tau).clamp(0.0, 1.0)
}

/// Build and check the sandwich for the closed arc of the given centre and
/// half-width on `Z_m`. Requires `τ > 0` and `2 halfwidth + 4τ < 1`.
pub fn lipschitz_sandwich(center: f64, halfwidth: f64, tau: f64, m: usize) -> Result<Sandwich> {
    if !(tau > 0.0) || !(halfwidth >= 0.0) || !center.is_finite() {
        return Err(Error::Precondition(format!(
            "sandwich needs tau > 0 and halfwidth >= 0 (got tau = {tau}, halfwidth = {halfwidth})"
        )));
    }
    if 2.0 * halfwidth + 4.0 * tau >= 1.0 {
        return Err(Error::Precondition(format!(
            "|I| + 4 tau = {} is not below 1",
            2.0 * halfwidth + 4.0 * tau
        )));
    }
    let dists: Vec<f64> = (0..m).map(|j| circle_dist(j as f64 / m as f64, center)).collect();
    let lower: Vec<f64> = dists.iter().map(|&d| mollified(d, halfwidth - tau, tau)).collect();
    let upper: Vec<f64> = dists.iter().map(|&d| mollified(d, halfwidth + tau, tau)).collect();
    let sandwich_ok = dists.iter().zip(lower.iter().zip(&upper)).all(|(&d, (&lo, &up))| {
        let ind = if d <= halfwidth { 1.0 } else { 0.0 };
        lo <= ind && ind <= up
    });
    let gap = upper.iter().zip(&lower).map(|(u, l)| u - l).sum::<f64>() / m as f64;
    let gap_bound = 4.0 * tau + 4.0 / m as f64;
    let lip = |v: &[f64]| {
        (0..m)
            .map(|j| (v[(j + 1) % m] - v[j]).abs() * m as f64)
            .fold(0.0, f64::max)
    };
    let lipschitz = lip(&lower).max(lip(&upper));
    let lipschitz_bound = 2.0 / tau * (1.0 + 1e-9);
    let measure_gap = 2.0 * (halfwidth + tau) - 2.0 * (halfwidth - tau).max(0.0);
    let report = SandwichReport {
        sandwich_ok,
        gap,
        gap_bound,
        gap_ok: gap <= gap_bound,
        lipschitz,
        lipschitz_bound,
        lipschitz_ok: lipschitz <= lipschitz_bound,
        measure_gap,
    };
    Ok(Sandwich {
        lower: TorusGrid::new(1, m, lower)?,
        upper: TorusGrid::new(1, m, upper)?,
        report,
    })
}
