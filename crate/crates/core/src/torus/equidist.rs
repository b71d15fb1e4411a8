//! Sampling grid functions along orbits `n ↦ nθ` on `T^d`.

use super::TorusGrid;
use crate::bohr::{certify_irrational, IrrationalityReport, DEFAULT_IRRATIONALITY_BUDGET};
use crate::error::{Error, Result};
use crate::progressions::Progression1D;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct EquidistReport {
    /// `|P|⁻¹ Σ_{n ∈ P} F(nθ)` with nearest-grid-point evaluation.
    pub sample_mean: f64,
    /// `∫ F` on the grid.
    pub integral: f64,
    /// `|sample_mean - integral|`.
    pub gap: f64,
    pub irrationality: IrrationalityReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProportionReport {
    /// `#{n ∈ P : F(nθ) > η} / |P|`.
    pub proportion: f64,
    /// `μ({F > 2η})`.
    pub level_measure: f64,
    /// `d/m`, the discretisation allowance.
    pub slack: f64,
    /// `level_measure - η - slack`.
    pub lower_bound: f64,
    pub holds: bool,
}

// Exact fractional part of n θ as a float.
fn orbit_point(n: i128, theta: &[Rational]) -> Vec<f64> {
    theta
        .iter()
        .map(|t| {
            let (p, q) = (*t.numer(), *t.denom());
            let r = ((n % q) * (p % q)).rem_euclid(q);
            r as f64 / q as f64
        })
        .collect()
}

fn check_inputs(f: &TorusGrid, theta: &[Rational], p: &Progression1D) -> Result<()> {
    if theta.len() != f.d() {
        return Err(Error::Structural(format!(
            "theta has {} coordinates but the grid is {}-dimensional",
            theta.len(),
            f.d()
        )));
    }
    if theta.iter().any(|t| t.denom().abs() > 1 << 62) {
        return Err(Error::Domain("theta denominators must be below 2^62".into()));
    }
    if p.first() < 1 {
        return Err(Error::Precondition("progression must lie in [1, N]".into()));
    }
    Ok(())
}

/// Compare the average of `F` along `{nθ : n ∈ P}` with `∫ F`, for `P ⊆ [N]`
/// with `|P| ≥ ηN`. The `(A, N)`-irrationality of `θ` is reported alongside.
pub fn equidistribution_gap(
    f: &TorusGrid,
    theta: &[Rational],
    p: &Progression1D,
    n: u64,
    eta: f64,
    a: Rational,
) -> Result<EquidistReport> {
    check_inputs(f, theta, p)?;
    if p.last() > n as i128 {
        return Err(Error::Precondition(format!("progression leaves [1, {n}]")));
    }
    if !(eta > 0.0) || (p.len as f64) < eta * n as f64 {
        return Err(Error::Precondition(format!(
            "|P| = {} is below eta N = {}",
            p.len,
            eta * n as f64
        )));
    }
    let sum: f64 = p.iter().map(|x| f.at_nearest(&orbit_point(x, theta))).sum();
    let sample_mean = sum / p.len as f64;
    let integral = f.integral();
    Ok(EquidistReport {
        sample_mean,
        integral,
        gap: (sample_mean - integral).abs(),
        irrationality: certify_irrational(theta, a, n, DEFAULT_IRRATIONALITY_BUDGET)?,
    })
}

/// How often `F(nθ) > η` along `P`, against `μ({F > 2η}) - η - d/m`.
pub fn proportion_check(f: &TorusGrid, theta: &[Rational], p: &Progression1D, eta: f64) -> Result<ProportionReport> {
    check_inputs(f, theta, p)?;
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Precondition(format!("eta = {eta} is not in (0, 1)")));
    }
    let hits = p
        .iter()
        .filter(|&x| f.at_nearest(&orbit_point(x, theta)) > eta)
        .count();
    let proportion = hits as f64 / p.len as f64;
    let lm = f.strict_superlevel_measure(2.0 * eta);
    let level_measure = *lm.numer() as f64 / *lm.denom() as f64;
    let slack = f.d() as f64 / f.m() as f64;
    let lower_bound = level_measure - eta - slack;
    Ok(ProportionReport {
        proportion,
        level_measure,
        slack,
        lower_bound,
        holds: proportion >= lower_bound,
    })
}
