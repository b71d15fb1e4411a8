//! The discretised torus `(Z_m)^d`, `d ∈ {1, 2}`, with Haar measure given by
//! counting measure divided by `m^d`.
//!
//! A grid point `j` stands for `j / m ∈ T^d`. Two-dimensional grids are
//! stored row-major: value at `(j1, j2)` is `values[j1 * m + j2]`.

mod equidist;
mod kneser;
mod sandwich;

pub use equidist::{equidistribution_gap, proportion_check, EquidistReport, ProportionReport};
pub use kneser::{
    kneser_deficiency, kneser_suite, random_arc_union, KneserLambda, KneserReport, KneserSuiteReport, KneserTrial,
    SetFamily, KNESER_CONSTANT,
};
pub use sandwich::{lipschitz_sandwich, Sandwich, SandwichReport};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::Rational;

pub const MAX_SIDE_1D: usize = 4096;
pub const MAX_SIDE_2D: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct TorusGrid {
    d: usize,
    m: usize,
    values: Vec<f64>,
}

impl TorusGrid {
    pub fn new(d: usize, m: usize, values: Vec<f64>) -> Result<Self> {
        check_shape(d, m)?;
        if values.len() != m.pow(d as u32) {
            return Err(Error::Structural(format!(
                "expected {} values for a {d}-dim grid of side {m}, got {}",
                m.pow(d as u32),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Domain(format!("grid value {v} is outside [0, 1]")));
        }
        Ok(TorusGrid { d, m, values })
    }

    pub fn constant(d: usize, m: usize, c: f64) -> Result<Self> {
        check_shape(d, m)?;
        TorusGrid::new(d, m, vec![c; m.pow(d as u32)])
    }

    /// Values `f(point)` where `point` has `d` coordinates in `0..m`.
    pub fn from_fn(d: usize, m: usize, f: impl Fn(&[usize]) -> f64) -> Result<Self> {
        check_shape(d, m)?;
        let values = (0..m.pow(d as u32))
            .map(|i| f(&coords(d, m, i)))
            .collect();
        TorusGrid::new(d, m, values)
    }

    pub fn indicator(d: usize, m: usize, member: impl Fn(&[usize]) -> bool) -> Result<Self> {
        TorusGrid::from_fn(d, m, |p| if member(p) { 1.0 } else { 0.0 })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// Value at the grid point nearest to `x ∈ T^d`.
    pub fn at_nearest(&self, x: &[f64]) -> f64 {
        let m = self.m;
        let idx = x.iter().fold(0usize, |acc, &t| {
            let j = ((t - t.floor()) * m as f64).round() as usize % m;
            acc * m + j
        });
        self.values[idx]
    }

    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// `∫ f`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.size() as f64
    }

    /// Fraction of grid points with value at least `t`.
    pub fn superlevel_measure(&self, t: f64) -> Rational {
        let c = self.values.iter().filter(|&&v| v >= t).count();
        Rational::new(c as i128, self.size() as i128)
    }

    /// Fraction of grid points with value strictly above `t`.
    pub fn strict_superlevel_measure(&self, t: f64) -> Rational {
        let c = self.values.iter().filter(|&&v| v > t).count();
        Rational::new(c as i128, self.size() as i128)
    }

    fn same_shape(&self, other: &TorusGrid) -> Result<()> {
        if self.d != other.d || self.m != other.m {
            return Err(Error::Structural(format!(
                "grid shapes differ: (d={}, m={}) vs (d={}, m={})",
                self.d, self.m, other.d, other.m
            )));
        }
        Ok(())
    }
}

fn check_shape(d: usize, m: usize) -> Result<()> {
    let limit = match d {
        1 => MAX_SIDE_1D,
        2 => MAX_SIDE_2D,
        _ => return Err(Error::Domain(format!("torus dimension {d} is not 1 or 2"))),
    };
    if m == 0 || m > limit {
        return Err(Error::Domain(format!("grid side {m} is not in [1, {limit}] for d = {d}")));
    }
    Ok(())
}

fn coords(d: usize, m: usize, mut i: usize) -> Vec<usize> {
    let mut c = vec![0; d];
    for slot in c.iter_mut().rev() {
        *slot = i % m;
        i /= m;
    }
    c
}

// Index of p - q (coordinatewise mod m).
fn sub_index(d: usize, m: usize, p: usize, q: usize) -> usize {
    let (a, b) = (coords(d, m, p), coords(d, m, q));
    a.iter().zip(&b).fold(0, |acc, (&x, &y)| acc * m + (x + m - y) % m)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    Direct,
    Fft,
    /// Direct for at most 64 points, FFT above.
    #[default]
    Auto,
}

impl Method {
    fn use_fft(self, size: usize) -> bool {
        match self {
            Method::Direct => false,
            Method::Fft => true,
            Method::Auto => size > 64,
        }
    }
}

/// `(f * g)(x) = m^{-d} Σ_y f(y) g(x - y)`.
pub fn convolve(f: &TorusGrid, g: &TorusGrid) -> Result<TorusGrid> {
    convolve_with(f, g, Method::Auto)
}

/// `(f ∘ g)(x) = m^{-d} Σ_y f(y) g(y - x)`.
pub fn correlate(f: &TorusGrid, g: &TorusGrid) -> Result<TorusGrid> {
    correlate_with(f, g, Method::Auto)
}

pub fn convolve_with(f: &TorusGrid, g: &TorusGrid, method: Method) -> Result<TorusGrid> {
    combine(f, g, method, false)
}

pub fn correlate_with(f: &TorusGrid, g: &TorusGrid, method: Method) -> Result<TorusGrid> {
    combine(f, g, method, true)
}

fn combine(f: &TorusGrid, g: &TorusGrid, method: Method, correlation: bool) -> Result<TorusGrid> {
    f.same_shape(g)?;
    let (d, m, n) = (f.d, f.m, f.size());
    let mut out = if method.use_fft(n) {
        let mut a = to_complex(&f.values);
        let mut b = to_complex(&g.values);
        fft_nd(&mut a, d, m, false);
        fft_nd(&mut b, d, m, false);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= if correlation { y.conj() } else { *y };
        }
        fft_nd(&mut a, d, m, true);
        a.iter().map(|z| z.re / (n as f64 * n as f64)).collect()
    } else {
        let mut out = vec![0.0; n];
        for (x, o) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for y in 0..n {
                let gy = if correlation {
                    g.values[sub_index(d, m, y, x)]
                } else {
                    g.values[sub_index(d, m, x, y)]
                };
                s += f.values[y] * gy;
            }
            *o = s / n as f64;
        }
        out
    };
    // FFT round-off can leave values a hair outside [0, 1].
    for v in out.iter_mut() {
        *v = v.clamp(0.0, 1.0);
    }
    TorusGrid::new(d, m, out)
}

fn to_complex(v: &[f64]) -> Vec<Complex<f64>> {
    v.iter().map(|&x| Complex::new(x, 0.0)).collect()
}

// Unnormalised d-dimensional DFT in place.
fn fft_nd(buf: &mut [Complex<f64>], d: usize, m: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let plan = if inverse {
        planner.plan_fft_inverse(m)
    } else {
        planner.plan_fft_forward(m)
    };
    if d == 1 {
        plan.process(buf);
        return;
    }
    for row in buf.chunks_mut(m) {
        plan.process(row);
    }
    let mut col = vec![Complex::new(0.0, 0.0); m];
    for c in 0..m {
        for r in 0..m {
            col[r] = buf[r * m + c];
        }
        plan.process(&mut col);
        for r in 0..m {
            buf[r * m + c] = col[r];
        }
    }
}

/// Thresholded copies of `F` at `η/2`, `η` and `1 - η^c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSets {
    pub k: Vec<bool>,
    pub s: Vec<bool>,
    pub t: Vec<bool>,
}

impl LevelSets {
    fn measure(v: &[bool]) -> Rational {
        Rational::new(v.iter().filter(|&&b| b).count() as i128, v.len() as i128)
    }

    pub fn measures(&self) -> (Rational, Rational, Rational) {
        (Self::measure(&self.k), Self::measure(&self.s), Self::measure(&self.t))
    }

    pub fn is_nested(&self) -> bool {
        self.k
            .iter()
            .zip(&self.s)
            .zip(&self.t)
            .all(|((&k, &s), &t)| (!t || s) && (!s || k))
    }
}

/// `K = {F ≥ η/2}`, `S = {F ≥ η}`, `T = {F ≥ 1 - η^c}`.
///
/// Requires `0 < η < 1`, `c > 0` and `1 - η^c ≥ η`, so that `T ⊆ S ⊆ K`.
pub fn level_sets(f: &TorusGrid, eta: f64, c: f64) -> Result<LevelSets> {
    if !(eta > 0.0 && eta < 1.0) || !(c > 0.0) {
        return Err(Error::Precondition(format!(
            "level sets need 0 < eta < 1 and c > 0 (got eta = {eta}, c = {c})"
        )));
    }
    let top = 1.0 - eta.powf(c);
    if top < eta {
        return Err(Error::Precondition(format!(
            "1 - eta^c = {top} is below eta = {eta}; the sets would not be nested"
        )));
    }
    let thresh = |t: f64| f.values.iter().map(|&v| v >= t).collect();
    Ok(LevelSets {
        k: thresh(eta / 2.0),
        s: thresh(eta),
        t: thresh(top),
    })
}
