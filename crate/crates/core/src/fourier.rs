//! `ℓ²` and `U²` norms of real functions on `[N] = {1, ..., N}`.
//!
//! The `U²` norm is normalised by the number of additive quadruples in
//! `[N]`, `E(N) = #{(a, b, c, d) ∈ [N]⁴ : a + d = b + c} = (2N³ + N)/3`,
//! so the constant function 1 has norm 1.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{budget, Error, Result};
use crate::progressions::Progression1D;

/// Largest `N` accepted by the quadratic-time [`u2_norm_direct`].
pub const DIRECT_U2_LIMIT: usize = 4096;

/// A real function on `[N]` with values in `[-2, 2]`; `values[i]` is `f(i + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("grid function needs N >= 1".into()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || v.abs() > 2.0)
        {
            return Err(Error::Domain(format!(
                "f({}) = {v} is not a finite value in [-2, 2]",
                i + 1
            )));
        }
        Ok(GridFunction { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        GridFunction::new((1..=n).map(f).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `f(x)` for `1 ≤ x ≤ N`.
    pub fn at(&self, x: usize) -> f64 {
        self.values[x - 1]
    }
}

/// `(2N³ + N) / 3`.
pub fn quadruple_count(n: u64) -> u128 {
    let n = n as u128;
    (2 * n * n * n + n) / 3
}

/// `(N⁻¹ Σ f(n)²)^{1/2}`.
pub fn l2_norm(f: &GridFunction) -> f64 {
    let s: f64 = f.values.iter().map(|v| v * v).sum();
    (s / f.n() as f64).sqrt()
}

/// `r_f(s) = Σ_a f(a) f(s - a)` for `s = 2, ..., 2N`.
pub fn representation_sums(f: &GridFunction) -> Vec<f64> {
    let n = f.n();
    let v = &f.values;
    let mut r = vec![0.0; 2 * n - 1];
    for (i, &x) in v.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in v.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// `(E(N)⁻¹ Σ_{a+d=b+c} f(a) f(b) f(c) f(d))^{1/4}` through representation sums.
pub fn u2_norm_direct(f: &GridFunction) -> Result<f64> {
    if f.n() > DIRECT_U2_LIMIT {
        return Err(budget("direct U2 norm", f.n() as u128, DIRECT_U2_LIMIT as u128));
    }
    let s: f64 = representation_sums(f).iter().map(|r| r * r).sum();
    Ok((s.max(0.0) / quadruple_count(f.n() as u64) as f64).powf(0.25))
}

/// Least prime in `[lo, hi)`, by a segmented sieve.
pub fn least_prime_in(lo: u64, hi: u64) -> Option<u64> {
    if hi <= lo {
        return None;
    }
    let root = (hi as f64).sqrt() as u64 + 1;
    let mut small = vec![true; root as usize + 1];
    let mut primes = Vec::new();
    for i in 2..=root as usize {
        if small[i] {
            primes.push(i as u64);
            for j in (i * i..=root as usize).step_by(i) {
                small[j] = false;
            }
        }
    }
    let mut seg = vec![true; (hi - lo) as usize];
    for &p in &primes {
        let start = (lo.div_ceil(p) * p).max(p * p);
        for m in (start..hi).step_by(p as usize) {
            seg[(m - lo) as usize] = false;
        }
    }
    (lo.max(2)..hi).find(|&x| seg[(x - lo) as usize])
}

/// The prime used by [`u2_norm_fourier`]: least prime in `[200N, 400N)`.
pub fn embedding_prime(n: usize) -> u64 {
    let n = n as u64;
    least_prime_in(200 * n, 400 * n).expect("Bertrand's postulate")
}

/// `(p³ / E(N) Σ_{r ∈ Z/pZ} |f̂(r)|⁴)^{1/4}` with `f` embedded in `Z/pZ` and
/// `f̂(r) = p⁻¹ Σ_x f(x) e(-rx/p)`. Because `p > 2N`, sums in `[N]` do not
/// wrap, so this equals [`u2_norm_direct`] up to rounding.
pub fn u2_norm_fourier(f: &GridFunction) -> f64 {
    let p = embedding_prime(f.n()) as usize;
    let mut buf = vec![Complex::new(0.0, 0.0); p];
    for (i, &v) in f.values.iter().enumerate() {
        buf[i + 1] = Complex::new(v, 0.0);
    }
    FftPlanner::<f64>::new().plan_fft_forward(p).process(&mut buf);
    // Σ |f̂|⁴ = p⁻⁴ Σ |F|⁴ with F the unnormalised transform.
    let fourth: f64 = buf.iter().map(|z| z.norm_sqr() * z.norm_sqr()).sum();
    let pf = p as f64;
    (fourth / pf / quadruple_count(f.n() as u64) as f64).max(0.0).powf(0.25)
}

/// The `U²` norm by whichever path is cheaper.
pub fn u2_norm(f: &GridFunction) -> f64 {
    if f.n() <= 256 {
        u2_norm_direct(f).expect("within the direct limit")
    } else {
        u2_norm_fourier(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanBoundReport {
    /// `|P|⁻¹ |Σ_{n ∈ P} f(n)|`.
    pub lhs: f64,
    /// `η⁻¹ ‖f‖_{U²}`.
    pub rhs: f64,
    /// `lhs / rhs`, or 0 when both vanish.
    pub ratio: f64,
}

/// Compare the mean of `f` on a progression `P ⊆ [N]` with `|P| ≥ ηN`
/// against `η⁻¹ ‖f‖_{U²}`.
pub fn progression_mean_bound_check(f: &GridFunction, p: &Progression1D, eta: f64) -> Result<MeanBoundReport> {
    let n = f.n();
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("eta = {eta} is not in (0, 1]")));
    }
    if p.first() < 1 || p.last() > n as i128 {
        return Err(Error::Precondition(format!(
            "progression [{}, {}] is not inside [1, {n}]",
            p.first(),
            p.last()
        )));
    }
    if (p.len as f64) < eta * n as f64 {
        return Err(Error::Precondition(format!(
            "|P| = {} is below eta N = {}",
            p.len,
            eta * n as f64
        )));
    }
    let sum: f64 = p.iter().map(|x| f.at(x as usize)).sum();
    let lhs = (sum / p.len as f64).abs();
    let rhs = u2_norm(f) / eta;
    let ratio = if rhs > 0.0 {
        lhs / rhs
    } else if lhs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(MeanBoundReport { lhs, rhs, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_quadruples(n: u64) -> u128 {
        let mut c = 0;
        for a in 1..=n {
            for b in 1..=n {
                for cc in 1..=n {
                    let d = b + cc;
                    if d > a && d - a <= n {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn quadruple_counts() {
        assert_eq!(quadruple_count(1), 1);
        assert_eq!(quadruple_count(2), 6);
        assert_eq!(quadruple_count(10), 670);
        for n in 1..=30 {
            assert_eq!(quadruple_count(n), brute_quadruples(n));
        }
    }

    #[test]
    fn l2_examples() {
        let one = GridFunction::from_fn(10, |_| 1.0).unwrap();
        let zero = GridFunction::from_fn(10, |_| 0.0).unwrap();
        let half = GridFunction::from_fn(10, |x| if x <= 5 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(l2_norm(&one), 1.0);
        assert_eq!(l2_norm(&zero), 0.0);
        assert!((l2_norm(&half) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn u2_of_constants() {
        let one = GridFunction::from_fn(37, |_| 1.0).unwrap();
        assert!((u2_norm_direct(&one).unwrap() - 1.0).abs() < 1e-12);
        assert!((u2_norm_fourier(&one) - 1.0).abs() < 1e-9);
        let zero = GridFunction::from_fn(37, |_| 0.0).unwrap();
        assert_eq!(u2_norm_direct(&zero).unwrap(), 0.0);
        assert!(u2_norm_fourier(&zero) < 1e-12);
    }

    #[test]
    fn half_indicator_against_quadruple_sum() {
        let n = 64;
        let f = GridFunction::from_fn(n, |x| if x <= n / 2 { 1.0 } else { 0.0 }).unwrap();
        // Quadruples inside [32], normalised by E(64).
        let expected = (brute_quadruples(32) as f64 / quadruple_count(64) as f64).powf(0.25);
        assert!((u2_norm_direct(&f).unwrap() - expected).abs() < 1e-12);
        assert!((u2_norm_fourier(&f) - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn alternating_signs() {
        let f = GridFunction::from_fn(64, |x| if x % 2 == 0 { 1.0 } else { -1.0 }).unwrap();
        let d = u2_norm_direct(&f).unwrap();
        // (-1)^n is a character, so its U² norm equals that of the constant 1.
        assert!((d - 1.0).abs() < 1e-12);
        assert!((u2_norm_fourier(&f) - d).abs() < 1e-9);
    }

    #[test]
    fn primes() {
        assert_eq!(least_prime_in(200, 400), Some(211));
        assert_eq!(least_prime_in(24, 29), None);
        assert_eq!(least_prime_in(0, 3), Some(2));
        assert_eq!(embedding_prime(1), 211);
        assert_eq!(embedding_prime(32), 6421);
    }

    #[test]
    fn guards_and_domain() {
        assert!(GridFunction::new(vec![]).is_err());
        assert!(GridFunction::new(vec![2.5]).is_err());
        assert!(GridFunction::new(vec![f64::NAN]).is_err());
        let big = GridFunction::from_fn(DIRECT_U2_LIMIT + 1, |_| 0.0).unwrap();
        assert!(matches!(u2_norm_direct(&big), Err(Error::Resource { .. })));
    }

    #[test]
    fn mean_bound_report() {
        let one = GridFunction::from_fn(100, |_| 1.0).unwrap();
        let all = Progression1D::interval(1, 100).unwrap();
        let r = progression_mean_bound_check(&one, &all, 0.5).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 2.0).abs() < 1e-9);
        let zero = GridFunction::from_fn(100, |_| 0.0).unwrap();
        let r = progression_mean_bound_check(&zero, &all, 0.5).unwrap();
        assert_eq!((r.lhs, r.ratio), (0.0, 0.0));
        let short = Progression1D::interval(1, 10).unwrap();
        assert!(matches!(
            progression_mean_bound_check(&one, &short, 0.5),
            Err(Error::Precondition(_))
        ));
    }
}
