//! Certified extraction of proper progressions from Bohr sets.

use crate::error::{budget, Error, Result};
use crate::progressions::{Gap2, Progression, Progression1D};
use crate::Rational;

use super::lattice::{successive_minima_2d, Lattice2, MinimaResult};
use super::{cf, near_zero, torus_norm, Alpha, BohrSpec, MAX_ENUMERATION_N};

/// Line budget handed to the successive-minima scan.
const LINE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Successive minima of the box with respect to `Z(1,u) + Z(0,v)`.
    Lattice,
    /// Sums `m1 q1 + m2 q2` of consecutive convergent denominators.
    ContinuedFraction,
    /// The convergent construction was too small; the lattice route was used.
    LatticeFallback,
}

/// Everything re-checked about an extracted progression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub elements_checked: u64,
    pub all_members: bool,
    pub proper: bool,
    pub size: usize,
    /// `σN / 400`.
    pub size_bound: Rational,
}

impl Certificate {
    pub fn size_ok(&self) -> bool {
        Rational::from(self.size as i128) >= self.size_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub progression: Progression,
    pub route: Route,
    pub minima: Option<MinimaResult>,
    pub certificate: Certificate,
}

/// A proper progression of dimension at most two inside `B_N(α, σ)` with
/// at least `σN/400` elements. Requires `σN ≥ 400`.
///
/// Rational `α` goes through the lattice construction; a continued-fraction
/// `α` goes through its convergents, falling back to the lattice when the
/// convergent construction is too small. The result is always re-verified
/// element by element; a failed check is an [`Error::Internal`].
pub fn extract_gap(spec: &BohrSpec) -> Result<Extraction> {
    spec.validate()?;
    if spec.sigma * Rational::from(spec.n as i128) < Rational::from(400) {
        return Err(Error::Precondition(format!(
            "sigma * N = {} is below 400",
            spec.sigma * Rational::from(spec.n as i128)
        )));
    }
    let ex = extract_gap_unchecked(spec)?;
    if !ex.certificate.size_ok() {
        return Err(Error::Internal(format!(
            "extracted progression has {} elements, below sigma N / 400 = {}",
            ex.certificate.size, ex.certificate.size_bound
        )));
    }
    Ok(ex)
}

/// As [`extract_gap`] but without the `σN ≥ 400` precondition or the size
/// guarantee; membership and properness are still certified.
pub fn extract_gap_unchecked(spec: &BohrSpec) -> Result<Extraction> {
    let alpha = spec.validate()?;
    if spec.n > MAX_ENUMERATION_N {
        return Err(budget("Bohr extraction certificate", spec.n as u128, MAX_ENUMERATION_N as u128));
    }
    let bound = spec.sigma * Rational::from(spec.n as i128) / Rational::from(400);
    let (progression, route, minima) = match &spec.alpha {
        Alpha::Rational(_) => {
            let (p, m) = lattice_route(alpha, spec.sigma, spec.n)?;
            (p, Route::Lattice, Some(m))
        }
        Alpha::ContinuedFraction(terms) => {
            let p = convergent_route(terms, alpha, spec.sigma, spec.n)?;
            if Rational::from(p.cardinality() as i128) >= bound {
                (p, Route::ContinuedFraction, None)
            } else {
                let (p, m) = lattice_route(alpha, spec.sigma, spec.n)?;
                (p, Route::LatticeFallback, Some(m))
            }
        }
    };
    let (u, v) = (*alpha.numer(), *alpha.denom());
    let n = spec.n as i128;
    let mut checked = 0u64;
    let mut all_members = true;
    for x in iter_elements(&progression) {
        checked += 1;
        if x.abs() > n || !near_zero(x, u, v, spec.sigma) {
            all_members = false;
            break;
        }
    }
    let certificate = Certificate {
        elements_checked: checked,
        all_members,
        proper: progression.is_proper(),
        size: progression.cardinality(),
        size_bound: bound,
    };
    if !certificate.all_members || !certificate.proper {
        return Err(Error::Internal(format!(
            "extracted progression {progression:?} failed its certificate: {certificate:?}"
        )));
    }
    Ok(Extraction {
        progression,
        route,
        minima,
        certificate,
    })
}

fn iter_elements(p: &Progression) -> Box<dyn Iterator<Item = i128> + '_> {
    match p {
        Progression::OneDim(q) => Box::new(q.iter()),
        Progression::TwoDim(q) => Box::new(q.iter()),
    }
}

// {l x : |l| ≤ L} as a 1-based progression.
fn symmetric_1d(x: i128, l: u64) -> Result<Progression> {
    if x == 0 || l == 0 {
        return Ok(Progression1D::starting_at(0, 1, 1)?.into());
    }
    let s = x.abs();
    Ok(Progression1D::starting_at(-(l as i128) * s, s, 2 * l + 1)?.into())
}

// {l1 x1 + l2 x2 : |l_i| ≤ L_i} as a 1-based progression.
fn symmetric_2d(x1: i128, l1: u64, x2: i128, l2: u64) -> Result<Progression> {
    if l2 == 0 || x2 == 0 {
        return symmetric_1d(x1, l1);
    }
    if l1 == 0 || x1 == 0 {
        return symmetric_1d(x2, l2);
    }
    let a0 = -(l1 as i128 + 1) * x1 - (l2 as i128 + 1) * x2;
    Ok(Gap2::new(a0, x1, x2, 2 * l1 + 1, 2 * l2 + 1)?.into())
}

fn lattice_route(alpha: Rational, sigma: Rational, n: u64) -> Result<(Progression, MinimaResult)> {
    let (u, v) = (*alpha.numer(), *alpha.denom());
    let lattice = Lattice2::congruence(u, v)?;
    let m = successive_minima_2d(&lattice, n, sigma * Rational::from(v), LINE_BUDGET)?;
    let floor_inv = |lambda: Rational| -> u64 {
        (Rational::from(1) / (Rational::from(10) * lambda))
            .floor()
            .to_integer()
            .clamp(0, u64::MAX as i128) as u64
    };
    let l1 = floor_inv(m.lambda1);
    let l2 = if m.lambda2 >= Rational::new(1, 10) { 0 } else { floor_inv(m.lambda2) };
    Ok((symmetric_2d(m.v1.0, l1, m.v2.0, l2)?, m))
}

// Largest M ≥ 0 with 2 M ‖q α‖ < σ and M q ≤ N / 2.
fn multiplier(q: i128, alpha: Rational, sigma: Rational, n: u64) -> u64 {
    let by_range = (n as i128 / 2) / q;
    let delta = torus_norm(alpha * Rational::from(q));
    let by_norm = if delta == Rational::from(0) {
        by_range
    } else {
        // 2 M δ < σ  ⇔  M < σ / (2δ).
        let r = sigma / (Rational::from(2) * delta);
        let f = r.floor().to_integer();
        if Rational::from(f) == r { f - 1 } else { f }
    };
    by_range.min(by_norm).max(0) as u64
}

fn convergent_route(terms: &[i128], alpha: Rational, sigma: Rational, n: u64) -> Result<Progression> {
    let conv = cf::convergents(terms, terms.len().max(1))?;
    let qs: Vec<i128> = conv.iter().map(|c| c.1).filter(|&q| q as u128 <= n as u128).collect();
    let mut best = symmetric_1d(1, 0)?;
    let mut consider = |p: Progression| {
        if p.cardinality() > best.cardinality() {
            best = p;
        }
    };
    for &q in &qs {
        consider(symmetric_1d(q, multiplier(q, alpha, sigma, n))?);
    }
    for w in qs.windows(2) {
        let (q1, q2) = (w[0], w[1]);
        // 2 M1 < q2 keeps m1 q1 + m2 q2 = 0 with |m1| ≤ 2 M1 trivial.
        let m1 = multiplier(q1, alpha, sigma, n).min(((q2 - 1) / 2) as u64);
        let m2 = multiplier(q2, alpha, sigma, n);
        consider(symmetric_2d(q1, m1, q2, m2)?);
    }
    Ok(best)
}

/// A closed arc `{x ∈ T : ‖x - center‖ ≤ halfwidth}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusInterval {
    pub center: Rational,
    pub halfwidth: Rational,
}

impl TorusInterval {
    pub fn contains(&self, x: Rational) -> bool {
        torus_norm(x - self.center) <= self.halfwidth
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InhomogeneousOutcome {
    Found {
        progression: Progression,
        /// The window element used as the centre of the shift.
        centre: i128,
        /// Offset `b` (in window steps) of the translate `b + P'`.
        shift: i128,
        certificate: Certificate,
        /// `|B|` for `B = {n ∈ window : nθ ∈ I}`.
        bohr_size: usize,
        /// `|Q| / |B|`.
        ratio: f64,
        /// Whether `|Q| ≥ |B| / 10⁴`.
        ratio_ok: bool,
    },
    /// The shrunken arc caught no multiple in the central half of the window.
    NoWitness { searched: u64 },
}

/// A proper progression `Q ⊆ {n ∈ window : nθ ∈ I}` of dimension at most two.
///
/// Writing the window as `n_c + v j` with `|j| ≤ H`, the set of `j` with
/// `jvθ` within `|I|/200` of `c - n_c θ` and `|j| ≤ H/2` is searched for
/// the `b` closest to zero, and `P'` is extracted from the homogeneous Bohr
/// set of `vθ` with radius `|I|/200` and length `H/2`. Then
/// `Q = n_c + v(b + P')`.
pub fn extract_gap_inhomogeneous(
    theta: Rational,
    interval: TorusInterval,
    window: &Progression1D,
) -> Result<InhomogeneousOutcome> {
    let w = interval.halfwidth;
    if w <= Rational::from(0) || w >= Rational::new(1, 4) {
        return Err(Error::Precondition(format!(
            "interval halfwidth {w} is not in (0, 1/4)"
        )));
    }
    if window.len < 5 {
        return Err(Error::Precondition("window must have at least 5 elements".into()));
    }
    if window.len > MAX_ENUMERATION_N {
        return Err(budget("inhomogeneous Bohr window", window.len as u128, MAX_ENUMERATION_N as u128));
    }
    let in_b = |x: i128| window.contains(x) && interval.contains(theta * Rational::from(x));
    let bohr_size = window.iter().filter(|&x| in_b(x)).count();

    let half = ((window.len - 1) / 2) as i128;
    let inner = half / 2;
    let centre = window.element(half as u64 + 1);
    let step = window.step;
    let rot = {
        let t = theta * Rational::from(step);
        t - t.floor()
    };
    let target = interval.center - theta * Rational::from(centre);
    let radius = w / Rational::from(100);

    let near = |j: i128| torus_norm(rot * Rational::from(j) - target) <= radius;
    let mut searched = 0u64;
    let mut b = None;
    for k in 0..=inner {
        for j in if k == 0 { vec![0] } else { vec![-k, k] } {
            searched += 1;
            if near(j) {
                b = Some(j);
                break;
            }
        }
        if b.is_some() {
            break;
        }
    }
    let Some(b) = b else {
        return Ok(InhomogeneousOutcome::NoWitness { searched });
    };

    let inner_p = if rot == Rational::from(0) {
        symmetric_1d(1, inner as u64)?
    } else {
        let spec = BohrSpec::new(Alpha::Rational(rot), radius, inner as u64)?;
        extract_gap_unchecked(&spec)?.progression
    };
    let progression = inner_p.affine_image(centre + step * b, step)?;

    let mut checked = 0u64;
    let mut all_members = true;
    for x in iter_elements(&progression) {
        checked += 1;
        if !in_b(x) {
            all_members = false;
            break;
        }
    }
    let size = progression.cardinality();
    let certificate = Certificate {
        elements_checked: checked,
        all_members,
        proper: progression.is_proper(),
        size,
        size_bound: Rational::new(bohr_size as i128, 10_000),
    };
    if !certificate.all_members || !certificate.proper {
        return Err(Error::Internal(format!(
            "shifted progression {progression:?} failed its certificate: {certificate:?}"
        )));
    }
    let ratio = size as f64 / bohr_size as f64;
    Ok(InhomogeneousOutcome::Found {
        progression,
        centre,
        shift: b,
        ratio_ok: certificate.size_ok(),
        certificate,
        bohr_size,
        ratio,
    })
}
