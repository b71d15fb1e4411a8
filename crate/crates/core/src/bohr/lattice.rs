//! Successive minima of a box with respect to a planar lattice.
//!
//! The box is `K = {|z1| ≤ N, |z2| ≤ h}` and the gauge is
//! `‖z‖_K = max(|z1|/N, |z2|/h)`. A reduced basis only bounds the search;
//! the minima themselves come from an exact scan of the lattice lines
//! `{a b1 + c b2 : a ∈ Z}` that can meet `λ2 · K`.

use num_integer::Integer;

use crate::error::{budget, Error, Result};
use crate::Rational;

pub type Vec2 = (i128, i128);

/// Lattice `Z b1 + Z b2 ⊆ Z²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice2 {
    pub b1: Vec2,
    pub b2: Vec2,
}

impl Lattice2 {
    pub fn new(b1: Vec2, b2: Vec2) -> Result<Self> {
        if cross(b1, b2) == 0 {
            return Err(Error::Domain(format!(
                "degenerate lattice basis {b1:?}, {b2:?}"
            )));
        }
        Ok(Lattice2 { b1, b2 })
    }

    /// `Z (1, u) + Z (0, v)`: pairs `(n, y)` with `y ≡ u n (mod v)`.
    pub fn congruence(u: i128, v: i128) -> Result<Self> {
        Lattice2::new((1, u), (0, v))
    }

    pub fn det(&self) -> i128 {
        cross(self.b1, self.b2).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimaResult {
    pub lambda1: Rational,
    pub lambda2: Rational,
    pub v1: Vec2,
    pub v2: Vec2,
    /// Number of lattice lines scanned.
    pub lines_scanned: u64,
}

fn cross(a: Vec2, b: Vec2) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// The scaled sup-norm gauge of the box.
#[derive(Clone, Copy, Debug)]
pub struct BoxGauge {
    n: i128,
    h: Rational,
}

impl BoxGauge {
    pub fn new(n: u64, halfheight: Rational) -> Result<Self> {
        if n == 0 || halfheight <= Rational::from(0) {
            return Err(Error::Domain("box must have positive width and height".into()));
        }
        Ok(BoxGauge {
            n: n as i128,
            h: halfheight,
        })
    }

    pub fn norm(&self, z: Vec2) -> Rational {
        let a = Rational::new(z.0.abs(), self.n);
        let b = Rational::from(z.1.abs()) / self.h;
        a.max(b)
    }

    fn scaled(&self, z: Vec2) -> (f64, f64) {
        let h = *self.h.numer() as f64 / *self.h.denom() as f64;
        (z.0 as f64 / self.n as f64, z.1 as f64 / h)
    }
}

/// Lagrange–Gauss reduction in the scaled Euclidean metric. Rounding uses
/// floating point, but every step is an integral unimodular change of
/// basis, so the lattice is preserved exactly.
fn reduce(mut b1: Vec2, mut b2: Vec2, g: &BoxGauge) -> (Vec2, Vec2) {
    let dot = |a: Vec2, b: Vec2| {
        let (p, q) = (g.scaled(a), g.scaled(b));
        p.0 * q.0 + p.1 * q.1
    };
    if dot(b1, b1) > dot(b2, b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    for _ in 0..256 {
        let mu = (dot(b1, b2) / dot(b1, b1)).round();
        if !mu.is_finite() || mu == 0.0 || mu.abs() > 1e30 {
            break;
        }
        let m = mu as i128;
        b2 = (b2.0 - m * b1.0, b2.1 - m * b1.1);
        if dot(b2, b2) < dot(b1, b1) {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            break;
        }
    }
    (b1, b2)
}

// Sign-normalise so the first nonzero coordinate is positive.
fn canonical(z: Vec2) -> Vec2 {
    if z.0 < 0 || (z.0 == 0 && z.1 < 0) {
        (-z.0, -z.1)
    } else {
        z
    }
}

// Candidate ordering: smaller norm, then lexicographically smaller.
fn better(g: &BoxGauge, cand: Vec2, best: &Option<(Rational, Vec2)>) -> Option<(Rational, Vec2)> {
    let c = canonical(cand);
    let nc = g.norm(c);
    match best {
        Some((nb, vb)) if (nb, vb) <= (&nc, &c) => None,
        _ => Some((nc, c)),
    }
}

/// Exact successive minima of the box `{|z1| ≤ N, |z2| ≤ halfheight}`.
pub fn successive_minima_2d(
    lattice: &Lattice2,
    n: u64,
    halfheight: Rational,
    line_budget: u64,
) -> Result<MinimaResult> {
    let g = BoxGauge::new(n, halfheight)?;
    let (b1, b2) = reduce(lattice.b1, lattice.b2, &g);
    let det = cross(b1, b2);
    debug_assert_eq!(det.abs(), lattice.det());
    let bound = g.norm(b1).max(g.norm(b2));
    // A point p with ‖p‖ ≤ bound has |cross(b1, p)| ≤ bound (|b1.0| h + |b1.1| N),
    // and its b2-coefficient is cross(b1, p) / cross(b1, b2).
    let span = |b: Vec2| {
        (bound * (g.h * Rational::from(b.0.abs()) + Rational::from(b.1.abs() * g.n))
            / Rational::from(det.abs()))
        .floor()
        .to_integer()
    };
    let c_max = span(b1);
    let a_max = span(b2) + 1;
    let lines = 2 * c_max as u128 + 1;
    if lines > line_budget as u128 {
        return Err(budget("successive minima line scan", lines, line_budget as u128));
    }
    let point = |a: i128, c: i128| (a * b1.0 + c * b2.0, a * b1.1 + c * b2.1);
    // Smallest integer minimiser of the convex map a ↦ ‖a b1 + c b2‖.
    let argmin = |c: i128| {
        let f = |a: i128| g.norm(point(a, c));
        let (mut lo, mut hi) = (-a_max, a_max);
        while lo < hi {
            let mid = lo + Integer::div_floor(&(hi - lo), &2);
            if f(mid + 1) >= f(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    };
    let minimisers: Vec<(i128, i128)> = (-c_max..=c_max).map(|c| (c, argmin(c))).collect();

    let mut first: Option<(Rational, Vec2)> = None;
    for &(c, a) in &minimisers {
        let a = if c == 0 { 1 } else { a };
        if let Some(b) = better(&g, point(a, c), &first) {
            first = Some(b);
        }
    }
    let (lambda1, v1) = first.expect("at least one line scanned");

    let mut second: Option<(Rational, Vec2)> = None;
    for &(c, a) in &minimisers {
        let cands: Vec<i128> = if c == 0 { vec![1] } else { vec![a, a - 1, a + 1] };
        let first_cand = cands[0];
        for a in cands {
            let p = point(a, c);
            if cross(v1, p) == 0 {
                continue;
            }
            if let Some(b) = better(&g, p, &second) {
                second = Some(b);
            }
            // The minimiser itself is admissible, so its neighbours cannot beat it.
            if c != 0 && a == first_cand {
                break;
            }
        }
    }
    let (lambda2, v2) = second.ok_or_else(|| Error::Internal("no independent lattice vector found".into()))?;

    let minkowski = Rational::from(lattice.det()) / (Rational::from(g.n) * g.h);
    if lambda1 * lambda2 > minkowski {
        return Err(Error::Internal(format!(
            "successive minima {lambda1} * {lambda2} exceed det / (N h) = {minkowski}"
        )));
    }
    Ok(MinimaResult {
        lambda1,
        lambda2,
        v1,
        v2,
        lines_scanned: lines as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent reference for Z(1,u) + Z(0,v): every (n, y) with
    // y ≡ u n (mod v) inside the box scaled by max(‖(v,0)‖, ‖(0,v)‖) ≥ λ2.
    fn brute(u: i128, v: i128, n: u64, h: Rational) -> (Rational, Rational) {
        let g = BoxGauge::new(n, h).unwrap();
        let bound = g.norm((v, 0)).max(g.norm((0, v)));
        let r1 = (bound * Rational::from(n as i128)).floor().to_integer();
        let r2 = (bound * h).floor().to_integer();
        let mut pts = Vec::new();
        for x in -r1..=r1 {
            for y in -r2..=r2 {
                if (y - u * x).rem_euclid(v) == 0 && (x, y) != (0, 0) {
                    pts.push((g.norm((x, y)), (x, y)));
                }
            }
        }
        pts.sort();
        let (l1, v1) = pts[0];
        let l2 = pts.iter().find(|(_, p)| cross(v1, *p) != 0).unwrap().0;
        (l1, l2)
    }

    #[test]
    fn unit_lattice_unit_box() {
        let l = Lattice2::new((1, 0), (0, 1)).unwrap();
        let m = successive_minima_2d(&l, 1, Rational::from(1), 1000).unwrap();
        assert_eq!((m.lambda1, m.lambda2), (Rational::from(1), Rational::from(1)));
        assert_eq!(cross(m.v1, m.v2).abs(), 1);
    }

    #[test]
    fn congruence_lattice_example() {
        let l = Lattice2::congruence(1, 5).unwrap();
        let m = successive_minima_2d(&l, 5, Rational::from(1), 1000).unwrap();
        assert_eq!(m.lambda1, Rational::from(1));
        assert_eq!(m.lambda2, Rational::from(1));
        assert_eq!(m.v1, (1, 1));
        assert_eq!(m.v2, (4, -1));
        assert_eq!(brute(1, 5, 5, Rational::from(1)), (m.lambda1, m.lambda2));
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        assert!(matches!(Lattice2::new((1, 2), (2, 4)), Err(Error::Domain(_))));
        let l = Lattice2::new((1, 0), (0, 1)).unwrap();
        assert!(successive_minima_2d(&l, 0, Rational::from(1), 10).is_err());
    }

    #[test]
    fn matches_brute_force_on_small_lattices() {
        for v in 2..40i128 {
            for u in 1..v {
                if u.gcd(&v) != 1 {
                    continue;
                }
                let l = Lattice2::congruence(u, v).unwrap();
                for &(n, h) in &[(7u64, Rational::new(1, 3)), (20, Rational::new(3, 2)), (3, Rational::new(5, 1))] {
                    let m = successive_minima_2d(&l, n, h, 10_000).unwrap();
                    assert_eq!(brute(u, v, n, h), (m.lambda1, m.lambda2), "u={u} v={v} n={n}");
                    let g = BoxGauge::new(n, h).unwrap();
                    assert_eq!(g.norm(m.v1), m.lambda1);
                    assert_eq!(g.norm(m.v2), m.lambda2);
                    assert_ne!(cross(m.v1, m.v2), 0);
                }
            }
        }
    }

    #[test]
    fn tiny_budget_is_reported() {
        let l = Lattice2::congruence(1, 5).unwrap();
        assert!(matches!(
            successive_minima_2d(&l, 5, Rational::from(1), 0),
            Err(Error::Resource { .. })
        ));
    }
}
