//! Finite continued fractions and their convergents.

use crate::error::{Error, Result};
use crate::Rational;

/// Partial quotients `[a0; a1, a2, ...]` of a rational, by the Euclidean
/// algorithm. The last quotient is never 1 unless it is the only one.
pub fn expand(x: Rational) -> Vec<i128> {
    let (mut p, mut q) = (*x.numer(), *x.denom());
    let mut terms = Vec::new();
    while q != 0 {
        let a = p.div_euclid(q);
        terms.push(a);
        (p, q) = (q, p - a * q);
    }
    terms
}

/// Convergents `p_k / q_k` of `[a0; a1, ...]`, at most `depth` of them.
///
/// Uses `p_k = a_k p_{k-1} + p_{k-2}`, `q_k = a_k q_{k-1} + q_{k-2}` with
/// `p_{-1} = 1, q_{-1} = 0, p_{-2} = 0, q_{-2} = 1`.
pub fn convergents(terms: &[i128], depth: usize) -> Result<Vec<(i128, i128)>> {
    if depth == 0 {
        return Err(Error::Domain("convergent depth must be >= 1".into()));
    }
    if let Some((i, _)) = terms.iter().enumerate().skip(1).find(|(_, &a)| a < 1) {
        return Err(Error::Domain(format!(
            "partial quotient a_{i} must be positive"
        )));
    }
    let overflow = || Error::Domain("convergent overflows 128-bit integers".into());
    let (mut p2, mut q2, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut out = Vec::new();
    for &a in terms.iter().take(depth) {
        let p = a.checked_mul(p1).and_then(|v| v.checked_add(p2)).ok_or_else(overflow)?;
        let q = a.checked_mul(q1).and_then(|v| v.checked_add(q2)).ok_or_else(overflow)?;
        out.push((p, q));
        (p2, q2, p1, q1) = (p1, q1, p, q);
    }
    Ok(out)
}

/// Exact value of a finite continued fraction.
pub fn value(terms: &[i128]) -> Result<Rational> {
    let conv = convergents(terms, terms.len().max(1))?;
    let &(p, q) = conv
        .last()
        .ok_or_else(|| Error::Domain("empty continued fraction".into()))?;
    Ok(Rational::new(p, q))
}
