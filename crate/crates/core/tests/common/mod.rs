//! Independent reference implementations used by the integration tests.
//! Everything here is deliberately naive.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use addstruct::{IntSet, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(xs: impl IntoIterator<Item = i128>) -> IntSet {
    xs.into_iter().collect()
}

pub fn i128s(a: &IntSet) -> Vec<i128> {
    a.to_i128s().expect("test sets fit in i128")
}

/// All pairwise sums.
pub fn naive_sumset(a: &[i128], b: &[i128]) -> BTreeSet<i128> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// `hX` for `X ⊆ [0, 64)` by dynamic programming over reachable sums.
pub fn dp_iterated(x: &[i128], h: usize) -> BTreeSet<i128> {
    let mut reach: BTreeSet<i128> = [0].into_iter().collect();
    for _ in 0..h {
        reach = reach.iter().flat_map(|s| x.iter().map(move |v| s + v)).collect();
    }
    reach
}

/// `lX - mX` by nested pairwise expansion.
pub fn naive_signed(x: &[i128], l: usize, m: usize) -> BTreeSet<i128> {
    let plus = dp_iterated(x, l);
    let neg: Vec<i128> = x.iter().map(|v| -v).collect();
    let minus = dp_iterated(&neg, m);
    plus.iter().flat_map(|p| minus.iter().map(move |q| p + q)).collect()
}

/// `‖n u/v‖ < σ` evaluated with 128-bit integers and cross-multiplication.
pub fn in_bohr(n: i128, u: i128, v: i128, sigma: Rational) -> bool {
    let r = (n.rem_euclid(v) * u).rem_euclid(v);
    let d = r.min(v - r);
    d * sigma.denom() < sigma.numer() * v
}

/// Fully exhaustive densest AP in `[min A, max A]`: every first element,
/// step and length, with the library's ranking.
pub fn reference_densest_ap(xs: &[i128], min_len: u64, max_step: i128) -> Option<(i128, i128, u64, u64)> {
    let members: HashSet<i128> = xs.iter().copied().collect();
    let (lo, hi) = (xs[0], *xs.last().unwrap());
    let mut best: Option<(i128, i128, u64, u64)> = None;
    for step in 1..=max_step {
        for first in lo..=hi {
            let max_len = ((hi - first) / step + 1) as u64;
            let mut hits = 0u64;
            for len in 1..=max_len {
                if members.contains(&(first + (len as i128 - 1) * step)) {
                    hits += 1;
                }
                if len < min_len {
                    continue;
                }
                let cand = (first, step, len, hits);
                let better = match best {
                    None => true,
                    Some((bf, bs, bl, bh)) => {
                        let l = hits as u128 * bl as u128;
                        let r = bh as u128 * len as u128;
                        l > r || (l == r && (len > bl || (len == bl && (step < bs || (step == bs && first < bf)))))
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    best
}
