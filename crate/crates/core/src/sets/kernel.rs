//! Sumset kernels over non-negative offsets.
//!
//! Both operands are given as strictly increasing offsets from their own
//! minimum. The output is the sorted list of pairwise sums, again as offsets
//! from `min A + min B`.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Dense bitset backed by 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
    nbits: usize,
}

impl Bits {
    pub fn zeros(nbits: usize) -> Self {
        Bits {
            words: vec![0; nbits.div_ceil(64).max(1)],
            nbits,
        }
    }

    pub fn from_offsets(offsets: &[u64], nbits: usize) -> Self {
        let mut b = Bits::zeros(nbits);
        for &o in offsets {
            b.set(o as usize);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[cfg(test)]
    pub fn get(&self, i: usize) -> bool {
        i < self.nbits && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// `self |= other << shift`, truncated to `self.nbits`.
    pub fn or_shifted(&mut self, other: &Bits, shift: usize) {
        let ws = shift >> 6;
        let bs = shift & 63;
        let n = self.words.len();
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + ws;
            if lo >= n {
                break;
            }
            if bs == 0 {
                self.words[lo] |= w;
            } else {
                self.words[lo] |= w << bs;
                if lo + 1 < n {
                    self.words[lo + 1] |= w >> (64 - bs);
                }
            }
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(((i as u64) << 6) + t)
                }
            })
        })
    }
}

/// Which kernel a call ended up using. Exposed for tests and diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    Naive,
    Bitset,
    Fft,
}

/// Pick the cheapest exact kernel for offsets with the given spans.
pub(crate) fn choose(a_len: usize, b_len: usize, span: u64) -> Kernel {
    let pairs = (a_len as u128) * (b_len as u128);
    let words = (span / 64 + 1) as u128;
    let shift_or = (a_len.min(b_len) as u128) * words;
    let n = (span as u128 + 1).next_power_of_two();
    let fft = 6 * n * (128 - n.leading_zeros() as u128);
    if pairs <= shift_or.min(fft) {
        Kernel::Naive
    } else if shift_or <= fft {
        Kernel::Bitset
    } else {
        Kernel::Fft
    }
}

pub(crate) fn naive(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x + y);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn bitset(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let span_large = *large.last().unwrap_or(&0) as usize;
    let span = span_large + *small.last().unwrap_or(&0) as usize + 1;
    let base = Bits::from_offsets(large, span_large + 1);
    let mut acc = Bits::zeros(span);
    for &s in small {
        acc.or_shifted(&base, s as usize);
    }
    acc.ones().collect()
}

/// Convolution of 0/1 vectors by complex FFT; an entry is a sum when its
/// representation count rounds to at least one.
pub(crate) fn fft(a: &[u64], b: &[u64]) -> Vec<u64> {
    let span = (*a.last().unwrap_or(&0) + *b.last().unwrap_or(&0)) as usize + 1;
    let n = span.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    // Pack both real inputs into one complex signal: z = a + i b.
    let mut z = vec![Complex::new(0.0, 0.0); n];
    for &x in a {
        z[x as usize].re = 1.0;
    }
    for &y in b {
        z[y as usize].im = 1.0;
    }
    fwd.process(&mut z);
    // A[k] = (Z[k] + conj Z[n-k]) / 2, B[k] = (Z[k] - conj Z[n-k]) / 2i,
    // so A[k] B[k] = (Z[k]^2 - conj(Z[n-k])^2) / 4i.
    let mut prod = vec![Complex::new(0.0, 0.0); n];
    for k in 0..n {
        let zk = z[k];
        let zc = z[(n - k) % n].conj();
        prod[k] = (zk * zk - zc * zc) / Complex::new(0.0, 4.0);
    }
    inv.process(&mut prod);
    let scale = 1.0 / n as f64;
    (0..span)
        .filter(|&i| prod[i].re * scale > 0.5)
        .map(|i| i as u64)
        .collect()
}

pub(crate) fn run(kernel: Kernel, a: &[u64], b: &[u64]) -> Vec<u64> {
    match kernel {
        Kernel::Naive => naive(a, b),
        Kernel::Bitset => bitset(a, b),
        Kernel::Fft => fft(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_or_crosses_word_boundaries() {
        let base = Bits::from_offsets(&[0, 1, 63], 64);
        let mut acc = Bits::zeros(200);
        acc.or_shifted(&base, 70);
        assert_eq!(acc.ones().collect::<Vec<_>>(), vec![70, 71, 133]);
        assert!(acc.get(133));
        assert!(!acc.get(134));
    }

    #[test]
    fn kernels_agree_on_small_cases() {
        let a = [0u64, 1, 5, 9, 64, 130];
        let b = [0u64, 3, 4, 70];
        let want = naive(&a, &b);
        assert_eq!(bitset(&a, &b), want);
        assert_eq!(fft(&a, &b), want);
    }

    #[test]
    fn singleton_offsets() {
        assert_eq!(fft(&[0], &[0]), vec![0]);
        assert_eq!(bitset(&[0], &[0]), vec![0]);
    }
}
