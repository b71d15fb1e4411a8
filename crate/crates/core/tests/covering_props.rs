mod common;

use addstruct::covering::{cover_41_40, cover_5_4, cover_9_8, lev_admissible_ks, lev_verify, lev_verify_with_k, Enforcement};
use addstruct::progressions::smallest_containing_ap;
use addstruct::{Error, Gap2, Progression1D};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;

fn lev_set() -> impl Strategy<Value = Vec<i128>> {
    (3i128..30)
        .prop_flat_map(|l| (Just(l), prop::collection::btree_set(1..l, 1..(l as usize))))
        .prop_map(|(l, inner)| {
            let mut v = vec![0];
            v.extend(inner);
            v.push(l);
            v
        })
}

proptest! {
    #[test]
    fn lev_containments_match_dp(x in lev_set()) {
        let xs = set(x.clone());
        prop_assume!(addstruct::sets::difference_gcd(&xs) == BigInt::from(1));
        for k in lev_admissible_ks(&xs).unwrap() {
            let rep = lev_verify_with_k(&xs, k).unwrap();
            let even = dp_iterated(&x, 2 * k as usize);
            let odd = dp_iterated(&x, 2 * k as usize + 1);
            let (lo, hi) = rep.params.even_interval();
            prop_assert_eq!(rep.contains_even, (lo..=hi).all(|v| even.contains(&v)));
            let (lo, hi) = rep.params.odd_interval();
            prop_assert_eq!(rep.contains_odd, (lo..=hi).all(|v| odd.contains(&v)));
            prop_assert!(rep.holds());
        }
    }

    #[test]
    fn five_four_cover_holds_above_half(first in -40i128..40, step in 1i128..4, len in 12u64..30, seed in any::<u64>()) {
        let p = Progression1D::starting_at(first, step, len).unwrap();
        let pool: Vec<i128> = p.iter().collect();
        let mut r = rng(seed);
        let size = rand::Rng::gen_range(&mut r, len as usize / 2 + 1..=len as usize);
        let x: Vec<i128> = rand::seq::SliceRandom::choose_multiple(pool.as_slice(), &mut r, size).copied().collect();
        let rep = cover_5_4(&set(x), &p, Enforcement::Strict).unwrap();
        prop_assert!(rep.holds);
        prop_assert!(rep.precondition_failures.is_empty());
    }
}

#[test]
fn lev_on_an_interval() {
    let rep = lev_verify(&set(0..=10)).unwrap();
    assert_eq!(rep.params.k, 1);
    assert!(rep.holds());
}

#[test]
fn lev_rejects_non_primitive_sets() {
    assert!(matches!(lev_verify(&set([0, 2, 4])), Err(Error::Precondition(_))));
    assert!(matches!(lev_verify(&set([1, 2, 4])), Err(Error::Precondition(_))));
}

#[test]
fn nine_eight_on_a_sparse_set() {
    // 101 elements of [0, 250), density just above 2/5.
    let x: Vec<i128> = (0..101).map(|i| (i * 249) / 100).collect();
    let xs = set(x);
    assert_eq!(smallest_containing_ap(&xs).unwrap().len, 250);
    assert!(cover_9_8(&xs, Enforcement::Strict).unwrap().holds);
}

#[test]
fn forty_one_forty_on_a_full_gap() {
    let q = Gap2::new(0, 1, 100, 12, 12).unwrap();
    let x = q.elements();
    let rep = cover_41_40(&x, &q, Enforcement::Strict).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.target_size, 144);
}

#[test]
fn improper_gap_is_reported_in_advisory_mode() {
    let q = Gap2::new(0, 1, 5, 12, 12).unwrap();
    let x = q.elements();
    assert!(matches!(cover_41_40(&x, &q, Enforcement::Strict), Err(Error::Precondition(_))));
    let rep = cover_41_40(&x, &q, Enforcement::Advisory).unwrap();
    assert!(!rep.precondition_failures.is_empty());
}

#[test]
fn sharpness_of_the_half_density_cover() {
    for l in [6i128, 12, 20] {
        let evens = set((1..=l).map(|i| 2 * i));
        let p = Progression1D::interval(1, 2 * l).unwrap();
        let rep = cover_5_4(&evens, &p, Enforcement::Advisory).unwrap();
        assert_eq!(rep.missing, Some(BigInt::from(1)));
    }
}

#[test]
fn half_density_is_not_enough_when_parity_is_fixed() {
    // Evens {2, ..., 2l} fill more than half of [2, 2l], yet 5X-4X misses every odd number.
    for l in [7i128, 12, 20] {
        let evens: Vec<i128> = (1..=l).map(|i| 2 * i).collect();
        let p = Progression1D::interval(2, 2 * l).unwrap();
        let rep = cover_5_4(&set(evens.iter().copied()), &p, Enforcement::Strict).unwrap();
        assert!(rep.precondition_failures.is_empty());
        assert!(!rep.holds);
        assert_eq!(rep.missing, Some(BigInt::from(3)));
        assert!(!naive_signed(&evens, 5, 4).contains(&3));
    }
}
