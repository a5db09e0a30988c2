//! Language-level laws of the acceptor operations, checked against random
//! automata with brute-force oracles.

mod common;

use omega_core::prefix::is_dense_in;
use omega_core::{Inclusion, LassoWord, Nba};

#[test]
fn trim_preserves_membership() {
    let mut r = common::rng(0xA11CE);
    for _ in 0..50 {
        let a = common::nba(&mut r, 2, 5);
        let t = a.trim();
        assert!(t.is_trim());
        for _ in 0..100 {
            let x = common::lasso(&mut r, 2, 5, 4);
            assert_eq!(a.contains(&x).unwrap(), t.contains(&x).unwrap());
        }
    }
}

/// First member among all lassos with |prefix| + |cycle| <= total, scanning
/// every word of every length and every prefix/cycle split.
fn short_member(a: &Nba, syms: usize, total: usize) -> Option<LassoWord> {
    for len in 1..=total {
        let mut word = vec![0usize; len];
        'words: loop {
            for split in 0..len {
                let x = LassoWord::new(word[..split].to_vec(), word[split..].to_vec()).unwrap();
                if a.contains(&x).unwrap() {
                    return Some(x);
                }
            }
            let mut i = len;
            loop {
                if i == 0 {
                    break 'words;
                }
                i -= 1;
                word[i] += 1;
                if word[i] < syms {
                    break;
                }
                word[i] = 0;
            }
        }
    }
    None
}

/// Every reported witness is a member and fits in the short-lasso bound.
fn check_witness(a: &Nba) {
    let bound = 2 * a.state_count() * a.state_count();
    assert_eq!(a.is_empty_language(), a.nonempty_witness().is_none());
    if let Some(w) = a.nonempty_witness() {
        assert!(a.contains(&w).unwrap());
        assert!(w.prefix().len() + w.cycle().len() <= bound);
    }
}

#[test]
fn emptiness_matches_exhaustive_search_small() {
    let mut r = common::rng(0xE301);
    let mut nonempty = 0;
    for _ in 0..40 {
        let a = common::nba(&mut r, 2, 2);
        let bound = 2 * a.state_count() * a.state_count();
        assert_eq!(a.is_empty_language(), short_member(&a, 2, bound).is_none());
        check_witness(&a);
        nonempty += usize::from(!a.is_empty_language());
    }
    assert!(nonempty >= 10, "suite too easy: only {nonempty} non-empty");
}

#[test]
fn emptiness_matches_exhaustive_search_unary() {
    let mut r = common::rng(0xE302);
    for _ in 0..40 {
        let a = common::nba(&mut r, 1, 4);
        let bound = 2 * a.state_count() * a.state_count();
        assert_eq!(a.is_empty_language(), short_member(&a, 1, bound).is_none());
        check_witness(&a);
    }
}

#[test]
fn emptiness_matches_sampled_search() {
    let mut r = common::rng(0xE303);
    let mut empties = 0;
    for _ in 0..40 {
        let a = common::nba(&mut r, 2, 4);
        check_witness(&a);
        if a.is_empty_language() {
            empties += 1;
            let n = a.state_count();
            for _ in 0..2000 {
                let x = common::lasso(&mut r, 2, 2 * n * n - 1, 2 * n * n - 1);
                assert!(
                    !a.contains(&x).unwrap(),
                    "empty automaton accepts {:?}",
                    x
                );
            }
        }
    }
    assert!(empties >= 3, "suite too easy: only {empties} empty");
}

#[test]
fn product_and_union_membership() {
    let mut r = common::rng(0xB001);
    for _ in 0..30 {
        let a = common::nba(&mut r, 2, 4);
        let b = common::nba(&mut r, 2, 4);
        let both = a.intersect(&b).unwrap();
        let either = a.union(&b).unwrap();
        for _ in 0..60 {
            let x = common::lasso(&mut r, 2, 4, 4);
            let ina = a.contains(&x).unwrap();
            let inb = b.contains(&x).unwrap();
            assert_eq!(both.contains(&x).unwrap(), ina && inb);
            assert_eq!(either.contains(&x).unwrap(), ina || inb);
        }
    }
}

#[test]
fn closure_is_a_safety_language() {
    let mut r = common::rng(0xC105);
    for _ in 0..40 {
        let a = common::nba(&mut r, 2, 5);
        let c = a.closure().unwrap();
        assert!(matches!(a.included_in(&c).unwrap(), Inclusion::Included));
        assert_eq!(a.is_empty_language(), c.is_empty_language());
        if c.is_empty_language() {
            continue;
        }
        // safety shape: once trimmed, every state is accepting, so every
        // surviving infinite path is accepting
        let t = c.trim();
        for q in 0..t.state_count() {
            assert!(t.is_accepting(q));
        }
    }
}

#[test]
fn density_is_reflexive_and_union_monotone() {
    let mut r = common::rng(0xDE25);
    let mut cross_dense = 0;
    for _ in 0..60 {
        let x = common::nba(&mut r, 2, 4);
        let y = common::nba(&mut r, 2, 4);
        let z = common::nba(&mut r, 2, 4);
        if !x.is_empty_language() {
            assert!(is_dense_in(&x, &x).unwrap());
        }
        // dense sets stay dense when the candidate set grows
        assert!(is_dense_in(&z.union(&y).unwrap(), &z).unwrap());
        if is_dense_in(&x, &z).unwrap() {
            cross_dense += 1;
            assert!(is_dense_in(&x.union(&y).unwrap(), &z).unwrap());
        }
    }
    assert!(cross_dense >= 3, "only {cross_dense} dense cross pairs");
}
