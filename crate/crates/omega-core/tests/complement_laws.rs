//! Boolean-algebra laws of complementation and the inclusion preorder.

mod common;

use omega_core::{Equivalence, Inclusion};

#[test]
fn complement_splits_every_word() {
    let mut r = common::rng(0x510F);
    for _ in 0..25 {
        let a = common::nba(&mut r, 2, 4);
        let c = a.complement().unwrap();
        for _ in 0..200 {
            let x = common::lasso(&mut r, 2, 5, 4);
            let ina = a.contains(&x).unwrap();
            let inc = c.contains(&x).unwrap();
            assert!(ina ^ inc, "{:?} lands on both sides or neither", x);
        }
    }
}

#[test]
fn complement_partitions_the_space() {
    let mut r = common::rng(0x520F);
    for _ in 0..20 {
        let a = common::nba(&mut r, 2, 4);
        let c = a.complement().unwrap();
        assert!(a.intersect(&c).unwrap().is_empty_language());
        assert!(a
            .union(&c)
            .unwrap()
            .complement()
            .unwrap()
            .is_empty_language());
    }
}

#[test]
fn double_complement_is_the_identity() {
    let mut r = common::rng(0x530F);
    for _ in 0..15 {
        let a = common::nba(&mut r, 2, 4);
        let cc = a.complement().unwrap().complement().unwrap();
        assert_eq!(a.lang_equiv(&cc).unwrap(), Equivalence::Equivalent);
    }
}

#[test]
fn inclusion_is_a_preorder() {
    let mut r = common::rng(0x540F);
    for _ in 0..15 {
        let x = common::nba(&mut r, 2, 4);
        let y = common::nba(&mut r, 2, 4);
        let z = common::nba(&mut r, 2, 4);
        assert!(matches!(x.included_in(&x).unwrap(), Inclusion::Included));
        // forced chain x∩y ⊆ x ⊆ x∪z keeps transitivity non-vacuous
        let low = x.intersect(&y).unwrap();
        let high = x.union(&z).unwrap();
        assert!(matches!(low.included_in(&x).unwrap(), Inclusion::Included));
        assert!(matches!(x.included_in(&high).unwrap(), Inclusion::Included));
        assert!(matches!(
            low.included_in(&high).unwrap(),
            Inclusion::Included
        ));
        // and on unconstrained triples whenever the premises happen to hold
        if matches!(x.included_in(&y).unwrap(), Inclusion::Included)
            && matches!(y.included_in(&z).unwrap(), Inclusion::Included)
        {
            assert!(matches!(x.included_in(&z).unwrap(), Inclusion::Included));
        }
    }
}

#[test]
fn inclusion_counterexamples_are_real() {
    let mut r = common::rng(0x550F);
    let mut refuted = 0;
    for _ in 0..20 {
        let x = common::nba(&mut r, 2, 4);
        let y = common::nba(&mut r, 2, 4);
        if let Inclusion::Counterexample(w) = x.included_in(&y).unwrap() {
            refuted += 1;
            assert!(x.contains(&w).unwrap());
            assert!(!y.contains(&w).unwrap());
        }
    }
    assert!(refuted >= 3, "only {refuted} refuted inclusions");
}
