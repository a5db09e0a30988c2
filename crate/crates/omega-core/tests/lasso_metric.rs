//! Metric laws of the prefix distance on lassos.

use omega_core::{Divergence, LassoWord};
use proptest::prelude::*;

/// Order-preserving embedding of divergences; infinite sorts above every
/// finite position a real pair of lassos can produce.
fn dval(d: Divergence) -> usize {
    match d {
        Divergence::Finite(i) => i,
        Divergence::Infinite => usize::MAX,
    }
}

fn any_lasso() -> impl Strategy<Value = LassoWord> {
    (
        proptest::collection::vec(0..2usize, 0..6),
        proptest::collection::vec(0..2usize, 1..5),
    )
        .prop_map(|(p, c)| LassoWord::new(p, c).unwrap())
}

proptest! {
    #[test]
    fn infinite_divergence_means_equality(x in any_lasso(), y in any_lasso()) {
        prop_assert_eq!(x.divergence(&y) == Divergence::Infinite, x.same_word(&y));
    }

    #[test]
    fn divergence_is_the_first_disagreement(x in any_lasso(), y in any_lasso()) {
        match x.divergence(&y) {
            Divergence::Infinite => {
                for i in 0..32 {
                    prop_assert_eq!(x.letter(i), y.letter(i));
                }
            }
            Divergence::Finite(i) => {
                for j in 0..i {
                    prop_assert_eq!(x.letter(j), y.letter(j));
                }
                prop_assert_ne!(x.letter(i), y.letter(i));
            }
        }
    }

    #[test]
    fn divergence_is_symmetric(x in any_lasso(), y in any_lasso()) {
        prop_assert_eq!(x.divergence(&y), y.divergence(&x));
    }

    #[test]
    fn divergence_is_an_ultrametric(x in any_lasso(), y in any_lasso(), z in any_lasso()) {
        let xz = dval(x.divergence(&z));
        let xy = dval(x.divergence(&y));
        let yz = dval(y.divergence(&z));
        prop_assert!(xz >= xy.min(yz));
    }

    #[test]
    fn normalization_does_not_move_the_point(x in any_lasso()) {
        let n = x.normalize();
        prop_assert_eq!(x.divergence(&n), Divergence::Infinite);
        prop_assert!(n.prefix().len() <= x.prefix().len());
        prop_assert!(n.cycle().len() <= x.cycle().len());
    }
}
