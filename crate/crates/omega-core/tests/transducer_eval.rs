//! Evaluation laws of Buchi transducers on a corpus of functional machines.

mod common;

use std::collections::BTreeSet;

use omega_core::constructions::pi2_witness;
use omega_core::{BuchiTransducer, Dba, LassoWord, Nba, PcpInstance, Rule, SyncTransducer};

fn identity() -> SyncTransducer {
    let t = BuchiTransducer::new(
        common::ab(),
        common::ab(),
        1,
        0,
        [0],
        [Rule::new(0, [0], [0], 0), Rule::new(0, [1], [1], 0)],
    )
    .unwrap();
    SyncTransducer::new(t).unwrap()
}

/// Total map sending words with infinitely many a to a^w and the rest to
/// b^w. Functional because the two guessed branches have disjoint domains;
/// continuous nowhere because both classes are dense.
fn step_map() -> SyncTransducer {
    let rules = [
        Rule::new(0, [0], [0], 2),
        Rule::new(0, [1], [0], 1),
        Rule::new(0, [0], [1], 3),
        Rule::new(0, [1], [1], 3),
        Rule::new(0, [1], [1], 4),
        Rule::new(1, [0], [0], 2),
        Rule::new(1, [1], [0], 1),
        Rule::new(2, [0], [0], 2),
        Rule::new(2, [1], [0], 1),
        Rule::new(3, [0], [1], 3),
        Rule::new(3, [1], [1], 3),
        Rule::new(3, [1], [1], 4),
        Rule::new(4, [1], [1], 4),
    ];
    let t = BuchiTransducer::new(common::ab(), common::ab(), 5, 0, [2, 4], rules).unwrap();
    SyncTransducer::new(t).unwrap()
}

fn inf_a_dba() -> Dba {
    Dba::new(
        Nba::new(
            common::ab(),
            2,
            0,
            [1],
            [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)],
        )
        .unwrap(),
    )
    .unwrap()
}

/// Copy machine with a doomed branch and an unreachable island, so trimming
/// actually removes states.
fn untrimmed_copy() -> BuchiTransducer {
    let rules = [
        Rule::new(0, [0], [0], 0),
        Rule::new(0, [1], [1], 1),
        Rule::new(1, [0], [0], 1),
        Rule::new(2, [1], [1], 2),
    ];
    BuchiTransducer::new(common::ab(), common::ab(), 3, 0, [0, 2], rules).unwrap()
}

fn functional_corpus() -> Vec<BuchiTransducer> {
    let pcp = PcpInstance::counting();
    vec![
        identity().into_buchi(),
        step_map().into_buchi(),
        pi2_witness(&inf_a_dba(), 1).unwrap().into_buchi(),
        pcp.transducer(),
        pcp.nested_transducer(),
        untrimmed_copy(),
    ]
}

#[test]
fn functional_machines_emit_at_most_one_output() {
    let mut r = common::rng(0xF11);
    for t in functional_corpus() {
        let syms = t.input_alphabet().len();
        for _ in 0..100 {
            let x = common::lasso(&mut r, syms, 4, 3);
            let outs = t.evaluate(&x, 1).unwrap();
            assert!(outs.len() <= 1);
        }
    }
}

#[test]
fn domain_membership_matches_evaluation() {
    let mut r = common::rng(0xF12);
    for t in functional_corpus() {
        let dom = t.dom();
        let syms = t.input_alphabet().len();
        for _ in 0..100 {
            let x = common::lasso(&mut r, syms, 4, 3);
            let produced = !t.evaluate(&x, 1).unwrap().is_empty();
            assert_eq!(dom.contains(&x).unwrap(), produced);
        }
        // at least one guaranteed hit per machine
        let w = dom.nonempty_witness().expect("corpus relations are non-empty");
        assert_eq!(t.evaluate(&w, 1).unwrap().len(), 1);
    }
}

#[test]
fn trim_preserves_evaluation() {
    let mut r = common::rng(0xF13);
    for t in functional_corpus() {
        let trimmed = t.trim();
        assert!(trimmed.is_trim());
        let syms = t.input_alphabet().len();
        for _ in 0..60 {
            let x = common::lasso(&mut r, syms, 4, 3);
            assert_eq!(t.evaluate(&x, 1).unwrap(), trimmed.evaluate(&x, 1).unwrap());
        }
    }
    assert_eq!(untrimmed_copy().trim().state_count(), 1);
}

/// The output must be producible letter by letter alongside the input:
/// after any number of steps some path has consumed exactly the input
/// prefix and emitted exactly the output prefix.
fn assert_letterwise(t: &SyncTransducer, x: &LassoWord, y: &LassoWord, depth: usize) {
    let rules: Vec<_> = t.letter_rules().collect();
    let mut cur: BTreeSet<usize> = BTreeSet::from([t.as_buchi().initial()]);
    for i in 0..depth {
        let mut next = BTreeSet::new();
        for &(p, a, o, q) in &rules {
            if cur.contains(&p) && a == x.letter(i) && o == y.letter(i) {
                next.insert(q);
            }
        }
        assert!(!next.is_empty(), "output desyncs from input at letter {i}");
        cur = next;
    }
}

#[test]
fn synchronous_outputs_track_inputs_letter_by_letter() {
    let mut r = common::rng(0xF14);
    let corpus = [identity(), step_map(), pi2_witness(&inf_a_dba(), 1).unwrap()];
    for t in &corpus {
        for _ in 0..60 {
            let x = common::lasso(&mut r, 2, 4, 3);
            let outs = t.as_buchi().evaluate(&x, 1).unwrap();
            let y = outs.first().expect("corpus maps are total");
            assert_letterwise(t, &x, y, 40);
        }
    }
}

#[test]
fn representation_of_the_input_does_not_matter() {
    let mut r = common::rng(0xF15);
    for t in functional_corpus() {
        let syms = t.input_alphabet().len();
        for _ in 0..40 {
            let x = common::lasso(&mut r, syms, 3, 3);
            // same point, clumsier spelling: rotate one cycle letter into
            // the prefix and double the cycle
            let mut prefix = x.prefix().to_vec();
            prefix.push(x.cycle()[0]);
            let mut cycle = x.cycle()[1..].to_vec();
            cycle.extend_from_slice(x.cycle());
            cycle.push(x.cycle()[0]);
            let x2 = LassoWord::new(prefix, cycle).unwrap();
            assert!(x.same_word(&x2));
            let a = t.evaluate(&x, 1).unwrap();
            let b = t.evaluate(&x2, 1).unwrap();
            assert_eq!(a.len(), b.len());
            if let (Some(ya), Some(yb)) = (a.first(), b.first()) {
                assert!(ya.same_word(yb));
            }
        }
    }
}
