//! Seeded random generators shared by the integration suites. Every suite
//! fixes its own seeds so failures replay exactly.
#![allow(dead_code)]

use omega_core::{Alphabet, Dba, DetMuller, LassoWord, Nba};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ab() -> Alphabet {
    Alphabet::latin(2).unwrap()
}

/// Random lasso over symbol ids 0..syms.
pub fn lasso(r: &mut ChaCha8Rng, syms: usize, max_prefix: usize, max_cycle: usize) -> LassoWord {
    let plen = r.gen_range(0..=max_prefix);
    let clen = r.gen_range(1..=max_cycle);
    let prefix = (0..plen).map(|_| r.gen_range(0..syms)).collect();
    let cycle = (0..clen).map(|_| r.gen_range(0..syms)).collect();
    LassoWord::new(prefix, cycle).unwrap()
}

/// Random nondeterministic automaton; may be incomplete, untrimmed or empty.
pub fn nba(r: &mut ChaCha8Rng, syms: usize, max_states: usize) -> Nba {
    let n = r.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for q in 0..n {
        for s in 0..syms {
            for _ in 0..r.gen_range(0..=2u32) {
                transitions.push((q, s, r.gen_range(0..n)));
            }
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
    Nba::new(Alphabet::latin(syms).unwrap(), n, 0, accepting, transitions).unwrap()
}

/// Random deterministic automaton, possibly partial.
pub fn dba(r: &mut ChaCha8Rng, syms: usize, max_states: usize) -> Dba {
    let n = r.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for q in 0..n {
        for s in 0..syms {
            if r.gen_bool(0.85) {
                transitions.push((q, s, r.gen_range(0..n)));
            }
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
    Dba::new(Nba::new(Alphabet::latin(syms).unwrap(), n, 0, accepting, transitions).unwrap())
        .unwrap()
}

/// Random deterministic Muller automaton with 1..=3 non-empty tables.
pub fn muller(r: &mut ChaCha8Rng, syms: usize, max_states: usize) -> DetMuller {
    let n = r.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for q in 0..n {
        for s in 0..syms {
            if r.gen_bool(0.9) {
                transitions.push((q, s, r.gen_range(0..n)));
            }
        }
    }
    let mut tables: Vec<Vec<usize>> = Vec::new();
    for _ in 0..r.gen_range(1..=3u32) {
        let t: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        if !t.is_empty() {
            tables.push(t);
        }
    }
    DetMuller::new(Alphabet::latin(syms).unwrap(), n, 0, transitions, tables).unwrap()
}
