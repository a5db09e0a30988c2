//! Isolated points of omega languages.
//!
//! A member x is isolated when some ball around x contains no other member,
//! i.e. some prefix of x has a singleton residual language. For a trim
//! deterministic automaton that is a property of the run: x is isolated
//! exactly when its run visits a state from which no two distinct words are
//! accepted. Both automaton kinds below compute that state set through a
//! self-product whose flag records that the two tracked words have already
//! split, then return the sub-automaton of runs that meet it.

use crate::graph;
use crate::muller::DetMuller;
use crate::nba::{Dba, Nba};
use crate::StateId;

/// Self-product graph over independent letter pairs. Node (r, s, f) is
/// encoded as (r * n + s) * 2 + f; the flag flips to 1 on any transition
/// reading two different letters and then sticks.
fn pair_graph(n: usize, delta: &[Vec<Option<StateId>>], symbols: usize) -> Vec<Vec<usize>> {
    let enc = |r: usize, s: usize, f: usize| (r * n + s) * 2 + f;
    let mut adj = vec![Vec::new(); n * n * 2];
    for r in 0..n {
        for s in 0..n {
            for f in 0..2 {
                let src = enc(r, s, f);
                for a in 0..symbols {
                    for b in 0..symbols {
                        if let (Some(nr), Some(ns)) = (delta[r][a], delta[s][b]) {
                            let nf = if a == b { f } else { 1 };
                            adj[src].push(enc(nr, ns, nf));
                        }
                    }
                }
                adj[src].sort_unstable();
                adj[src].dedup();
            }
        }
    }
    adj
}

/// States of a trim DBA from which at least two distinct words are accepted.
fn dba_two_words(a: &Nba) -> Vec<bool> {
    let n = a.state_count();
    let symbols = a.alphabet().len();
    let mut delta = vec![vec![None; symbols]; n];
    for &(p, sym, q) in a.transitions() {
        delta[p][sym] = Some(q);
    }
    let adj = pair_graph(n, &delta, symbols);
    let (_, members) = graph::sccs(&adj);
    // qualifying component: diverged flag, nontrivial, and both coordinates
    // pass through acceptance
    let mut target = vec![false; adj.len()];
    for ms in &members {
        let nontrivial = ms.len() > 1 || adj[ms[0]].contains(&ms[0]);
        if !nontrivial {
            continue;
        }
        let decode = |v: usize| ((v / 2) / n, (v / 2) % n, v % 2);
        let (_, _, f) = decode(ms[0]);
        if f == 0 {
            continue;
        }
        let first = ms.iter().any(|&v| a.is_accepting(decode(v).0));
        let second = ms.iter().any(|&v| a.is_accepting(decode(v).1));
        if first && second {
            for &v in ms {
                target[v] = true;
            }
        }
    }
    let rev = graph::reverse(&adj);
    let seeds: Vec<usize> = (0..adj.len()).filter(|&v| target[v]).collect();
    let reaches = graph::reachable(&rev, &seeds);
    (0..n).map(|q| reaches[(q * n + q) * 2]).collect()
}

/// States of a trim deterministic Muller automaton from which at least two
/// distinct words are accepted. For each ordered pair of tables the
/// self-product is restricted to that pair's rows and columns in the
/// diverged layer; a strongly connected component projecting onto both
/// tables exactly is itself a valid pair of infinity sets, so searching
/// components suffices.
fn muller_two_words(m: &DetMuller) -> Vec<bool> {
    let n = m.state_count();
    let symbols = m.alphabet().len();
    let mut delta = vec![vec![None; symbols]; n];
    for &(p, sym, q) in m.transitions() {
        delta[p][sym] = Some(q);
    }
    let adj = pair_graph(n, &delta, symbols);
    let decode = |v: usize| ((v / 2) / n, (v / 2) % n, v % 2);
    let mut target = vec![false; adj.len()];
    for t1 in m.tables() {
        for t2 in m.tables() {
            let allowed: Vec<bool> = (0..adj.len())
                .map(|v| {
                    let (r, s, f) = decode(v);
                    f == 1 && t1.contains(&r) && t2.contains(&s)
                })
                .collect();
            let restricted: Vec<Vec<usize>> = (0..adj.len())
                .map(|v| {
                    if !allowed[v] {
                        return Vec::new();
                    }
                    adj[v].iter().copied().filter(|&d| allowed[d]).collect()
                })
                .collect();
            let (_, members) = graph::sccs(&restricted);
            for ms in &members {
                if !allowed[ms[0]] {
                    continue;
                }
                let nontrivial = ms.len() > 1 || restricted[ms[0]].contains(&ms[0]);
                if !nontrivial {
                    continue;
                }
                let proj1: std::collections::BTreeSet<StateId> =
                    ms.iter().map(|&v| decode(v).0).collect();
                let proj2: std::collections::BTreeSet<StateId> =
                    ms.iter().map(|&v| decode(v).1).collect();
                if proj1 == *t1 && proj2 == *t2 {
                    for &v in ms {
                        target[v] = true;
                    }
                }
            }
        }
    }
    let rev = graph::reverse(&adj);
    let seeds: Vec<usize> = (0..adj.len()).filter(|&v| target[v]).collect();
    let reaches = graph::reachable(&rev, &seeds);
    (0..n).map(|q| reaches[(q * n + q) * 2]).collect()
}

impl Dba {
    /// Automaton of the isolated points of the language: the original
    /// automaton extended with a flag that records visiting a state with a
    /// singleton residual. Deterministic.
    pub fn isolated_points(&self) -> Nba {
        let t = self.trim();
        let a = t.as_nba();
        if a.is_empty_language() {
            return Nba::empty(a.alphabet().clone());
        }
        let two = dba_two_words(a);
        let n = a.state_count();
        // trim automaton: singleton residual = not two words
        let enc = |q: usize, f: usize| q * 2 + f;
        let seen = |q: usize, f: usize| if !two[q] { 1 } else { f };
        let mut transitions = Vec::new();
        for &(p, sym, q) in a.transitions() {
            for f in 0..2 {
                transitions.push((enc(p, f), sym, enc(q, seen(q, f))));
            }
        }
        let accepting: Vec<StateId> = (0..n).filter(|&q| a.is_accepting(q)).map(|q| enc(q, 1)).collect();
        Nba::new(
            a.alphabet().clone(),
            2 * n,
            enc(a.initial(), seen(a.initial(), 0)),
            accepting,
            transitions,
        )
        .expect("flag product is well formed")
        .trim()
    }

    pub fn has_isolated_point(&self) -> Option<crate::LassoWord> {
        self.isolated_points().nonempty_witness()
    }
}

impl DetMuller {
    /// Automaton of the isolated points of the language, as a Buchi
    /// automaton obtained from the flagged Muller product.
    pub fn isolated_points(&self) -> Nba {
        let t = self.trim();
        if t.tables().is_empty() {
            return Nba::empty(t.alphabet().clone());
        }
        let two = muller_two_words(&t);
        let n = t.state_count();
        let enc = |q: usize, f: usize| q * 2 + f;
        let seen = |q: usize, f: usize| if !two[q] { 1 } else { f };
        let mut transitions = Vec::new();
        for &(p, sym, q) in t.transitions() {
            for f in 0..2 {
                transitions.push((enc(p, f), sym, enc(q, seen(q, f))));
            }
        }
        let tables: Vec<Vec<StateId>> = t
            .tables()
            .iter()
            .map(|tab| tab.iter().map(|&q| enc(q, 1)).collect())
            .collect();
        let flagged = DetMuller::new(
            t.alphabet().clone(),
            2 * n,
            enc(t.initial(), seen(t.initial(), 0)),
            transitions,
            tables,
        )
        .expect("flag product is well formed")
        .trim();
        flagged.to_nba()
    }

    pub fn has_isolated_point(&self) -> Option<crate::LassoWord> {
        self.isolated_points().nonempty_witness()
    }
}
