//! Size reduction by forward bisimulation quotient. Bisimilar states accept
//! the same infinite trees, so merging them preserves the Buchi language;
//! the constructions in this crate use it to tame products and complements.

use crate::nba::Nba;
use std::collections::BTreeMap;

/// Coarsest partition refining {accepting, non-accepting} such that states
/// in a block have the same successor blocks per symbol; returns the
/// quotient automaton. Lineage is inherited from the input.
pub(crate) fn quotient(a: &Nba) -> Nba {
    let n = a.state_count();
    let delta = a.delta();
    let mut block: Vec<usize> = (0..n).map(|q| a.is_accepting(q) as usize).collect();
    loop {
        // signature: own block plus successor blocks per symbol
        let mut sig_ids: BTreeMap<(usize, Vec<Vec<usize>>), usize> = BTreeMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let succ: Vec<Vec<usize>> = delta[q]
                .iter()
                .map(|row| {
                    let mut s: Vec<usize> = row.iter().map(|&d| block[d]).collect();
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            let key = (block[q], succ);
            let id = sig_ids.len();
            next[q] = *sig_ids.entry(key).or_insert(id);
        }
        if next == block {
            break;
        }
        block = next;
    }
    let count = block.iter().max().map_or(0, |&b| b + 1);
    let transitions: Vec<(usize, usize, usize)> = a
        .transitions()
        .iter()
        .map(|&(p, sym, q)| (block[p], sym, block[q]))
        .collect();
    let accepting: Vec<usize> = (0..n).filter(|&q| a.is_accepting(q)).map(|q| block[q]).collect();
    let mut out = Nba::new(
        a.alphabet().clone(),
        count,
        block[a.initial()],
        accepting,
        transitions,
    )
    .expect("quotient preserves validity");
    out.lineage = a.lineage.clone();
    out
}
