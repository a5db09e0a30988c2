//! Realizing acceptors as continuity sets.
//!
//! [`pi2_witness`] turns a deterministic Buchi automaton into a total
//! letter-to-letter transducer that copies exactly the accepted words and is
//! continuous exactly there: every rejected input is rewritten, past the
//! point where acceptance failed, into one of two constant tails, and close
//! inputs of the opposite tail kind exist at every distance, so the map
//! jumps everywhere outside the accepted language. [`witness_on_domain`]
//! relativizes the construction to an arbitrary deterministic Muller domain,
//! which needs [`dense_partition`]: a split of a Muller language into two
//! disjoint halves that are each dense in the whole.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::muller::{induces_scc, scc_subsets, DetMuller};
use crate::nba::{Dba, Nba};
use crate::transducer::{BuchiTransducer, Rule, SyncTransducer};
use crate::{graph, Inclusion, Result, StateId, SymbolId};

/// Builds a total letter-to-letter transducer whose continuity set is
/// exactly the language of `a` and whose domain is every word.
///
/// Accepted inputs are copied verbatim. An input whose run survives but
/// stops visiting accepting states keeps its prefix up to the last
/// accepting visit and continues with a fresh output letter c. An input
/// whose run dies keeps its longest alive prefix and continues with
/// `marker` when `marker` recurs forever in the input, with c otherwise;
/// the two tail kinds are interleaved densely, which makes the map jump at
/// every such input.
///
/// `a` must be trim. On a single-letter alphabet the word space is one
/// point and every map is continuous, so the identity is returned.
pub fn pi2_witness(a: &Dba, marker: SymbolId) -> Result<SyncTransducer> {
    let alpha = a.alphabet().clone();
    alpha.check_symbol(marker)?;
    let (out, c) = alpha.with_fresh("c");
    if alpha.len() == 1 {
        let t = BuchiTransducer::new(alpha, out, 1, 0, [0], [Rule::new(0, [0], [0], 0)])?;
        return SyncTransducer::new(t);
    }
    if !a.is_trim() {
        return Err(Error::NotTrim);
    }
    let nba = a.as_nba();
    let n = nba.state_count();
    let fin = |q: StateId| nba.is_accepting(q);
    // second track for runs that will never see an accepting state again
    let id1 = |q: StateId| n + q;
    let (q1, q2, q3, q4, start) = (2 * n, 2 * n + 1, 2 * n + 2, 2 * n + 3, 2 * n + 4);
    let mut rules: Vec<Rule> = Vec::new();
    for &(p, x, q) in nba.transitions() {
        rules.push(Rule::new(p, [x], [x], q));
        if fin(p) && !fin(q) {
            // the copy may abandon the input only when leaving an accepting
            // visit; the abandon point is then forced to the last one
            rules.push(Rule::new(p, [x], [c], id1(q)));
        }
        if !fin(p) && !fin(q) {
            rules.push(Rule::new(id1(p), [x], [c], id1(q)));
        }
    }
    // runs that die: guess whether `marker` recurs forever in the rest of
    // the input and emit marker^w or c^w accordingly
    for p in 0..n {
        for x in 0..alpha.len() {
            if a.step(p, x).is_none() {
                rules.push(Rule::new(p, [x], [marker], q1));
                rules.push(Rule::new(p, [x], [c], q3));
            }
        }
    }
    for s in [q1, q2] {
        for x in 0..alpha.len() {
            let dst = if x == marker { q2 } else { q1 };
            rules.push(Rule::new(s, [x], [marker], dst));
        }
    }
    for x in 0..alpha.len() {
        rules.push(Rule::new(q3, [x], [c], q3));
        if x != marker {
            // q4 has no marker edge, so this branch accepts exactly the
            // tails where the marker stops
            rules.push(Rule::new(q3, [x], [c], q4));
            rules.push(Rule::new(q4, [x], [c], q4));
        }
    }
    // fresh initial copy, so the step-0 abandon below cannot be replayed
    // when the run revisits the initial state
    let dup: Vec<Rule> = rules
        .iter()
        .filter(|r| r.src == nba.initial())
        .map(|r| Rule { src: start, ..r.clone() })
        .collect();
    rules.extend(dup);
    if !fin(nba.initial()) {
        for &(p, x, q) in nba.transitions() {
            if p == nba.initial() && !fin(q) {
                // runs that never visit an accepting state abandon right away
                rules.push(Rule::new(start, [x], [c], id1(q)));
            }
        }
    }
    let accepting = (0..n).map(|q| if fin(q) { q } else { id1(q) }).chain([q2, q4]);
    let t = BuchiTransducer::new(alpha, out, 2 * n + 5, start, accepting, rules)?;
    Ok(SyncTransducer::new(t)?.trim())
}

/// Splits the language into two disjoint halves, each dense in the whole:
/// every finite prefix of an accepted word extends into both halves.
///
/// The input must be trim and its language free of isolated points; a word
/// that is eventually alone in its neighborhood could not be approached
/// from the half it does not belong to. Errors on an empty language.
pub fn dense_partition(m: &DetMuller) -> Result<(DetMuller, DetMuller)> {
    if m.is_empty_language() {
        return Err(Error::EmptyLanguage);
    }
    if !m.is_trim() {
        return Err(Error::NotTrim);
    }
    if let Some(x) = m.has_isolated_point() {
        return Err(Error::IsolatedPoint(x));
    }
    let (one, two) = dense_partition_product(m)?;
    Ok((one.trim(), two.trim()))
}

/// How one accessibility-maximal component gets split.
enum SplitCase {
    /// Some component state sits outside the table: count the parity of the
    /// visits to the least such state.
    Parity { trigger: StateId },
    /// The table fills its component: watch two edges out of one branching
    /// state and separate the runs whose trace over them eventually
    /// alternates strictly.
    Alternation { src: StateId, first: SymbolId, second: SymbolId },
}

struct Split {
    host: usize,
    table: BTreeSet<StateId>,
    case: SplitCase,
}

/// Monitor product shared by both halves of a dense partition.
///
/// State s of the input appears as s*3+v where v is a three-valued monitor:
/// for a parity split, the visit count so far (2 none, 1 odd, 0 even); for
/// an alternation split, the last watched edge (1 first, 0 second) with 2 as
/// the start and defect pulse. Only the accessibility-maximal components
/// hosting realizable tables are split; every run settling elsewhere never
/// crosses a watched edge, because maximal components have no way out that
/// still reaches a realizable table. Results are not trimmed, so callers may
/// still map product states back to input states by dividing by three.
fn dense_partition_product(m: &DetMuller) -> Result<(DetMuller, DetMuller)> {
    let n = m.state_count();
    let adj = m.plain_adj();
    let reach = graph::reachable(&adj, &[m.initial()]);
    let (scc_of, scc_members) = graph::sccs(&adj);
    let realizable: Vec<&BTreeSet<StateId>> = m
        .tables()
        .iter()
        .filter(|t| reach[*t.iter().next().unwrap()] && induces_scc(&adj, t))
        .collect();
    let mut hosts: Vec<usize> = realizable
        .iter()
        .map(|t| scc_of[*t.iter().next().unwrap()])
        .collect();
    hosts.sort_unstable();
    hosts.dedup();
    // a host is maximal when no other host is strictly reachable from it
    let mut splits: Vec<Split> = Vec::new();
    for &host in &hosts {
        let from = graph::reachable(&adj, &scc_members[host]);
        if hosts.iter().any(|&h| h != host && from[scc_members[h][0]]) {
            continue;
        }
        let table = realizable
            .iter()
            .filter(|t| scc_of[*t.iter().next().unwrap()] == host)
            .min()
            .expect("host was collected from a realizable table")
            .iter()
            .copied()
            .collect::<BTreeSet<StateId>>();
        let comp = &scc_members[host];
        let case = match comp.iter().find(|q| !table.contains(q)) {
            Some(&trigger) => SplitCase::Parity { trigger },
            None => {
                // the component equals the table; a branching state exists,
                // else continuations from here would be forced and the word
                // following them would be an isolated point
                let branch = comp
                    .iter()
                    .map(|&q| {
                        let syms: Vec<SymbolId> = m
                            .transitions()
                            .iter()
                            .filter(|&&(p, _, _)| p == q)
                            .map(|&(_, a, _)| a)
                            .collect();
                        (q, syms)
                    })
                    .find(|(_, syms)| syms.len() >= 2)
                    .expect("a fully accepting component with single continuations is an isolated point");
                SplitCase::Alternation {
                    src: branch.0,
                    first: branch.1[0],
                    second: branch.1[1],
                }
            }
        };
        splits.push(Split { host, table, case });
    }
    // the initial state counts as a visit when it is itself a parity trigger
    let init_mon = splits
        .iter()
        .find_map(|s| match s.case {
            SplitCase::Parity { trigger } if trigger == m.initial() => Some(1),
            _ => None,
        })
        .unwrap_or(2);
    let step_mon = |p: StateId, x: SymbolId, q: StateId, mon: usize| -> usize {
        for s in &splits {
            match s.case {
                SplitCase::Parity { trigger } => {
                    if q == trigger {
                        return match mon {
                            2 => 1,
                            1 => 0,
                            _ => 1,
                        };
                    }
                }
                SplitCase::Alternation { src, first, second } => {
                    if p == src && x == first {
                        return if mon == 1 { 2 } else { 1 };
                    }
                    if p == src && x == second {
                        return if mon == 0 { 2 } else { 0 };
                    }
                }
            }
        }
        mon
    };
    let mut ptrans: Vec<(StateId, SymbolId, StateId)> = Vec::new();
    for &(p, x, q) in m.transitions() {
        for mon in 0..3 {
            ptrans.push((p * 3 + mon, x, q * 3 + step_mon(p, x, q, mon)));
        }
    }
    let pinit = m.initial() * 3 + init_mon;
    let mut padj: Vec<Vec<usize>> = vec![Vec::new(); n * 3];
    for &(p, _, q) in &ptrans {
        padj[p].push(q);
    }
    let preach = graph::reachable(&padj, &[pinit]);
    let realizable_in_product =
        |s: &BTreeSet<StateId>| preach[*s.iter().next().unwrap()] && induces_scc(&padj, s);
    let embed = |t: &BTreeSet<StateId>, mon: usize| -> BTreeSet<StateId> {
        t.iter().map(|&q| q * 3 + mon).collect()
    };
    // all product tables over `t` whose state projection is exactly `t`
    let layerings = |t: &BTreeSet<StateId>| -> Result<Vec<BTreeSet<StateId>>> {
        if t.len() > 7 {
            return Err(Error::TooLarge(format!(
                "enumerating monitor layerings over a split table of {} states",
                t.len()
            )));
        }
        let qs: Vec<StateId> = t.iter().copied().collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << (3 * qs.len())) {
            let mut s = BTreeSet::new();
            let mut covered = 0;
            for (i, &q) in qs.iter().enumerate() {
                let mut any = false;
                for mon in 0..3 {
                    if mask & (1 << (3 * i + mon)) != 0 {
                        s.insert(q * 3 + mon);
                        any = true;
                    }
                }
                covered += any as usize;
            }
            if covered == qs.len() && realizable_in_product(&s) {
                out.push(s);
            }
        }
        Ok(out)
    };
    let mut side1: Vec<BTreeSet<StateId>> = Vec::new();
    let mut side2: Vec<BTreeSet<StateId>> = Vec::new();
    for t in &realizable {
        let host = scc_of[*t.iter().next().unwrap()];
        match splits.iter().find(|s| s.host == host) {
            None => {
                // settling here never crosses a watched edge, so the
                // monitor stays at its initial value
                side1.push(embed(t, init_mon));
            }
            Some(split) if split.table == **t => match split.case {
                SplitCase::Parity { .. } => {
                    // even visit counts, including none at all, against odd
                    for mon in [0, 2] {
                        let s = embed(t, mon);
                        if realizable_in_product(&s) {
                            side1.push(s);
                        }
                    }
                    side2.push(embed(t, 1));
                }
                SplitCase::Alternation { .. } => {
                    for s in layerings(t)? {
                        let mons: BTreeSet<usize> = s.iter().map(|&v| v % 3).collect();
                        if !mons.contains(&2) && mons.len() == 2 {
                            side1.push(s);
                        } else {
                            side2.push(s);
                        }
                    }
                }
            },
            Some(_) => {
                // another table sharing a split component watches the
                // monitor run by; admit every layering it can settle into
                side1.extend(layerings(t)?);
            }
        }
    }
    let mk = |tables: Vec<BTreeSet<StateId>>| {
        DetMuller::new(
            m.alphabet().clone(),
            n * 3,
            pinit,
            ptrans.iter().copied(),
            tables.into_iter().map(|t| t.into_iter().collect::<Vec<_>>()),
        )
    };
    Ok((mk(side1)?, mk(side2)?))
}

/// Rotation Buchi-ization of a Muller condition over a labeled graph,
/// emitted as transducer rules at `offset`: a non-accepting base copy of the
/// graph (vertex v at offset+v) from which a run may jump into a per-table
/// component that rotates through the table's members, plus the jump edges.
/// `out` chooses the output letter of an edge. Returns the total state count
/// of the block.
fn muller_rules(
    states: usize,
    transitions: &[(StateId, SymbolId, StateId)],
    tables: &[BTreeSet<StateId>],
    out: &dyn Fn(StateId, SymbolId, StateId) -> SymbolId,
    offset: usize,
    rules: &mut Vec<Rule>,
    accepting: &mut Vec<StateId>,
) -> usize {
    for &(p, x, q) in transitions {
        rules.push(Rule::new(offset + p, [x], [out(p, x, q)], offset + q));
    }
    let mut next = states;
    for t in tables {
        let members: Vec<StateId> = t.iter().copied().collect();
        let m = members.len();
        let base = next;
        next += m * (m + 1);
        // component state (q, j) tracks rotation progress; j == m means a
        // full rotation just completed
        let pos = |q: StateId| members.iter().position(|&s| s == q).unwrap();
        let idx = |q: StateId, j: usize| offset + base + pos(q) * (m + 1) + j;
        let tick = |q: StateId, j: usize| {
            let j_eff = if j == m { 0 } else { j };
            if q == members[j_eff] {
                j_eff + 1
            } else {
                j_eff
            }
        };
        for &(p, x, q) in transitions {
            if t.contains(&q) {
                let o = out(p, x, q);
                rules.push(Rule::new(offset + p, [x], [o], idx(q, tick(q, 0))));
                if t.contains(&p) {
                    for j in 0..=m {
                        rules.push(Rule::new(idx(p, j), [x], [o], idx(q, tick(q, j))));
                    }
                }
            }
        }
        for &q in &members {
            accepting.push(idx(q, m));
        }
    }
    next
}

/// Builds a letter-to-letter transducer whose domain is exactly the Muller
/// language and whose continuity set is exactly the part of that domain the
/// Buchi automaton accepts.
///
/// The accepted part X is the intersection of the two languages. It must
/// contain every isolated point of the domain, because any map is
/// continuous at an isolated point; violations are reported with the
/// offending point. Inputs in X are copied. Inputs of the domain whose pair
/// run stays forever inside the live part of the product but stops visiting
/// accepting states keep their prefix up to the last accepting visit and
/// continue with a fresh letter c. Inputs of the domain that leave the live
/// part keep the prefix read up to that step and continue with a constant
/// letter chosen by a dense split of this dead region, so that both tails
/// appear arbitrarily close to each other.
pub fn witness_on_domain(d: &DetMuller, xp: &Dba) -> Result<SyncTransducer> {
    d.alphabet().check_same(xp.alphabet())?;
    let d = d.trim();
    let xp = xp.trim();
    let alpha = d.alphabet().clone();
    let (out_alpha, c) = alpha.with_fresh("c");
    let escape = 0;
    let xnba = xp.as_nba().intersect(&d.to_nba())?;
    if let Inclusion::Counterexample(w) = d.isolated_points().included_in(&xnba)? {
        return Err(Error::IsolatedPointNotCovered(w));
    }
    // deterministic pair product of the two automata
    let nx = xp.as_nba().state_count();
    let nd = d.state_count();
    let np = nx * nd;
    let pid = |x: StateId, dq: StateId| x * nd + dq;
    let mut ptrans: Vec<(StateId, SymbolId, StateId)> = Vec::new();
    for x in 0..nx {
        for dq in 0..nd {
            for a in 0..alpha.len() {
                if let (Some(x2), Some(d2)) = (xp.step(x, a), d.step(dq, a)) {
                    ptrans.push((pid(x, dq), a, pid(x2, d2)));
                }
            }
        }
    }
    let mut padj: Vec<Vec<usize>> = vec![Vec::new(); np];
    for &(p, _, q) in &ptrans {
        padj[p].push(q);
    }
    let pinit = pid(xp.as_nba().initial(), d.initial());
    let preach = graph::reachable(&padj, &[pinit]);
    let fhat: Vec<bool> = (0..np).map(|s| xp.as_nba().is_accepting(s / nd)).collect();
    let dtables: BTreeSet<&BTreeSet<StateId>> = d.tables().iter().collect();
    let proj_d_accepted = |s: &BTreeSet<StateId>| {
        dtables.contains(&s.iter().map(|&v| v % nd).collect::<BTreeSet<_>>())
    };
    // infinity sets of pair runs accepted by both sides
    let xtables: Vec<BTreeSet<StateId>> = scc_subsets(&padj, Some(preach.as_slice()))?
        .into_iter()
        .filter(|s| s.iter().any(|&v| fhat[v]) && proj_d_accepted(s))
        .collect();
    // states alive for X; the prefixes of X are exactly the words whose
    // pair run is defined and ends here
    let rev = graph::reverse(&padj);
    let seeds: Vec<usize> = xtables
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ulive = graph::reachable(&rev, &seeds);
    let in_u: Vec<bool> = (0..np).map(|s| preach[s] && ulive[s]).collect();
    let utrans: Vec<(StateId, SymbolId, StateId)> = ptrans
        .iter()
        .copied()
        .filter(|&(p, _, q)| in_u[p] && in_u[q])
        .collect();

    let mut rules: Vec<Rule> = Vec::new();
    let mut accepting: Vec<StateId> = Vec::new();
    let mut branch_inits: Vec<StateId> = Vec::new();

    // branch 1: copy the accepted part verbatim
    let b1 = 0;
    let b1_len = muller_rules(np, &utrans, &xtables, &|_, a, _| a, b1, &mut rules, &mut accepting);
    if in_u[pinit] {
        branch_inits.push(b1 + pinit);
    }

    // branch 2: inputs that stay alive for X forever but stop visiting
    // accepting states; copy until the last visit, then c
    let b2c = b1 + b1_len;
    let b2t = b2c + np;
    let t1trans: Vec<(StateId, SymbolId, StateId)> = utrans
        .iter()
        .copied()
        .filter(|&(p, _, q)| !fhat[p] && !fhat[q])
        .collect();
    let mut t1adj: Vec<Vec<usize>> = vec![Vec::new(); np];
    for &(p, _, q) in &t1trans {
        t1adj[p].push(q);
    }
    // infinity sets with no accepting visit whose domain part is accepted;
    // reachability is not required here because runs enter by switching
    let t1tables: Vec<BTreeSet<StateId>> = scc_subsets(&t1adj, None)?
        .into_iter()
        .filter(|s| proj_d_accepted(s))
        .collect();
    for &(p, x, q) in &utrans {
        rules.push(Rule::new(b2c + p, [x], [x], b2c + q));
        if fhat[p] && !fhat[q] {
            rules.push(Rule::new(b2c + p, [x], [c], b2t + q));
        }
    }
    let b2t_len = muller_rules(np, &t1trans, &t1tables, &|_, _, _| c, b2t, &mut rules, &mut accepting);
    if in_u[pinit] {
        branch_inits.push(b2c + pinit);
    }

    // branches 3 and 4: the rest of the domain, split densely in two. The
    // region automaton follows the pair while X is still reachable and
    // drops to the domain automaton alone at the first step that leaves
    // that part; its language is exactly the domain words outside the
    // topological closure of X.
    let ulist: Vec<usize> = (0..np).filter(|&s| in_u[s]).collect();
    let nu = ulist.len();
    let mut uidx = vec![usize::MAX; np];
    for (i, &s) in ulist.iter().enumerate() {
        uidx[s] = i;
    }
    let mut ztrans: Vec<(StateId, SymbolId, StateId)> = Vec::new();
    for (i, &s) in ulist.iter().enumerate() {
        let (x, dq) = (s / nd, s % nd);
        for a in 0..alpha.len() {
            let Some(d2) = d.step(dq, a) else { continue };
            match xp.step(x, a).map(|x2| pid(x2, d2)) {
                Some(t) if in_u[t] => ztrans.push((i, a, uidx[t])),
                _ => ztrans.push((i, a, nu + d2)),
            }
        }
    }
    for &(p, a, q) in d.transitions() {
        ztrans.push((nu + p, a, nu + q));
    }
    let ztables: Vec<Vec<StateId>> = d
        .tables()
        .iter()
        .map(|t| t.iter().map(|&q| nu + q).collect())
        .collect();
    let zinit = if in_u[pinit] { uidx[pinit] } else { nu + d.initial() };
    let zm = DetMuller::new(alpha.clone(), nu + nd, zinit, ztrans, ztables)?;
    let (z1, z2) = dense_partition_product(&zm)?;
    // product state v sits over region state v/3, which is in the pair part
    // exactly when v/3 < nu; edges entering the domain-only part output the
    // branch's constant letter
    let zout = |esc: SymbolId| move |_: StateId, a: SymbolId, q: StateId| -> SymbolId {
        if q / 3 < nu {
            a
        } else {
            esc
        }
    };
    let nz3 = (nu + nd) * 3;
    let b3 = b2t + b2t_len;
    let b3_len = muller_rules(nz3, z1.transitions(), z1.tables(), &zout(escape), b3, &mut rules, &mut accepting);
    branch_inits.push(b3 + z1.initial());
    let b4 = b3 + b3_len;
    let b4_len = muller_rules(nz3, z2.transitions(), z2.tables(), &zout(c), b4, &mut rules, &mut accepting);
    branch_inits.push(b4 + z2.initial());

    // fresh global initial carrying every branch initial's moves
    let start = b4 + b4_len;
    let mut extra: Vec<Rule> = Vec::new();
    for r in &rules {
        if branch_inits.contains(&r.src) {
            extra.push(Rule { src: start, ..r.clone() });
        }
    }
    if in_u[pinit] && !fhat[pinit] {
        // inputs that never visit an accepting state switch at step 0
        for &(p, x, q) in &utrans {
            if p == pinit && !fhat[q] {
                extra.push(Rule::new(start, [x], [c], b2t + q));
            }
        }
    }
    rules.extend(extra);
    let t = BuchiTransducer::new(alpha, out_alpha, start + 1, start, accepting, rules)?;
    Ok(SyncTransducer::new(t)?.trim())
}

/// Extends a set to the whole space without changing its part inside the
/// domain: the union with the domain's complement. Intersecting the result
/// back with the domain gives the original set. Errors when the set is not
/// contained in the domain.
pub fn globalize_pi2(x: &Nba, d: &Nba) -> Result<Nba> {
    if let Inclusion::Counterexample(w) = x.included_in(d)? {
        return Err(Error::NotIncluded(w));
    }
    x.union(&d.complement()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complement::Equivalence;
    use crate::prefix::is_dense_in;
    use crate::transducer::Functionality;
    use crate::{Alphabet, Divergence, LassoWord};

    fn ab() -> Alphabet {
        Alphabet::latin(2).unwrap()
    }

    fn w(p: &[usize], c: &[usize]) -> LassoWord {
        LassoWord::new(p.to_vec(), c.to_vec()).unwrap()
    }

    /// accepts the words with infinitely many a
    fn inf_a_dba() -> Dba {
        Dba::new(
            Nba::new(
                ab(),
                2,
                0,
                [1],
                [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn image(t: &SyncTransducer, x: &LassoWord) -> LassoWord {
        let mut outs = t.as_buchi().evaluate(x, 1).unwrap();
        assert_eq!(outs.len(), 1, "expected exactly one output for {:?}", x);
        outs.pop().unwrap()
    }

    fn assert_word(actual: &LassoWord, expected: &LassoWord) {
        assert_eq!(
            actual.divergence(expected),
            Divergence::Infinite,
            "{:?} differs from {:?}",
            actual,
            expected
        );
    }

    #[test]
    fn witness_round_trip() {
        let a = inf_a_dba();
        let t = pi2_witness(&a, 1).unwrap();
        assert_eq!(t.functionality(), Functionality::Functional);
        let dom = t.as_buchi().dom();
        assert_eq!(
            dom.lang_equiv(&Nba::universal(ab())).unwrap(),
            Equivalence::Equivalent
        );
        let cont = t.continuity_set().unwrap();
        assert_eq!(cont.lang_equiv(a.as_nba()).unwrap(), Equivalence::Equivalent);
    }

    #[test]
    fn witness_point_values() {
        let t = pi2_witness(&inf_a_dba(), 1).unwrap();
        // member of the language: copied
        assert_word(&image(&t, &w(&[], &[0, 1])), &w(&[], &[0, 1]));
        // alive but only two accepting visits: prefix kept up to the last
        assert_word(&image(&t, &w(&[0, 0], &[1])), &w(&[0, 0], &[2]));
        // never any accepting visit: rewritten from the start
        assert_word(&image(&t, &w(&[], &[1])), &w(&[], &[2]));
    }

    #[test]
    fn witness_empty_language() {
        let a = Dba::new(Nba::empty(ab())).unwrap();
        let t = pi2_witness(&a, 1).unwrap();
        assert_eq!(t.functionality(), Functionality::Functional);
        assert_eq!(
            t.as_buchi().dom().lang_equiv(&Nba::universal(ab())).unwrap(),
            Equivalence::Equivalent
        );
        assert!(t.continuity_set().unwrap().is_empty_language());
        // every run dies at step 0; the two constant tails pick the branch
        assert_word(&image(&t, &w(&[], &[0])), &w(&[], &[2]));
        assert_word(&image(&t, &w(&[], &[1])), &w(&[], &[1]));
        assert_word(&image(&t, &w(&[0], &[0, 1])), &w(&[], &[1]));
    }

    #[test]
    fn witness_universal_language() {
        let a = Dba::new(Nba::universal(ab())).unwrap();
        let t = pi2_witness(&a, 1).unwrap();
        for x in [w(&[], &[0]), w(&[1, 1], &[0, 1]), w(&[], &[1])] {
            assert_word(&image(&t, &x), &x);
        }
        assert_eq!(
            t.continuity_set().unwrap().lang_equiv(&Nba::universal(ab())).unwrap(),
            Equivalence::Equivalent
        );
    }

    #[test]
    fn witness_death_branches() {
        // accepts only a^w; everything else dies at the first b
        let a = Dba::new(Nba::new(ab(), 1, 0, [0], [(0, 0, 0)]).unwrap()).unwrap();
        let t = pi2_witness(&a, 1).unwrap();
        assert_eq!(t.functionality(), Functionality::Functional);
        assert_eq!(
            t.as_buchi().dom().lang_equiv(&Nba::universal(ab())).unwrap(),
            Equivalence::Equivalent
        );
        assert_eq!(
            t.continuity_set().unwrap().lang_equiv(a.as_nba()).unwrap(),
            Equivalence::Equivalent
        );
        // dies at position 1; the rest has markers forever
        assert_word(&image(&t, &w(&[0], &[1])), &w(&[0], &[1]));
        // dies at position 1; the rest is marker-free
        assert_word(&image(&t, &w(&[0, 1], &[0])), &w(&[0], &[2]));
        assert_word(&image(&t, &w(&[], &[0])), &w(&[], &[0]));
    }

    #[test]
    fn witness_single_letter_alphabet() {
        let one = Alphabet::latin(1).unwrap();
        let a = Dba::new(Nba::universal(one.clone())).unwrap();
        let t = pi2_witness(&a, 0).unwrap();
        let x = LassoWord::new(vec![], vec![0]).unwrap();
        assert_word(&image(&t, &x), &x);
    }

    #[test]
    fn witness_rejects_bad_inputs() {
        let a = inf_a_dba();
        assert!(matches!(pi2_witness(&a, 5), Err(Error::SymbolOutOfRange { .. })));
        // reachable state 1 is dead: no accepting cycle from it
        let loose = Dba::new(
            Nba::new(ab(), 2, 0, [0], [(0, 0, 0), (0, 1, 1)]).unwrap(),
        )
        .unwrap();
        assert!(matches!(pi2_witness(&loose, 1), Err(Error::NotTrim)));
    }

    /// one state, both letters loop, universal table
    fn universal_muller() -> DetMuller {
        DetMuller::new(ab(), 1, 0, [(0, 0, 0), (0, 1, 0)], [[0usize]]).unwrap()
    }

    fn assert_dense_split(m: &DetMuller, one: &DetMuller, two: &DetMuller) {
        let m_nba = m.to_nba();
        let n1 = one.to_nba();
        let n2 = two.to_nba();
        assert!(n1.intersect(&n2).unwrap().is_empty_language());
        assert_eq!(
            n1.union(&n2).unwrap().lang_equiv(&m_nba).unwrap(),
            Equivalence::Equivalent
        );
        assert!(is_dense_in(&n1, &m_nba).unwrap());
        assert!(is_dense_in(&n2, &m_nba).unwrap());
    }

    #[test]
    fn partition_of_universal() {
        let m = universal_muller();
        let (one, two) = dense_partition(&m).unwrap();
        assert_dense_split(&m, &one, &two);
        // the watched edges alternate strictly along (ab)^w
        assert!(one.contains(&w(&[], &[0, 1])).unwrap());
        assert!(one.contains(&w(&[1, 1], &[0, 1])).unwrap());
        // a^w repeats the first edge forever
        assert!(two.contains(&w(&[], &[0])).unwrap());
    }

    /// accepts the words that are eventually only a; state 0 holds after
    /// every a, state 1 after every b
    fn eventually_a() -> DetMuller {
        DetMuller::new(
            ab(),
            2,
            0,
            [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)],
            [[0usize]],
        )
        .unwrap()
    }

    #[test]
    fn partition_by_parity() {
        let m = eventually_a();
        let (one, two) = dense_partition(&m).unwrap();
        assert_dense_split(&m, &one, &two);
        // the split counts visits to the non-accepted state, one per b
        assert!(one.contains(&w(&[], &[0])).unwrap());
        assert!(two.contains(&w(&[1], &[0])).unwrap());
        assert!(one.contains(&w(&[1, 1], &[0])).unwrap());
        assert!(two.contains(&w(&[1, 0, 1, 0, 1], &[0])).unwrap());
    }

    #[test]
    fn partition_lifts_inner_table() {
        // two tables; {0} can still reach {1}, so only {1} is split and
        // a^w rides along with the first half
        let m = DetMuller::new(
            ab(),
            2,
            0,
            [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
            [[0usize], [1usize]],
        )
        .unwrap();
        let (one, two) = dense_partition(&m).unwrap();
        assert_dense_split(&m, &one, &two);
        assert!(one.contains(&w(&[], &[0])).unwrap());
        assert!(one.contains(&w(&[1], &[0, 1])).unwrap());
        assert!(two.contains(&w(&[1], &[0])).unwrap());
    }

    #[test]
    fn partition_rejects_bad_inputs() {
        assert!(matches!(
            dense_partition(&DetMuller::empty(ab())),
            Err(Error::EmptyLanguage)
        ));
        let loose = DetMuller::new(
            ab(),
            2,
            0,
            [(0, 0, 0), (0, 1, 1)],
            [[0usize]],
        )
        .unwrap();
        assert!(matches!(dense_partition(&loose), Err(Error::NotTrim)));
        let lonely = DetMuller::new(ab(), 1, 0, [(0, 0, 0)], [[0usize]]).unwrap();
        match dense_partition(&lonely) {
            Err(Error::IsolatedPoint(x)) => assert_word(&x, &w(&[], &[0])),
            other => panic!("expected an isolated point, got {:?}", other),
        }
    }

    #[test]
    fn domain_witness_on_full_space() {
        let t = witness_on_domain(&universal_muller(), &inf_a_dba()).unwrap();
        assert_eq!(t.functionality(), Functionality::Functional);
        assert_eq!(
            t.as_buchi().dom().lang_equiv(&Nba::universal(ab())).unwrap(),
            Equivalence::Equivalent
        );
        let cont = t.continuity_set().unwrap();
        assert_eq!(
            cont.lang_equiv(inf_a_dba().as_nba()).unwrap(),
            Equivalence::Equivalent
        );
        assert_word(&image(&t, &w(&[], &[0, 1])), &w(&[], &[0, 1]));
        // stays alive for X forever, last accepting visit after aa
        assert_word(&image(&t, &w(&[0, 0], &[1])), &w(&[0, 0], &[2]));
    }

    #[test]
    fn domain_witness_requires_isolated_points() {
        // domain b{a,b}^w plus the isolated point a^w
        let d = DetMuller::new(
            ab(),
            3,
            0,
            [(0, 0, 1), (0, 1, 2), (1, 0, 1), (2, 0, 2), (2, 1, 2)],
            [[1usize], [2usize]],
        )
        .unwrap();
        // first letter b: misses a^w
        let xp = Dba::new(
            Nba::new(ab(), 2, 0, [1], [(0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap(),
        )
        .unwrap();
        match witness_on_domain(&d, &xp) {
            Err(Error::IsolatedPointNotCovered(x)) => assert_word(&x, &w(&[], &[0])),
            other => panic!("expected the isolated point, got {:?}", other),
        }
        // accepting everything on the domain covers the isolated point
        let all = Dba::new(Nba::universal(ab())).unwrap();
        let t = witness_on_domain(&d, &all).unwrap();
        assert_eq!(
            t.continuity_set().unwrap().lang_equiv(&d.to_nba()).unwrap(),
            Equivalence::Equivalent
        );
    }

    #[test]
    fn domain_witness_identity_on_clopen_set() {
        // a{a,b}^w both as domain and as accepted part
        let d = DetMuller::new(
            ab(),
            2,
            0,
            [(0, 0, 1), (1, 0, 1), (1, 1, 1)],
            [[1usize]],
        )
        .unwrap();
        let xp = Dba::new(
            Nba::new(ab(), 2, 0, [1], [(0, 0, 1), (1, 0, 1), (1, 1, 1)]).unwrap(),
        )
        .unwrap();
        let t = witness_on_domain(&d, &xp).unwrap();
        assert_eq!(t.functionality(), Functionality::Functional);
        assert_eq!(
            t.as_buchi().dom().lang_equiv(&d.to_nba()).unwrap(),
            Equivalence::Equivalent
        );
        assert_eq!(
            t.continuity_set().unwrap().lang_equiv(&d.to_nba()).unwrap(),
            Equivalence::Equivalent
        );
        assert_word(&image(&t, &w(&[0, 1], &[0])), &w(&[0, 1], &[0]));
        assert_word(&image(&t, &w(&[0], &[1])), &w(&[0], &[1]));
    }

    #[test]
    fn domain_witness_splits_dead_region() {
        // domain is everything, accepted part only a^w; the whole rest of
        // the space is rewritten past its first b
        let xp = Dba::new(Nba::new(ab(), 1, 0, [0], [(0, 0, 0)]).unwrap()).unwrap();
        let t = witness_on_domain(&universal_muller(), &xp).unwrap();
        assert_eq!(t.functionality(), Functionality::Functional);
        assert_eq!(
            t.as_buchi().dom().lang_equiv(&Nba::universal(ab())).unwrap(),
            Equivalence::Equivalent
        );
        assert_eq!(
            t.continuity_set().unwrap().lang_equiv(xp.as_nba()).unwrap(),
            Equivalence::Equivalent
        );
        assert_word(&image(&t, &w(&[], &[0])), &w(&[], &[0]));
        // the region tails keep the alive prefix and use the first letter
        // against the fresh one
        let out = image(&t, &w(&[0, 0], &[1]));
        assert!(
            out.divergence(&w(&[0, 0], &[1])) == Divergence::Infinite
                || out.divergence(&w(&[0, 0], &[2])) == Divergence::Infinite,
            "unexpected image {:?}",
            out
        );
    }

    #[test]
    fn globalize_preserves_trace() {
        let x = inf_a_dba().as_nba().clone();
        let u = Nba::universal(ab());
        // equal set and domain
        let g = globalize_pi2(&x, &x).unwrap();
        assert_eq!(
            g.intersect(&x).unwrap().lang_equiv(&x).unwrap(),
            Equivalence::Equivalent
        );
        // empty set: the result is the domain's complement
        let e = Nba::empty(ab());
        let g = globalize_pi2(&e, &x).unwrap();
        assert!(g.intersect(&x).unwrap().is_empty_language());
        assert_eq!(
            g.lang_equiv(&x.complement().unwrap()).unwrap(),
            Equivalence::Equivalent
        );
        // proper subset of a proper domain
        let first_a = Nba::new(ab(), 2, 0, [1], [(0, 0, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let xf = x.intersect(&first_a).unwrap();
        let g = globalize_pi2(&xf, &first_a).unwrap();
        assert_eq!(
            g.intersect(&first_a).unwrap().lang_equiv(&xf).unwrap(),
            Equivalence::Equivalent
        );
        match globalize_pi2(&u, &x) {
            Err(Error::NotIncluded(cex)) => {
                assert!(!x.contains(&cex).unwrap());
            }
            other => panic!("expected an inclusion failure, got {:?}", other),
        }
    }
}
