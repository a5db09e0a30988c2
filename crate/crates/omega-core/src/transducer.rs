//! Büchi transducers: nondeterministic rewriters of infinite words.
//!
//! A transducer runs over an input word, each transition consuming a finite
//! (possibly empty) input chunk and emitting a finite (possibly empty)
//! output chunk. A computation is successful when it visits acceptance
//! infinitely often; the realized relation only keeps pairs where both the
//! consumed input and the emitted output are infinite, so accepting loops
//! that starve one of the tapes never count.

use crate::nba::{self, Nba};
use crate::{graph, Alphabet, Error, LassoWord, Result, StateId, SymbolId};
use std::collections::{BTreeSet, VecDeque};

/// One transition: consume `input`, emit `output`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub src: StateId,
    pub input: Vec<SymbolId>,
    pub output: Vec<SymbolId>,
    pub dst: StateId,
}

impl Rule {
    pub fn new(
        src: StateId,
        input: impl Into<Vec<SymbolId>>,
        output: impl Into<Vec<SymbolId>>,
        dst: StateId,
    ) -> Rule {
        Rule {
            src,
            input: input.into(),
            output: output.into(),
            dst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiTransducer {
    input: Alphabet,
    output: Alphabet,
    states: usize,
    initial: StateId,
    accepting: Vec<bool>,
    rules: Vec<Rule>,
}

/// Which tape a projection keeps.
enum Tape {
    Input,
    Output,
}

impl BuchiTransducer {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        states: usize,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<BuchiTransducer> {
        if states == 0 {
            return Err(Error::NoStates);
        }
        let check = |state: StateId| {
            if state < states {
                Ok(())
            } else {
                Err(Error::StateOutOfRange {
                    state,
                    count: states,
                })
            }
        };
        check(initial)?;
        let mut acc = vec![false; states];
        for q in accepting {
            check(q)?;
            acc[q] = true;
        }
        let mut rules: Vec<Rule> = rules.into_iter().collect();
        for r in &rules {
            check(r.src)?;
            check(r.dst)?;
            for &a in &r.input {
                input.check_symbol(a)?;
            }
            for &b in &r.output {
                output.check_symbol(b)?;
            }
        }
        rules.sort();
        rules.dedup();
        Ok(BuchiTransducer {
            input,
            output,
            states,
            initial,
            accepting: acc,
            rules,
        })
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<StateId> {
        (0..self.states).filter(|&q| self.accepting[q]).collect()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn plain_adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.states];
        for r in &self.rules {
            adj[r.src].push(r.dst);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        adj
    }

    /// Keeps exactly the states on some successful computation whose loop
    /// consumes and emits forever. A component can anchor such a computation
    /// when it holds an accepting state, an input-consuming edge and an
    /// output-emitting edge; one tour visits all three.
    pub fn trim(&self) -> BuchiTransducer {
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        let (comp, members) = graph::sccs(&adj);
        let mut has_acc = vec![false; members.len()];
        let mut has_in = vec![false; members.len()];
        let mut has_out = vec![false; members.len()];
        for q in 0..self.states {
            if self.accepting[q] {
                has_acc[comp[q]] = true;
            }
        }
        for r in &self.rules {
            if comp[r.src] == comp[r.dst] {
                let c = comp[r.src];
                has_in[c] |= !r.input.is_empty();
                has_out[c] |= !r.output.is_empty();
            }
        }
        let anchors: Vec<usize> = (0..self.states)
            .filter(|&q| has_acc[comp[q]] && has_in[comp[q]] && has_out[comp[q]])
            .collect();
        let live = graph::reachable(&graph::reverse(&adj), &anchors);
        let useful: Vec<bool> = (0..self.states).map(|q| reach[q] && live[q]).collect();
        if !useful[self.initial] {
            return BuchiTransducer {
                input: self.input.clone(),
                output: self.output.clone(),
                states: 1,
                initial: 0,
                accepting: vec![false],
                rules: Vec::new(),
            };
        }
        let mut renumber = vec![usize::MAX; self.states];
        let mut next = 0;
        for q in 0..self.states {
            if useful[q] {
                renumber[q] = next;
                next += 1;
            }
        }
        let rules: Vec<Rule> = self
            .rules
            .iter()
            .filter(|r| useful[r.src] && useful[r.dst])
            .map(|r| Rule {
                src: renumber[r.src],
                input: r.input.clone(),
                output: r.output.clone(),
                dst: renumber[r.dst],
            })
            .collect();
        let accepting = (0..self.states)
            .filter(|&q| useful[q] && self.accepting[q])
            .map(|q| renumber[q]);
        BuchiTransducer::new(
            self.input.clone(),
            self.output.clone(),
            next,
            renumber[self.initial],
            accepting,
            rules,
        )
        .expect("renumbered states are in range")
    }

    pub fn is_trim(&self) -> bool {
        *self == self.trim()
    }

    /// Projection of the relation onto one tape. Word labels split into
    /// letter chains; empty labels are folded away by a closure that records
    /// whether acceptance was traversed and whether the other tape emitted,
    /// and a two-slot counter turns both records into a plain Büchi
    /// condition. Runs that starve either tape are rejected on the way.
    fn project(&self, tape: Tape) -> Nba {
        let alphabet = match tape {
            Tape::Input => self.input.clone(),
            Tape::Output => self.output.clone(),
        };
        // letter-granular graph over the original states plus chain states
        let mut letter_edges: Vec<Vec<(SymbolId, bool, usize)>> = vec![Vec::new(); self.states];
        let mut eps_edges: Vec<Vec<(bool, usize)>> = vec![Vec::new(); self.states];
        let mut acc_node: Vec<bool> = self.accepting.clone();
        for r in &self.rules {
            let (word, other) = match tape {
                Tape::Input => (&r.input, &r.output),
                Tape::Output => (&r.output, &r.input),
            };
            let emits = !other.is_empty();
            if word.is_empty() {
                eps_edges[r.src].push((emits, r.dst));
                continue;
            }
            let mut cur = r.src;
            for (i, &ltr) in word.iter().enumerate() {
                let next = if i + 1 == word.len() {
                    r.dst
                } else {
                    letter_edges.push(Vec::new());
                    eps_edges.push(Vec::new());
                    acc_node.push(false);
                    acc_node.len() - 1
                };
                letter_edges[cur].push((ltr, i == 0 && emits, next));
                cur = next;
            }
        }
        let total = acc_node.len();
        // per node: flagged closure, then grouped letter moves; the counter
        // wraps through 2 exactly when acceptance and the other tape both
        // recur
        let enc = |node: usize, j: usize| node * 3 + j;
        let mut transitions: Vec<(StateId, SymbolId, StateId)> = Vec::new();
        for n in 0..total {
            let start = (n, acc_node[n], false);
            let mut seen: BTreeSet<(usize, bool, bool)> = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some((s, f, o)) = queue.pop_front() {
                for &(e, d) in &eps_edges[s] {
                    let t = (d, f || acc_node[d], o || e);
                    if seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
            let mut grouped: BTreeSet<(SymbolId, bool, bool, usize)> = BTreeSet::new();
            for &(s, f, o) in &seen {
                for &(ltr, e, d) in &letter_edges[s] {
                    grouped.insert((ltr, f, o || e, d));
                }
            }
            for &(ltr, f, o, d) in &grouped {
                for j in 0..3 {
                    let je = if j == 2 { 0 } else { j };
                    let j2 = match je {
                        0 => {
                            if f {
                                1
                            } else {
                                0
                            }
                        }
                        _ => {
                            if o {
                                2
                            } else {
                                1
                            }
                        }
                    };
                    transitions.push((enc(n, j), ltr, enc(d, j2)));
                }
            }
        }
        Nba::new(
            alphabet,
            total * 3,
            enc(self.initial, 0),
            (0..total).map(|node| enc(node, 2)),
            transitions,
        )
        .expect("projection states are in range")
        .trim()
    }

    /// The input words that some successful computation consumes.
    pub fn dom(&self) -> Nba {
        self.project(Tape::Input)
    }

    /// The output words that some successful computation emits.
    pub fn im(&self) -> Nba {
        self.project(Tape::Output)
    }

    /// Restriction to one lasso input: states are (state, spine position),
    /// rules apply where their input chunk matches the spine.
    fn pin_input(&self, x: &LassoWord) -> BuchiTransducer {
        let p = x.prefix().len();
        let m = p + x.cycle().len();
        let fold = |j: usize| if j < m { j } else { p + (j - p) % (m - p) };
        let enc = |q: StateId, pos: usize| q * m + pos;
        let mut rules = Vec::new();
        for r in &self.rules {
            for pos in 0..m {
                if r.input.iter().enumerate().all(|(i, &a)| x.letter(pos + i) == a) {
                    rules.push(Rule {
                        src: enc(r.src, pos),
                        input: r.input.clone(),
                        output: r.output.clone(),
                        dst: enc(r.dst, fold(pos + r.input.len())),
                    });
                }
            }
        }
        let accepting = (0..self.states)
            .filter(|&q| self.accepting[q])
            .flat_map(|q| (0..m).map(move |pos| enc(q, pos)));
        BuchiTransducer::new(
            self.input.clone(),
            self.output.clone(),
            self.states * m,
            enc(self.initial, 0),
            accepting,
            rules,
        )
        .expect("pinned states are in range")
    }

    /// Up to `cap` distinct outputs for the lasso input `x`, in sorted
    /// order. Stops early once the output language is drained, so a result
    /// shorter than `cap` is exhaustive.
    fn outputs_up_to(&self, x: &LassoWord, cap: usize) -> Result<Vec<LassoWord>> {
        let x = x.normalize();
        x.check_symbols(&self.input)?;
        let mut rest = self.pin_input(&x).im();
        let mut found = Vec::new();
        while found.len() < cap {
            let Some(w) = rest.nonempty_witness() else {
                break;
            };
            found.push(w.clone());
            rest = rest.intersect(&nba::single_word_nba(&self.output, &w).complement()?)?;
            rest = rest.trim();
        }
        found.sort();
        Ok(found)
    }

    /// All outputs the relation pairs with the input `x`, provided there are
    /// at most `bound` of them.
    pub fn evaluate(&self, x: &LassoWord, bound: usize) -> Result<Vec<LassoWord>> {
        if bound == 0 {
            return Err(Error::ZeroBound);
        }
        let mut outs = self.outputs_up_to(x, bound + 1)?;
        if outs.len() > bound {
            outs.truncate(bound);
            return Err(Error::BoundExhausted { found: outs });
        }
        Ok(outs)
    }

    /// Some successful computation with infinite input and output, if the
    /// relation is non-empty.
    pub fn accepting_run(&self) -> Option<RunWitness> {
        // rules become interposed nodes so that edge conditions (consuming,
        // emitting) turn into node sets for the lasso search
        let n = self.states;
        let total = n + self.rules.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
        let mut set_f = vec![false; total];
        let mut set_in = vec![false; total];
        let mut set_out = vec![false; total];
        for q in 0..n {
            set_f[q] = self.accepting[q];
        }
        for (i, r) in self.rules.iter().enumerate() {
            adj[r.src].push((i, n + i));
            adj[n + i].push((i, r.dst));
            set_in[n + i] = !r.input.is_empty();
            set_out[n + i] = !r.output.is_empty();
        }
        let (stem, cycle) =
            graph::gen_buchi_witness(&adj, self.initial, &[set_f, set_in, set_out])?;
        // walk edges pair up as (state -> rule node, rule node -> state);
        // the rule walk is periodic from ceil(|stem|/2) with period |cycle|/2
        let combined: Vec<graph::Edge> =
            stem.iter().chain(&cycle).chain(&cycle).copied().collect();
        let rule_at = |i: usize| self.rules[combined[2 * i].1].clone();
        let k = stem.len().div_ceil(2);
        let period = cycle.len() / 2;
        let stem_rules: Vec<Rule> = (0..k).map(rule_at).collect();
        let cycle_rules: Vec<Rule> = (k..k + period).map(rule_at).collect();
        let cat = |rs: &[Rule], pick: fn(&Rule) -> &[SymbolId]| -> Vec<SymbolId> {
            rs.iter().flat_map(|r| pick(r).iter().copied()).collect()
        };
        let input = LassoWord::new(
            cat(&stem_rules, |r| &r.input),
            cat(&cycle_rules, |r| &r.input),
        )
        .expect("witness loop consumes input");
        let output = LassoWord::new(
            cat(&stem_rules, |r| &r.output),
            cat(&cycle_rules, |r| &r.output),
        )
        .expect("witness loop emits output");
        Some(RunWitness {
            stem: stem_rules,
            cycle: cycle_rules,
            input,
            output,
        })
    }

    /// Bounded search for two outputs on one input: tries every lasso input
    /// with |prefix| + |cycle| <= k in order. `None` rules out witnesses at
    /// this bound only, it does not certify functionality.
    pub fn nonfunctional_witness_bounded(
        &self,
        k: usize,
    ) -> Option<(LassoWord, LassoWord, LassoWord)> {
        let sigma = self.input.len();
        let mut tried: BTreeSet<LassoWord> = BTreeSet::new();
        for total in 1..=k {
            for plen in 0..total {
                let mut word = vec![0usize; total];
                'words: loop {
                    let x = LassoWord::new(word[..plen].to_vec(), word[plen..].to_vec())
                        .expect("cycle is non-empty")
                        .normalize();
                    if tried.insert(x.clone()) {
                        let outs = self
                            .outputs_up_to(&x, 2)
                            .expect("output enumeration cannot fail on checked input");
                        if outs.len() == 2 {
                            return Some((x, outs[0].clone(), outs[1].clone()));
                        }
                    }
                    // odometer over Σ^total
                    let mut i = total;
                    loop {
                        if i == 0 {
                            break 'words;
                        }
                        i -= 1;
                        word[i] += 1;
                        if word[i] < sigma {
                            break;
                        }
                        word[i] = 0;
                    }
                }
            }
        }
        None
    }
}

/// A successful lasso-shaped computation: `stem` then `cycle` forever. The
/// cycle passes acceptance and both its input and output parts are
/// non-empty, so the induced words are a genuine pair of the relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunWitness {
    pub stem: Vec<Rule>,
    pub cycle: Vec<Rule>,
    pub input: LassoWord,
    pub output: LassoWord,
}

/// Letter-to-letter transducer: every rule reads one symbol and writes one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncTransducer(BuchiTransducer);

/// Outcome of a functionality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Functionality {
    Functional,
    /// One input with two distinct outputs.
    Counterexample {
        input: LassoWord,
        out1: LassoWord,
        out2: LassoWord,
    },
}

impl SyncTransducer {
    pub fn new(t: BuchiTransducer) -> Result<SyncTransducer> {
        for (index, r) in t.rules.iter().enumerate() {
            if r.input.len() != 1 || r.output.len() != 1 {
                return Err(Error::NotSynchronous { index });
            }
        }
        Ok(SyncTransducer(t))
    }

    pub fn as_buchi(&self) -> &BuchiTransducer {
        &self.0
    }

    pub fn into_buchi(self) -> BuchiTransducer {
        self.0
    }

    /// Trimming never changes label shapes.
    pub fn trim(&self) -> SyncTransducer {
        SyncTransducer(self.0.trim())
    }

    /// Letter view of the rules: (src, input, output, dst).
    pub fn letter_rules(&self) -> impl Iterator<Item = (StateId, SymbolId, SymbolId, StateId)> + '_ {
        self.0
            .rules
            .iter()
            .map(|r| (r.src, r.input[0], r.output[0], r.dst))
    }

    /// Whether the relation is a function. Decided on the same-input square
    /// product: a diverged pair of runs that are both accepting is exactly a
    /// one-input-two-outputs witness.
    pub fn functionality(&self) -> Functionality {
        let t = &self.0;
        let n = t.states;
        // state: ((q1 * n + q2) * 2 + diverged) * 3 + slot counter
        let enc = |q1: StateId, q2: StateId, d: usize, j: usize| ((q1 * n + q2) * 2 + d) * 3 + j;
        let mut transitions = Vec::new();
        for r1 in &t.rules {
            for r2 in &t.rules {
                if r1.input != r2.input {
                    continue;
                }
                let differs = (r1.output != r2.output) as usize;
                for d in 0..2 {
                    for j in 0..3 {
                        let je = if j == 2 { 0 } else { j };
                        let j2 = if je == 0 {
                            if t.accepting[r1.src] {
                                1
                            } else {
                                0
                            }
                        } else if t.accepting[r2.src] {
                            2
                        } else {
                            1
                        };
                        transitions.push((
                            enc(r1.src, r2.src, d, j),
                            r1.input[0],
                            enc(r1.dst, r2.dst, d | differs, j2),
                        ));
                    }
                }
            }
        }
        let accepting =
            (0..n).flat_map(|q1| (0..n).map(move |q2| enc(q1, q2, 1, 2)));
        let square = Nba::new(
            t.input.clone(),
            n * n * 6,
            enc(t.initial, t.initial, 0, 0),
            accepting,
            transitions,
        )
        .expect("square states are in range");
        match square.nonempty_witness() {
            None => Functionality::Functional,
            Some(x) => {
                let outs = t
                    .outputs_up_to(&x, 2)
                    .expect("output enumeration cannot fail on checked input");
                assert_eq!(outs.len(), 2, "diverged square run implies two outputs");
                Functionality::Counterexample {
                    input: x,
                    out1: outs[0].clone(),
                    out2: outs[1].clone(),
                }
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::complement::Equivalence;

    fn ab() -> Alphabet {
        Alphabet::latin(2).unwrap()
    }

    fn w(p: &[usize], c: &[usize]) -> LassoWord {
        LassoWord::new(p.to_vec(), c.to_vec()).unwrap()
    }

    /// copies every letter through unchanged
    fn id_t() -> BuchiTransducer {
        BuchiTransducer::new(
            ab(),
            ab(),
            1,
            0,
            [0],
            [Rule::new(0, [0], [0], 0), Rule::new(0, [1], [1], 0)],
        )
        .unwrap()
    }

    /// maps x to a^w when x has infinitely many a, to b^w otherwise;
    /// two branches with disjoint domains behind a shared initial state
    pub(crate) fn inf_a_t() -> SyncTransducer {
        // 0 start, 1/2 the always-a branch (2 accepting after an a),
        // 3/4 the always-b branch (4 accepting once only b remains)
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
        SyncTransducer::new(
            BuchiTransducer::new(ab(), ab(), 5, 0, [2, 4], rules).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn trim_keeps_identity() {
        let t = id_t();
        assert_eq!(t.trim(), t);
        assert!(t.is_trim());
    }

    #[test]
    fn trim_prunes_one_sided_loops() {
        // accepting loop that reads nothing: no infinite input possible
        let t = BuchiTransducer::new(
            ab(),
            ab(),
            2,
            0,
            [1],
            [Rule::new(0, [0], [0], 1), Rule::new(1, [], [1], 1)],
        )
        .unwrap();
        let tt = t.trim();
        assert_eq!(tt.state_count(), 1);
        assert!(tt.rules().is_empty());
        assert!(t.dom().is_empty_language());
        // and the mirror image: an accepting loop that writes nothing
        let t2 = BuchiTransducer::new(
            ab(),
            ab(),
            2,
            0,
            [1],
            [Rule::new(0, [0], [0], 1), Rule::new(1, [0], [], 1)],
        )
        .unwrap();
        assert!(t2.trim().rules().is_empty());
        assert!(t2.im().is_empty_language());
    }

    #[test]
    fn trim_drops_unreachable() {
        let t = BuchiTransducer::new(
            ab(),
            ab(),
            3,
            0,
            [0, 2],
            [
                Rule::new(0, [0], [0], 0),
                Rule::new(0, [1], [1], 0),
                Rule::new(2, [0], [0], 2),
            ],
        )
        .unwrap();
        assert_eq!(t.trim(), id_t());
    }

    #[test]
    fn projections_of_identity_are_universal() {
        let t = id_t();
        let u = Nba::universal(ab());
        assert_eq!(t.dom().lang_equiv(&u).unwrap(), Equivalence::Equivalent);
        assert_eq!(t.im().lang_equiv(&u).unwrap(), Equivalence::Equivalent);
    }

    #[test]
    fn multi_letter_labels_split() {
        // one rule consuming ab and emitting b: dom (ab)^w, im b^w
        let t = BuchiTransducer::new(
            ab(),
            ab(),
            1,
            0,
            [0],
            [Rule::new(0, [0, 1], [1], 0)],
        )
        .unwrap();
        assert!(t.dom().contains(&w(&[], &[0, 1])).unwrap());
        assert!(!t.dom().contains(&w(&[], &[0])).unwrap());
        assert!(t.im().contains(&w(&[], &[1])).unwrap());
        assert!(!t.im().contains(&w(&[], &[0, 1])).unwrap());
    }

    #[test]
    fn evaluate_identity() {
        let t = id_t();
        let x = w(&[], &[0, 1]);
        assert_eq!(t.evaluate(&x, 3).unwrap(), vec![x.normalize()]);
    }

    #[test]
    fn evaluate_two_branch() {
        let t = inf_a_t();
        let outs = t.as_buchi().evaluate(&w(&[], &[0, 1]), 4).unwrap();
        assert_eq!(outs, vec![w(&[], &[0])]);
        let outs = t.as_buchi().evaluate(&w(&[0], &[1]), 4).unwrap();
        assert_eq!(outs, vec![w(&[], &[1])]);
        // outside any accepting run: a transducer with no acceptance
        let dead = BuchiTransducer::new(ab(), ab(), 1, 0, [], [Rule::new(0, [0], [0], 0)])
            .unwrap();
        assert!(dead.evaluate(&w(&[], &[0]), 1).unwrap().is_empty());
    }

    #[test]
    fn evaluate_bound_exhausted() {
        // copies input but may flip any letter: many outputs per input
        let t = BuchiTransducer::new(
            ab(),
            ab(),
            1,
            0,
            [0],
            [
                Rule::new(0, [0], [0], 0),
                Rule::new(0, [0], [1], 0),
                Rule::new(0, [1], [0], 0),
                Rule::new(0, [1], [1], 0),
            ],
        )
        .unwrap();
        match t.evaluate(&w(&[], &[0]), 2) {
            Err(Error::BoundExhausted { found }) => assert_eq!(found.len(), 2),
            other => panic!("expected exhaustion, got {:?}", other),
        }
    }

    #[test]
    fn zero_bound_rejected() {
        assert_eq!(
            id_t().evaluate(&w(&[], &[0]), 0),
            Err(Error::ZeroBound)
        );
    }

    #[test]
    fn functionality_checks() {
        let id_sync = SyncTransducer::new(id_t()).unwrap();
        assert_eq!(id_sync.functionality(), Functionality::Functional);
        assert_eq!(inf_a_t().functionality(), Functionality::Functional);
        // identity and a<->b swap behind one initial state: not a function
        let t = SyncTransducer::new(
            BuchiTransducer::new(
                ab(),
                ab(),
                3,
                0,
                [1, 2],
                [
                    Rule::new(0, [0], [0], 1),
                    Rule::new(0, [1], [1], 1),
                    Rule::new(0, [0], [1], 2),
                    Rule::new(0, [1], [0], 2),
                    Rule::new(1, [0], [0], 1),
                    Rule::new(1, [1], [1], 1),
                    Rule::new(2, [0], [1], 2),
                    Rule::new(2, [1], [0], 2),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        match t.functionality() {
            Functionality::Counterexample { input, out1, out2 } => {
                assert_ne!(out1, out2);
                let outs = t.as_buchi().evaluate(&input, 4).unwrap();
                assert!(outs.contains(&out1) && outs.contains(&out2));
            }
            Functionality::Functional => panic!("swap union is not functional"),
        }
    }

    #[test]
    fn asynchronous_rejected() {
        let t = BuchiTransducer::new(ab(), ab(), 1, 0, [0], [Rule::new(0, [0, 1], [0], 0)])
            .unwrap();
        assert!(matches!(
            SyncTransducer::new(t),
            Err(Error::NotSynchronous { .. })
        ));
    }

    #[test]
    fn bounded_nonfunctionality_search() {
        assert_eq!(id_t().nonfunctional_witness_bounded(4), None);
        let doubled = BuchiTransducer::new(
            ab(),
            ab(),
            1,
            0,
            [0],
            [
                Rule::new(0, [0], [0], 0),
                Rule::new(0, [1], [1], 0),
                Rule::new(0, [0], [1], 0),
            ],
        )
        .unwrap();
        let (x, v1, v2) = doubled.nonfunctional_witness_bounded(3).unwrap();
        assert_ne!(v1, v2);
        let outs = doubled.outputs_up_to(&x, 3).unwrap();
        assert!(outs.contains(&v1) && outs.contains(&v2));
    }

    #[test]
    fn accepting_run_shapes() {
        let run = id_t().accepting_run().unwrap();
        assert!(!run.cycle.is_empty());
        assert!(!run.input.cycle().is_empty() && !run.output.cycle().is_empty());
        // consecutive states match and the loop closes
        let mut cur = id_t().initial();
        for r in run.stem.iter().chain(&run.cycle) {
            assert_eq!(r.src, cur);
            cur = r.dst;
        }
        assert_eq!(cur, run.cycle[0].src);
        assert!(run.cycle.iter().any(|r| id_t().is_accepting(r.src)));
        // no accepting run when acceptance is unreachable
        let dead =
            BuchiTransducer::new(ab(), ab(), 2, 0, [1], [Rule::new(0, [0], [0], 0)]).unwrap();
        assert!(dead.accepting_run().is_none());
    }

    #[test]
    fn image_of_two_branch() {
        let t = inf_a_t();
        let im = t.as_buchi().im();
        assert!(im.contains(&w(&[], &[0])).unwrap());
        assert!(im.contains(&w(&[], &[1])).unwrap());
        assert!(!im.contains(&w(&[], &[0, 1])).unwrap());
    }
}
