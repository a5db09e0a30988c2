use crate::graph;
use crate::muller::DetMuller;
use crate::{Alphabet, Error, LassoWord, Result, StateId, SymbolId};
use std::fmt;
use std::sync::Arc;

/// How an automaton was produced. Language operations record their operands
/// here so that later inclusion and complement queries can decompose along
/// the construction instead of attacking an opaque product. Not part of the
/// automaton's identity: ignored by equality, dropped by the text parser.
#[derive(Clone)]
pub(crate) enum Lineage {
    Opaque,
    Intersection(Arc<Nba>, Arc<Nba>),
    Union(Arc<Nba>, Arc<Nba>),
    Complement(Arc<Nba>),
    FromMuller(Arc<DetMuller>),
}

/// Nondeterministic Buchi automaton: a finite automaton over infinite words
/// accepting when some run visits an accepting state infinitely often.
///
/// States are `0..state_count()`; transitions are kept sorted and deduped.
#[derive(Clone)]
pub struct Nba {
    pub(crate) alphabet: Alphabet,
    pub(crate) states: usize,
    pub(crate) initial: StateId,
    pub(crate) accepting: Vec<bool>,
    pub(crate) transitions: Vec<(StateId, SymbolId, StateId)>,
    pub(crate) lineage: Lineage,
}

impl PartialEq for Nba {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.states == other.states
            && self.initial == other.initial
            && self.accepting == other.accepting
            && self.transitions == other.transitions
    }
}

impl Eq for Nba {}

impl fmt::Debug for Nba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nba")
            .field("alphabet", &self.alphabet.names())
            .field("states", &self.states)
            .field("initial", &self.initial)
            .field("accepting", &self.accepting_states())
            .field("transitions", &self.transitions)
            .finish()
    }
}

impl Nba {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
    ) -> Result<Nba> {
        if states == 0 {
            return Err(Error::NoStates);
        }
        let check_state = |q: StateId| {
            if q < states {
                Ok(())
            } else {
                Err(Error::StateOutOfRange { state: q, count: states })
            }
        };
        check_state(initial)?;
        let mut acc = vec![false; states];
        for q in accepting {
            check_state(q)?;
            acc[q] = true;
        }
        let mut trans: Vec<(StateId, SymbolId, StateId)> = transitions.into_iter().collect();
        for &(p, a, q) in &trans {
            check_state(p)?;
            check_state(q)?;
            alphabet.check_symbol(a)?;
        }
        trans.sort_unstable();
        trans.dedup();
        Ok(Nba {
            alphabet,
            states,
            initial,
            accepting: acc,
            transitions: trans,
            lineage: Lineage::Opaque,
        })
    }

    /// The automaton accepting every word over `alphabet`.
    pub fn universal(alphabet: Alphabet) -> Nba {
        let transitions: Vec<_> = (0..alphabet.len()).map(|a| (0, a, 0)).collect();
        Nba::new(alphabet, 1, 0, [0], transitions).unwrap()
    }

    /// The automaton accepting no word: a single initial state with no
    /// transitions. This is also the canonical trim form of any empty
    /// automaton.
    pub fn empty(alphabet: Alphabet) -> Nba {
        Nba::new(alphabet, 1, 0, [], []).unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
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

    pub fn transitions(&self) -> &[(StateId, SymbolId, StateId)] {
        &self.transitions
    }

    /// Successor states of `q` on symbol `a`, in increasing order.
    pub fn successors(&self, q: StateId, a: SymbolId) -> impl Iterator<Item = StateId> + '_ {
        let lo = self.transitions.partition_point(|&(p, b, _)| (p, b) < (q, a));
        self.transitions[lo..]
            .iter()
            .take_while(move |&&(p, b, _)| p == q && b == a)
            .map(|&(_, _, d)| d)
    }

    /// Full transition table: `table[q][a]` is the sorted successor list.
    pub(crate) fn delta(&self) -> Vec<Vec<Vec<StateId>>> {
        let mut t = vec![vec![Vec::new(); self.alphabet.len()]; self.states];
        for &(p, a, q) in &self.transitions {
            t[p][a].push(q);
        }
        t
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions
            .windows(2)
            .all(|w| (w[0].0, w[0].1) != (w[1].0, w[1].1))
    }

    pub fn is_complete(&self) -> bool {
        let delta = self.delta();
        (0..self.states).all(|q| (0..self.alphabet.len()).all(|a| !delta[q][a].is_empty()))
    }

    /// Successor adjacency ignoring symbols.
    pub(crate) fn plain_adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.states];
        for &(p, _, q) in &self.transitions {
            adj[p].push(q);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        adj
    }

    /// Adjacency with the symbol as edge label.
    pub(crate) fn labeled_adj(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.states];
        for &(p, a, q) in &self.transitions {
            adj[p].push((a, q));
        }
        adj
    }

    /// States from which an accepting run exists: states reaching an
    /// accepting state that lies on a cycle.
    pub(crate) fn live_mask(&self) -> Vec<bool> {
        let adj = self.plain_adj();
        let (_, members) = graph::sccs(&adj);
        let mut seed = vec![false; self.states];
        for ms in &members {
            let nontrivial = ms.len() > 1 || adj[ms[0]].contains(&ms[0]);
            if !nontrivial {
                continue;
            }
            for &q in ms {
                if self.accepting[q] {
                    seed[q] = true;
                }
            }
        }
        let rev = graph::reverse(&adj);
        let seeds: Vec<usize> = (0..self.states).filter(|&q| seed[q]).collect();
        graph::reachable(&rev, &seeds)
    }

    /// Removes every state that is unreachable or cannot start an accepting
    /// run, renumbering the survivors in order. An empty language collapses
    /// to the single-state automaton of [`Nba::empty`]. The language is
    /// unchanged.
    pub fn trim(&self) -> Nba {
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        let live = self.live_mask();
        let keep: Vec<bool> = (0..self.states).map(|q| reach[q] && live[q]).collect();
        if !keep[self.initial] {
            let mut e = Nba::empty(self.alphabet.clone());
            e.lineage = self.lineage.clone();
            return e;
        }
        let mut rename = vec![usize::MAX; self.states];
        let mut n = 0;
        for q in 0..self.states {
            if keep[q] {
                rename[q] = n;
                n += 1;
            }
        }
        let transitions: Vec<_> = self
            .transitions
            .iter()
            .filter(|&&(p, _, q)| keep[p] && keep[q])
            .map(|&(p, a, q)| (rename[p], a, rename[q]))
            .collect();
        let accepting: Vec<StateId> = (0..self.states)
            .filter(|&q| keep[q] && self.accepting[q])
            .map(|q| rename[q])
            .collect();
        let mut out = Nba::new(
            self.alphabet.clone(),
            n,
            rename[self.initial],
            accepting,
            transitions,
        )
        .expect("renumbering preserves validity");
        out.lineage = self.lineage.clone();
        out
    }

    /// Whether the automaton is already in trim form (every state useful, or
    /// the canonical empty shape).
    pub fn is_trim(&self) -> bool {
        *self == self.trim()
    }

    /// A lasso word accepted by the automaton, or `None` when the language
    /// is empty. Deterministic in the automaton's structure.
    pub fn nonempty_witness(&self) -> Option<LassoWord> {
        let (stem, cycle) =
            graph::gen_buchi_witness(&self.labeled_adj(), self.initial, &[self.accepting.clone()])?;
        Some(lasso_from_edges(&stem, &cycle))
    }

    pub fn is_empty_language(&self) -> bool {
        self.nonempty_witness().is_none()
    }

    /// Whether the automaton accepts the given ultimately periodic word.
    pub fn contains(&self, x: &LassoWord) -> Result<bool> {
        x.check_symbols(&self.alphabet)?;
        let x = x.normalize();
        let p = x.prefix().len();
        let m = p + x.cycle().len();
        // Product with the word's spine: node q * m + i reads letter x[i].
        let delta = self.delta();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.states * m];
        let mut accepting = vec![false; self.states * m];
        for q in 0..self.states {
            for i in 0..m {
                let a = x.letter(i);
                let ni = if i + 1 < m { i + 1 } else { p };
                for &d in &delta[q][a] {
                    adj[q * m + i].push((a, d * m + ni));
                }
                accepting[q * m + i] = self.accepting[q];
            }
        }
        Ok(graph::gen_buchi_witness(&adj, self.initial * m, &[accepting]).is_some())
    }

    /// Product automaton for the intersection of the two languages, using a
    /// two phase counter to align the acceptance conditions.
    pub fn intersect(&self, other: &Nba) -> Result<Nba> {
        self.alphabet.check_same(&other.alphabet)?;
        let d1 = self.delta();
        let d2 = other.delta();
        let mut index = std::collections::BTreeMap::new();
        let mut order: Vec<(StateId, StateId, u8)> = Vec::new();
        let mut transitions = Vec::new();
        let start = (self.initial, other.initial, 0u8);
        index.insert(start, 0usize);
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let (q1, q2, j) = order[head];
            let src = head;
            head += 1;
            let nj = match j {
                0 if self.accepting[q1] => 1,
                1 if other.accepting[q2] => 0,
                _ => j,
            };
            for a in 0..self.alphabet.len() {
                for &p1 in &d1[q1][a] {
                    for &p2 in &d2[q2][a] {
                        let key = (p1, p2, nj);
                        let dst = *index.entry(key).or_insert_with(|| {
                            order.push(key);
                            order.len() - 1
                        });
                        transitions.push((src, a, dst));
                    }
                }
            }
        }
        let accepting: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|&(_, &(_, q2, j))| j == 1 && other.accepting[q2])
            .map(|(i, _)| i)
            .collect();
        let mut out = Nba::new(self.alphabet.clone(), order.len(), 0, accepting, transitions)?;
        out.lineage = Lineage::Intersection(Arc::new(self.clone()), Arc::new(other.clone()));
        Ok(out)
    }

    /// Disjoint union behind a fresh initial state carrying both initial
    /// states' outgoing edges.
    pub fn union(&self, other: &Nba) -> Result<Nba> {
        self.alphabet.check_same(&other.alphabet)?;
        let off1 = 1;
        let off2 = 1 + self.states;
        let mut transitions = Vec::new();
        for &(p, a, q) in &self.transitions {
            transitions.push((p + off1, a, q + off1));
            if p == self.initial {
                transitions.push((0, a, q + off1));
            }
        }
        for &(p, a, q) in &other.transitions {
            transitions.push((p + off2, a, q + off2));
            if p == other.initial {
                transitions.push((0, a, q + off2));
            }
        }
        let accepting: Vec<usize> = (0..self.states)
            .filter(|&q| self.accepting[q])
            .map(|q| q + off1)
            .chain((0..other.states).filter(|&q| other.accepting[q]).map(|q| q + off2))
            .collect();
        let mut out = Nba::new(
            self.alphabet.clone(),
            1 + self.states + other.states,
            0,
            accepting,
            transitions,
        )?;
        out.lineage = Lineage::Union(Arc::new(self.clone()), Arc::new(other.clone()));
        Ok(out)
    }
}

pub(crate) fn lasso_from_edges(stem: &[graph::Edge], cycle: &[graph::Edge]) -> LassoWord {
    let prefix: Vec<SymbolId> = stem.iter().map(|&(_, a, _)| a).collect();
    let cyc: Vec<SymbolId> = cycle.iter().map(|&(_, a, _)| a).collect();
    LassoWord::new(prefix, cyc)
        .expect("witness cycles are non-empty")
        .normalize()
}

/// Deterministic automaton accepting exactly the one word `x`.
pub(crate) fn single_word_nba(alphabet: &Alphabet, x: &LassoWord) -> Nba {
    let x = x.normalize();
    let p = x.prefix().len();
    let n = p + x.cycle().len();
    let transitions: Vec<(StateId, SymbolId, StateId)> = (0..n)
        .map(|i| (i, x.letter(i), if i + 1 == n { p } else { i + 1 }))
        .collect();
    Nba::new(alphabet.clone(), n, 0, 0..n, transitions).expect("spine states are in range")
}

/// Deterministic Buchi automaton: an [`Nba`] with at most one transition per
/// state and symbol. Completeness is not required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dba(pub(crate) Nba);

impl Dba {
    pub fn new(nba: Nba) -> Result<Dba> {
        for w in nba.transitions.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::Nondeterministic {
                    state: w[0].0,
                    symbol: w[0].1,
                });
            }
        }
        Ok(Dba(nba))
    }

    pub fn as_nba(&self) -> &Nba {
        &self.0
    }

    pub fn into_nba(self) -> Nba {
        self.0
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    /// Trimming preserves determinism.
    pub fn trim(&self) -> Dba {
        Dba(self.0.trim())
    }

    pub fn is_trim(&self) -> bool {
        self.0.is_trim()
    }

    /// The unique successor, if any.
    pub fn step(&self, q: StateId, a: SymbolId) -> Option<StateId> {
        self.0.successors(q, a).next()
    }

    /// State reached from the initial state on a finite word; `None` when
    /// the run dies.
    pub fn run_to(&self, word: &[SymbolId]) -> Option<StateId> {
        let mut q = self.0.initial;
        for &a in word {
            q = self.step(q, a)?;
        }
        Some(q)
    }
}

impl From<Dba> for Nba {
    fn from(d: Dba) -> Nba {
        d.0
    }
}
