use crate::muller::DetMuller;
use crate::nba::Lineage;
use crate::{Error, Nba, Result, StateId, SymbolId};
use std::collections::BTreeMap;

/// Deterministic automaton of the finite prefixes of an omega language: a
/// complete DFA in which every state except the absorbing sink is the
/// residual of some extendable prefix. A word is a prefix of the language
/// exactly when its run avoids the sink. The sink is always the last state;
/// for an empty language it coincides with the initial state.
pub struct PrefixDfa {
    states: usize,
    initial: StateId,
    sink: StateId,
    delta: Vec<Vec<StateId>>,
}

impl PrefixDfa {
    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn sink(&self) -> StateId {
        self.sink
    }

    pub fn live_count(&self) -> usize {
        self.sink
    }

    pub fn is_live(&self, q: StateId) -> bool {
        q != self.sink
    }

    pub fn step(&self, q: StateId, a: SymbolId) -> StateId {
        self.delta[q][a]
    }

    pub fn run(&self, word: &[SymbolId]) -> StateId {
        word.iter().fold(self.initial, |q, &a| self.delta[q][a])
    }

    /// Whether the word extends to a member of the language.
    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        self.is_live(self.run(word))
    }

    fn empty(symbols: usize) -> PrefixDfa {
        PrefixDfa {
            states: 1,
            initial: 0,
            sink: 0,
            delta: vec![vec![0; symbols]],
        }
    }
}

impl Nba {
    /// The prefix automaton of the language. Determinizes by subset
    /// construction on the trim part; an automaton remembered to come from a
    /// deterministic Muller automaton is handled directly on that automaton
    /// instead, where no subset construction is needed.
    pub fn prefix_dfa(&self) -> Result<PrefixDfa> {
        if let Lineage::FromMuller(m) = &self.lineage {
            return Ok(muller_prefix_dfa(m));
        }
        let symbols = self.alphabet().len();
        let t = self.trim();
        if t.is_empty_language() {
            return Ok(PrefixDfa::empty(symbols));
        }
        let delta = t.delta();
        let mut index: BTreeMap<Vec<StateId>, usize> = BTreeMap::new();
        let mut order: Vec<Vec<StateId>> = Vec::new();
        let start = vec![t.initial()];
        index.insert(start.clone(), 0);
        order.push(start);
        // sink gets the final index; MAX marks it until the count is known
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let cur = order[head].clone();
            head += 1;
            let mut row = Vec::with_capacity(symbols);
            for a in 0..symbols {
                let mut next: Vec<StateId> = Vec::new();
                for &q in &cur {
                    next.extend(delta[q][a].iter().copied());
                }
                next.sort_unstable();
                next.dedup();
                if next.is_empty() {
                    row.push(usize::MAX);
                    continue;
                }
                let dst = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next);
                    order.len() - 1
                });
                row.push(dst);
            }
            rows.push(row);
            if order.len() > 1 << 16 {
                return Err(Error::TooLarge(format!(
                    "prefix determinization of an automaton with {} states",
                    t.state_count()
                )));
            }
        }
        let sink = order.len();
        let mut delta: Vec<Vec<StateId>> = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|d| if d == usize::MAX { sink } else { d })
                    .collect()
            })
            .collect();
        delta.push(vec![sink; symbols]);
        Ok(PrefixDfa {
            states: sink + 1,
            initial: 0,
            sink,
            delta,
        })
    }

    /// The topological closure of the language: all words whose prefixes are
    /// all prefixes of the language. Returns a deterministic automaton with
    /// every state accepting.
    pub fn closure(&self) -> Result<Nba> {
        let dfa = self.prefix_dfa()?;
        if !dfa.is_live(dfa.initial()) {
            return Ok(Nba::empty(self.alphabet().clone()));
        }
        let mut transitions = Vec::new();
        for q in 0..dfa.live_count() {
            for a in 0..self.alphabet().len() {
                let d = dfa.step(q, a);
                if dfa.is_live(d) {
                    transitions.push((q, a, d));
                }
            }
        }
        Nba::new(
            self.alphabet().clone(),
            dfa.live_count(),
            dfa.initial(),
            0..dfa.live_count(),
            transitions,
        )
    }
}

fn muller_prefix_dfa(m: &DetMuller) -> PrefixDfa {
    let symbols = m.alphabet().len();
    let adj = m.plain_adj();
    let reach = crate::graph::reachable(&adj, &[m.initial()]);
    let live = m.live_mask();
    let keep: Vec<bool> = (0..m.state_count()).map(|q| reach[q] && live[q]).collect();
    if !keep[m.initial()] {
        return PrefixDfa::empty(symbols);
    }
    let mut rename = vec![usize::MAX; m.state_count()];
    let mut n = 0;
    for q in 0..m.state_count() {
        if keep[q] {
            rename[q] = n;
            n += 1;
        }
    }
    let sink = n;
    let mut delta = vec![vec![sink; symbols]; n + 1];
    for q in 0..m.state_count() {
        if !keep[q] {
            continue;
        }
        for a in 0..symbols {
            if let Some(d) = m.step(q, a) {
                if keep[d] {
                    delta[rename[q]][a] = rename[d];
                }
            }
        }
    }
    PrefixDfa {
        states: n + 1,
        initial: rename[m.initial()],
        sink,
        delta,
    }
}

/// Whether the first language is dense in the second: every member of the
/// second is a limit of members of the first. Equivalently every prefix of
/// the second language is a prefix of the first.
pub fn is_dense_in(sub: &Nba, sup: &Nba) -> Result<bool> {
    Ok(dense_in_witness(sub, sup)?.is_none())
}

/// `None` when dense, otherwise a shortest prefix of the second language
/// that no member of the first extends.
pub fn dense_in_witness(sub: &Nba, sup: &Nba) -> Result<Option<Vec<SymbolId>>> {
    sub.alphabet().check_same(sup.alphabet())?;
    let dsub = sub.prefix_dfa()?;
    let dsup = sup.prefix_dfa()?;
    let start = (dsup.initial(), dsub.initial());
    if !dsup.is_live(start.0) {
        return Ok(None);
    }
    if !dsub.is_live(start.1) {
        return Ok(Some(Vec::new()));
    }
    let mut seen = std::collections::BTreeSet::from([start]);
    let mut queue = std::collections::VecDeque::from([(start, Vec::new())]);
    while let Some(((x, s), word)) = queue.pop_front() {
        for a in 0..sub.alphabet().len() {
            let nx = dsup.step(x, a);
            if !dsup.is_live(nx) {
                continue;
            }
            let ns = dsub.step(s, a);
            let mut w = word.clone();
            w.push(a);
            if !dsub.is_live(ns) {
                return Ok(Some(w));
            }
            if seen.insert((nx, ns)) {
                queue.push_back(((nx, ns), w));
            }
        }
    }
    Ok(None)
}
