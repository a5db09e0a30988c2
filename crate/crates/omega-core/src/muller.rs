use crate::graph;
use crate::{Alphabet, Error, LassoWord, Result, StateId, SymbolId};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Deterministic Muller automaton: a run is accepting when the set of states
/// it visits infinitely often equals one of the tables. Transitions may be
/// partial; a run that dies rejects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetMuller {
    pub(crate) alphabet: Alphabet,
    pub(crate) states: usize,
    pub(crate) initial: StateId,
    pub(crate) transitions: Vec<(StateId, SymbolId, StateId)>,
    pub(crate) tables: Vec<BTreeSet<StateId>>,
}

impl DetMuller {
    pub fn new<T>(
        alphabet: Alphabet,
        states: usize,
        initial: StateId,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
        tables: impl IntoIterator<Item = T>,
    ) -> Result<DetMuller>
    where
        T: IntoIterator<Item = StateId>,
    {
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
        let mut trans: Vec<(StateId, SymbolId, StateId)> = transitions.into_iter().collect();
        for &(p, a, q) in &trans {
            check_state(p)?;
            check_state(q)?;
            alphabet.check_symbol(a)?;
        }
        trans.sort_unstable();
        trans.dedup();
        for w in trans.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::Nondeterministic {
                    state: w[0].0,
                    symbol: w[0].1,
                });
            }
        }
        let mut tbls: Vec<BTreeSet<StateId>> = Vec::new();
        for t in tables {
            let set: BTreeSet<StateId> = t.into_iter().collect();
            if set.is_empty() {
                return Err(Error::EmptyTable);
            }
            for &q in &set {
                check_state(q)?;
            }
            tbls.push(set);
        }
        tbls.sort();
        tbls.dedup();
        Ok(DetMuller {
            alphabet,
            states,
            initial,
            transitions: trans,
            tables: tbls,
        })
    }

    /// The canonical empty-language automaton.
    pub fn empty(alphabet: Alphabet) -> DetMuller {
        DetMuller::new(alphabet, 1, 0, [], Vec::<Vec<StateId>>::new()).unwrap()
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

    pub fn transitions(&self) -> &[(StateId, SymbolId, StateId)] {
        &self.transitions
    }

    pub fn tables(&self) -> &[BTreeSet<StateId>] {
        &self.tables
    }

    pub fn step(&self, q: StateId, a: SymbolId) -> Option<StateId> {
        let i = self.transitions.partition_point(|&(p, b, _)| (p, b) < (q, a));
        match self.transitions.get(i) {
            Some(&(p, b, d)) if p == q && b == a => Some(d),
            _ => None,
        }
    }

    pub fn run_to(&self, word: &[SymbolId]) -> Option<StateId> {
        let mut q = self.initial;
        for &a in word {
            q = self.step(q, a)?;
        }
        Some(q)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.alphabet.len();
        (0..self.states).all(|q| (0..n).all(|a| self.step(q, a).is_some()))
    }

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

    pub(crate) fn labeled_adj(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.states];
        for &(p, a, q) in &self.transitions {
            adj[p].push((a, q));
        }
        adj
    }

    /// Whether `set` can be the exact infinity set of some run: reachable and
    /// inducing a strongly connected subgraph (a lone state needs a
    /// self-loop).
    pub fn is_realizable(&self, set: &BTreeSet<StateId>) -> bool {
        if set.is_empty() || set.iter().any(|&q| q >= self.states) {
            return false;
        }
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        let &root = set.iter().next().unwrap();
        if !reach[root] {
            return false;
        }
        induces_scc(&adj, set)
    }

    /// States from which some accepting run exists: states reaching a
    /// realizable table.
    pub(crate) fn live_mask(&self) -> Vec<bool> {
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        let rev = graph::reverse(&adj);
        let mut seeds: Vec<usize> = Vec::new();
        for t in &self.tables {
            let &root = t.iter().next().unwrap();
            if reach[root] && induces_scc(&adj, t) {
                seeds.extend(t.iter().copied());
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        graph::reachable(&rev, &seeds)
    }

    /// Removes unreachable and dead states and unrealizable tables; the
    /// language is unchanged. An empty language collapses to
    /// [`DetMuller::empty`].
    pub fn trim(&self) -> DetMuller {
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        let live = self.live_mask();
        let keep: Vec<bool> = (0..self.states).map(|q| reach[q] && live[q]).collect();
        if !keep[self.initial] {
            return DetMuller::empty(self.alphabet.clone());
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
        let tables: Vec<Vec<StateId>> = self
            .tables
            .iter()
            .filter(|t| {
                t.iter().all(|&q| keep[q])
                    && reach[*t.iter().next().unwrap()]
                    && induces_scc(&adj, t)
            })
            .map(|t| t.iter().map(|&q| rename[q]).collect())
            .collect();
        DetMuller::new(
            self.alphabet.clone(),
            n,
            rename[self.initial],
            transitions,
            tables,
        )
        .expect("renumbering preserves validity")
    }

    pub fn is_trim(&self) -> bool {
        *self == self.trim()
    }

    /// Membership of an ultimately periodic word: run the automaton and read
    /// off the infinity set once the state at the loop boundary repeats.
    pub fn contains(&self, x: &LassoWord) -> Result<bool> {
        x.check_symbols(&self.alphabet)?;
        let x = x.normalize();
        let mut q = match self.run_to(x.prefix()) {
            Some(q) => q,
            None => return Ok(false),
        };
        // state at each loop boundary, and states touched during each pass
        let mut boundary: Vec<StateId> = vec![q];
        let mut touched: Vec<BTreeSet<StateId>> = Vec::new();
        loop {
            let mut pass = BTreeSet::new();
            for &a in x.cycle() {
                q = match self.step(q, a) {
                    Some(d) => d,
                    None => return Ok(false),
                };
                pass.insert(q);
            }
            touched.push(pass);
            if let Some(i) = boundary.iter().position(|&b| b == q) {
                let mut inf = BTreeSet::new();
                for pass in &touched[i..] {
                    inf.extend(pass.iter().copied());
                }
                return Ok(self.tables.contains(&inf));
            }
            boundary.push(q);
        }
    }

    /// A lasso word accepted by the automaton, or `None` when the language
    /// is empty.
    pub fn nonempty_witness(&self) -> Option<LassoWord> {
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        let labeled = self.labeled_adj();
        for t in &self.tables {
            let &root = t.iter().next().unwrap();
            if !reach[root] || !induces_scc(&adj, t) {
                continue;
            }
            // stem to the least table member, then a tour visiting exactly
            // the table
            let stem = bfs_edges(&labeled, self.initial, root);
            let mut restricted = vec![Vec::new(); self.states];
            for (p, row) in labeled.iter().enumerate() {
                if t.contains(&p) {
                    restricted[p] = row
                        .iter()
                        .filter(|&&(_, d)| t.contains(&d))
                        .copied()
                        .collect();
                }
            }
            let sets: Vec<Vec<bool>> = t.iter().map(|&q| single_set(self.states, q)).collect();
            let (extra, cycle) = graph::gen_buchi_witness(&restricted, root, &sets)
                .expect("table induces a strongly connected subgraph");
            let mut prefix: Vec<SymbolId> = stem.iter().map(|&(_, a, _)| a).collect();
            prefix.extend(extra.iter().map(|&(_, a, _)| a));
            let cyc: Vec<SymbolId> = cycle.iter().map(|&(_, a, _)| a).collect();
            return Some(LassoWord::new(prefix, cyc).unwrap().normalize());
        }
        None
    }

    pub fn is_empty_language(&self) -> bool {
        self.nonempty_witness().is_none()
    }

    /// Equivalent nondeterministic Buchi automaton: a non-accepting copy of
    /// the automaton from which the run may jump into a per-table component
    /// that checks the guessed infinity set by rotating through its members.
    pub fn to_nba(&self) -> crate::nba::Nba {
        let n = self.states;
        let mut transitions: Vec<(StateId, SymbolId, StateId)> = self.transitions.clone();
        let mut accepting: Vec<StateId> = Vec::new();
        let mut next = n;
        for t in &self.tables {
            let members: Vec<StateId> = t.iter().copied().collect();
            let m = members.len();
            // component state (q, j) at index base + pos(q) * (m+1) + j;
            // j counts rotation progress, j == m means "just completed".
            let base = next;
            next += m * (m + 1);
            let pos = |q: StateId| members.iter().position(|&s| s == q).unwrap();
            let idx = |q: StateId, j: usize| base + pos(q) * (m + 1) + j;
            let tick = |q: StateId, j: usize| {
                let j_eff = if j == m { 0 } else { j };
                if q == members[j_eff] {
                    j_eff + 1
                } else {
                    j_eff
                }
            };
            for &(p, a, q) in &self.transitions {
                if t.contains(&q) {
                    // entry guess from the base copy
                    transitions.push((p, a, idx(q, tick(q, 0))));
                    if t.contains(&p) {
                        for j in 0..=m {
                            transitions.push((idx(p, j), a, idx(q, tick(q, j))));
                        }
                    }
                }
            }
            for &q in &members {
                accepting.push(idx(q, m));
            }
        }
        let mut out = crate::nba::Nba::new(
            self.alphabet.clone(),
            next,
            self.initial,
            accepting,
            transitions,
        )
        .expect("component indices are in range");
        out.lineage = crate::nba::Lineage::FromMuller(Arc::new(self.clone()));
        out
    }

    /// All realizable infinity sets: strongly-connected-subgraph-inducing
    /// subsets of the reachable part. Enumerated per SCC by bitmask; errors
    /// when an SCC is too large for that.
    pub(crate) fn realizable_sets(&self) -> Result<Vec<BTreeSet<StateId>>> {
        let adj = self.plain_adj();
        let reach = graph::reachable(&adj, &[self.initial]);
        scc_subsets(&adj, Some(reach.as_slice()))
    }

    /// Complement automaton: complete with a rejecting sink, then accept
    /// exactly the realizable infinity sets that are not in the table list.
    pub fn complement(&self) -> Result<DetMuller> {
        let mut transitions = self.transitions.clone();
        let mut states = self.states;
        if !self.is_complete() {
            let sink = states;
            states += 1;
            for q in 0..states {
                for a in 0..self.alphabet.len() {
                    let have = transitions
                        .iter()
                        .any(|&(p, b, _)| p == q && b == a);
                    if !have {
                        transitions.push((q, a, sink));
                    }
                }
            }
        }
        let completed = DetMuller::new(
            self.alphabet.clone(),
            states,
            self.initial,
            transitions,
            self.tables.iter().map(|t| t.iter().copied().collect::<Vec<_>>()),
        )?;
        let tables: Vec<Vec<StateId>> = completed
            .realizable_sets()?
            .into_iter()
            .filter(|g| !self.tables.contains(g))
            .map(|g| g.into_iter().collect())
            .collect();
        DetMuller::new(
            completed.alphabet.clone(),
            completed.states,
            completed.initial,
            completed.transitions.clone(),
            tables,
        )
    }
}

/// Every subset of every SCC of `adj` that induces a strongly connected
/// subgraph, optionally restricted to components inside a reachable mask.
/// Enumerated per SCC by bitmask; errors when an SCC is too large for that.
pub(crate) fn scc_subsets(
    adj: &[Vec<usize>],
    reach: Option<&[bool]>,
) -> Result<Vec<BTreeSet<StateId>>> {
    let (_, members) = graph::sccs(adj);
    let mut out = Vec::new();
    for ms in &members {
        if let Some(r) = reach {
            if !r[ms[0]] {
                continue;
            }
        }
        if ms.len() > 26 {
            return Err(Error::TooLarge(format!(
                "enumerating infinity sets inside a strongly connected component of {} states",
                ms.len()
            )));
        }
        // successor/predecessor bitmasks within the component
        let pos = |q: usize| ms.binary_search(&q).ok();
        let mut succ = vec![0u64; ms.len()];
        let mut pred = vec![0u64; ms.len()];
        for (i, &q) in ms.iter().enumerate() {
            for &d in &adj[q] {
                if let Some(j) = pos(d) {
                    succ[i] |= 1 << j;
                    pred[j] |= 1 << i;
                }
            }
        }
        for mask in 1u64..(1 << ms.len()) {
            if strongly_connected_mask(mask, &succ, &pred) {
                out.push(
                    (0..ms.len())
                        .filter(|&i| mask & (1 << i) != 0)
                        .map(|i| ms[i])
                        .collect::<BTreeSet<StateId>>(),
                );
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `set` induces a strongly connected subgraph with at least one
/// edge (singletons need a self-loop).
pub(crate) fn induces_scc(adj: &[Vec<usize>], set: &BTreeSet<StateId>) -> bool {
    let &root = match set.iter().next() {
        Some(r) => r,
        None => return false,
    };
    if set.len() == 1 {
        return adj[root].contains(&root);
    }
    // forward and backward reachability within the set
    for forward in [true, false] {
        let mut seen: BTreeSet<StateId> = BTreeSet::new();
        seen.insert(root);
        let mut queue = vec![root];
        while let Some(v) = queue.pop() {
            let nexts: Vec<usize> = if forward {
                adj[v].iter().copied().filter(|d| set.contains(d)).collect()
            } else {
                set.iter()
                    .copied()
                    .filter(|&u| adj[u].contains(&v))
                    .collect()
            };
            for d in nexts {
                if seen.insert(d) {
                    queue.push(d);
                }
            }
        }
        if seen.len() != set.len() {
            return false;
        }
    }
    true
}

fn strongly_connected_mask(mask: u64, succ: &[u64], pred: &[u64]) -> bool {
    let root = mask.trailing_zeros() as usize;
    if mask.count_ones() == 1 {
        return succ[root] & mask != 0;
    }
    for dir in [succ, pred] {
        let mut reach = 1u64 << root;
        loop {
            let mut next = reach;
            let mut rest = reach;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= dir[i] & mask;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach != mask {
            return false;
        }
    }
    true
}

fn single_set(n: usize, q: usize) -> Vec<bool> {
    let mut s = vec![false; n];
    s[q] = true;
    s
}

fn bfs_edges(
    labeled: &[Vec<(usize, usize)>],
    from: usize,
    to: usize,
) -> Vec<(usize, usize, usize)> {
    if from == to {
        return Vec::new();
    }
    let mut sorted = labeled.to_vec();
    for row in &mut sorted {
        row.sort_unstable();
    }
    let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None; labeled.len()];
    let mut seen = vec![false; labeled.len()];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &(a, d) in &sorted[v] {
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((v, a, d));
                if d == to {
                    let mut edges = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let e = parent[cur].unwrap();
                        edges.push(e);
                        cur = e.0;
                    }
                    edges.reverse();
                    return edges;
                }
                queue.push_back(d);
            }
        }
    }
    panic!("bfs_edges: target unreachable");
}
