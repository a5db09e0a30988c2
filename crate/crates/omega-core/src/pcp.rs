//! Post correspondence instances and the transducers that tie continuity
//! questions to their solvability.
//!
//! An instance is a pair of equally long tuples of non-empty words. A
//! solution is a non-empty index sequence whose two concatenations agree;
//! [`PcpInstance::solve_bounded`] enumerates all solutions up to a length
//! bound. From an instance one can build an asynchronous transducer whose
//! points of continuity are exactly the inputs whose index prefix solves
//! the instance, so bounded solving doubles as an oracle for pointwise
//! continuity of these functions, and a metric falsifier produces the
//! approaching inputs with non-converging outputs at discontinuities.

use crate::lasso::Divergence;
use crate::transducer::{BuchiTransducer, Rule};
use crate::{Alphabet, Error, LassoWord, Result, SymbolId};
use std::collections::BTreeSet;

/// An index sequence; entries are 1-based as in the usual statement of the
/// correspondence problem.
pub type IndexSequence = Vec<usize>;

/// A correspondence instance: two tuples `u`, `v` of non-empty words over a
/// shared alphabet of at least two symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcpInstance {
    gamma: Alphabet,
    u: Vec<Vec<SymbolId>>,
    v: Vec<Vec<SymbolId>>,
}

/// Picks `base`, extended with underscores until unused, and claims it.
fn fresh(base: &str, taken: &mut BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    name
}

/// Appends one word pair to the running concatenations and cancels the
/// matched front. `None` on mismatch, which no extension can repair; the
/// returned pair has at least one empty side.
fn extend(
    top: &[SymbolId],
    bot: &[SymbolId],
    u: &[SymbolId],
    v: &[SymbolId],
) -> Option<(Vec<SymbolId>, Vec<SymbolId>)> {
    let mut top: Vec<SymbolId> = top.to_vec();
    top.extend_from_slice(u);
    let mut bot: Vec<SymbolId> = bot.to_vec();
    bot.extend_from_slice(v);
    let m = top.len().min(bot.len());
    if top[..m] != bot[..m] {
        return None;
    }
    Some((top.split_off(m), bot.split_off(m)))
}

impl PcpInstance {
    pub fn new(gamma: Alphabet, u: Vec<Vec<SymbolId>>, v: Vec<Vec<SymbolId>>) -> Result<Self> {
        if gamma.len() < 2 {
            return Err(Error::AlphabetTooSmall);
        }
        if u.len() != v.len() {
            return Err(Error::ArityMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        if u.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for word in u.iter().chain(&v) {
            if word.is_empty() {
                return Err(Error::EmptyInstanceWord);
            }
            for &s in word {
                gamma.check_symbol(s)?;
            }
        }
        Ok(PcpInstance { gamma, u, v })
    }

    /// The fixed three-pair instance ((cc, d, d), (c, c, dd)) over {c, d}.
    /// Its primitive solutions are 1..12..23..3 and 3..32..21..1 with equal
    /// block lengths, so its solution set is not context-free; it serves as
    /// the inner layer of [`nested_transducer`](Self::nested_transducer).
    pub fn counting() -> Self {
        let gamma = Alphabet::new(["c", "d"]).expect("fixed names are valid tokens");
        PcpInstance::new(
            gamma,
            vec![vec![0, 0], vec![1], vec![1]],
            vec![vec![0], vec![0], vec![1, 1]],
        )
        .expect("fixed instance is well formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.gamma
    }

    pub fn arity(&self) -> usize {
        self.u.len()
    }

    pub fn u_words(&self) -> &[Vec<SymbolId>] {
        &self.u
    }

    pub fn v_words(&self) -> &[Vec<SymbolId>] {
        &self.v
    }

    /// Validates a 1-based index sequence against this instance.
    pub fn check_sequence(&self, s: &[usize]) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptySequence);
        }
        for &i in s {
            if i == 0 || i > self.u.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    arity: self.u.len(),
                });
            }
        }
        Ok(())
    }

    fn concat(words: &[Vec<SymbolId>], s: &[usize]) -> Vec<SymbolId> {
        s.iter().flat_map(|&i| words[i - 1].iter().copied()).collect()
    }

    /// All solutions of length at most `k`, ordered by length then
    /// lexicographically. Prunes on irreparable mismatches of the two
    /// concatenations, so the search visits only viable prefixes.
    pub fn solve_bounded(&self, k: usize) -> Vec<IndexSequence> {
        fn dfs(
            inst: &PcpInstance,
            k: usize,
            seq: &mut Vec<usize>,
            top: &[SymbolId],
            bot: &[SymbolId],
            sols: &mut Vec<IndexSequence>,
        ) {
            if seq.len() == k {
                return;
            }
            for i in 0..inst.u.len() {
                let Some((top, bot)) = extend(top, bot, &inst.u[i], &inst.v[i]) else {
                    continue;
                };
                seq.push(i + 1);
                if top.is_empty() && bot.is_empty() {
                    sols.push(seq.clone());
                }
                dfs(inst, k, seq, &top, &bot, sols);
                seq.pop();
            }
        }
        let mut sols = Vec::new();
        dfs(self, k, &mut Vec::new(), &[], &[], &mut sols);
        sols.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        sols
    }

    /// Whether the two concatenations along `s` agree. The functions built
    /// by [`transducer`](Self::transducer) are continuous at an input with
    /// index prefix `s` exactly when they do.
    pub fn point_continuity(&self, s: &[usize]) -> Result<bool> {
        self.check_sequence(s)?;
        Ok(PcpInstance::concat(&self.u, s) == PcpInstance::concat(&self.v, s))
    }

    /// The function with domain C+.A^w sending an index block followed by a
    /// tail to the matching concatenation followed by the tail: the u side
    /// when the tail has infinitely many a's, the v side when finitely many.
    /// Both tail languages are dense, so the two branches fight at every
    /// input and continuity holds exactly where the concatenations agree.
    ///
    /// Input alphabet: one symbol per index, then a, b. Output alphabet:
    /// the instance alphabet, then a, b. Names are underscore-mangled away
    /// from the instance alphabet where needed.
    pub fn transducer(&self) -> BuchiTransducer {
        let n = self.u.len();
        let mut taken: BTreeSet<String> = self.gamma.names().iter().cloned().collect();
        let a = fresh("a", &mut taken);
        let b = fresh("b", &mut taken);
        let cs: Vec<String> = (1..=n).map(|i| fresh(&format!("c{i}"), &mut taken)).collect();
        let input = Alphabet::new(cs.into_iter().chain([a.clone(), b.clone()]))
            .expect("fresh names are valid and distinct");
        let output = Alphabet::new(self.gamma.names().iter().cloned().chain([a, b]))
            .expect("fresh names are valid and distinct");
        let (ia, ib) = (n, n + 1);
        let (oa, ob) = (self.gamma.len(), self.gamma.len() + 1);
        // 0 start, 1 u-blocks, 2 u-tail after a, 3 u-tail after b,
        // 4 v-blocks, 5 v-tail free, 6 v-tail committed to b
        let mut rules = Vec::new();
        for i in 0..n {
            for src in [0, 1] {
                rules.push(Rule::new(src, vec![i], self.u[i].clone(), 1));
            }
            for src in [0, 4] {
                rules.push(Rule::new(src, vec![i], self.v[i].clone(), 4));
            }
        }
        for src in [1, 2, 3] {
            rules.push(Rule::new(src, vec![ia], vec![oa], 2));
            rules.push(Rule::new(src, vec![ib], vec![ob], 3));
        }
        for src in [4, 5] {
            rules.push(Rule::new(src, vec![ia], vec![oa], 5));
            rules.push(Rule::new(src, vec![ib], vec![ob], 5));
            rules.push(Rule::new(src, vec![ib], vec![ob], 6));
        }
        rules.push(Rule::new(6, vec![ib], vec![ob], 6));
        BuchiTransducer::new(input, output, 7, 0, [2, 6], rules)
            .expect("states and symbols are in range")
    }

    /// Two-layer variant with domain C+.D+.A^w: after the index block a
    /// second block over three d-symbols chooses words of the fixed
    /// [`counting`](Self::counting) instance, again u sides against the
    /// infinitely-many-a tails and v sides against the rest. Continuity at
    /// an input requires both blocks to solve their instances.
    ///
    /// Input alphabet: index symbols, d1 d2 d3, a, b. Output alphabet: the
    /// instance alphabet, then c, d, a, b.
    pub fn nested_transducer(&self) -> BuchiTransducer {
        let n = self.u.len();
        let mut taken: BTreeSet<String> = self.gamma.names().iter().cloned().collect();
        let c = fresh("c", &mut taken);
        let d = fresh("d", &mut taken);
        let a = fresh("a", &mut taken);
        let b = fresh("b", &mut taken);
        let cs: Vec<String> = (1..=n).map(|i| fresh(&format!("c{i}"), &mut taken)).collect();
        let ds: Vec<String> = (1..=3).map(|j| fresh(&format!("d{j}"), &mut taken)).collect();
        let input = Alphabet::new(
            cs.into_iter()
                .chain(ds)
                .chain([a.clone(), b.clone()]),
        )
        .expect("fresh names are valid and distinct");
        let output = Alphabet::new(self.gamma.names().iter().cloned().chain([c, d, a, b]))
            .expect("fresh names are valid and distinct");
        let (ia, ib) = (n + 3, n + 4);
        let g = self.gamma.len();
        let (oc, od, oa, ob) = (g, g + 1, g + 2, g + 3);
        let inner_u = [vec![oc, oc], vec![od], vec![od]];
        let inner_v = [vec![oc], vec![oc], vec![od, od]];
        // 0 start, 1 u-blocks, 2 u inner blocks, 3 u-tail after a,
        // 4 u-tail after b, 5 v-blocks, 6 v inner blocks, 7 v-tail free,
        // 8 v-tail committed to b
        let mut rules = Vec::new();
        for i in 0..n {
            for src in [0, 1] {
                rules.push(Rule::new(src, vec![i], self.u[i].clone(), 1));
            }
            for src in [0, 5] {
                rules.push(Rule::new(src, vec![i], self.v[i].clone(), 5));
            }
        }
        for j in 0..3 {
            for src in [1, 2] {
                rules.push(Rule::new(src, vec![n + j], inner_u[j].clone(), 2));
            }
            for src in [5, 6] {
                rules.push(Rule::new(src, vec![n + j], inner_v[j].clone(), 6));
            }
        }
        for src in [2, 3, 4] {
            rules.push(Rule::new(src, vec![ia], vec![oa], 3));
            rules.push(Rule::new(src, vec![ib], vec![ob], 4));
        }
        for src in [6, 7] {
            rules.push(Rule::new(src, vec![ia], vec![oa], 7));
            rules.push(Rule::new(src, vec![ib], vec![ob], 7));
            rules.push(Rule::new(src, vec![ib], vec![ob], 8));
        }
        rules.push(Rule::new(8, vec![ib], vec![ob], 8));
        BuchiTransducer::new(input, output, 9, 0, [3, 8], rules)
            .expect("states and symbols are in range")
    }

    /// Metric evidence against continuity at the inputs with index prefix
    /// `s`, or `None` when the function is continuous there. Probes the
    /// built function at the all-a tail and approaches it through inputs
    /// that share ever longer prefixes but commit to the b tail; at a
    /// discontinuity the outputs keep splitting inside the concatenation
    /// region, depth `1..=k` each.
    pub fn discontinuity_falsifier(&self, s: &[usize], k: usize) -> Result<Option<Falsification>> {
        self.check_sequence(s)?;
        if k == 0 {
            return Err(Error::ZeroBound);
        }
        let t = self.transducer();
        let n = self.u.len();
        let (ia, ib) = (n, n + 1);
        let spine: Vec<SymbolId> = s.iter().map(|&i| i - 1).collect();
        let point = LassoWord::new(spine.clone(), vec![ia])?;
        let value = single_value(&t, &point)?;
        // outputs past the shorter concatenation come from the copied tail,
        // so a split beyond it means the approximants converge after all
        let region = PcpInstance::concat(&self.u, s)
            .len()
            .min(PcpInstance::concat(&self.v, s).len());
        let mut approximants = Vec::new();
        for depth in 1..=k {
            let mut prefix = spine.clone();
            prefix.extend(std::iter::repeat(ia).take(depth));
            let input = LassoWord::new(prefix, vec![ib])?;
            let out = single_value(&t, &input)?;
            let Divergence::Finite(value_agreement) = value.divergence(&out) else {
                return Ok(None);
            };
            if value_agreement > region {
                return Ok(None);
            }
            let input_agreement = match point.divergence(&input) {
                Divergence::Finite(i) => i,
                Divergence::Infinite => unreachable!("the tails a^w and b^w split"),
            };
            approximants.push(Approximant {
                depth,
                input,
                input_agreement,
                value: out,
                value_agreement,
            });
        }
        Ok(Some(Falsification {
            point,
            value,
            approximants,
        }))
    }
}

fn single_value(t: &BuchiTransducer, x: &LassoWord) -> Result<LassoWord> {
    t.evaluate(x, 1)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::OutsideDomain(x.clone()))
}

/// A family of inputs approaching `point` whose outputs all part from
/// `value` at a bounded position: the built function cannot be continuous
/// at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Falsification {
    pub point: LassoWord,
    pub value: LassoWord,
    pub approximants: Vec<Approximant>,
}

/// One member of the approaching family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximant {
    pub depth: usize,
    pub input: LassoWord,
    /// letters shared between `input` and the probed point; at least `depth`
    pub input_agreement: usize,
    pub value: LassoWord,
    /// letters shared between `value` and the probed value; bounded by the
    /// shorter concatenation
    pub value_agreement: usize,
}
