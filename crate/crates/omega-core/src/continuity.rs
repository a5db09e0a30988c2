//! Continuity of the map computed by a letter-to-letter transducer.
//!
//! Under the common-prefix metric, the map is discontinuous at a domain
//! point x exactly when the transducer carries a second infinite run over
//! x whose output separates from f(x). Finite prefixes of that run extend
//! to accepting runs (the transducer is trimmed first), so they produce
//! domain points agreeing with x arbitrarily long whose images all differ
//! from f(x) at one fixed position. The search for such a pair of runs is
//! a product of the transducer with itself: one track must accept, the
//! other merely continues, and a flag records whether the output tracks
//! have already differed.

use crate::error::Error;
use crate::graph;
use crate::lasso::LassoWord;
use crate::nba::Nba;
use crate::transducer::{Functionality, SyncTransducer};
use crate::{reduce, Result, StateId, SymbolId};

impl SyncTransducer {
    /// Trimmed copy, refused unless the relation is a function.
    fn checked(&self) -> Result<SyncTransducer> {
        let t = self.trim();
        match t.functionality() {
            Functionality::Functional => Ok(t),
            Functionality::Counterexample { input, out1, out2 } => {
                Err(Error::NotFunctional { input, out1, out2 })
            }
        }
    }

    /// Automaton over the input alphabet accepting exactly the domain
    /// points at which the computed map is discontinuous.
    pub fn discontinuity_automaton(&self) -> Result<Nba> {
        let t = self.checked()?;
        Ok(reduce::quotient(&disc_product(&t).trim()).trim())
    }

    /// Automaton for the continuity set: the domain points where the
    /// computed map is continuous.
    pub fn continuity_set(&self) -> Result<Nba> {
        let t = self.checked()?;
        let disc = reduce::quotient(&disc_product(&t).trim()).trim();
        Ok(t.as_buchi().dom().intersect(&disc.complement()?)?.trim())
    }

    /// Whether the computed map is continuous on all of its domain.
    pub fn is_continuous(&self) -> Result<bool> {
        let t = self.checked()?;
        Ok(disc_product(&t).is_empty_language())
    }

    /// Whether the computed map is continuous at the domain point `x`.
    pub fn is_continuous_at(&self, x: &LassoWord) -> Result<bool> {
        Ok(self.discontinuity_witness_at(x)?.is_none())
    }

    /// Evidence of a jump at the domain point `x`, or `None` when the map
    /// is continuous there.
    pub fn discontinuity_witness_at(
        &self,
        x: &LassoWord,
    ) -> Result<Option<DiscontinuityWitness>> {
        let t = self.checked()?;
        if !t.as_buchi().dom().contains(x)? {
            return Err(Error::OutsideDomain(x.clone()));
        }
        let x = x.normalize();
        let b = t.as_buchi();
        let n = b.state_count();
        let plen = x.prefix().len();
        let m = plen + x.cycle().len();
        let rules: Vec<(StateId, SymbolId, SymbolId, StateId)> = t.letter_rules().collect();
        // the discontinuity product pinned to the spine of x:
        // node ((j * n + p) * n + p2) * 2 + flag reads x[j] next
        let enc = |j: usize, p: usize, p2: usize, bit: usize| ((j * n + p) * n + p2) * 2 + bit;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m * n * n * 2];
        for j in 0..m {
            let jn = if j + 1 == m { plen } else { j + 1 };
            for &(p, a, o, q) in &rules {
                if a != x.letter(j) {
                    continue;
                }
                for &(p2, a2, o2, q2) in &rules {
                    if a2 != a {
                        continue;
                    }
                    let differs = (o != o2) as usize;
                    for bit in 0..2 {
                        adj[enc(j, p, p2, bit)].push((0, enc(jn, q, q2, bit | differs)));
                    }
                }
            }
        }
        let mut acc = vec![false; adj.len()];
        for j in 0..m {
            for p in (0..n).filter(|&p| b.is_accepting(p)) {
                for p2 in 0..n {
                    acc[enc(j, p, p2, 1)] = true;
                }
            }
        }
        let init = enc(0, b.initial(), b.initial(), 0);
        let (stem, cycle) = match graph::gen_buchi_witness(&adj, init, &[acc]) {
            None => return Ok(None),
            Some(run) => run,
        };
        // second-track state at each step; the cycle part repeats forever
        let track2 = |node: usize| (node / 2) % n;
        let spine: Vec<StateId> = stem
            .iter()
            .chain(cycle.iter())
            .map(|&(src, _, _)| track2(src))
            .collect();
        // the flag rises exactly once, and never inside the cycle: the
        // cycle is a closed walk and the flag cannot fall again
        let split = stem
            .iter()
            .position(|&(src, _, dst)| src & 1 == 0 && dst & 1 == 1)
            .expect("a witness run raises the divergence flag in its stem");
        Ok(Some(DiscontinuityWitness {
            t,
            x,
            split,
            spine,
            stem_len: stem.len(),
        }))
    }
}

/// Evidence that the computed map jumps at a domain point: a second run
/// over the same input whose output separates at a fixed position while
/// every one of its states still extends to an accepting run.
#[derive(Debug, Clone)]
pub struct DiscontinuityWitness {
    t: SyncTransducer,
    x: LassoWord,
    split: usize,
    spine: Vec<StateId>,
    stem_len: usize,
}

impl DiscontinuityWitness {
    /// The discontinuity point itself.
    pub fn point(&self) -> &LassoWord {
        &self.x
    }

    /// Position at which the second run's output differs from the image
    /// of the point. Images of all approximants differ there too.
    pub fn output_split(&self) -> usize {
        self.split
    }

    fn track2_at(&self, i: usize) -> StateId {
        if i < self.stem_len {
            self.spine[i]
        } else {
            let period = self.spine.len() - self.stem_len;
            self.spine[self.stem_len + (i - self.stem_len) % period]
        }
    }

    /// A domain point agreeing with the jump point on at least `k` letters
    /// whose image differs from the point's image at `output_split()`:
    /// follow the second run for `k` steps, then close it off with any
    /// accepting tail.
    pub fn approximant(&self, k: usize) -> LassoWord {
        let m = k.max(self.split + 1);
        let b = self.t.as_buchi();
        let rules: Vec<(StateId, SymbolId, SymbolId, StateId)> =
            self.t.letter_rules().collect();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b.state_count()];
        for (i, &(p, _, _, q)) in rules.iter().enumerate() {
            adj[p].push((i, q));
        }
        let acc: Vec<bool> = (0..b.state_count()).map(|q| b.is_accepting(q)).collect();
        let (stem, cycle) = graph::gen_buchi_witness(&adj, self.track2_at(m), &[acc])
            .expect("every state of a trimmed transducer reaches acceptance");
        let mut prefix = self.x.unroll(m);
        prefix.extend(stem.iter().map(|&(_, r, _)| rules[r].1));
        let cyc: Vec<SymbolId> = cycle.iter().map(|&(_, r, _)| rules[r].1).collect();
        LassoWord::new(prefix, cyc)
            .expect("witness cycles are non-empty")
            .normalize()
    }
}

/// Product of the transducer with itself over a shared input: states are
/// (accepting track, free track, flag) with the flag raised once the two
/// output tracks have differed. Acceptance is on the first track alone.
fn disc_product(t: &SyncTransducer) -> Nba {
    let b = t.as_buchi();
    let n = b.state_count();
    let enc = |p: usize, p2: usize, bit: usize| (p * n + p2) * 2 + bit;
    let rules: Vec<(StateId, SymbolId, SymbolId, StateId)> = t.letter_rules().collect();
    let mut transitions = Vec::new();
    for &(p, a, o, q) in &rules {
        for &(p2, a2, o2, q2) in &rules {
            if a2 != a {
                continue;
            }
            let differs = (o != o2) as usize;
            for bit in 0..2 {
                transitions.push((enc(p, p2, bit), a, enc(q, q2, bit | differs)));
            }
        }
    }
    let accepting = (0..n)
        .filter(|&p| b.is_accepting(p))
        .flat_map(|p| (0..n).map(move |p2| enc(p, p2, 1)));
    Nba::new(
        b.input_alphabet().clone(),
        n * n * 2,
        enc(b.initial(), b.initial(), 0),
        accepting,
        transitions,
    )
    .expect("product states are in range")
}
