use crate::{Alphabet, Error, Result, SymbolId};
use std::fmt;

/// An ultimately periodic infinite word `u (v)^omega`, stored as the finite
/// prefix `u` and the non-empty cycle `v`.
///
/// Equality and ordering are structural, on the representation as written.
/// Use [`LassoWord::normalize`] or [`LassoWord::same_word`] to compare the
/// denoted infinite words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LassoWord {
    prefix: Vec<SymbolId>,
    cycle: Vec<SymbolId>,
}

impl LassoWord {
    pub fn new(prefix: Vec<SymbolId>, cycle: Vec<SymbolId>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(LassoWord { prefix, cycle })
    }

    /// The purely periodic word `(v)^omega`.
    pub fn periodic(cycle: Vec<SymbolId>) -> Result<Self> {
        LassoWord::new(Vec::new(), cycle)
    }

    pub fn prefix(&self) -> &[SymbolId] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[SymbolId] {
        &self.cycle
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter(&self, i: usize) -> SymbolId {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` letters.
    pub fn unroll(&self, n: usize) -> Vec<SymbolId> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    pub fn check_symbols(&self, alphabet: &Alphabet) -> Result<()> {
        for &s in self.prefix.iter().chain(&self.cycle) {
            alphabet.check_symbol(s)?;
        }
        Ok(())
    }

    /// The canonical representation of the denoted word: the cycle is reduced
    /// to its primitive root, then the prefix is shortened as far as possible
    /// (rotating the cycle along). Two lassos denote the same word iff their
    /// normal forms are equal.
    pub fn normalize(&self) -> LassoWord {
        let mut cycle = primitive_root(&self.cycle);
        let mut prefix = self.prefix.clone();
        // u a (w a)^omega = u (a w)^omega
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            let end = cycle.pop().unwrap();
            cycle.insert(0, end);
        }
        LassoWord { prefix, cycle }
    }

    /// Whether the two lassos denote the same infinite word.
    pub fn same_word(&self, other: &LassoWord) -> bool {
        self.divergence(other) == Divergence::Infinite
    }

    /// Length of the longest common prefix of the two denoted words.
    pub fn divergence(&self, other: &LassoWord) -> Divergence {
        let bound = self.prefix.len().max(other.prefix.len())
            + lcm(self.cycle.len(), other.cycle.len());
        for i in 0..bound {
            if self.letter(i) != other.letter(i) {
                return Divergence::Finite(i);
            }
        }
        Divergence::Infinite
    }

    /// Renders the word with symbol names, e.g. `ab(ba)`; multi-character
    /// symbols are space-separated, e.g. `aa b (b)`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if alphabet.single_char() {
            format!(
                "{}({})",
                alphabet.render_word(&self.prefix),
                alphabet.render_word(&self.cycle)
            )
        } else {
            let mut s = alphabet.render_word(&self.prefix);
            if !self.prefix.is_empty() {
                s.push(' ');
            }
            s.push_str(&format!("({})", alphabet.render_word(&self.cycle)));
            s
        }
    }
}

/// Fallback rendering with raw symbol indices; use
/// [`LassoWord::render`] when the alphabet is at hand.
impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[SymbolId]| {
            w.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.prefix.is_empty() {
            write!(f, "({})", join(&self.cycle))
        } else {
            write!(f, "{} ({})", join(&self.prefix), join(&self.cycle))
        }
    }
}

/// Length of the longest common prefix of two infinite words: finite for
/// distinct words, infinite for equal ones. Under the usual prefix metric,
/// larger divergence means closer words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divergence {
    Finite(usize),
    Infinite,
}

impl Divergence {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Divergence::Finite(n) => n >= k,
            Divergence::Infinite => true,
        }
    }
}

impl PartialOrd for Divergence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Divergence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Divergence::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

/// Shortest word `w` with `v = w^k`.
fn primitive_root(v: &[SymbolId]) -> Vec<SymbolId> {
    let n = v.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| v[i] == v[i - d]) {
            return v[..d].to_vec();
        }
    }
    unreachable!("d = n always divides")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(prefix: &[usize], cycle: &[usize]) -> LassoWord {
        LassoWord::new(prefix.to_vec(), cycle.to_vec()).unwrap()
    }

    #[test]
    fn rejects_empty_cycle() {
        assert_eq!(
            LassoWord::new(vec![0], vec![]).unwrap_err(),
            Error::EmptyCycle
        );
    }

    #[test]
    fn normalization_examples() {
        // ab(abab) = (ab)
        assert_eq!(w(&[0, 1], &[0, 1, 0, 1]).normalize(), w(&[], &[0, 1]));
        // a(aa) = (a)
        assert_eq!(w(&[0], &[0, 0]).normalize(), w(&[], &[0]));
        // abb(ba) = a(bb a)? no: last of prefix b = last of cycle a? here
        // abb(ba): prefix last b, cycle last a, already canonical.
        assert_eq!(w(&[0, 1, 1], &[1, 0]).normalize(), w(&[0, 1, 1], &[1, 0]));
        // ab(ba) = a(bb)? check: a b b a b a... vs a b b b...; not equal, and
        // ab(ba) shortens: prefix last b vs cycle last a, canonical as is.
        assert_eq!(w(&[0, 1], &[1, 0]).normalize(), w(&[0, 1], &[1, 0]));
        // aba(ba) = a(ba): prefix last a = cycle last a, rotate.
        assert_eq!(w(&[0, 1, 0], &[1, 0]).normalize(), w(&[0], &[1, 0]).normalize());
        assert_eq!(w(&[0, 1, 0], &[1, 0]).normalize(), w(&[], &[0, 1]));
    }

    #[test]
    fn normalize_preserves_word_and_is_idempotent() {
        let x = w(&[2, 0, 1], &[0, 1, 0, 1]);
        let n = x.normalize();
        assert!(x.same_word(&n));
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(w(&[], &[0]).divergence(&w(&[], &[1])), Divergence::Finite(0));
        // aab^omega vs a^omega
        assert_eq!(
            w(&[0, 0], &[1]).divergence(&w(&[], &[0])),
            Divergence::Finite(2)
        );
        assert_eq!(
            w(&[0, 1], &[0, 1, 0, 1]).divergence(&w(&[], &[0, 1])),
            Divergence::Infinite
        );
    }

    #[test]
    fn divergence_order() {
        assert!(Divergence::Infinite > Divergence::Finite(1000));
        assert!(Divergence::Finite(3).at_least(3));
        assert!(!Divergence::Finite(2).at_least(3));
    }

    #[test]
    fn rendering() {
        let ab = Alphabet::latin(2).unwrap();
        assert_eq!(w(&[0, 1], &[1, 0]).render(&ab), "ab(ba)");
        assert_eq!(w(&[], &[0]).render(&ab), "(a)");
        let wide = Alphabet::new(["aa", "b"]).unwrap();
        assert_eq!(w(&[0], &[1]).render(&wide), "aa (b)");
        assert_eq!(format!("{}", w(&[0], &[1, 0])), "0 (1 0)");
    }
}
