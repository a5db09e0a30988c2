use crate::{Error, Result, SymbolId};

/// A finite, ordered alphabet of named symbols.
///
/// Symbols are referred to by their index everywhere else; the names only
/// matter for parsing and printing. Two alphabets are compatible when they
/// list the same names in the same order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from symbol names. Names must be non-empty, free of
    /// whitespace and the reserved characters `#`, `(`, `)`, and pairwise
    /// distinct.
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for s in &symbols {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || "#()".contains(c)) {
                return Err(Error::BadSymbolToken(s.clone()));
            }
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Convenience constructor for single-character symbols `a`, `b`, `c`, ...
    pub fn latin(n: usize) -> Result<Self> {
        if n == 0 || n > 26 {
            return Err(Error::EmptyAlphabet);
        }
        Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    /// Index of a symbol name, if present.
    pub fn index(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn index_or_err(&self, name: &str) -> Result<SymbolId> {
        self.index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn check_symbol(&self, id: SymbolId) -> Result<()> {
        if id < self.symbols.len() {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                index: id,
                size: self.symbols.len(),
            })
        }
    }

    /// True when every symbol is a single character; enables the compact
    /// word rendering without separators.
    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Extends the alphabet with a fresh symbol based on `base`, appending
    /// underscores until the name is unused. Returns the new symbol's index.
    pub fn with_fresh(&self, base: &str) -> (Alphabet, SymbolId) {
        let mut name = base.to_string();
        while self.symbols.contains(&name) {
            name.push('_');
        }
        let mut symbols = self.symbols.clone();
        symbols.push(name);
        let id = symbols.len() - 1;
        (Alphabet { symbols }, id)
    }

    pub(crate) fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.symbols.join(" "),
                right: other.symbols.join(" "),
            })
        }
    }

    /// Renders a finite word over this alphabet: compact when all symbols are
    /// single characters, space-separated otherwise.
    pub fn render_word(&self, word: &[SymbolId]) -> String {
        if self.single_char() {
            word.iter().map(|&s| self.name(s)).collect()
        } else {
            word.iter()
                .map(|&s| self.name(s))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}
