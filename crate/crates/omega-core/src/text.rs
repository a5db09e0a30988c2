//! Line-based text formats for every artifact, plus graphviz emission.
//!
//! All files share the same conventions: one `key: value` pair per line,
//! `#` starts a comment, blank lines are ignored, and symbol-bearing lines
//! must come after the alphabet they refer to. Automata:
//!
//! ```text
//! kind: nba           # or dba; muller replaces accepting with table lines
//! alphabet: a b
//! states: 2
//! initial: 0
//! accepting: 1
//! trans: 0 a 1
//! ```
//!
//! Transducers add `output-alphabet:` and write rules as
//! `trans: src inword / outword dst` where a word is compact (`ab`) over
//! single-character alphabets, whitespace-separated tokens otherwise, and
//! `eps` denotes the empty word. Correspondence instances:
//!
//! ```text
//! n: 2
//! gamma: a b
//! u: ab b
//! v: a bb
//! ```
//!
//! Lasso words read `prefix(cycle)`, compact over single-character
//! alphabets, token-per-symbol otherwise, e.g. `ab(ba)` or `aa b ( b )`.

use crate::muller::DetMuller;
use crate::nba::{Dba, Nba};
use crate::pcp::PcpInstance;
use crate::transducer::{BuchiTransducer, Rule, SyncTransducer};
use crate::{Alphabet, Error, LassoWord, Result, SymbolId};
use std::fmt::Write as _;

/// Any of the three acceptor kinds a file can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Nba(Nba),
    Dba(Dba),
    Muller(DetMuller),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Nba(a) => a.alphabet(),
            Automaton::Dba(d) => d.alphabet(),
            Automaton::Muller(m) => m.alphabet(),
        }
    }

    /// The language as a plain Büchi automaton, converting where needed.
    pub fn to_nba(&self) -> Nba {
        match self {
            Automaton::Nba(a) => a.clone(),
            Automaton::Dba(d) => d.as_nba().clone(),
            Automaton::Muller(m) => m.to_nba(),
        }
    }
}

/// A transducer file, synchronous or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTransducer {
    Buchi(BuchiTransducer),
    Sync(SyncTransducer),
}

impl AnyTransducer {
    pub fn as_buchi(&self) -> &BuchiTransducer {
        match self {
            AnyTransducer::Buchi(t) => t,
            AnyTransducer::Sync(t) => t.as_buchi(),
        }
    }

    /// The synchronous view, re-validating letter-to-letter shape if the
    /// file did not promise it.
    pub fn into_sync(self) -> Result<SyncTransducer> {
        match self {
            AnyTransducer::Buchi(t) => SyncTransducer::new(t),
            AnyTransducer::Sync(t) => Ok(t),
        }
    }
}

/// Comment-stripped, non-empty lines with their 1-based numbers.
fn fields(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn key_value(line: usize, body: &str) -> Result<(&str, &str)> {
    body.split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::parse(line, "expected `key: value`"))
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a number, got `{tok}`")))
}

fn numbers(line: usize, v: &str) -> Result<Vec<usize>> {
    v.split_whitespace().map(|t| number(line, t)).collect()
}

fn set_once<T>(line: usize, key: &str, slot: &mut Option<T>, value: T) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line, format!("duplicate `{key}` line")));
    }
    *slot = Some(value);
    Ok(())
}

fn require<T>(key: &str, slot: Option<T>) -> Result<T> {
    slot.ok_or_else(|| Error::parse(1, format!("missing `{key}` line")))
}

fn need_alphabet<'a>(line: usize, sigma: Option<&'a Alphabet>, key: &str) -> Result<&'a Alphabet> {
    sigma.ok_or_else(|| Error::parse(line, format!("`{key}` must come after the alphabet")))
}

fn symbol(line: usize, sigma: &Alphabet, tok: &str) -> Result<SymbolId> {
    sigma
        .index(tok)
        .ok_or_else(|| Error::parse(line, format!("unknown symbol `{tok}`")))
}

/// One whitespace token into symbols: an exact name, per-character over
/// single-character alphabets, or dot-separated names otherwise.
fn chunk_symbols(line: usize, sigma: &Alphabet, chunk: &str, out: &mut Vec<SymbolId>) -> Result<()> {
    if let Some(id) = sigma.index(chunk) {
        out.push(id);
        return Ok(());
    }
    if sigma.single_char() {
        for ch in chunk.chars() {
            out.push(symbol(line, sigma, &ch.to_string())?);
        }
        return Ok(());
    }
    for piece in chunk.split('.') {
        out.push(symbol(line, sigma, piece)?);
    }
    Ok(())
}

/// A word given as whitespace chunks; `eps` alone is the empty word unless
/// the alphabet claims that name.
fn word(line: usize, sigma: &Alphabet, chunks: &[&str]) -> Result<Vec<SymbolId>> {
    if chunks.is_empty() {
        return Err(Error::parse(line, "empty word must be written `eps`"));
    }
    if chunks == ["eps"] && sigma.index("eps").is_none() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for chunk in chunks {
        chunk_symbols(line, sigma, chunk, &mut out)?;
    }
    Ok(out)
}

fn render_chunk(sigma: &Alphabet, word: &[SymbolId]) -> String {
    if sigma.single_char() {
        word.iter().map(|&s| sigma.name(s)).collect()
    } else {
        word.iter()
            .map(|&s| sigma.name(s))
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub fn parse_automaton(src: &str) -> Result<Automaton> {
    let mut kind: Option<(usize, String)> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Option<(usize, Vec<usize>)> = None;
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut trans: Vec<(usize, usize, usize)> = Vec::new();
    for (ln, body) in fields(src) {
        let (k, v) = key_value(ln, body)?;
        match k {
            "kind" => set_once(ln, k, &mut kind, (ln, v.to_string()))?,
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(ln, "duplicate `alphabet` line"));
                }
                alphabet = Some(Alphabet::new(v.split_whitespace())?);
            }
            "states" => set_once(ln, k, &mut states, number(ln, v)?)?,
            "initial" => set_once(ln, k, &mut initial, number(ln, v)?)?,
            "accepting" => set_once(ln, k, &mut accepting, (ln, numbers(ln, v)?))?,
            "table" => tables.push(numbers(ln, v)?),
            "trans" => {
                let sigma = need_alphabet(ln, alphabet.as_ref(), "trans")?;
                let toks: Vec<&str> = v.split_whitespace().collect();
                let [src, sym, dst] = toks[..] else {
                    return Err(Error::parse(ln, "expected `trans: src sym dst`"));
                };
                trans.push((number(ln, src)?, symbol(ln, sigma, sym)?, number(ln, dst)?));
            }
            other => return Err(Error::parse(ln, format!("unknown key `{other}`"))),
        }
    }
    let (kline, kind) = require("kind", kind)?;
    let alphabet = require("alphabet", alphabet)?;
    let states = require("states", states)?;
    let initial = require("initial", initial)?;
    if kind == "muller" {
        if let Some((ln, _)) = accepting {
            return Err(Error::parse(ln, "muller automata use `table` lines, not `accepting`"));
        }
        let m = DetMuller::new(alphabet, states, initial, trans, tables)?;
        return Ok(Automaton::Muller(m));
    }
    if !tables.is_empty() {
        return Err(Error::parse(kline, format!("`table` lines are only valid for kind muller, not {kind}")));
    }
    let accepting = accepting.map(|(_, v)| v).unwrap_or_default();
    let a = Nba::new(alphabet, states, initial, accepting, trans)?;
    match kind.as_str() {
        "nba" => Ok(Automaton::Nba(a)),
        "dba" => Ok(Automaton::Dba(Dba::new(a)?)),
        other => Err(Error::parse(kline, format!("unknown kind `{other}`"))),
    }
}

pub fn render_automaton(a: &Automaton) -> String {
    let (kind, nba) = match a {
        Automaton::Nba(x) => ("nba", x.clone()),
        Automaton::Dba(d) => ("dba", d.as_nba().clone()),
        Automaton::Muller(m) => {
            let mut s = String::new();
            let sigma = m.alphabet();
            writeln!(s, "kind: muller").unwrap();
            writeln!(s, "alphabet: {}", sigma.names().join(" ")).unwrap();
            writeln!(s, "states: {}", m.state_count()).unwrap();
            writeln!(s, "initial: {}", m.initial()).unwrap();
            for t in m.tables() {
                let row: Vec<String> = t.iter().map(|q| q.to_string()).collect();
                writeln!(s, "table: {}", row.join(" ")).unwrap();
            }
            for &(p, a, q) in m.transitions() {
                writeln!(s, "trans: {} {} {}", p, sigma.name(a), q).unwrap();
            }
            return s;
        }
    };
    let mut s = String::new();
    let sigma = nba.alphabet();
    writeln!(s, "kind: {kind}").unwrap();
    writeln!(s, "alphabet: {}", sigma.names().join(" ")).unwrap();
    writeln!(s, "states: {}", nba.state_count()).unwrap();
    writeln!(s, "initial: {}", nba.initial()).unwrap();
    let acc: Vec<String> = nba.accepting_states().iter().map(|q| q.to_string()).collect();
    writeln!(s, "accepting: {}", acc.join(" ")).unwrap();
    for &(p, a, q) in nba.transitions() {
        writeln!(s, "trans: {} {} {}", p, sigma.name(a), q).unwrap();
    }
    s
}

pub fn parse_transducer(src: &str) -> Result<AnyTransducer> {
    let mut kind: Option<(usize, String)> = None;
    let mut input: Option<Alphabet> = None;
    let mut output: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Option<(usize, Vec<usize>)> = None;
    let mut rules: Vec<Rule> = Vec::new();
    for (ln, body) in fields(src) {
        let (k, v) = key_value(ln, body)?;
        match k {
            "kind" => set_once(ln, k, &mut kind, (ln, v.to_string()))?,
            "alphabet" => {
                if input.is_some() {
                    return Err(Error::parse(ln, "duplicate `alphabet` line"));
                }
                input = Some(Alphabet::new(v.split_whitespace())?);
            }
            "output-alphabet" => {
                if output.is_some() {
                    return Err(Error::parse(ln, "duplicate `output-alphabet` line"));
                }
                output = Some(Alphabet::new(v.split_whitespace())?);
            }
            "states" => set_once(ln, k, &mut states, number(ln, v)?)?,
            "initial" => set_once(ln, k, &mut initial, number(ln, v)?)?,
            "accepting" => set_once(ln, k, &mut accepting, (ln, numbers(ln, v)?))?,
            "trans" => {
                let isig = need_alphabet(ln, input.as_ref(), "trans")?;
                let osig = need_alphabet(ln, output.as_ref(), "trans")?;
                let toks: Vec<&str> = v.split_whitespace().collect();
                if toks.len() < 4 {
                    return Err(Error::parse(ln, "expected `trans: src inword / outword dst`"));
                }
                let src = number(ln, toks[0])?;
                let dst = number(ln, toks[toks.len() - 1])?;
                let middle = &toks[1..toks.len() - 1];
                let sep = middle
                    .iter()
                    .position(|&t| t == "/")
                    .ok_or_else(|| Error::parse(ln, "expected `/` between input and output words"))?;
                rules.push(Rule::new(
                    src,
                    word(ln, isig, &middle[..sep])?,
                    word(ln, osig, &middle[sep + 1..])?,
                    dst,
                ));
            }
            other => return Err(Error::parse(ln, format!("unknown key `{other}`"))),
        }
    }
    let (kline, kind) = require("kind", kind)?;
    let input = require("alphabet", input)?;
    let output = require("output-alphabet", output)?;
    let states = require("states", states)?;
    let initial = require("initial", initial)?;
    let accepting = accepting.map(|(_, v)| v).unwrap_or_default();
    let t = BuchiTransducer::new(input, output, states, initial, accepting, rules)?;
    match kind.as_str() {
        "transducer" => Ok(AnyTransducer::Buchi(t)),
        "sync-transducer" => Ok(AnyTransducer::Sync(SyncTransducer::new(t)?)),
        other => Err(Error::parse(kline, format!("unknown kind `{other}`"))),
    }
}

pub fn render_transducer(t: &AnyTransducer) -> String {
    let kind = match t {
        AnyTransducer::Buchi(_) => "transducer",
        AnyTransducer::Sync(_) => "sync-transducer",
    };
    let t = t.as_buchi();
    let mut s = String::new();
    writeln!(s, "kind: {kind}").unwrap();
    writeln!(s, "alphabet: {}", t.input_alphabet().names().join(" ")).unwrap();
    writeln!(s, "output-alphabet: {}", t.output_alphabet().names().join(" ")).unwrap();
    writeln!(s, "states: {}", t.state_count()).unwrap();
    writeln!(s, "initial: {}", t.initial()).unwrap();
    let acc: Vec<String> = t.accepting_states().iter().map(|q| q.to_string()).collect();
    writeln!(s, "accepting: {}", acc.join(" ")).unwrap();
    for r in t.rules() {
        let i = if r.input.is_empty() {
            "eps".to_string()
        } else {
            t.input_alphabet().render_word(&r.input)
        };
        let o = if r.output.is_empty() {
            "eps".to_string()
        } else {
            t.output_alphabet().render_word(&r.output)
        };
        writeln!(s, "trans: {} {} / {} {}", r.src, i, o, r.dst).unwrap();
    }
    s
}

pub fn parse_instance(src: &str) -> Result<PcpInstance> {
    let mut n: Option<(usize, usize)> = None;
    let mut gamma: Option<Alphabet> = None;
    let mut u: Option<(usize, Vec<Vec<SymbolId>>)> = None;
    let mut v: Option<(usize, Vec<Vec<SymbolId>>)> = None;
    let tuple = |ln: usize, sigma: Option<&Alphabet>, val: &str| -> Result<(usize, Vec<Vec<SymbolId>>)> {
        let sigma = need_alphabet(ln, sigma, "word tuples")?;
        let words: Result<Vec<Vec<SymbolId>>> = val
            .split_whitespace()
            .map(|chunk| word(ln, sigma, &[chunk]))
            .collect();
        Ok((ln, words?))
    };
    for (ln, body) in fields(src) {
        let (k, val) = key_value(ln, body)?;
        match k {
            "n" => set_once(ln, k, &mut n, (ln, number(ln, val)?))?,
            "gamma" => {
                if gamma.is_some() {
                    return Err(Error::parse(ln, "duplicate `gamma` line"));
                }
                gamma = Some(Alphabet::new(val.split_whitespace())?);
            }
            "u" => {
                let t = tuple(ln, gamma.as_ref(), val)?;
                set_once(ln, k, &mut u, t)?;
            }
            "v" => {
                let t = tuple(ln, gamma.as_ref(), val)?;
                set_once(ln, k, &mut v, t)?;
            }
            other => return Err(Error::parse(ln, format!("unknown key `{other}`"))),
        }
    }
    let (nline, n) = require("n", n)?;
    let gamma = require("gamma", gamma)?;
    let (_, u) = require("u", u)?;
    let (_, v) = require("v", v)?;
    if u.len() != n || v.len() != n {
        return Err(Error::parse(
            nline,
            format!("declared {n} word pairs, found {} and {}", u.len(), v.len()),
        ));
    }
    PcpInstance::new(gamma, u, v)
}

pub fn render_instance(inst: &PcpInstance) -> String {
    let sigma = inst.alphabet();
    let row = |words: &[Vec<SymbolId>]| {
        words
            .iter()
            .map(|w| render_chunk(sigma, w))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    writeln!(s, "n: {}", inst.arity()).unwrap();
    writeln!(s, "gamma: {}", sigma.names().join(" ")).unwrap();
    writeln!(s, "u: {}", row(inst.u_words())).unwrap();
    writeln!(s, "v: {}", row(inst.v_words())).unwrap();
    s
}

pub fn parse_lasso(src: &str, sigma: &Alphabet) -> Result<LassoWord> {
    let spaced = src.replace('(', " ( ").replace(')', " ) ");
    let toks: Vec<&str> = spaced.split_whitespace().collect();
    let open = toks
        .iter()
        .position(|&t| t == "(")
        .ok_or_else(|| Error::parse(1, "lasso must contain a `(cycle)` part"))?;
    if toks.last() != Some(&")") || toks[open + 1..toks.len() - 1].iter().any(|&t| t == "(" || t == ")") {
        return Err(Error::parse(1, "lasso must end with a single `(cycle)` part"));
    }
    let mut prefix = Vec::new();
    for chunk in &toks[..open] {
        chunk_symbols(1, sigma, chunk, &mut prefix)?;
    }
    let mut cycle = Vec::new();
    for chunk in &toks[open + 1..toks.len() - 1] {
        chunk_symbols(1, sigma, chunk, &mut cycle)?;
    }
    LassoWord::new(prefix, cycle)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn render_dot_automaton(a: &Automaton) -> String {
    let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    match a {
        Automaton::Muller(m) => {
            let sigma = m.alphabet();
            let tables: Vec<String> = m
                .tables()
                .iter()
                .map(|t| {
                    let row: Vec<String> = t.iter().map(|q| q.to_string()).collect();
                    format!("{{{}}}", row.join(" "))
                })
                .collect();
            writeln!(s, "  label=\"tables: {}\";", dot_escape(&tables.join(", "))).unwrap();
            writeln!(s, "  start [shape=point, label=\"\"];").unwrap();
            writeln!(s, "  start -> q{};", m.initial()).unwrap();
            for &(p, a, q) in m.transitions() {
                writeln!(s, "  q{} -> q{} [label=\"{}\"];", p, q, dot_escape(sigma.name(a))).unwrap();
            }
        }
        _ => {
            let nba = a.to_nba();
            let sigma = nba.alphabet();
            writeln!(s, "  start [shape=point, label=\"\"];").unwrap();
            writeln!(s, "  start -> q{};", nba.initial()).unwrap();
            for q in nba.accepting_states() {
                writeln!(s, "  q{q} [shape=doublecircle];").unwrap();
            }
            for &(p, a, q) in nba.transitions() {
                writeln!(s, "  q{} -> q{} [label=\"{}\"];", p, q, dot_escape(sigma.name(a))).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn render_dot_transducer(t: &AnyTransducer) -> String {
    let t = t.as_buchi();
    let mut s = String::from("digraph transducer {\n  rankdir=LR;\n  node [shape=circle];\n");
    writeln!(s, "  start [shape=point, label=\"\"];").unwrap();
    writeln!(s, "  start -> q{};", t.initial()).unwrap();
    for q in t.accepting_states() {
        writeln!(s, "  q{q} [shape=doublecircle];").unwrap();
    }
    for r in t.rules() {
        let i = if r.input.is_empty() {
            "eps".to_string()
        } else {
            t.input_alphabet().render_word(&r.input)
        };
        let o = if r.output.is_empty() {
            "eps".to_string()
        } else {
            t.output_alphabet().render_word(&r.output)
        };
        writeln!(
            s,
            "  q{} -> q{} [label=\"{} / {}\"];",
            r.src,
            r.dst,
            dot_escape(&i),
            dot_escape(&o)
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}
