//! Free involution monoid machinery: starrable symbols, words, terms and
//! their flattening, occurrence orders and content classification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("symbol {0} does not occur in the word")]
    UndefinedSymbol(Symbol),
    #[error("ordinal {ordinal} is out of range for {symbol} (occurs {occ} times)")]
    InvalidOrdinal { symbol: Symbol, ordinal: usize, occ: usize },
    #[error("occurrence reference does not match the word at its position")]
    StaleOccRef,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// A variable, possibly starred: `x` or `x*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    base: String,
    starred: bool,
}

impl Symbol {
    pub fn new(base: impl Into<String>, starred: bool) -> Self {
        let base = base.into();
        assert!(!base.is_empty(), "symbol base must be nonempty");
        Symbol { base, starred }
    }

    pub fn plain(base: impl Into<String>) -> Self {
        Symbol::new(base, false)
    }

    pub fn starred(base: impl Into<String>) -> Self {
        Symbol::new(base, true)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }

    /// The star partner: x ↦ x*, x* ↦ x.
    pub fn star(&self) -> Symbol {
        Symbol { base: self.base.clone(), starred: !self.starred }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, if self.starred { "*" } else { "" })
    }
}

/// A word over X ∪ X*; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct InvWord {
    symbols: Vec<Symbol>,
}

impl InvWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        InvWord { symbols }
    }

    pub fn empty() -> Self {
        InvWord::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn concat(&self, other: &InvWord) -> InvWord {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        InvWord { symbols }
    }

    /// Subsequence keeping symbols whose base variable is in `vars`,
    /// starred and unstarred alike.
    pub fn restrict<S: AsRef<str>>(&self, vars: &[S]) -> InvWord {
        let keep: BTreeSet<&str> = vars.iter().map(|v| v.as_ref()).collect();
        InvWord {
            symbols: self
                .symbols
                .iter()
                .filter(|s| keep.contains(s.base()))
                .cloned()
                .collect(),
        }
    }

    /// The plain projection: drop every star.
    pub fn project(&self) -> InvWord {
        InvWord {
            symbols: self.symbols.iter().map(|s| Symbol::plain(s.base())).collect(),
        }
    }

    /// Reversal with every symbol starred; the word-level involution.
    pub fn involute(&self) -> InvWord {
        InvWord {
            symbols: self.symbols.iter().rev().map(Symbol::star).collect(),
        }
    }

    /// The OccRef for the `ordinal`-th occurrence of `symbol`.
    pub fn occurrence(&self, symbol: &Symbol, ordinal: usize) -> Result<OccRef, WordError> {
        let mut seen = 0;
        for (position, s) in self.symbols.iter().enumerate() {
            if s == symbol {
                seen += 1;
                if seen == ordinal {
                    return Ok(OccRef { symbol: symbol.clone(), ordinal, position });
                }
            }
        }
        if seen == 0 {
            Err(WordError::UndefinedSymbol(symbol.clone()))
        } else {
            Err(WordError::InvalidOrdinal { symbol: symbol.clone(), ordinal, occ: seen })
        }
    }

    /// All occurrences of all symbols, in word order.
    pub fn occurrence_set(&self) -> Vec<OccRef> {
        let mut counts: HashMap<&Symbol, usize> = HashMap::new();
        self.symbols
            .iter()
            .enumerate()
            .map(|(position, s)| {
                let c = counts.entry(s).or_insert(0);
                *c += 1;
                OccRef { symbol: s.clone(), ordinal: *c, position }
            })
            .collect()
    }
}

impl fmt::Display for InvWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// A pointer to the i-th occurrence of a symbol. The position is
/// authoritative; the ordinal is kept for display.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccRef {
    pub symbol: Symbol,
    pub ordinal: usize,
    pub position: usize,
}

impl fmt::Display for OccRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.symbol, self.ordinal)
    }
}

/// A term over X: symbols closed under concatenation and star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Leaf(Symbol),
    Concat(Vec<Term>),
    Star(Box<Term>),
}

impl Term {
    pub fn concat(parts: Vec<Term>) -> Term {
        assert!(!parts.is_empty(), "concat lists are nonempty");
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            Term::Concat(parts)
        }
    }

    pub fn star(t: Term) -> Term {
        Term::Star(Box::new(t))
    }
}

/// Flatten a term into its unique word ⌊t⌋: stars are pushed to the leaves,
/// reversing concatenation order, and double stars cancel.
pub fn flatten(t: &Term) -> InvWord {
    let mut out = Vec::new();
    flatten_into(t, false, &mut out);
    InvWord::new(out)
}

fn flatten_into(t: &Term, under_star: bool, out: &mut Vec<Symbol>) {
    match t {
        Term::Leaf(s) => {
            out.push(if under_star { s.star() } else { s.clone() });
        }
        Term::Concat(parts) => {
            if under_star {
                for p in parts.iter().rev() {
                    flatten_into(p, true, out);
                }
            } else {
                for p in parts {
                    flatten_into(p, false, out);
                }
            }
        }
        Term::Star(inner) => flatten_into(inner, !under_star, out),
    }
}

/// Content classification of a word: con, mix, ml, lin and exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentReport {
    pub con: BTreeSet<Symbol>,
    pub mix: BTreeSet<Symbol>,
    pub ml: BTreeSet<Symbol>,
    pub lin: BTreeSet<Symbol>,
    pub occ: BTreeMap<Symbol, usize>,
}

pub fn analyze(w: &InvWord) -> ContentReport {
    let mut occ: BTreeMap<Symbol, usize> = BTreeMap::new();
    for s in w.symbols() {
        *occ.entry(s.clone()).or_insert(0) += 1;
    }
    let con: BTreeSet<Symbol> = occ.keys().cloned().collect();
    let mix: BTreeSet<Symbol> = con.iter().filter(|s| con.contains(&s.star())).cloned().collect();
    let ml = mix.iter().filter(|s| occ[*s] == 1).cloned().collect();
    let lin = con
        .iter()
        .filter(|s| !mix.contains(*s) && occ[*s] == 1)
        .cloned()
        .collect();
    ContentReport { con, mix, ml, lin, occ }
}

/// First/last positions and occurrence counts of every symbol in a word,
/// built in a single scan so comparisons are O(1) afterwards.
#[derive(Debug, Clone)]
pub struct PositionIndex {
    first: HashMap<Symbol, usize>,
    last: HashMap<Symbol, usize>,
    occ: HashMap<Symbol, usize>,
}

impl PositionIndex {
    pub fn new(w: &InvWord) -> Self {
        let mut first = HashMap::new();
        let mut last = HashMap::new();
        let mut occ: HashMap<Symbol, usize> = HashMap::new();
        for (i, s) in w.symbols().iter().enumerate() {
            first.entry(s.clone()).or_insert(i);
            last.insert(s.clone(), i);
            *occ.entry(s.clone()).or_insert(0) += 1;
        }
        PositionIndex { first, last, occ }
    }

    pub fn first(&self, s: &Symbol) -> Option<usize> {
        self.first.get(s).copied()
    }

    pub fn last(&self, s: &Symbol) -> Option<usize> {
        self.last.get(s).copied()
    }

    pub fn occ(&self, s: &Symbol) -> usize {
        self.occ.get(s).copied().unwrap_or(0)
    }

    /// ∞a ≺ ₁b: the last occurrence of `a` strictly precedes the first
    /// occurrence of `b`. False for a = b.
    pub fn precedes(&self, a: &Symbol, b: &Symbol) -> Result<bool, WordError> {
        let la = self.last(a).ok_or_else(|| WordError::UndefinedSymbol(a.clone()))?;
        let fb = self.first(b).ok_or_else(|| WordError::UndefinedSymbol(b.clone()))?;
        Ok(la < fb)
    }
}

/// ∞a ≺_w ₁b per the unsubscripted convention.
pub fn precedes(w: &InvWord, a: &Symbol, b: &Symbol) -> Result<bool, WordError> {
    PositionIndex::new(w).precedes(a, b)
}

/// ᵢx ≺_w ⱼy: positional comparison of two validated occurrence references.
pub fn occ_precedes(w: &InvWord, p: &OccRef, q: &OccRef) -> Result<bool, WordError> {
    for r in [p, q] {
        let expected = w.occurrence(&r.symbol, r.ordinal)?;
        if expected.position != r.position {
            return Err(WordError::StaleOccRef);
        }
    }
    Ok(p.position < q.position)
}

/// Parse the word text grammar: a factor is `ident`, `ident*`, `( term )`
/// or `( term )*`; `^k` repeats a factor; juxtaposition concatenates.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

/// Parse and flatten in one step.
pub fn parse_word(input: &str) -> Result<InvWord, ParseError> {
    Ok(flatten(&parse_term(input)?))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut parts = vec![self.factor()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_lowercase() || c == b'(' => parts.push(self.factor()?),
                _ => break,
            }
        }
        Ok(Term::concat(parts))
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut t = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.term()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_lowercase() => Term::Leaf(Symbol::plain(self.ident())),
            _ => return Err(self.err("expected identifier or '('")),
        };
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    t = Term::star(t);
                }
                Some(b'^') => {
                    self.pos += 1;
                    let k = self.number()?;
                    if k == 0 {
                        return Err(self.err("repetition count must be positive"));
                    }
                    t = Term::concat(vec![t; k]);
                }
                _ => break,
            }
        }
        Ok(t)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        self.pos += 1;
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8(self.bytes[start..self.pos].to_vec()).unwrap()
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number after '^'"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("repetition count too large"))
    }
}
