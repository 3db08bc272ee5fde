//! The hypoplactic kernel: ranked words, Krob–Thibon insertion into
//! quasi-ribbon tableaux, the (evaluation, inversion set) invariants,
//! canonical elements and Schützenberger's involution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypoError {
    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: u32, rank: u32 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("cannot parse ranked word {text:?}: {msg}")]
    Parse { text: String, msg: String },
}

/// A word over the ordered alphabet {1 < 2 < ... < n}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankedWord {
    rank: u32,
    letters: Vec<u32>,
}

impl RankedWord {
    pub fn new(rank: u32, letters: Vec<u32>) -> Result<Self, HypoError> {
        assert!(rank >= 1, "rank must be at least 1");
        for &letter in &letters {
            if letter < 1 || letter > rank {
                return Err(HypoError::LetterOutOfRange { letter, rank });
            }
        }
        Ok(RankedWord { rank, letters })
    }

    pub fn empty(rank: u32) -> Self {
        RankedWord { rank, letters: Vec::new() }
    }

    /// Contiguous digits for rank ≤ 9; whitespace or comma separated
    /// integers otherwise.
    pub fn parse(rank: u32, text: &str) -> Result<Self, HypoError> {
        let text = text.trim();
        let parse_err = |msg: &str| HypoError::Parse { text: text.to_string(), msg: msg.to_string() };
        let letters = if rank <= 9 && !text.contains([' ', ',']) {
            text.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| parse_err("expected digits")))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| parse_err("expected integers")))
                .collect::<Result<Vec<_>, _>>()?
        };
        RankedWord::new(rank, letters)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &RankedWord) -> Result<RankedWord, HypoError> {
        if self.rank != other.rank {
            return Err(HypoError::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(RankedWord { rank: self.rank, letters })
    }
}

impl fmt::Display for RankedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        if self.rank <= 9 {
            for &a in &self.letters {
                write!(f, "{}", a)?;
            }
        } else {
            for (i, &a) in self.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", a)?;
            }
        }
        Ok(())
    }
}

/// Rows of weakly increasing letters glued ribbon-wise: the leftmost cell of
/// each row sits below the rightmost cell of the row above, and the glue
/// column is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct QuasiRibbonTableau {
    rows: Vec<Vec<u32>>,
}

impl QuasiRibbonTableau {
    pub fn empty() -> Self {
        QuasiRibbonTableau::default()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// One Krob–Thibon insertion step.
    pub fn insert(&self, a: u32) -> QuasiRibbonTableau {
        // Reading the rows top-to-bottom, left-to-right, entries are weakly
        // increasing, so the rightmost-bottommost entry <= a is the last one
        // in reading order.
        let mut split = None;
        'outer: for (r, row) in self.rows.iter().enumerate().rev() {
            for (c, &x) in row.iter().enumerate().rev() {
                if x <= a {
                    split = Some((r, c));
                    break 'outer;
                }
            }
        }
        let mut rows = Vec::new();
        match split {
            None => {
                // No entry <= a: new top-left cell, old tableau glued below.
                rows.push(vec![a]);
                rows.extend(self.rows.iter().cloned());
            }
            Some((r, c)) => {
                rows.extend(self.rows[..r].iter().cloned());
                let mut head: Vec<u32> = self.rows[r][..=c].to_vec();
                head.push(a);
                rows.push(head);
                let tail = &self.rows[r][c + 1..];
                if !tail.is_empty() {
                    rows.push(tail.to_vec());
                }
                rows.extend(self.rows[r + 1..].iter().cloned());
            }
        }
        QuasiRibbonTableau { rows }
    }

    /// Structural sanity check: rows weakly increasing, glue strictly
    /// increasing, no letter in two different rows.
    pub fn check_invariants(&self) -> bool {
        let mut seen_rows: BTreeMap<u32, usize> = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() || row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r + 1 < self.rows.len() && row.last().unwrap() >= &self.rows[r + 1][0] {
                return false;
            }
            for &x in row {
                if let Some(&prev) = seen_rows.get(&x) {
                    if prev != r {
                        return false;
                    }
                }
                seen_rows.insert(x, r);
            }
        }
        true
    }

    /// Column reading: bottom-to-top within each column, columns left to
    /// right. Row r+1 starts in the column of row r's last cell.
    pub fn column_reading(&self) -> Vec<u32> {
        let mut cols: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let mut offset = 0;
        for row in &self.rows {
            for (c, &x) in row.iter().enumerate() {
                cols.entry(offset + c).or_default().push(x);
            }
            offset += row.len() - 1;
        }
        cols.into_values()
            .flat_map(|col| col.into_iter().rev())
            .collect()
    }

    /// Text rendering, one row per line, leading spaces aligning the glue.
    pub fn render(&self, color: bool) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut lines = Vec::new();
        let mut offset = 0;
        for row in &self.rows {
            let mut line = " ".repeat(offset * (width + 1));
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    line.push(' ');
                }
                let cell = format!("{:>width$}", x);
                if color {
                    line.push_str(&format!("\x1b[36m{}\x1b[0m", cell));
                } else {
                    line.push_str(&cell);
                }
            }
            lines.push(line);
            offset += row.len() - 1;
        }
        lines.join("\n")
    }
}

/// Left fold of the insertion step over the letters of `w`.
pub fn tableau_of(w: &RankedWord) -> QuasiRibbonTableau {
    w.letters()
        .iter()
        .fold(QuasiRibbonTableau::empty(), |t, &a| t.insert(a))
}

/// Per-letter occurrence counts.
pub fn ev(w: &RankedWord) -> BTreeMap<u32, usize> {
    let mut counts = BTreeMap::new();
    for &a in w.letters() {
        *counts.entry(a).or_insert(0) += 1;
    }
    counts
}

/// The inversion set: for consecutive content letters b < c, the pair (c, b)
/// is an inversion when some c occurs before the last b.
pub fn inver(w: &RankedWord) -> BTreeSet<(u32, u32)> {
    let content: Vec<u32> = ev(w).into_keys().collect();
    let mut out = BTreeSet::new();
    for pair in content.windows(2) {
        let (b, c) = (pair[0], pair[1]);
        let last_b = w.letters().iter().rposition(|&x| x == b).unwrap();
        if w.letters()[..last_b].contains(&c) {
            out.insert((c, b));
        }
    }
    out
}

/// u ≡ v in the hypoplactic monoid iff evaluation and inversion set agree.
pub fn equivalent(u: &RankedWord, v: &RankedWord) -> bool {
    ev(u) == ev(v) && inver(u) == inver(v)
}

/// An element of hypo_n: the (ev, inver) invariants plus the canonical
/// representative, which is the column reading of the tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypoElement {
    rank: u32,
    ev: BTreeMap<u32, usize>,
    inver: BTreeSet<(u32, u32)>,
    canon: RankedWord,
}

impl HypoElement {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn ev(&self) -> &BTreeMap<u32, usize> {
        &self.ev
    }

    pub fn inver(&self) -> &BTreeSet<(u32, u32)> {
        &self.inver
    }

    pub fn canon(&self) -> &RankedWord {
        &self.canon
    }

    pub fn identity(rank: u32) -> HypoElement {
        element_of(&RankedWord::empty(rank))
    }

    pub fn is_identity(&self) -> bool {
        self.canon.is_empty()
    }

    pub fn mult(&self, other: &HypoElement) -> Result<HypoElement, HypoError> {
        Ok(element_of(&self.canon.concat(&other.canon)?))
    }

    /// Schützenberger's involution, applied to the class.
    pub fn sharp(&self) -> HypoElement {
        element_of(&schutzenberger(&self.canon))
    }
}

impl fmt::Display for HypoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canon)
    }
}

/// The class of `w` in hypo_n, keyed by (ev, inver) with a canonical
/// representative read off the tableau columns.
pub fn element_of(w: &RankedWord) -> HypoElement {
    let tableau = tableau_of(w);
    let canon = RankedWord::new(w.rank(), tableau.column_reading())
        .expect("column reading stays within the alphabet");
    HypoElement { rank: w.rank(), ev: ev(w), inver: inver(w), canon }
}

/// Reverse the word and complement each letter a ↦ n+1−a.
pub fn schutzenberger(w: &RankedWord) -> RankedWord {
    let n = w.rank();
    let letters = w.letters().iter().rev().map(|&a| n + 1 - a).collect();
    RankedWord { rank: n, letters }
}

/// All instances of the four defining relation families with letters ≤ `max_letter`,
/// deduplicated: (acb,cab) a≤b<c, (bac,bca) a<b≤c, (cadb,acbd) a≤b<c≤d,
/// (bdac,dbca) a<b≤c<d.
pub fn defining_relations(rank: u32, max_letter: u32) -> Vec<(RankedWord, RankedWord)> {
    assert!(max_letter <= rank);
    let word = |letters: Vec<u32>| RankedWord::new(rank, letters).unwrap();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |lhs: Vec<u32>, rhs: Vec<u32>| {
        if seen.insert((lhs.clone(), rhs.clone())) {
            out.push((word(lhs), word(rhs)));
        }
    };
    for a in 1..=max_letter {
        for b in 1..=max_letter {
            for c in 1..=max_letter {
                if a <= b && b < c {
                    push(vec![a, c, b], vec![c, a, b]);
                }
                if a < b && b <= c {
                    push(vec![b, a, c], vec![b, c, a]);
                }
                for d in 1..=max_letter {
                    if a <= b && b < c && c <= d {
                        push(vec![c, a, d, b], vec![a, c, b, d]);
                    }
                    if a < b && b <= c && c < d {
                        push(vec![b, d, a, c], vec![d, b, c, a]);
                    }
                }
            }
        }
    }
    out
}
