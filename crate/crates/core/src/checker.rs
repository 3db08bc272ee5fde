//! Polynomial-time word-identity checkers for the finite models and for
//! (hypo_n, ♯) at every rank, plus the instability instrumentation: unstable
//! and critical occurrence pairs, the p_k/q_k identity families and the
//! isoterm scanner.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::models::{eval_word, holds_exhaustive, FiniteInvMonoid, ModelError};
use crate::words::{
    analyze, flatten, parse_word, ContentReport, InvWord, OccRef, ParseError, PositionIndex,
    Symbol, Term,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("identity sides must be nonempty")]
    EmptySide,
    #[error("identity must contain '≈' or '='")]
    MissingSeparator,
    #[error("in {side} side: {source}")]
    Word { side: &'static str, source: ParseError },
    #[error("identity is not balanced")]
    NotBalanced,
    #[error("unknown monoid tag {0:?}")]
    UnknownTag(String),
    #[error("k must be at least 2, got {0}")]
    SmallK(usize),
    #[error("word of length {0} exceeds the isoterm scan bound 8")]
    TooLong(usize),
}

/// A word identity u ≈ v with both sides nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    lhs: InvWord,
    rhs: InvWord,
}

impl Identity {
    pub fn new(lhs: InvWord, rhs: InvWord) -> Result<Identity, CheckError> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(CheckError::EmptySide);
        }
        Ok(Identity { lhs, rhs })
    }

    pub fn from_terms(lhs: &Term, rhs: &Term) -> Result<Identity, CheckError> {
        Identity::new(flatten(lhs), flatten(rhs))
    }

    /// `LHS ≈ RHS` or `LHS = RHS`, each side in the word grammar.
    pub fn parse(text: &str) -> Result<Identity, CheckError> {
        let (l, r) = text
            .split_once('≈')
            .or_else(|| text.split_once('='))
            .ok_or(CheckError::MissingSeparator)?;
        let lhs = parse_word(l.trim()).map_err(|source| CheckError::Word { side: "left", source })?;
        let rhs =
            parse_word(r.trim()).map_err(|source| CheckError::Word { side: "right", source })?;
        Identity::new(lhs, rhs)
    }

    pub fn lhs(&self) -> &InvWord {
        &self.lhs
    }

    pub fn rhs(&self) -> &InvWord {
        &self.rhs
    }

    pub fn mirror(&self) -> Identity {
        Identity { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

/// The monoid being checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidTag {
    A01,
    A,
    Hypo2,
    B,
    Hypo3,
    C,
    HypoN,
    HypoPlain,
}

impl MonoidTag {
    pub const ALL: [MonoidTag; 8] = [
        MonoidTag::A01,
        MonoidTag::A,
        MonoidTag::Hypo2,
        MonoidTag::B,
        MonoidTag::Hypo3,
        MonoidTag::C,
        MonoidTag::HypoN,
        MonoidTag::HypoPlain,
    ];
}

impl FromStr for MonoidTag {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<MonoidTag, CheckError> {
        match s.to_ascii_lowercase().as_str() {
            "a01" => Ok(MonoidTag::A01),
            "a" => Ok(MonoidTag::A),
            "hypo2" => Ok(MonoidTag::Hypo2),
            "b" => Ok(MonoidTag::B),
            "hypo3" => Ok(MonoidTag::Hypo3),
            "c" => Ok(MonoidTag::C),
            "hypon" => Ok(MonoidTag::HypoN),
            "hypo_plain" | "hypoplain" => Ok(MonoidTag::HypoPlain),
            _ => Err(CheckError::UnknownTag(s.to_string())),
        }
    }
}

impl fmt::Display for MonoidTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MonoidTag::A01 => "a01",
            MonoidTag::A => "a",
            MonoidTag::Hypo2 => "hypo2",
            MonoidTag::B => "b",
            MonoidTag::Hypo3 => "hypo3",
            MonoidTag::C => "c",
            MonoidTag::HypoN => "hypoN",
            MonoidTag::HypoPlain => "hypo_plain",
        };
        write!(f, "{}", name)
    }
}

/// The clause that refuted the identity, named with the source characterization's own
/// numbering, plus the witnessing symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCondition {
    pub clause: String,
    pub pair: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessAssignment {
    pub model: String,
    pub assignment: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub monoid: MonoidTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_condition: Option<FailedCondition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_assignment: Option<WitnessAssignment>,
}

impl Verdict {
    fn pass(monoid: MonoidTag) -> Verdict {
        Verdict { holds: true, monoid, failed_condition: None, witness_assignment: None }
    }

    fn fail(monoid: MonoidTag, failed: FailedCondition) -> Verdict {
        Verdict { holds: false, monoid, failed_condition: Some(failed), witness_assignment: None }
    }
}

/// occ(x, u) = occ(x, v) for every symbol, starred and unstarred separately.
pub fn is_balanced(id: &Identity) -> bool {
    analyze(&id.lhs).occ == analyze(&id.rhs).occ
}

struct Side {
    idx: PositionIndex,
    rep: ContentReport,
}

impl Side {
    fn new(w: &InvWord) -> Side {
        Side { idx: PositionIndex::new(w), rep: analyze(w) }
    }

    /// Every symbol of `left` wholly precedes every symbol of `right`.
    fn set_prec(&self, left: &[Symbol], right: &[Symbol]) -> bool {
        left.iter().all(|a| {
            right
                .iter()
                .all(|b| self.idx.precedes(a, b).unwrap_or(false))
        })
    }
}

fn fc(clause: &str, pair: &[&Symbol]) -> FailedCondition {
    FailedCondition {
        clause: clause.to_string(),
        pair: pair.iter().map(|s| s.to_string()).collect(),
    }
}

fn clause_balance(id: &Identity, clause: &str) -> Option<FailedCondition> {
    let (lu, lv) = (analyze(&id.lhs).occ, analyze(&id.rhs).occ);
    lu.keys()
        .chain(lv.keys())
        .find(|s| lu.get(*s) != lv.get(*s))
        .map(|s| fc(clause, &[s]))
}

/// con/lin equality, plus mix or ml equality where the characterization requires it.
fn clause_content(
    u: &Side,
    v: &Side,
    with_mix: bool,
    with_ml: bool,
    clause: &str,
) -> Option<FailedCondition> {
    let mismatch = |a: &std::collections::BTreeSet<Symbol>, b: &std::collections::BTreeSet<Symbol>| {
        a.symmetric_difference(b).next().cloned()
    };
    if let Some(s) = mismatch(&u.rep.con, &v.rep.con) {
        return Some(fc(clause, &[&s]));
    }
    if with_mix {
        if let Some(s) = mismatch(&u.rep.mix, &v.rep.mix) {
            return Some(fc(clause, &[&s]));
        }
    }
    if with_ml {
        if let Some(s) = mismatch(&u.rep.ml, &v.rep.ml) {
            return Some(fc(clause, &[&s]));
        }
    }
    mismatch(&u.rep.lin, &v.rep.lin).map(|s| fc(clause, &[&s]))
}

/// Clauses (ii)(a), (ii)(b), (ii)(c) shared by the A₀¹, hypo₂, B and hypo₃
/// characterizations, evaluated in that order over sorted symbol pairs.
fn clause_ii(u: &Side, v: &Side) -> Option<FailedCondition> {
    let con: Vec<&Symbol> = u.rep.con.iter().collect();
    let mixed = |s: &Symbol| u.rep.mix.contains(s);
    for &x in &con {
        for &y in &con {
            if mixed(x) && mixed(y) {
                let sets = (
                    [x.clone(), y.clone()],
                    [x.star(), y.star()],
                );
                if u.set_prec(&sets.0, &sets.1) != v.set_prec(&sets.0, &sets.1) {
                    return Some(fc("(ii)(a)", &[x, y]));
                }
            }
        }
    }
    for &x in &con {
        for &y in &con {
            if mixed(x) && !mixed(y) {
                let head = [x.clone()];
                let tail = [x.star(), y.clone()];
                let both = [x.clone(), y.clone()];
                let star = [x.star()];
                if u.set_prec(&head, &tail) != v.set_prec(&head, &tail)
                    || u.set_prec(&both, &star) != v.set_prec(&both, &star)
                {
                    return Some(fc("(ii)(b)", &[x, y]));
                }
            }
        }
    }
    for &x in &con {
        for &y in &con {
            if !mixed(x) && !mixed(y) {
                let a = u.idx.precedes(x, y).unwrap_or(false);
                let b = v.idx.precedes(x, y).unwrap_or(false);
                if a != b {
                    return Some(fc("(ii)(c)", &[x, y]));
                }
            }
        }
    }
    None
}

/// B's (iii): for mixed x with x ≺_u x*, ml membership of x and x* agrees.
fn clause_ml_agreement(u: &Side, v: &Side, clause: &str) -> Option<FailedCondition> {
    for x in &u.rep.mix {
        if u.idx.precedes(x, &x.star()).unwrap_or(false) {
            for s in [x.clone(), x.star()] {
                if u.rep.ml.contains(&s) != v.rep.ml.contains(&s) {
                    return Some(fc(clause, &[x]));
                }
            }
        }
    }
    None
}

/// The {x,x*}-versus-y precedence agreement: (iv) in B, (iii) in hypo₃.
fn clause_xxstar(u: &Side, v: &Side, clause: &str) -> Option<FailedCondition> {
    for x in &u.rep.mix {
        for y in &u.rep.con {
            let pair = [x.clone(), x.star()];
            let single = [y.clone()];
            if u.set_prec(&pair, &single) != v.set_prec(&pair, &single)
                || u.set_prec(&single, &pair) != v.set_prec(&single, &pair)
            {
                return Some(fc(clause, &[x, y]));
            }
        }
    }
    None
}

/// Pairwise precedence agreement over all of con.
fn clause_pairwise(u: &Side, v: &Side, clause: &str) -> Option<FailedCondition> {
    for x in &u.rep.con {
        for y in &u.rep.con {
            let a = u.idx.precedes(x, y).unwrap_or(false);
            let b = v.idx.precedes(x, y).unwrap_or(false);
            if a != b {
                return Some(fc(clause, &[x, y]));
            }
        }
    }
    None
}

/// Decide u ≈ v in the tagged monoid by evaluating the characterizing
/// conditions; runs in O((|u|+|v|)·|con|²).
pub fn check(id: &Identity, monoid: MonoidTag) -> Verdict {
    let u = Side::new(&id.lhs);
    let v = Side::new(&id.rhs);
    let failed = match monoid {
        MonoidTag::A => clause_balance(id, "balance"),
        MonoidTag::A01 => clause_content(&u, &v, true, false, "(i)").or_else(|| clause_ii(&u, &v)),
        MonoidTag::Hypo2 => clause_balance(id, "(i)").or_else(|| clause_ii(&u, &v)),
        MonoidTag::B => clause_content(&u, &v, true, false, "(i)")
            .or_else(|| clause_ii(&u, &v))
            .or_else(|| clause_ml_agreement(&u, &v, "(iii)"))
            .or_else(|| clause_xxstar(&u, &v, "(iv)")),
        MonoidTag::Hypo3 => clause_balance(id, "(i)")
            .or_else(|| clause_ii(&u, &v))
            .or_else(|| clause_xxstar(&u, &v, "(iii)")),
        MonoidTag::C => clause_content(&u, &v, false, true, "(i)")
            .or_else(|| clause_pairwise(&u, &v, "(ii)")),
        MonoidTag::HypoN => {
            clause_balance(id, "(i)").or_else(|| clause_pairwise(&u, &v, "(ii)"))
        }
        MonoidTag::HypoPlain => {
            let plain = Identity {
                lhs: id.lhs.project(),
                rhs: id.rhs.project(),
            };
            let (pu, pv) = (Side::new(&plain.lhs), Side::new(&plain.rhs));
            clause_balance(&plain, "(i)").or_else(|| clause_pairwise(&pu, &pv, "(ii)"))
        }
    };
    match failed {
        None => Verdict::pass(monoid),
        Some(f) => Verdict::fail(monoid, f),
    }
}

/// Run the brute-force model oracle and package the result as a Verdict with
/// a concrete refuting assignment when one exists.
pub fn oracle_verdict(
    m: &FiniteInvMonoid,
    id: &Identity,
    monoid: MonoidTag,
    max_vars: usize,
) -> Result<Verdict, ModelError> {
    match holds_exhaustive(m, &id.lhs, &id.rhs, max_vars)? {
        None => Ok(Verdict::pass(monoid)),
        Some(assign) => {
            let lhs = eval_word(m, &id.lhs, &assign)?;
            let rhs = eval_word(m, &id.rhs, &assign)?;
            Ok(Verdict {
                holds: false,
                monoid,
                failed_condition: Some(FailedCondition {
                    clause: format!("oracle: {} ≠ {}", m.label(lhs), m.label(rhs)),
                    pair: Vec::new(),
                }),
                witness_assignment: Some(WitnessAssignment {
                    model: m.name().to_string(),
                    assignment: assign
                        .into_iter()
                        .map(|(var, e)| (var, m.label(e).to_string()))
                        .collect(),
                }),
            })
        }
    }
}

fn occ_positions_in(w: &InvWord) -> HashMap<(Symbol, usize), usize> {
    w.occurrence_set()
        .into_iter()
        .map(|r| ((r.symbol, r.ordinal), r.position))
        .collect()
}

/// All unstable occurrence pairs: ᵢc ≺_u ⱼd but ⱼd ≺_v ᵢc.
pub fn chaos(id: &Identity) -> Result<Vec<(OccRef, OccRef)>, CheckError> {
    if !is_balanced(id) {
        return Err(CheckError::NotBalanced);
    }
    let us = id.lhs.occurrence_set();
    let vpos = occ_positions_in(&id.rhs);
    let mut out = Vec::new();
    for (i, p) in us.iter().enumerate() {
        for q in &us[i + 1..] {
            let vp = vpos[&(p.symbol.clone(), p.ordinal)];
            let vq = vpos[&(q.symbol.clone(), q.ordinal)];
            if vq < vp {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    Ok(out)
}

/// Some pair adjacent in the left side and unstable, when chaos is nonempty.
pub fn find_critical(id: &Identity) -> Result<Option<(OccRef, OccRef)>, CheckError> {
    if !is_balanced(id) {
        return Err(CheckError::NotBalanced);
    }
    let us = id.lhs.occurrence_set();
    let vpos = occ_positions_in(&id.rhs);
    for pair in us.windows(2) {
        let vp = vpos[&(pair[0].symbol.clone(), pair[0].ordinal)];
        let vq = vpos[&(pair[1].symbol.clone(), pair[1].ordinal)];
        if vq < vp {
            return Ok(Some((pair[0].clone(), pair[1].clone())));
        }
    }
    Ok(None)
}

fn plain(name: &str, i: usize) -> Symbol {
    Symbol::plain(format!("{name}{i}"))
}

fn starred(name: &str, i: usize) -> Symbol {
    Symbol::starred(format!("{name}{i}"))
}

/// p_k = x₁…x_k y₁…y_k · l_k · x₁*…x_k* y₁*…y_k* with
/// l_k = y₁…y_k · (x₁y₁* x₂y₂* ⋯ x_k y_k*) · x₁*…x_k*.
pub fn build_pk(k: usize) -> Result<InvWord, CheckError> {
    if k < 2 {
        return Err(CheckError::SmallK(k));
    }
    let mut s = Vec::new();
    s.extend((1..=k).map(|i| plain("x", i)));
    s.extend((1..=k).map(|i| plain("y", i)));
    s.extend((1..=k).map(|i| plain("y", i)));
    for i in 1..=k {
        s.push(plain("x", i));
        s.push(starred("y", i));
    }
    s.extend((1..=k).map(|i| starred("x", i)));
    s.extend((1..=k).map(|i| starred("x", i)));
    s.extend((1..=k).map(|i| starred("y", i)));
    Ok(InvWord::new(s))
}

/// q_k replaces l_k with r_k = ⌊l_k*⌋ = x_k…x₁ · (y_k x_k* ⋯ y₁ x₁*) · y_k*…y₁*.
pub fn build_qk(k: usize) -> Result<InvWord, CheckError> {
    if k < 2 {
        return Err(CheckError::SmallK(k));
    }
    let mut s = Vec::new();
    s.extend((1..=k).map(|i| plain("x", i)));
    s.extend((1..=k).map(|i| plain("y", i)));
    s.extend((1..=k).rev().map(|i| plain("x", i)));
    for i in (1..=k).rev() {
        s.push(plain("y", i));
        s.push(starred("x", i));
    }
    s.extend((1..=k).rev().map(|i| starred("y", i)));
    s.extend((1..=k).map(|i| starred("x", i)));
    s.extend((1..=k).map(|i| starred("y", i)));
    Ok(InvWord::new(s))
}

/// An occurrence reference inside a membership chain: the first or the last
/// occurrence of a symbol.
#[derive(Clone, Copy)]
enum Sel {
    First,
    Last,
}

fn sel_pos(idx: &PositionIndex, node: &(Symbol, Sel)) -> Option<usize> {
    match node.1 {
        Sel::First => idx.first(&node.0),
        Sel::Last => idx.last(&node.0),
    }
}

/// Each chain node is a set of occurrence refs; consecutive nodes must be
/// wholly ordered, and every referenced occurrence must exist.
fn chain_holds(idx: &PositionIndex, nodes: &[Vec<(Symbol, Sel)>]) -> bool {
    nodes.windows(2).all(|pair| {
        pair[0].iter().all(|a| {
            pair[1].iter().all(|b| match (sel_pos(idx, a), sel_pos(idx, b)) {
                (Some(pa), Some(pb)) => pa < pb,
                _ => false,
            })
        })
    })
}

/// w uses only the 4k variables x₁…x_k, y₁…y_k and their stars.
fn over_xk(w: &InvWord, k: usize) -> bool {
    w.symbols().iter().all(|s| {
        let base = s.base();
        (1..=k).any(|i| base == format!("x{i}") || base == format!("y{i}"))
    })
}

/// Membership in 𝖯_k: w over 𝒳_k with the defining ≺-chain
/// {∞y₁…∞y_k, ∞x₁} ≺ ₁y₁* ≺ ∞x₂ ≺ ₁y₂* ≺ … ≺ ∞x_k ≺ {₁y_k*, ₁x₁*…₁x_k*}.
pub fn in_pk(w: &InvWord, k: usize) -> Result<bool, CheckError> {
    if k < 2 {
        return Err(CheckError::SmallK(k));
    }
    let idx = PositionIndex::new(w);
    let mut nodes = Vec::new();
    let mut head: Vec<(Symbol, Sel)> = (1..=k).map(|i| (plain("y", i), Sel::Last)).collect();
    head.push((plain("x", 1), Sel::Last));
    nodes.push(head);
    nodes.push(vec![(starred("y", 1), Sel::First)]);
    for t in 2..k {
        nodes.push(vec![(plain("x", t), Sel::Last)]);
        nodes.push(vec![(starred("y", t), Sel::First)]);
    }
    nodes.push(vec![(plain("x", k), Sel::Last)]);
    let mut tail = vec![(starred("y", k), Sel::First)];
    tail.extend((1..=k).map(|i| (starred("x", i), Sel::First)));
    nodes.push(tail);
    Ok(over_xk(w, k) && chain_holds(&idx, &nodes))
}

/// Membership in 𝖰_k: the dual chain
/// {∞x₁…∞x_k, ∞y_k} ≺ ₁x_k* ≺ ∞y_{k−1} ≺ ₁x_{k−1}* ≺ … ≺ ∞y₁ ≺ {₁x₁*, ₁y₁*…₁y_k*}.
pub fn in_qk(w: &InvWord, k: usize) -> Result<bool, CheckError> {
    if k < 2 {
        return Err(CheckError::SmallK(k));
    }
    let idx = PositionIndex::new(w);
    let mut nodes = Vec::new();
    let mut head: Vec<(Symbol, Sel)> = (1..=k).map(|i| (plain("x", i), Sel::Last)).collect();
    head.push((plain("y", k), Sel::Last));
    nodes.push(head);
    nodes.push(vec![(starred("x", k), Sel::First)]);
    for t in (2..=k).rev() {
        nodes.push(vec![(plain("y", t - 1), Sel::Last)]);
        if t > 2 {
            nodes.push(vec![(starred("x", t - 1), Sel::First)]);
        }
    }
    let mut tail = vec![(starred("x", 1), Sel::First)];
    tail.extend((1..=k).map(|i| (starred("y", i), Sel::First)));
    nodes.push(tail);
    Ok(over_xk(w, k) && chain_holds(&idx, &nodes))
}

/// Search every distinct rearrangement of w's symbol multiset for a witness
/// v ≠ w with w ≈ v holding; None means w is an isoterm (exactly, since any
/// balanced partner shares the multiset).
pub fn isoterm_scan(w: &InvWord, monoid: MonoidTag) -> Result<Option<InvWord>, CheckError> {
    if w.len() > 8 {
        return Err(CheckError::TooLong(w.len()));
    }
    let mut counts: BTreeMap<Symbol, usize> = BTreeMap::new();
    for s in w.symbols() {
        *counts.entry(s.clone()).or_insert(0) += 1;
    }
    let mut pool: Vec<(Symbol, usize)> = counts.into_iter().collect();
    let mut prefix = Vec::with_capacity(w.len());
    fn rec(
        pool: &mut Vec<(Symbol, usize)>,
        prefix: &mut Vec<Symbol>,
        total: usize,
        w: &InvWord,
        monoid: MonoidTag,
    ) -> Option<InvWord> {
        if prefix.len() == total {
            let v = InvWord::new(prefix.clone());
            if v != *w {
                let id = Identity::new(w.clone(), v.clone()).expect("nonempty");
                if check(&id, monoid).holds {
                    return Some(v);
                }
            }
            return None;
        }
        for i in 0..pool.len() {
            if pool[i].1 == 0 {
                continue;
            }
            pool[i].1 -= 1;
            prefix.push(pool[i].0.clone());
            let found = rec(pool, prefix, total, w, monoid);
            prefix.pop();
            pool[i].1 += 1;
            if found.is_some() {
                return found;
            }
        }
        None
    }
    Ok(rec(&mut pool, &mut prefix, w.len(), w, monoid))
}
