//! Semigroup rewriting: rules, reduction to normal form, ambiguities and
//! their compositions, interreduction and the Gröbner–Shirshov check.
//!
//! A monic binomial `u - v` with `u > v` is stored as the rule `u → v`.
//! Compositions of semigroup relations are again semigroup relations, so
//! coefficients never need to be represented.

mod completion;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::word::{DegLexOrder, Symbol, Word, WordError};

pub use completion::{complete, CompletionError, CompletionLimits, Limit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule {lhs} -> {rhs} is not deg-lex oriented")]
    NotOriented { lhs: Word, rhs: Word },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `lhs → rhs` with `lhs` deg-lex greater than `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word, ord: &DegLexOrder) -> Result<Self, RewriteError> {
        ord.check(&lhs)?;
        ord.check(&rhs)?;
        if !ord.greater(&lhs, &rhs) {
            return Err(RewriteError::NotOriented { lhs, rhs });
        }
        Ok(Rule { lhs, rhs })
    }

    /// Orients the relation `a = b`; `None` when both sides coincide.
    pub fn oriented(a: Word, b: Word, ord: &DegLexOrder) -> Option<Self> {
        match ord.cmp(&a, &b) {
            std::cmp::Ordering::Greater => Some(Rule { lhs: a, rhs: b }),
            std::cmp::Ordering::Less => Some(Rule { lhs: b, rhs: a }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Which redex [`RuleSet::reduce_once_with`] rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Lowest-index applicable rule, leftmost occurrence of its lhs.
    #[default]
    LeftmostLowest,
    /// Highest-index applicable rule, rightmost occurrence of its lhs.
    RightmostHighest,
}

/// An occurrence of rule `rule`'s lhs at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Redex {
    pub rule: usize,
    pub position: usize,
}

/// Finds the redex chosen by `strategy`, given a lookup from a factor to the
/// lowest (or highest) rule index whose lhs equals it.
pub(crate) fn find_redex(
    w: &[Symbol],
    lengths: &[usize],
    strategy: Strategy,
    lookup: impl Fn(&[Symbol]) -> Option<usize>,
) -> Option<Redex> {
    let mut best: Option<Redex> = None;
    for p in 0..w.len() {
        for &len in lengths {
            if p + len > w.len() {
                break;
            }
            if let Some(rule) = lookup(&w[p..p + len]) {
                let better = match (strategy, best) {
                    (_, None) => true,
                    (Strategy::LeftmostLowest, Some(b)) => rule < b.rule,
                    (Strategy::RightmostHighest, Some(b)) => rule >= b.rule,
                };
                if better {
                    best = Some(Redex { rule, position: p });
                }
            }
        }
    }
    best
}

/// An indexed list of rules over a fixed deg-lex order.
#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<Rule>,
    order: DegLexOrder,
    // lhs -> (lowest index, highest index)
    lhs_index: HashMap<Word, (usize, usize)>,
    lengths: Vec<usize>,
}

impl PartialEq for RuleSet {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules && self.order == other.order
    }
}

impl Eq for RuleSet {}

impl RuleSet {
    /// Builds a rule set, dropping exact duplicates (first occurrence wins).
    pub fn new(rules: Vec<Rule>, order: DegLexOrder) -> Result<Self, RewriteError> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(rules.len());
        for r in rules {
            let r = Rule::new(r.lhs, r.rhs, &order)?;
            if seen.insert(r.clone()) {
                kept.push(r);
            }
        }
        Ok(Self::from_checked(kept, order))
    }

    pub(crate) fn from_checked(rules: Vec<Rule>, order: DegLexOrder) -> Self {
        let mut lhs_index: HashMap<Word, (usize, usize)> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            lhs_index.entry(r.lhs.clone()).and_modify(|e| e.1 = i).or_insert((i, i));
        }
        let mut lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        RuleSet { rules, order, lhs_index, lengths }
    }

    pub fn order(&self) -> &DegLexOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lhs.clone()).collect()
    }

    pub fn into_rules(self) -> Vec<Rule> {
        self.rules
    }

    /// Same rules sorted by deg-lex order of lhs, then rhs.
    pub fn sorted(&self) -> RuleSet {
        let mut rules = self.rules.clone();
        rules.sort_by(|a, b| self.order.cmp(&a.lhs, &b.lhs).then_with(|| self.order.cmp(&a.rhs, &b.rhs)));
        Self::from_checked(rules, self.order.clone())
    }

    pub fn redex(&self, w: &Word, strategy: Strategy) -> Option<Redex> {
        find_redex(w.symbols(), &self.lengths, strategy, |f| {
            self.lhs_index.get(f).map(|&(lo, hi)| match strategy {
                Strategy::LeftmostLowest => lo,
                Strategy::RightmostHighest => hi,
            })
        })
    }

    /// One elimination of a leading word: rewrites the leftmost occurrence of
    /// the lowest-index applicable rule, or returns `None` if `w` is reduced.
    pub fn reduce_once(&self, w: &Word) -> Option<Word> {
        self.reduce_once_with(w, Strategy::LeftmostLowest)
    }

    pub fn reduce_once_with(&self, w: &Word, strategy: Strategy) -> Option<Word> {
        self.redex(w, strategy).map(|rx| {
            let r = &self.rules[rx.rule];
            w.splice(rx.position, r.lhs.len(), &r.rhs)
        })
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.normal_form_with(w, Strategy::LeftmostLowest)
    }

    pub fn normal_form_with(&self, w: &Word, strategy: Strategy) -> Word {
        let mut cur = w.clone();
        while let Some(next) = self.reduce_once_with(&cur, strategy) {
            cur = next;
        }
        cur
    }

    /// The occurrence of any leading word that starts leftmost (shortest
    /// first on ties).
    pub fn leftmost_match(&self, w: &Word) -> Option<Redex> {
        let s = w.symbols();
        (0..s.len()).find_map(|p| {
            self.lengths
                .iter()
                .take_while(|&&len| p + len <= s.len())
                .find_map(|&len| self.lhs_index.get(&s[p..p + len]).map(|&(lo, _)| Redex { rule: lo, position: p }))
        })
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.leftmost_match(w).is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbiguityKind {
    /// `w = lhs_i = a·lhs_j·b`.
    Inclusion,
    /// `w = lhs_i·b = a·lhs_j` with `a`, `b` nonempty.
    Intersection,
}

/// An overlap of two leading words. `lhs_i` sits at position 0 of `word` and
/// `lhs_j` at `offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambiguity {
    pub i: usize,
    pub j: usize,
    pub word: Word,
    pub kind: AmbiguityKind,
    pub offset: usize,
}

impl Ambiguity {
    /// The two words obtained from `word` by rewriting with rule `i` and rule `j`.
    pub fn sides(&self, rules: &[Rule]) -> (Word, Word) {
        let ri = &rules[self.i];
        let rj = &rules[self.j];
        let left = self.word.splice(0, ri.lhs.len(), &ri.rhs);
        let right = self.word.splice(self.offset, rj.lhs.len(), &rj.rhs);
        (left, right)
    }
}

/// All inclusion and proper-intersection ambiguities over ordered pairs of
/// rules, sorted by deg-lex order of the ambiguity word, then `(i, j, offset)`.
pub fn ambiguities(rs: &RuleSet) -> Vec<Ambiguity> {
    let rules = rs.rules();
    // proper nonempty prefixes of each lhs
    let mut prefixes: HashMap<&[Symbol], Vec<usize>> = HashMap::new();
    for (j, r) in rules.iter().enumerate() {
        let s = r.lhs.symbols();
        for t in 1..s.len() {
            prefixes.entry(&s[..t]).or_default().push(j);
        }
    }
    let mut by_lhs: HashMap<&[Symbol], Vec<usize>> = HashMap::new();
    for (j, r) in rules.iter().enumerate() {
        by_lhs.entry(r.lhs.symbols()).or_default().push(j);
    }

    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let s = ri.lhs.symbols();
        for start in 0..s.len() {
            for end in start + 1..=s.len() {
                if let Some(js) = by_lhs.get(&s[start..end]) {
                    for &j in js.iter().filter(|&&j| j != i) {
                        out.push(Ambiguity {
                            i,
                            j,
                            word: ri.lhs.clone(),
                            kind: AmbiguityKind::Inclusion,
                            offset: start,
                        });
                    }
                }
            }
        }
        for t in 1..s.len() {
            if let Some(js) = prefixes.get(&s[s.len() - t..]) {
                for &j in js {
                    let lj = &rules[j].lhs;
                    let mut word = ri.lhs.clone();
                    word.extend_from(&lj.factor(t, lj.len()));
                    out.push(Ambiguity { i, j, word, kind: AmbiguityKind::Intersection, offset: s.len() - t });
                }
            }
        }
    }
    let ord = rs.order();
    out.sort_by(|a, b| ord.cmp(&a.word, &b.word).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)).then(a.offset.cmp(&b.offset)));
    out
}

/// Reduces both sides of the composition at `amb` to normal form; `None` if
/// they agree (the composition is trivial), otherwise the new oriented rule.
pub fn composition_remainder(amb: &Ambiguity, rs: &RuleSet) -> Option<Rule> {
    let (a, b) = amb.sides(rs.rules());
    Rule::oriented(rs.normal_form(&a), rs.normal_form(&b), rs.order())
}

/// Drops every rule whose lhs contains another kept lhs as a factor (including
/// an equal lhs), then reduces every rhs to normal form. Output is sorted by lhs.
pub fn interreduce(rs: &RuleSet) -> RuleSet {
    let sorted = rs.sorted();
    let ord = rs.order().clone();
    let mut kept: Vec<Rule> = Vec::new();
    let mut kept_lhs: HashSet<Word> = HashSet::new();
    for r in sorted.into_rules() {
        let s = r.lhs.symbols();
        let redundant =
            (0..s.len()).any(|a| (a + 1..=s.len()).any(|b| kept_lhs.contains(&Word::from_symbols(s[a..b].to_vec()))));
        if !redundant {
            kept_lhs.insert(r.lhs.clone());
            kept.push(r);
        }
    }
    let lhs_only = RuleSet::from_checked(kept.clone(), ord.clone());
    let rules = kept
        .into_iter()
        .map(|r| {
            let rhs = lhs_only.normal_form(&r.rhs);
            Rule { lhs: r.lhs, rhs }
        })
        .collect();
    RuleSet::from_checked(rules, ord).sorted()
}

/// Outcome of [`is_gs_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisCheck {
    Complete,
    /// Ambiguities whose composition is not trivial.
    Incomplete(Vec<Ambiguity>),
}

impl BasisCheck {
    pub fn is_complete(&self) -> bool {
        matches!(self, BasisCheck::Complete)
    }
}

/// Checks every composition of `rs`; remainders are computed in parallel and
/// witnesses are returned in ambiguity order.
pub fn is_gs_basis(rs: &RuleSet) -> BasisCheck {
    let witnesses: Vec<Ambiguity> =
        ambiguities(rs).into_par_iter().filter(|a| composition_remainder(a, rs).is_some()).collect();
    if witnesses.is_empty() {
        BasisCheck::Complete
    } else {
        BasisCheck::Incomplete(witnesses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[u8]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    fn rule(l: &[u8], r: &[u8]) -> Rule {
        Rule { lhs: w(l), rhs: w(r) }
    }

    fn rs(size: usize, rules: Vec<Rule>) -> RuleSet {
        RuleSet::new(rules, DegLexOrder::new(size)).unwrap()
    }

    #[test]
    fn rule_must_be_oriented() {
        let ord = DegLexOrder::new(3);
        assert!(Rule::new(w(&[2, 1, 2]), w(&[1, 2, 1]), &ord).is_err());
        assert!(Rule::new(w(&[1, 2, 1]), w(&[2, 1, 2]), &ord).is_ok());
        assert!(Rule::new(w(&[1, 3]), w(&[]), &ord).is_err());
        assert_eq!(Rule::oriented(w(&[2]), w(&[2]), &ord), None);
    }

    #[test]
    fn reduce_once_examples() {
        let inv = rs(3, vec![rule(&[1, 1], &[])]);
        assert_eq!(inv.reduce_once(&w(&[1, 1])), Some(Word::empty()));
        let braid = rs(3, vec![rule(&[1, 2, 1], &[2, 1, 2])]);
        assert_eq!(braid.reduce_once(&w(&[1, 2, 1])), Some(w(&[2, 1, 2])));
        assert_eq!(braid.reduce_once(&w(&[2, 1, 2])), None);
    }

    #[test]
    fn reduce_once_prefers_lowest_rule_then_leftmost() {
        let set = rs(3, vec![rule(&[2, 2], &[]), rule(&[1, 1], &[])]);
        // r1 r1 occurs first but rule 0 (r2 r2) has the lower index
        assert_eq!(set.reduce_once(&w(&[1, 1, 2, 2])), Some(w(&[1, 1])));
        assert_eq!(set.reduce_once(&w(&[2, 2, 0, 2, 2])), Some(w(&[0, 2, 2])));
        assert_eq!(
            set.reduce_once_with(&w(&[2, 2, 0, 2, 2, 1, 1]), Strategy::RightmostHighest),
            Some(w(&[2, 2, 0, 2, 2]))
        );
    }

    #[test]
    fn duplicate_rules_are_dropped() {
        let set = rs(2, vec![rule(&[0, 0], &[]), rule(&[0, 0], &[])]);
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn self_overlap_of_involution() {
        let set = rs(2, vec![rule(&[0, 0], &[])]);
        let amb = ambiguities(&set);
        assert_eq!(amb.len(), 1);
        assert_eq!(amb[0].word, w(&[0, 0, 0]));
        assert_eq!(amb[0].kind, AmbiguityKind::Intersection);
        assert_eq!(composition_remainder(&amb[0], &set), None);
        assert!(is_gs_basis(&set).is_complete());
    }

    #[test]
    fn disjoint_leading_words_have_no_ambiguity() {
        // a b -> x, c d -> y over a > b > c > d > x > y
        let set = rs(6, vec![rule(&[0, 1], &[4]), rule(&[2, 3], &[5])]);
        assert!(ambiguities(&set).is_empty());
    }

    #[test]
    fn braid_and_commutation_overlap() {
        // f3 = r1 r2 r1 -> r2 r1 r2, f2 = r1 r3 -> r3 r1 in rank 4
        let set = rs(5, vec![rule(&[1, 2, 1], &[2, 1, 2]), rule(&[1, 3], &[3, 1])]);
        let amb = ambiguities(&set);
        let hit = amb.iter().find(|a| a.word == w(&[1, 2, 1, 3])).expect("intersection ambiguity");
        assert_eq!((hit.i, hit.j, hit.offset, hit.kind), (0, 1, 2, AmbiguityKind::Intersection));
        assert_eq!(composition_remainder(hit, &set), Some(rule(&[1, 2, 3, 1], &[2, 1, 2, 3])));
    }

    #[test]
    fn inclusion_ambiguity() {
        let set = rs(2, vec![rule(&[0, 0, 0], &[0]), rule(&[0, 0], &[])]);
        let inc: Vec<_> = ambiguities(&set).into_iter().filter(|a| a.kind == AmbiguityKind::Inclusion).collect();
        assert_eq!(inc.len(), 2);
        assert!(inc.iter().all(|a| a.i == 0 && a.j == 1));
        assert_eq!(inc[0].offset, 0);
        assert_eq!(inc[1].offset, 1);
    }

    #[test]
    fn interreduce_examples() {
        let set = rs(1, vec![rule(&[0, 0], &[]), rule(&[0, 0, 0], &[0])]);
        let red = interreduce(&set);
        assert_eq!(red.rules(), &[rule(&[0, 0], &[])]);
        assert_eq!(interreduce(&red), red);
    }

    #[test]
    fn interreduce_normalises_rhs() {
        let set = rs(3, vec![rule(&[0, 1], &[1, 1]), rule(&[1, 1], &[2])]);
        let red = interreduce(&set);
        assert_eq!(red.rules(), &[rule(&[1, 1], &[2]), rule(&[0, 1], &[2])]);
    }

    #[test]
    fn incomplete_set_reports_witnesses() {
        let set = rs(3, vec![rule(&[0, 1], &[2]), rule(&[1, 0], &[])]);
        match is_gs_basis(&set) {
            BasisCheck::Incomplete(ws) => assert!(!ws.is_empty()),
            BasisCheck::Complete => panic!("expected witnesses"),
        }
    }
}
