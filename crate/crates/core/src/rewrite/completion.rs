//! Buchberger–Shirshov completion for semigroup relations.
//!
//! Ambiguities are kept in a priority queue and processed in ascending
//! deg-lex order of the ambiguity word, ties broken by `(i, j, offset)`.
//! Every new rule has a reduced lhs, so existing rules whose lhs contains it
//! are retired immediately and their relation is fed back as an equation.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use thiserror::Error;

use super::{find_redex, interreduce, Rule, RuleSet, Strategy};
use crate::word::{DegLexOrder, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    /// Upper bound on the number of rules ever created.
    pub max_rules: usize,
    /// Upper bound on the length of any leading word.
    pub max_degree: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_rules: 100_000, max_degree: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Rules,
    Degree,
}

#[derive(Debug, Clone, Error)]
pub enum CompletionError {
    #[error("completion exceeded the {limit:?} limit after creating {created} rules")]
    LimitExceeded {
        limit: Limit,
        created: usize,
        /// The live rules at the moment the limit was hit.
        partial: Box<RuleSet>,
    },
}

type QueueItem = Reverse<((usize, Vec<u8>), usize, usize, usize)>;

struct Completion {
    order: DegLexOrder,
    limits: CompletionLimits,
    rules: Vec<Option<Rule>>,
    lhs_index: HashMap<Word, usize>,
    lengths: BTreeMap<usize, usize>,
    prefixes: HashMap<Vec<Symbol>, Vec<usize>>,
    suffixes: HashMap<Vec<Symbol>, Vec<usize>>,
    queue: BinaryHeap<QueueItem>,
}

impl Completion {
    fn new(order: DegLexOrder, limits: CompletionLimits) -> Self {
        Completion {
            order,
            limits,
            rules: Vec::new(),
            lhs_index: HashMap::new(),
            lengths: BTreeMap::new(),
            prefixes: HashMap::new(),
            suffixes: HashMap::new(),
            queue: BinaryHeap::new(),
        }
    }

    fn normal_form(&self, w: &Word) -> Word {
        let lengths: Vec<usize> = self.lengths.keys().copied().collect();
        let mut cur = w.clone();
        while let Some(rx) =
            find_redex(cur.symbols(), &lengths, Strategy::LeftmostLowest, |f| self.lhs_index.get(f).copied())
        {
            let r = self.rules[rx.rule].as_ref().expect("indexed rule is live");
            cur = cur.splice(rx.position, r.lhs.len(), &r.rhs);
        }
        cur
    }

    fn live(&self) -> RuleSet {
        let rules = self.rules.iter().flatten().cloned().collect();
        RuleSet::from_checked(rules, self.order.clone())
    }

    fn limit_error(&self, limit: Limit) -> CompletionError {
        CompletionError::LimitExceeded { limit, created: self.rules.len(), partial: Box::new(self.live()) }
    }

    fn retire(&mut self, idx: usize) -> Rule {
        let rule = self.rules[idx].take().expect("retiring a live rule");
        self.lhs_index.remove(&rule.lhs);
        let n = self.lengths.get_mut(&rule.lhs.len()).expect("length counted");
        *n -= 1;
        if *n == 0 {
            self.lengths.remove(&rule.lhs.len());
        }
        let s = rule.lhs.symbols();
        for t in 1..s.len() {
            if let Some(v) = self.prefixes.get_mut(&s[..t]) {
                v.retain(|&j| j != idx);
            }
            if let Some(v) = self.suffixes.get_mut(&s[s.len() - t..]) {
                v.retain(|&j| j != idx);
            }
        }
        rule
    }

    fn enqueue(&mut self, i: usize, j: usize, word: Word, offset: usize) {
        let key = self.order.sort_key(&word);
        self.queue.push(Reverse((key, i, j, offset)));
    }

    fn insert(&mut self, rule: Rule) -> usize {
        let idx = self.rules.len();
        let s = rule.lhs.symbols().to_vec();
        for t in 1..s.len() {
            self.prefixes.entry(s[..t].to_vec()).or_default().push(idx);
            self.suffixes.entry(s[s.len() - t..].to_vec()).or_default().push(idx);
        }
        self.lhs_index.insert(rule.lhs.clone(), idx);
        *self.lengths.entry(rule.lhs.len()).or_insert(0) += 1;
        self.rules.push(Some(rule));

        // overlaps (new, j): a proper suffix of the new lhs is a proper prefix of lhs_j
        for t in 1..s.len() {
            let partners = self.prefixes.get(&s[s.len() - t..]).cloned().unwrap_or_default();
            for j in partners {
                let lj = self.rules[j].as_ref().expect("live").lhs.clone();
                let mut word = Word::from_symbols(s.clone());
                word.extend_from(&lj.factor(t, lj.len()));
                self.enqueue(idx, j, word, s.len() - t);
            }
        }
        // overlaps (j, new) with j != new; the self-overlap was queued above
        for t in 1..s.len() {
            let partners = self.suffixes.get(&s[..t]).cloned().unwrap_or_default();
            for j in partners.into_iter().filter(|&j| j != idx) {
                let lj = self.rules[j].as_ref().expect("live").lhs.clone();
                let mut word = lj.clone();
                word.extend_from(&Word::from_symbols(s[t..].to_vec()));
                self.enqueue(j, idx, word, lj.len() - t);
            }
        }
        idx
    }

    /// Adds the relation `a = b`, reducing it first and retiring any rule whose
    /// lhs becomes reducible.
    fn add_relation(&mut self, a: Word, b: Word) -> Result<(), CompletionError> {
        let mut pending = vec![(a, b)];
        while let Some((a, b)) = pending.pop() {
            let (a, b) = (self.normal_form(&a), self.normal_form(&b));
            let Some(rule) = Rule::oriented(a, b, &self.order) else {
                continue;
            };
            if self.rules.len() >= self.limits.max_rules {
                return Err(self.limit_error(Limit::Rules));
            }
            if rule.lhs.len() > self.limits.max_degree {
                return Err(self.limit_error(Limit::Degree));
            }
            let victims: Vec<usize> = self
                .rules
                .iter()
                .enumerate()
                .filter_map(|(j, r)| r.as_ref().filter(|r| r.lhs.contains_factor(&rule.lhs)).map(|_| j))
                .collect();
            for j in victims {
                let old = self.retire(j);
                pending.push((old.lhs, old.rhs));
            }
            self.insert(rule);
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), CompletionError> {
        while let Some(Reverse((_, i, j, offset))) = self.queue.pop() {
            let (Some(ri), Some(rj)) = (&self.rules[i], &self.rules[j]) else {
                continue;
            };
            let word = {
                let mut w = ri.lhs.clone();
                let overhang = offset + rj.lhs.len() - ri.lhs.len();
                w.extend_from(&rj.lhs.factor(rj.lhs.len() - overhang, rj.lhs.len()));
                w
            };
            let left = word.splice(0, ri.lhs.len(), &ri.rhs);
            let right = word.splice(offset, rj.lhs.len(), &rj.rhs);
            self.add_relation(left, right)?;
        }
        Ok(())
    }
}

/// Runs Buchberger–Shirshov completion on `rs` and returns the reduced
/// Gröbner–Shirshov basis, sorted by lhs. Fails with the partial state if a
/// resource limit is reached.
pub fn complete(rs: &RuleSet, limits: CompletionLimits) -> Result<RuleSet, CompletionError> {
    let mut c = Completion::new(rs.order().clone(), limits);
    for r in rs.rules() {
        c.add_relation(r.lhs.clone(), r.rhs.clone())?;
    }
    c.run()?;
    Ok(interreduce(&c.live()))
}
