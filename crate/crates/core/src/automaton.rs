//! A deterministic automaton recognising words that avoid a set of forbidden
//! factors, and growth counting on top of it.
//!
//! States are the nodes of the trie of forbidden words (the longest suffix of
//! the input that is a prefix of some forbidden word). Transitions are
//! completed with failure links; every node whose suffix chain reaches a
//! forbidden word collapses into a single dead state.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::rewrite::RuleSet;
use crate::series::TruncatedSeries;
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("forbidden words must be nonempty")]
    EmptyForbiddenWord,
    #[error("symbol r{symbol} outside an alphabet of {size}")]
    SymbolOutOfRange { symbol: u8, size: usize },
}

const DEAD: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct FactorAutomaton {
    alphabet: usize,
    // live state × letter -> live state or DEAD; state 0 is the start
    delta: Vec<u32>,
    live: usize,
}

impl FactorAutomaton {
    pub fn new(forbidden: &[Word], alphabet: usize) -> Result<Self, AutomatonError> {
        // trie
        let mut goto: Vec<Vec<u32>> = vec![vec![DEAD; alphabet]];
        let mut terminal = vec![false];
        for f in forbidden {
            if f.is_empty() {
                return Err(AutomatonError::EmptyForbiddenWord);
            }
            let mut cur = 0usize;
            for s in f.iter() {
                if s.index() >= alphabet {
                    return Err(AutomatonError::SymbolOutOfRange { symbol: s.0, size: alphabet });
                }
                if goto[cur][s.index()] == DEAD {
                    goto.push(vec![DEAD; alphabet]);
                    terminal.push(false);
                    goto[cur][s.index()] = (goto.len() - 1) as u32;
                }
                cur = goto[cur][s.index()] as usize;
            }
            terminal[cur] = true;
        }

        // failure links in BFS order; goto becomes the complete transition function
        let mut fail = vec![0u32; goto.len()];
        let mut queue = VecDeque::new();
        for c in 0..alphabet {
            match goto[0][c] {
                DEAD => goto[0][c] = 0,
                child => {
                    fail[child as usize] = 0;
                    queue.push_back(child as usize);
                }
            }
        }
        while let Some(u) = queue.pop_front() {
            terminal[u] = terminal[u] || terminal[fail[u] as usize];
            for c in 0..alphabet {
                let via_fail = goto[fail[u] as usize][c];
                match goto[u][c] {
                    DEAD => goto[u][c] = via_fail,
                    child => {
                        fail[child as usize] = via_fail;
                        queue.push_back(child as usize);
                    }
                }
            }
        }

        // renumber live nodes, keeping the root as state 0
        let mut id = vec![DEAD; goto.len()];
        let mut live = 0usize;
        for (u, &t) in terminal.iter().enumerate() {
            if !t {
                id[u] = live as u32;
                live += 1;
            }
        }
        let mut delta = vec![DEAD; live * alphabet];
        for (u, row) in goto.iter().enumerate() {
            if id[u] == DEAD {
                continue;
            }
            for (c, &v) in row.iter().enumerate() {
                delta[id[u] as usize * alphabet + c] = id[v as usize];
            }
        }
        Ok(FactorAutomaton { alphabet, delta, live })
    }

    /// Automaton avoiding the leading words of `rs`.
    pub fn for_rules(rs: &RuleSet) -> Result<Self, AutomatonError> {
        Self::new(&rs.leading_words(), rs.order().alphabet_size())
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    /// Live states plus the dead state.
    pub fn num_states(&self) -> usize {
        self.live + 1
    }

    pub fn num_live_states(&self) -> usize {
        self.live
    }

    #[inline]
    pub fn step(&self, state: u32, s: Symbol) -> u32 {
        if state == DEAD {
            DEAD
        } else {
            self.delta[state as usize * self.alphabet + s.index()]
        }
    }

    pub fn accepts(&self, w: &Word) -> bool {
        if w.iter().any(|s| s.index() >= self.alphabet) {
            return false;
        }
        w.iter()
            .try_fold(0u32, |st, s| {
                let next = self.step(st, s);
                (next != DEAD).then_some(next)
            })
            .is_some()
    }

    /// Number of accepted words of each length `0..=max_len`.
    pub fn count(&self, max_len: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(max_len);
        let mut cur = vec![BigUint::zero(); self.live];
        cur[0] = BigUint::from(1u32);
        for d in 0..=max_len {
            let total: BigUint = cur.iter().sum();
            *out.coeff_mut(d) = BigInt::from(total);
            if d == max_len {
                break;
            }
            let mut next = vec![BigUint::zero(); self.live];
            for (st, n) in cur.iter().enumerate() {
                if n.is_zero() {
                    continue;
                }
                for &t in &self.delta[st * self.alphabet..(st + 1) * self.alphabet] {
                    if t != DEAD {
                        next[t as usize] += n;
                    }
                }
            }
            cur = next;
        }
        out
    }

    /// Every accepted word of length at most `max_len`, in shortlex order of
    /// symbol indices.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![(Word::empty(), 0u32)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, st) in &layer {
                for c in 0..self.alphabet {
                    let t = self.step(*st, Symbol(c as u8));
                    if t != DEAD {
                        let mut x = w.clone();
                        x.push(Symbol(c as u8));
                        next.push((x, t));
                    }
                }
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            layer = next;
        }
        out
    }
}

/// Number of words of each length up to `max_len` containing no leading word
/// of `rs`. For a Gröbner–Shirshov basis of a group presentation this is the
/// growth series with respect to the generators.
pub fn count_reduced(rs: &RuleSet, max_len: usize) -> TruncatedSeries {
    FactorAutomaton::for_rules(rs).expect("rule lhs are nonempty words over the order's alphabet").count(max_len)
}
