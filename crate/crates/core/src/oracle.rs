//! Brute-force growth counting, independent of completion: every word of
//! length at most `L` is generated and words are merged whenever a defining
//! relation turns one into the other.

use num_bigint::BigInt;
use thiserror::Error;

use crate::presentation::Presentation;
use crate::series::TruncatedSeries;
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("closure would need {needed} words, limit is {limit}")]
    TooManyWords { needed: u128, limit: usize },
}

/// Default cap on the number of words enumerated by the oracle.
pub const DEFAULT_WORD_LIMIT: usize = 20_000_000;

/// The congruence generated by a presentation, restricted to words of length
/// at most `max_len`. Words are numbered in shortlex order of symbol indices.
pub struct WordClosure {
    size: usize,
    max_len: usize,
    // offsets[d] = number of words shorter than d
    offsets: Vec<usize>,
    parent: Vec<u32>,
}

impl WordClosure {
    pub fn new(p: &Presentation, max_len: usize, word_limit: usize) -> Result<Self, OracleError> {
        let size = p.alphabet().size();
        let mut offsets = Vec::with_capacity(max_len + 2);
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..=max_len {
            offsets.push(total as usize);
            total += layer;
            if total > word_limit as u128 {
                return Err(OracleError::TooManyWords { needed: total, limit: word_limit });
            }
            layer *= size as u128;
        }
        offsets.push(total as usize);

        let mut closure = WordClosure { size, max_len, offsets, parent: (0..total as u32).collect() };
        for id in 0..total as usize {
            let w = closure.word(id);
            for rel in p.relations() {
                let l = rel.lhs.symbols();
                if l.len() > w.len() {
                    continue;
                }
                for pos in 0..=w.len() - l.len() {
                    if &w.symbols()[pos..pos + l.len()] == l {
                        let other = w.splice(pos, l.len(), &rel.rhs);
                        let oid = closure.id(&other).expect("rewritten word is not longer");
                        closure.union(id, oid);
                    }
                }
            }
        }
        Ok(closure)
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn id(&self, w: &Word) -> Option<usize> {
        if w.len() > self.max_len {
            return None;
        }
        let digits = w.iter().fold(0usize, |acc, s| acc * self.size + s.index());
        Some(self.offsets[w.len()] + digits)
    }

    fn word(&self, id: usize) -> Word {
        let len = self.offsets.partition_point(|&o| o <= id) - 1;
        let mut rest = id - self.offsets[len];
        let mut syms = vec![Symbol(0); len];
        for slot in syms.iter_mut().rev() {
            *slot = Symbol((rest % self.size) as u8);
            rest /= self.size;
        }
        Word::from_symbols(syms)
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        // the smaller id is the shortlex-smaller word, so roots are class minima
        if rb < ra {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        // path halving on the way back
        let mut x = a;
        while self.parent[x] as usize != ra {
            let next = self.parent[x] as usize;
            self.parent[x] = ra as u32;
            x = next;
        }
        let mut x = b;
        while self.parent[x] as usize != ra {
            let next = self.parent[x] as usize;
            self.parent[x] = ra as u32;
            x = next;
        }
    }

    /// `None` if either word is longer than the closure bound.
    pub fn same_class(&self, a: &Word, b: &Word) -> Option<bool> {
        Some(self.find(self.id(a)?) == self.find(self.id(b)?))
    }

    /// Shortlex-least word in the class of `w`.
    pub fn representative(&self, w: &Word) -> Option<Word> {
        Some(self.word(self.find(self.id(w)?)))
    }

    /// Number of classes by length of their shortest word.
    pub fn class_counts(&self) -> TruncatedSeries {
        let mut counts = vec![0u64; self.max_len + 1];
        for id in 0..self.parent.len() {
            if self.find(id) == id {
                let len = self.offsets.partition_point(|&o| o <= id) - 1;
                counts[len] += 1;
            }
        }
        TruncatedSeries::from_coeffs(counts.into_iter().map(BigInt::from).collect(), self.max_len)
    }
}

/// Growth series of `p` up to `max_len` by exhaustive closure of its defining
/// relations over all words of length at most `max_len`.
pub fn bfs_count_oracle(p: &Presentation, max_len: usize) -> Result<TruncatedSeries, OracleError> {
    Ok(WordClosure::new(p, max_len, DEFAULT_WORD_LIMIT)?.class_counts())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{affine_a, finite_a};
    use crate::word::Alphabet;

    #[test]
    fn symmetric_group_s3() {
        let s = bfs_count_oracle(&finite_a(2).unwrap(), 6).unwrap();
        assert_eq!(s, TruncatedSeries::from_u64(&[1, 2, 2, 1, 0, 0, 0]));
    }

    #[test]
    fn free_monoid() {
        let p = Presentation::new(Alphabet::standard(2), vec![]).unwrap();
        let s = bfs_count_oracle(&p, 4).unwrap();
        assert_eq!(s, TruncatedSeries::from_u64(&[1, 3, 9, 27, 81]));
    }

    #[test]
    fn word_numbering_roundtrips() {
        let c = WordClosure::new(&affine_a(2).unwrap(), 4, 1000).unwrap();
        for id in 0..c.parent.len() {
            assert_eq!(c.id(&c.word(id)), Some(id));
        }
    }

    #[test]
    fn affine_braid_is_one_class() {
        let c = WordClosure::new(&affine_a(2).unwrap(), 6, 10_000).unwrap();
        let a = Word::from_indices([0, 2, 0]);
        let b = Word::from_indices([2, 0, 2]);
        assert_eq!(c.same_class(&a, &b), Some(true));
        assert_eq!(c.same_class(&a, &Word::from_indices([0])), Some(false));
        assert_eq!(c.representative(&Word::from_indices([1, 1, 2, 2])), Some(Word::empty()));
    }

    #[test]
    fn word_limit() {
        let err = WordClosure::new(&affine_a(3).unwrap(), 12, 1000).err().unwrap();
        assert!(matches!(err, OracleError::TooManyWords { limit: 1000, .. }));
    }
}
