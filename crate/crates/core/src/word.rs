//! Alphabets, words over a ranked alphabet and the deg-lex monomial order.
//!
//! Generators are small integers. With the default precedence, generator
//! `r0` is the greatest letter and `rn` the smallest, so "ascending index"
//! means "descending precedence".

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol r{symbol} is outside an alphabet of {size} generators")]
    RankMismatch { symbol: u8, size: usize },
    #[error("unknown generator token `{0}`")]
    UnknownToken(String),
    #[error("precedence must be a permutation of 0..{0}")]
    InvalidPrecedence(usize),
    #[error("alphabet must have between 1 and 255 generators, got {0}")]
    InvalidAlphabet(usize),
}

/// A generator `r_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl Symbol {
    /// Checked constructor for a generator of the rank-`rank` alphabet `r0..r_rank`.
    pub fn new(index: u8, rank: u8) -> Result<Self, WordError> {
        if index > rank {
            return Err(WordError::RankMismatch { symbol: index, size: rank as usize + 1 });
        }
        Ok(Symbol(index))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite word; the empty word is the monoid identity and prints as `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices<I: IntoIterator<Item = u8>>(indices: I) -> Self {
        Word(indices.into_iter().map(Symbol).collect())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The factor `self[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Replaces `self[at..at + len]` by `with`.
    pub fn splice(&self, at: usize, len: usize, with: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + with.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&with.0);
        v.extend_from_slice(&self.0[at + len..]);
        Word(v)
    }

    pub fn contains_factor(&self, f: &Word) -> bool {
        f.is_empty() || self.0.windows(f.len()).any(|w| w == f.symbols())
    }

    pub fn starts_with(&self, f: &Word) -> bool {
        self.0.starts_with(&f.0)
    }

    pub fn max_symbol(&self) -> Option<Symbol> {
        self.0.iter().copied().max()
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }
}

impl std::borrow::Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "r{}", s.0)?;
        }
        Ok(())
    }
}

/// All 0-based positions `p` with `w[p..p + |f|] = f`, ascending. Overlapping
/// occurrences are reported.
pub fn find_factors(w: &Word, f: &Word) -> Vec<usize> {
    assert!(!f.is_empty(), "factor must be nonempty");
    if f.len() > w.len() {
        return Vec::new();
    }
    w.symbols().windows(f.len()).enumerate().filter_map(|(p, win)| (win == f.symbols()).then_some(p)).collect()
}

/// Named generators; position in the list is the symbol index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// `r0, r1, …, r_rank`.
    pub fn standard(rank: usize) -> Self {
        Self::with_offset(rank + 1, 0)
    }

    /// `size` generators named `r{offset}, r{offset+1}, …`.
    pub fn with_offset(size: usize, offset: usize) -> Self {
        Alphabet { names: (0..size).map(|i| format!("r{}", i + offset)).collect() }
    }

    pub fn from_names(names: Vec<String>) -> Result<Self, WordError> {
        if names.is_empty() || names.len() > 255 {
            return Err(WordError::InvalidAlphabet(names.len()));
        }
        Ok(Alphabet { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn lookup(&self, token: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == token).map(|i| Symbol(i as u8))
    }

    /// Parses whitespace-separated tokens; a lone `1` (or empty input) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || (tokens.len() == 1 && tokens[0] == "1" && self.lookup("1").is_none()) {
            return Ok(Word::empty());
        }
        tokens.into_iter().map(|t| self.lookup(t).ok_or_else(|| WordError::UnknownToken(t.to_string()))).collect()
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|s| self.name(s)).collect::<Vec<_>>().join(" ")
    }
}

/// Deg-lex order: longer words are greater; equal lengths are compared
/// left to right by generator precedence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegLexOrder {
    // rank[s] = position of s in the precedence list, 0 = greatest
    rank: Vec<u8>,
}

impl DegLexOrder {
    /// Default precedence `r0 > r1 > … > r_{size-1}`.
    pub fn new(size: usize) -> Self {
        DegLexOrder { rank: (0..size as u8).collect() }
    }

    /// `precedence` lists symbols from greatest to smallest.
    pub fn with_precedence(precedence: &[Symbol]) -> Result<Self, WordError> {
        let size = precedence.len();
        let mut rank = vec![u8::MAX; size];
        for (pos, s) in precedence.iter().enumerate() {
            if s.index() >= size || rank[s.index()] != u8::MAX {
                return Err(WordError::InvalidPrecedence(size));
            }
            rank[s.index()] = pos as u8;
        }
        Ok(DegLexOrder { rank })
    }

    pub fn alphabet_size(&self) -> usize {
        self.rank.len()
    }

    pub fn precedence(&self) -> Vec<Symbol> {
        let mut p = vec![Symbol(0); self.rank.len()];
        for (s, &r) in self.rank.iter().enumerate() {
            p[r as usize] = Symbol(s as u8);
        }
        p
    }

    /// Checked comparison; fails if either word uses a symbol outside the alphabet.
    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering, WordError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.cmp(u, v))
    }

    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.iter().find(|s| s.index() >= self.rank.len()) {
            Some(s) => Err(WordError::RankMismatch { symbol: s.0, size: self.rank.len() }),
            None => Ok(()),
        }
    }

    /// Unchecked comparison for words already known to be over this alphabet.
    pub fn cmp(&self, u: &Word, v: &Word) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            for (a, b) in u.iter().zip(v.iter()) {
                if a != b {
                    // smaller rank = greater letter
                    return self.rank[b.index()].cmp(&self.rank[a.index()]);
                }
            }
            Ordering::Equal
        })
    }

    #[inline]
    pub fn greater(&self, u: &Word, v: &Word) -> bool {
        self.cmp(u, v) == Ordering::Greater
    }

    /// A key whose natural `Ord` agrees with this order.
    pub fn sort_key(&self, w: &Word) -> (usize, Vec<u8>) {
        let top = self.rank.len() as u8;
        (w.len(), w.iter().map(|s| top - self.rank[s.index()]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(ix: &[u8]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    #[test]
    fn compare_examples() {
        let ord = DegLexOrder::new(3);
        assert_eq!(ord.compare(&w(&[1, 2]), &w(&[1, 2])).unwrap(), Ordering::Equal);
        assert_eq!(ord.compare(&w(&[0]), &w(&[1, 2])).unwrap(), Ordering::Less);
        assert_eq!(ord.compare(&w(&[1, 2]), &w(&[2, 0])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn compare_rejects_foreign_symbols() {
        let ord = DegLexOrder::new(3);
        assert_eq!(ord.compare(&w(&[0, 3]), &w(&[1])), Err(WordError::RankMismatch { symbol: 3, size: 3 }));
    }

    #[test]
    fn custom_precedence() {
        let ord = DegLexOrder::with_precedence(&[Symbol(2), Symbol(0), Symbol(1)]).unwrap();
        assert!(ord.greater(&w(&[2]), &w(&[0])));
        assert!(ord.greater(&w(&[0]), &w(&[1])));
        assert_eq!(ord.precedence(), vec![Symbol(2), Symbol(0), Symbol(1)]);
        assert!(DegLexOrder::with_precedence(&[Symbol(0), Symbol(0)]).is_err());
    }

    #[test]
    fn factor_examples() {
        assert_eq!(find_factors(&w(&[1, 1, 1]), &w(&[1, 1])), vec![0, 1]);
        assert!(find_factors(&w(&[0, 1, 0]), &w(&[0, 2])).is_empty());
        assert_eq!(find_factors(&w(&[0, 1, 2, 0, 1]), &w(&[0, 1])), vec![0, 3]);
        assert!(find_factors(&w(&[0]), &w(&[0, 1])).is_empty());
    }

    #[test]
    fn word_syntax() {
        let a = Alphabet::standard(2);
        assert_eq!(a.parse_word("r0 r2  r1").unwrap(), w(&[0, 2, 1]));
        assert_eq!(a.parse_word("1").unwrap(), Word::empty());
        assert_eq!(a.parse_word("r0 r5"), Err(WordError::UnknownToken("r5".into())));
        assert_eq!(a.format(&Word::empty()), "1");
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(w(&[0, 2]).to_string(), "r0 r2");
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..4, 0..8).prop_map(Word::from_indices)
    }

    proptest! {
        #[test]
        fn total_and_antisymmetric(u in word_strategy(), v in word_strategy()) {
            let ord = DegLexOrder::new(4);
            let a = ord.cmp(&u, &v);
            prop_assert_eq!(a, ord.cmp(&v, &u).reverse());
            prop_assert_eq!(a == Ordering::Equal, u == v);
            prop_assert_eq!(a, ord.sort_key(&u).cmp(&ord.sort_key(&v)));
        }

        #[test]
        fn compatible_with_multiplication(
            u in word_strategy(), v in word_strategy(),
            l in word_strategy(), r in word_strategy(),
        ) {
            let ord = DegLexOrder::new(4);
            if ord.greater(&u, &v) {
                prop_assert!(ord.greater(&l.concat(&u).concat(&r), &l.concat(&v).concat(&r)));
            }
        }

        #[test]
        fn factors_match_naive_scan(u in word_strategy(), f in prop::collection::vec(0u8..4, 1..3)) {
            let f = Word::from_indices(f);
            let naive: Vec<usize> = (0..u.len().saturating_sub(f.len() - 1))
                .filter(|&p| p + f.len() <= u.len() && u.factor(p, p + f.len()) == f)
                .collect();
            prop_assert_eq!(find_factors(&u, &f), naive);
        }
    }
}
