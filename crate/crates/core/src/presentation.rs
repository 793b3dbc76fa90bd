//! Coxeter-type presentations and the line-oriented presentation file format.
//!
//! ```text
//! # comment
//! generators: a b c
//! rel: a a =
//! rel: a b a = b a b
//! ```
//!
//! Precedence is the order of the `generators:` line, first = greatest.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::rewrite::{Rule, RuleSet};
use crate::word::{Alphabet, DegLexOrder, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("rank must be at least {min}, got {got}")]
    InvalidRank { min: usize, got: usize },
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("line {line}: unknown generator token `{token}`")]
    UnknownToken { line: usize, token: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `generators:` line")]
    MissingGenerators,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Generators plus a duplicate-free list of deg-lex oriented relations
/// `lhs = rhs` (`lhs` greater), sorted by lhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    order: DegLexOrder,
    relations: Vec<Rule>,
}

impl Presentation {
    /// Orients, deduplicates and sorts the relations; trivial relations `w = w` are dropped.
    pub fn new(alphabet: Alphabet, relations: Vec<(Word, Word)>) -> Result<Self, PresentationError> {
        let order = DegLexOrder::new(alphabet.size());
        let mut seen = BTreeSet::new();
        let mut rels = Vec::new();
        for (a, b) in relations {
            order.check(&a)?;
            order.check(&b)?;
            if let Some(r) = Rule::oriented(a, b, &order) {
                if seen.insert((order.sort_key(&r.lhs), order.sort_key(&r.rhs))) {
                    rels.push(r);
                }
            }
        }
        rels.sort_by(|x, y| order.cmp(&x.lhs, &y.lhs).then_with(|| order.cmp(&x.rhs, &y.rhs)));
        Ok(Presentation { alphabet, order, relations: rels })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &DegLexOrder {
        &self.order
    }

    pub fn relations(&self) -> &[Rule] {
        &self.relations
    }

    /// Highest generator index, i.e. the `n` of `r0..rn`.
    pub fn rank(&self) -> usize {
        self.alphabet.size() - 1
    }

    pub fn rule_set(&self) -> RuleSet {
        RuleSet::from_checked(self.relations.clone(), self.order.clone())
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "generators: {}", self.alphabet.names().join(" "));
        for r in &self.relations {
            let side = |w: &Word| if w.is_empty() { String::new() } else { self.alphabet.format(w) };
            let rhs = side(&r.rhs);
            if rhs.is_empty() {
                let _ = writeln!(out, "rel: {} =", side(&r.lhs));
            } else {
                let _ = writeln!(out, "rel: {} = {}", side(&r.lhs), rhs);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relations = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: &str| PresentationError::Syntax { line: line_no, message: message.into() };
            if let Some(rest) = line.strip_prefix("generators:") {
                if alphabet.is_some() {
                    return Err(syntax("duplicate `generators:` line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                let mut uniq = BTreeSet::new();
                if names.iter().any(|n| n == "=" || n == "1" || !uniq.insert(n.clone())) {
                    return Err(syntax("generator names must be distinct and not `=` or `1`"));
                }
                alphabet = Some(Alphabet::from_names(names).map_err(|e| syntax(&e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let Some(alpha) = alphabet.as_ref() else {
                    return Err(syntax("`generators:` must come before relations"));
                };
                let mut sides = rest.split('=');
                let (Some(l), Some(r), None) = (sides.next(), sides.next(), sides.next()) else {
                    return Err(syntax("relation must have exactly one `=`"));
                };
                let side = |s: &str| {
                    alpha.parse_word(s).map_err(|e| match e {
                        WordError::UnknownToken(token) => PresentationError::UnknownToken { line: line_no, token },
                        other => PresentationError::Word(other),
                    })
                };
                relations.push((side(l)?, side(r)?));
            } else {
                return Err(syntax("expected `generators:` or `rel:`"));
            }
        }
        Presentation::new(alphabet.ok_or(PresentationError::MissingGenerators)?, relations)
    }
}

fn alternating(i: u8, j: u8, len: usize) -> Word {
    Word::from_indices((0..len).map(|t| if t % 2 == 0 { i } else { j }))
}

/// The affine Weyl group of type Ã_n on `r0..rn`: involutions, commutations of
/// non-adjacent nodes on the cycle, and braid relations of adjacent nodes
/// (including the pair `r0, rn`).
pub fn affine_a(n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::InvalidRank { min: 2, got: n });
    }
    let n8 = n as u8;
    let mut rels = Vec::new();
    for i in 0..=n8 {
        rels.push((alternating(i, i, 2), Word::empty()));
    }
    for i in 0..=n8 {
        for j in i + 2..=n8 {
            if (i, j) != (0, n8) {
                rels.push((alternating(i, j, 2), alternating(j, i, 2)));
            }
        }
    }
    for i in 0..n8 {
        rels.push((alternating(i, i + 1, 3), alternating(i + 1, i, 3)));
    }
    rels.push((alternating(0, n8, 3), alternating(n8, 0, 3)));
    Presentation::new(Alphabet::standard(n), rels)
}

/// The symmetric group S_{n+1} as the Coxeter group A_n on generators `r1..rn`.
pub fn finite_a(n: usize) -> Result<Presentation, PresentationError> {
    if n < 1 {
        return Err(PresentationError::InvalidRank { min: 1, got: n });
    }
    let mut m = CoxeterMatrix::new(n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, Some(3))?;
    }
    from_coxeter_matrix_with(&m, Alphabet::with_offset(n, 1))
}

/// Symmetric Coxeter matrix; `None` stands for ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    m: Vec<Vec<Option<u32>>>,
}

impl CoxeterMatrix {
    /// All off-diagonal entries 2 (pairwise commuting involutions).
    pub fn new(size: usize) -> Self {
        let m = (0..size).map(|i| (0..size).map(|j| Some(if i == j { 1 } else { 2 })).collect()).collect();
        CoxeterMatrix { m }
    }

    pub fn from_rows(rows: Vec<Vec<Option<u32>>>) -> Result<Self, PresentationError> {
        let size = rows.len();
        if size == 0 || size > 255 {
            return Err(PresentationError::MalformedMatrix("size must be in 1..=255".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(PresentationError::MalformedMatrix(format!("row {i} has length {}", row.len())));
            }
            if row[i] != Some(1) {
                return Err(PresentationError::MalformedMatrix(format!("m[{i}][{i}] must be 1")));
            }
            for (j, &e) in row.iter().enumerate() {
                if e != rows[j][i] {
                    return Err(PresentationError::MalformedMatrix(format!("m[{i}][{j}] != m[{j}][{i}]")));
                }
                if i != j && matches!(e, Some(v) if v < 2) {
                    return Err(PresentationError::MalformedMatrix(format!("m[{i}][{j}] must be >= 2")));
                }
            }
        }
        Ok(CoxeterMatrix { m: rows })
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.m[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Option<u32>) -> Result<(), PresentationError> {
        if i == j || matches!(value, Some(v) if v < 2) {
            return Err(PresentationError::MalformedMatrix(format!("cannot set m[{i}][{j}] = {value:?}")));
        }
        self.m[i][j] = value;
        self.m[j][i] = value;
        Ok(())
    }

    /// The Coxeter matrix of Ã_n: a cycle of `n + 1` nodes.
    pub fn affine_a(n: usize) -> Self {
        let mut m = CoxeterMatrix::new(n + 1);
        for i in 0..=n {
            let j = (i + 1) % (n + 1);
            m.m[i][j] = Some(3);
            m.m[j][i] = Some(3);
        }
        m
    }
}

/// Involutions plus, for each finite `m_ij`, the two alternating words of
/// length `m_ij` equated. Generators are `r0..r_{size-1}`.
pub fn from_coxeter_matrix(m: &CoxeterMatrix) -> Result<Presentation, PresentationError> {
    from_coxeter_matrix_with(m, Alphabet::standard(m.size() - 1))
}

fn from_coxeter_matrix_with(m: &CoxeterMatrix, alphabet: Alphabet) -> Result<Presentation, PresentationError> {
    let size = m.size();
    let mut rels = Vec::new();
    for i in 0..size {
        rels.push((alternating(i as u8, i as u8, 2), Word::empty()));
        for j in i + 1..size {
            if let Some(mij) = m.get(i, j) {
                let mij = mij as usize;
                rels.push((alternating(i as u8, j as u8, mij), alternating(j as u8, i as u8, mij)));
            }
        }
    }
    Presentation::new(alphabet, rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[u8]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    #[test]
    fn affine_relation_counts() {
        // three involutions and three braids on the triangle
        assert_eq!(affine_a(2).unwrap().relations().len(), 6);
        assert_eq!(affine_a(4).unwrap().relations().len(), 15);
        for n in 3..=8 {
            let expected = (n + 1) + (n * (n - 1) / 2 - 1) + n + 1;
            assert_eq!(affine_a(n).unwrap().relations().len(), expected, "n = {n}");
        }
        assert_eq!(affine_a(1), Err(PresentationError::InvalidRank { min: 2, got: 1 }));
    }

    #[test]
    fn affine_braid_orientation() {
        let p = affine_a(3).unwrap();
        assert!(p.relations().contains(&Rule { lhs: w(&[0, 1, 0]), rhs: w(&[1, 0, 1]) }));
        assert!(p.relations().contains(&Rule { lhs: w(&[0, 3, 0]), rhs: w(&[3, 0, 3]) }));
        // r0 and r3 are adjacent on the cycle: no commutation
        assert!(!p.relations().iter().any(|r| r.lhs == w(&[0, 3])));
    }

    #[test]
    fn builders_are_oriented() {
        let mut ps = vec![finite_a(1).unwrap(), finite_a(4).unwrap()];
        ps.extend((2..=6).map(|n| affine_a(n).unwrap()));
        for p in ps {
            for r in p.relations() {
                assert!(p.order().greater(&r.lhs, &r.rhs), "{r}");
            }
        }
    }

    #[test]
    fn finite_a_small() {
        let p = finite_a(1).unwrap();
        assert_eq!(p.relations(), &[Rule { lhs: w(&[0, 0]), rhs: Word::empty() }]);
        assert_eq!(p.alphabet().names(), &["r1".to_string()]);
        assert_eq!(finite_a(2).unwrap().relations().len(), 3);
        assert!(finite_a(0).is_err());
    }

    #[test]
    fn coxeter_matrix_builder() {
        assert_eq!(from_coxeter_matrix(&CoxeterMatrix::affine_a(2)).unwrap(), affine_a(2).unwrap());
        assert_eq!(from_coxeter_matrix(&CoxeterMatrix::affine_a(5)).unwrap(), affine_a(5).unwrap());
        let mut m = CoxeterMatrix::new(3);
        m.set(0, 1, None).unwrap();
        let p = from_coxeter_matrix(&m).unwrap();
        assert!(!p.relations().iter().any(|r| r.lhs == w(&[0, 1])));
        assert!(p.relations().contains(&Rule { lhs: w(&[0, 2]), rhs: w(&[2, 0]) }));
        assert!(CoxeterMatrix::from_rows(vec![vec![Some(1), Some(3)], vec![Some(2), Some(1)]]).is_err());
        assert!(CoxeterMatrix::from_rows(vec![vec![Some(2)]]).is_err());
    }

    #[test]
    fn parse_involution() {
        let p = Presentation::parse("generators: a b\nrel: a a =").unwrap();
        assert_eq!(p.relations(), &[Rule { lhs: w(&[0, 0]), rhs: Word::empty() }]);
    }

    #[test]
    fn parse_reports_unknown_token_with_line() {
        let err = Presentation::parse("generators: a b\nrel: a b = b a c").unwrap_err();
        assert_eq!(err, PresentationError::UnknownToken { line: 2, token: "c".into() });
        assert!(matches!(
            Presentation::parse("# x\ngenerators: a\nrel: a a").unwrap_err(),
            PresentationError::Syntax { line: 3, .. }
        ));
        assert!(matches!(Presentation::parse("rel: a ="), Err(PresentationError::Syntax { line: 1, .. })));
        assert_eq!(Presentation::parse("# nothing\n"), Err(PresentationError::MissingGenerators));
    }

    #[test]
    fn serialize_roundtrip() {
        for n in 2..=5 {
            let p = affine_a(n).unwrap();
            assert_eq!(Presentation::parse(&p.serialize()).unwrap(), p);
        }
        let custom = "# demo\n\ngenerators: x y\nrel: y x = x y\nrel: x x =\nrel: x x =\n";
        let p = Presentation::parse(custom).unwrap();
        assert_eq!(p.relations().len(), 2);
        let text = p.serialize();
        assert_eq!(text, "generators: x y\nrel: x y = y x\nrel: x x =\n");
        assert_eq!(Presentation::parse(&text).unwrap(), p);
    }
}
