//! The explicit Gröbner–Shirshov basis of Ã_n: the defining families
//! `f1..f4` and the derived families `g1..g10`, expanded for a concrete rank.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::presentation::{affine_a, PresentationError};
use crate::rewrite::{complete, interreduce, CompletionError, CompletionLimits, Rule, RuleSet};
use crate::word::{DegLexOrder, Word};

#[derive(Debug, Error)]
pub enum AffineError {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("r({i},{j}) is not defined at rank {n}")]
    InvalidRange { i: usize, j: usize, n: usize },
    #[error("explicit rule {0} is not deg-lex oriented")]
    Misoriented(Rule),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// The word `r_i r_{i±1} … r_j` (ascending if `i < j`, descending if `i > j`),
/// or the identity for the two conventions `(1, 0)` and `(n, n + 1)`.
pub fn r_range(i: usize, j: usize, n: usize) -> Result<Word, AffineError> {
    if (i, j) == (1, 0) || (i, j) == (n, n + 1) {
        return Ok(Word::empty());
    }
    if i > n || j > n {
        return Err(AffineError::InvalidRange { i, j, n });
    }
    let (i, j) = (i as u8, j as u8);
    Ok(if i <= j { Word::from_indices(i..=j) } else { Word::from_indices((j..=i).rev()) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F1,
    F2,
    F3,
    F4,
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    G10,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
            Family::F4 => "f4",
            Family::G1 => "g1",
            Family::G2 => "g2",
            Family::G3 => "g3",
            Family::G4 => "g4",
            Family::G5 => "g5",
            Family::G6 => "g6",
            Family::G7 => "g7",
            Family::G8 => "g8",
            Family::G9 => "g9",
            Family::G10 => "g10",
        };
        f.write_str(s)
    }
}

/// One instance of a family, e.g. `g6^(k,l)` with `params = [k, l]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRule {
    pub family: Family,
    pub params: Vec<usize>,
    pub rule: Rule,
}

impl fmt::Display for LabeledRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
            write!(f, "^({})", p.join(","))?;
        }
        write!(f, ": {}", self.rule)
    }
}

struct Builder {
    n: usize,
    order: DegLexOrder,
    out: Vec<LabeledRule>,
}

impl Builder {
    fn r(&self, i: usize, j: usize) -> Word {
        r_range(i, j, self.n).expect("family index ranges stay inside the alphabet")
    }

    fn letter(&self, i: usize) -> Word {
        self.r(i, i)
    }

    fn cat(parts: &[&Word]) -> Word {
        let mut w = Word::empty();
        for p in parts {
            w.extend_from(p);
        }
        w
    }

    fn add(&mut self, family: Family, params: &[usize], lhs: Word, rhs: Word) -> Result<(), AffineError> {
        let rule = Rule { lhs, rhs };
        if !self.order.greater(&rule.lhs, &rule.rhs) {
            return Err(AffineError::Misoriented(rule));
        }
        self.out.push(LabeledRule { family, params: params.to_vec(), rule });
        Ok(())
    }
}

/// Every instance of `f1..f4` and `g1..g10` at rank `n`, in family order.
/// Index ranges are taken literally; empty ranges contribute nothing.
pub fn explicit_basis(n: usize) -> Result<Vec<LabeledRule>, AffineError> {
    if n < 2 {
        return Err(AffineError::InvalidRank(n));
    }
    let mut b = Builder { n, order: DegLexOrder::new(n + 1), out: Vec::new() };
    let cat = Builder::cat;
    let r0 = b.letter(0);
    let rn = b.letter(n);
    let r1 = b.letter(1);

    for i in 0..=n {
        let ri = b.letter(i);
        b.add(Family::F1, &[i], cat(&[&ri, &ri]), Word::empty())?;
    }
    for i in 0..=n {
        for j in i + 2..=n {
            if (i, j) != (0, n) {
                let (ri, rj) = (b.letter(i), b.letter(j));
                b.add(Family::F2, &[i, j], cat(&[&ri, &rj]), cat(&[&rj, &ri]))?;
            }
        }
    }
    for i in 0..n {
        let (ri, rs) = (b.letter(i), b.letter(i + 1));
        b.add(Family::F3, &[i], cat(&[&ri, &rs, &ri]), cat(&[&rs, &ri, &rs]))?;
    }
    b.add(Family::F4, &[], cat(&[&r0, &rn, &r0]), cat(&[&rn, &r0, &rn]))?;

    // g1: r_ij r_i -> r_{i+1} r_ij, 0 <= i < j-1 < n, (i,j) != (0,n)
    for i in 0..=n {
        for j in i + 2..=n {
            if (i, j) != (0, n) {
                let (rij, ri, rs) = (b.r(i, j), b.letter(i), b.letter(i + 1));
                b.add(Family::G1, &[i, j], cat(&[&rij, &ri]), cat(&[&rs, &rij]))?;
            }
        }
    }
    // g2: r_0n r0 rn -> r1 r_0n r0
    {
        let r0n = b.r(0, n);
        b.add(Family::G2, &[], cat(&[&r0n, &r0, &rn]), cat(&[&r1, &r0n, &r0]))?;
    }
    // g3: r0 r_nk r_j -> r_j r0 r_nk, 2 <= j < k-1 < n
    for j in 2..=n {
        for k in j + 2..=n {
            let (rnk, rj) = (b.r(n, k), b.letter(j));
            b.add(Family::G3, &[j, k], cat(&[&r0, &rnk, &rj]), cat(&[&rj, &r0, &rnk]))?;
        }
    }
    // g4: r0 r_nj r_{j+1} -> r_j r0 r_nj, 2 <= j < n
    for j in 2..n {
        let (rnj, rj, rj1) = (b.r(n, j), b.letter(j), b.letter(j + 1));
        b.add(Family::G4, &[j], cat(&[&r0, &rnj, &rj1]), cat(&[&rj, &r0, &rnj]))?;
    }
    // g5: r0 r_nk r0 -> rn r0 r_nk, 2 <= k < n
    for k in 2..n {
        let rnk = b.r(n, k);
        b.add(Family::G5, &[k], cat(&[&r0, &rnk, &r0]), cat(&[&rn, &r0, &rnk]))?;
    }
    // g6: r0 r_nk r_1l r_0l -> rn r0 r_nk r_1l r_{0,l-1}, 1 <= l < n, 2 <= k <= n
    for k in 2..=n {
        for l in 1..n {
            let (rnk, r1l, r0l, r0l1) = (b.r(n, k), b.r(1, l), b.r(0, l), b.r(0, l - 1));
            b.add(Family::G6, &[k, l], cat(&[&r0, &rnk, &r1l, &r0l]), cat(&[&rn, &r0, &rnk, &r1l, &r0l1]))?;
        }
    }
    // g7: r0 r_nk r_1l r0 r_nk -> r1 r0 r_nk r_1l r0 r_{n,k+1}, 1 <= l < k-1 < n
    for k in 3..=n {
        for l in 1..k - 1 {
            let (rnk, r1l, rnk1) = (b.r(n, k), b.r(1, l), b.r(n, k + 1));
            b.add(Family::G7, &[k, l], cat(&[&r0, &rnk, &r1l, &r0, &rnk]), cat(&[&r1, &r0, &rnk, &r1l, &r0, &rnk1]))?;
        }
    }
    // g8: r0 r_nk r_1l r0 r_{n,k-1} -> r1 r0 r_nk r_1l r0 r_nk, 3 <= k <= n, k-1 <= l <= n
    for k in 3..=n {
        for l in k - 1..=n {
            let (rnk, r1l, rnk_1) = (b.r(n, k), b.r(1, l), b.r(n, k - 1));
            b.add(Family::G8, &[k, l], cat(&[&r0, &rnk, &r1l, &r0, &rnk_1]), cat(&[&r1, &r0, &rnk, &r1l, &r0, &rnk]))?;
        }
    }
    // g9: r0 r_nk r_1l r0 r_nj r_1l -> rn r0 r_nk r_1l r0 r_nj r_{1,l-1},
    //     2 <= k <= n-1, k+1 <= j <= n, 1 <= l <= j-2
    for k in 2..n {
        for j in k + 1..=n {
            for l in 1..j.saturating_sub(1) {
                let (rnk, r1l, rnj, r1l_) = (b.r(n, k), b.r(1, l), b.r(n, j), b.r(1, l - 1));
                b.add(
                    Family::G9,
                    &[j, k, l],
                    cat(&[&r0, &rnk, &r1l, &r0, &rnj, &r1l]),
                    cat(&[&rn, &r0, &rnk, &r1l, &r0, &rnj, &r1l_]),
                )?;
            }
        }
    }
    // g10: r0 r_nk r_1l r0 r_nj r_{1,l+1} -> rn r0 r_nk r_1l r0 r_nj r_1l,
    //      2 <= k <= n, k <= j <= n, j-1 <= l <= n-1
    for k in 2..=n {
        for j in k..=n {
            for l in j - 1..n {
                let (rnk, r1l, rnj, r1l1) = (b.r(n, k), b.r(1, l), b.r(n, j), b.r(1, l + 1));
                b.add(
                    Family::G10,
                    &[j, k, l],
                    cat(&[&r0, &rnk, &r1l, &r0, &rnj, &r1l1]),
                    cat(&[&rn, &r0, &rnk, &r1l, &r0, &rnj, &r1l]),
                )?;
            }
        }
    }
    Ok(b.out)
}

/// The explicit basis as a rule set sorted by lhs, duplicates removed.
pub fn g_families(n: usize) -> Result<RuleSet, AffineError> {
    let rules = explicit_basis(n)?.into_iter().map(|l| l.rule).collect();
    Ok(RuleSet::new(rules, DegLexOrder::new(n + 1)).expect("explicit rules are oriented").sorted())
}

/// Comparison of a computed basis against an expected one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub matches: bool,
    /// Computed rules absent from the expected set.
    pub missing: Vec<Rule>,
    /// Expected rules the computation did not produce.
    pub extra: Vec<Rule>,
    pub computed_rules: usize,
}

pub fn compare_bases(computed: &RuleSet, expected: &RuleSet) -> BasisReport {
    let c: HashSet<&Rule> = computed.rules().iter().collect();
    let e: HashSet<&Rule> = expected.rules().iter().collect();
    let missing: Vec<Rule> = computed.rules().iter().filter(|r| !e.contains(r)).cloned().collect();
    let extra: Vec<Rule> = expected.rules().iter().filter(|r| !c.contains(r)).cloned().collect();
    BasisReport { matches: missing.is_empty() && extra.is_empty(), missing, extra, computed_rules: computed.len() }
}

/// Completes and interreduces the defining relations of Ã_n and compares the
/// result with [`g_families`].
pub fn verify_explicit_basis(n: usize, limits: CompletionLimits) -> Result<BasisReport, AffineError> {
    let computed = interreduce(&complete(&affine_a(n)?.rule_set(), limits)?);
    Ok(compare_bases(&computed, &g_families(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{ambiguities, composition_remainder, is_gs_basis, AmbiguityKind};

    fn w(ix: &[u8]) -> Word {
        Word::from_indices(ix.iter().copied())
    }

    fn family(n: usize, f: Family) -> Vec<LabeledRule> {
        explicit_basis(n).unwrap().into_iter().filter(|l| l.family == f).collect()
    }

    #[test]
    fn range_words() {
        assert_eq!(r_range(1, 3, 4).unwrap(), w(&[1, 2, 3]));
        assert_eq!(r_range(4, 5, 4).unwrap(), Word::empty());
        assert_eq!(r_range(1, 0, 4).unwrap(), Word::empty());
        assert_eq!(r_range(4, 2, 4).unwrap(), w(&[4, 3, 2]));
        assert_eq!(r_range(2, 2, 4).unwrap(), w(&[2]));
        assert!(r_range(0, 5, 4).is_err());
        assert!(r_range(6, 2, 4).is_err());
    }

    #[test]
    fn empty_families_at_rank_two() {
        for f in [Family::G3, Family::G4, Family::G5, Family::G7] {
            assert!(family(2, f).is_empty(), "{f}");
        }
        let g2 = family(2, Family::G2);
        assert_eq!(g2.len(), 1);
        assert_eq!(g2[0].rule, Rule { lhs: w(&[0, 1, 2, 0, 2]), rhs: w(&[1, 0, 1, 2, 0]) });
    }

    #[test]
    fn sample_instances() {
        let g1 = family(3, Family::G1);
        let g1_02 = g1.iter().find(|l| l.params == [0, 2]).unwrap();
        assert_eq!(g1_02.rule, Rule { lhs: w(&[0, 1, 2, 0]), rhs: w(&[1, 0, 1, 2]) });
        let g6 = family(3, Family::G6);
        let g6_21 = g6.iter().find(|l| l.params == [2, 1]).unwrap();
        assert_eq!(g6_21.rule.lhs, w(&[0, 3, 2, 1, 0, 1]));
        assert_eq!(g6_21.rule.rhs, w(&[3, 0, 3, 2, 1, 0]));
        assert_eq!(g6_21.to_string(), "g6^(2,1): r0 r3 r2 r1 r0 r1 -> r3 r0 r3 r2 r1 r0");
    }

    #[test]
    fn explicit_basis_is_reduced() {
        for n in 2..=5 {
            let g = g_families(n).unwrap();
            assert_eq!(g.len(), explicit_basis(n).unwrap().len(), "no duplicate instances at n = {n}");
            for (a, ra) in g.rules().iter().enumerate() {
                assert!(g.order().greater(&ra.lhs, &ra.rhs));
                for (b, rb) in g.rules().iter().enumerate() {
                    if a != b {
                        assert!(!ra.lhs.contains_factor(&rb.lhs), "{ra} contains {rb}");
                    }
                }
                assert!(g.is_reduced(&ra.rhs), "rhs of {ra} is reducible");
            }
        }
    }

    #[test]
    fn explicit_basis_sizes() {
        let sizes: Vec<usize> = (2..=6).map(|n| g_families(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![9, 27, 58, 105, 171]);
    }

    #[test]
    fn derivation_chain_first_steps() {
        for n in 3..=5 {
            let g = explicit_basis(n).unwrap();
            let find = |f: Family, p: &[usize]| g.iter().find(|l| l.family == f && l.params == p).unwrap().rule.clone();
            for i in 0..=n - 2 {
                if (i, i + 2) == (0, n) {
                    continue;
                }
                let f3 = find(Family::F3, &[i]);
                let f2 = find(Family::F2, &[i, i + 2]);
                let set = RuleSet::new(vec![f3.clone(), f2.clone()], DegLexOrder::new(n + 1)).unwrap();
                let amb = ambiguities(&set)
                    .into_iter()
                    .find(|a| a.i == 0 && a.j == 1 && a.kind == AmbiguityKind::Intersection)
                    .unwrap();
                assert_eq!(composition_remainder(&amb, &set), Some(find(Family::G1, &[i, i + 2])));
            }
            let g1 = find(Family::G1, &[0, n - 1]);
            let f4 = find(Family::F4, &[]);
            let set = RuleSet::new(vec![g1, f4], DegLexOrder::new(n + 1)).unwrap();
            let rem: Vec<Rule> = ambiguities(&set)
                .iter()
                .filter(|a| a.i == 0 && a.j == 1)
                .filter_map(|a| composition_remainder(a, &set))
                .collect();
            assert!(rem.contains(&find(Family::G2, &[])), "n = {n}: {rem:?}");
        }
    }

    #[test]
    fn explicit_basis_is_complete_small() {
        for n in 2..=3 {
            assert!(is_gs_basis(&g_families(n).unwrap()).is_complete());
        }
    }

    #[test]
    fn verification_matches_at_small_rank() {
        for n in 2..=3 {
            let report = verify_explicit_basis(n, CompletionLimits::default()).unwrap();
            assert!(report.matches, "{report:?}");
        }
    }

    #[test]
    fn tampered_comparison_set_reports_missing_rule() {
        let computed = interreduce(&complete(&affine_a(3).unwrap().rule_set(), CompletionLimits::default()).unwrap());
        let g2 = family(3, Family::G2)[0].rule.clone();
        let tampered: Vec<Rule> = g_families(3).unwrap().into_rules().into_iter().filter(|r| *r != g2).collect();
        let tampered = RuleSet::new(tampered, DegLexOrder::new(4)).unwrap();
        let report = compare_bases(&computed, &tampered);
        assert!(!report.matches);
        assert_eq!(report.missing, vec![g2]);
        assert!(report.extra.is_empty());
    }
}
