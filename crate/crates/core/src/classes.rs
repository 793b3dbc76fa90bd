//! Reduced words of Ã_n: r0-free words, blocks `r0 r_{n,k} r_{1,l}`, the
//! component skeletons `u`, descending chains `v`, arranged words and their
//! marked components.
//!
//! Every reduced word is `r·w` with `r` free of `r0` and `w` an arranged
//! word. An arranged word is
//!
//! ```text
//! a_n^{m_n} ⋯ a_1^{m_1} · b_t b_{t-1} ⋯ b_s
//! ```
//!
//! where the components `a_i` (blocks with `l - k = i - 2`) form a lattice path
//! from `a_n = (2, n)` in which each step either raises `k` or lowers `l`, and
//! the chain blocks `b` have `l - k < -1` with `k` strictly increasing and `l`
//! strictly decreasing left to right. A component entered by an `l`-step and
//! left by a `k`-step (a corner) must occur at least once; the corners plus
//! the chain are the marked sequence `ŵ`. All other exponents are free.

use std::fmt;

use thiserror::Error;

use crate::affine::{g_families, r_range, AffineError};
use crate::rewrite::{Rule, RuleSet};
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("block (k={k}, l={l}) is outside rank {n}")]
    InvalidBlock { n: usize, k: usize, l: usize },
    #[error("blocks of rank {0} and {1} cannot be combined")]
    RankMismatch(usize, usize),
    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid arranged word: {0}")]
    NotArranged(String),
    #[error("invalid marked sequence: {0}")]
    InvalidSequence(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("word is not reduced: factor {factor} at position {position} is the leading word of {rule}")]
    NotReduced { factor: Word, position: usize, rule: Rule },
    #[error("cannot split `{0}` into blocks")]
    Malformed(Word),
}

/// The word `r0 · r_{n,k} · r_{1,l}` for `2 ≤ k ≤ n+1`, `0 ≤ l ≤ n`; `k = n+1`
/// and `l = 0` denote empty middle and tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    n: u8,
    k: u8,
    l: u8,
}

impl Block {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self, ClassError> {
        if !(2..=250).contains(&n) {
            return Err(ClassError::InvalidRank(n));
        }
        if !(2..=n + 1).contains(&k) || l > n {
            return Err(ClassError::InvalidBlock { n, k, l });
        }
        Ok(Block { n: n as u8, k: k as u8, l: l as u8 })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn k(self) -> usize {
        self.k as usize
    }

    pub fn l(self) -> usize {
        self.l as usize
    }

    /// `l - k`.
    pub fn shape(self) -> i32 {
        self.l as i32 - self.k as i32
    }

    /// Blocks with `l - k ≥ -1` are the skeleton components `a_i`, `i = l - k + 2`.
    pub fn is_component(self) -> bool {
        self.shape() >= -1
    }

    /// Expanded word length `n - k + l + 2`.
    pub fn len(self) -> usize {
        self.n() + 2 + self.l() - self.k()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn expand(self) -> Word {
        let n = self.n();
        let mut w = Word::from_indices([0]);
        w.extend_from(&r_range(n, self.k(), n).expect("valid block"));
        w.extend_from(&r_range(1, self.l(), n).expect("valid block"));
        w
    }

    fn raise_k(self) -> Block {
        Block { k: self.k + 1, ..self }
    }

    fn lower_l(self) -> Block {
        Block { l: self.l - 1, ..self }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{})", self.k, self.l)
    }
}

/// Whether the product of two blocks is reduced, by the case table on
/// `(k, l)` of the first and `(p, q)` of the second block:
///
/// * `q - p < l - k < -1`: `k < p` and `l > q`
/// * `q - p < -1 ≤ l - k`: `k ≤ p` and `l > q`
/// * `l - k > q - p ≥ -1`: `k ≤ p` and `l ≥ q`
///
/// Outside those cases the product is reduced only for the square of a
/// component block.
pub fn block_pair_reduced(first: Block, second: Block) -> Result<bool, ClassError> {
    if first.n != second.n {
        return Err(ClassError::RankMismatch(first.n(), second.n()));
    }
    let (k, l, p, q) = (first.k, first.l, second.k, second.l);
    let (s1, s2) = (first.shape(), second.shape());
    Ok(if s2 < s1 && s1 < -1 {
        k < p && l > q
    } else if s2 < -1 && s1 >= -1 {
        k <= p && l > q
    } else if s1 > s2 && s2 >= -1 {
        k <= p && l >= q
    } else {
        first == second && s1 >= -1
    })
}

/// The lattice path of components `a_n, a_{n-1}, …, a_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct USkeleton {
    components: Vec<Block>,
}

impl USkeleton {
    pub fn new(components: Vec<Block>) -> Result<Self, ClassError> {
        let Some(first) = components.first() else {
            return Err(ClassError::InvalidSkeleton("no components".into()));
        };
        let n = first.n();
        if components.len() != n {
            return Err(ClassError::InvalidSkeleton(format!("expected {n} components, got {}", components.len())));
        }
        if (first.k(), first.l()) != (2, n) {
            return Err(ClassError::InvalidSkeleton(format!("a_n must be B(2,{n}), got {first}")));
        }
        for pair in components.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b.n != a.n {
                return Err(ClassError::RankMismatch(a.n(), b.n()));
            }
            let ok = (b.k == a.k + 1 && b.l == a.l) || (b.k == a.k && b.l + 1 == a.l);
            if !ok {
                return Err(ClassError::InvalidSkeleton(format!("{a} -> {b} is not a single step")));
            }
        }
        Ok(USkeleton { components })
    }

    /// All `2^(n-1)` skeletons. Bit `t` of the index selects an `l`-step at step `t`.
    pub fn all(n: usize) -> Result<Vec<USkeleton>, ClassError> {
        let start = Block::new(n, 2, n)?;
        Ok((0..1u64 << (n - 1))
            .map(|mask| {
                let mut comps = vec![start];
                for t in 0..n - 1 {
                    let last = *comps.last().expect("nonempty");
                    comps.push(if mask >> t & 1 == 1 { last.lower_l() } else { last.raise_k() });
                }
                USkeleton { components: comps }
            })
            .collect())
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    /// Components left to right: `a_n` first, `a_1` last.
    pub fn components(&self) -> &[Block] {
        &self.components
    }

    /// `a_i` for `1 ≤ i ≤ n`.
    pub fn component(&self, i: usize) -> Block {
        self.components[self.n() - i]
    }

    /// Positions (into [`components`](Self::components)) whose exponent must be
    /// at least one, given the chain head `(p, q)` (`None` for the empty chain).
    pub fn corners(&self, head: Option<Block>) -> Vec<bool> {
        let c = &self.components;
        let n = c.len();
        let mut forced = vec![false; n];
        for idx in 1..n.saturating_sub(1) {
            let entered_by_l = c[idx - 1].k == c[idx].k;
            let left_by_k = c[idx + 1].k == c[idx].k + 1;
            forced[idx] = entered_by_l && left_by_k;
        }
        if n >= 2 {
            let last = c[n - 1];
            let entered_by_l = c[n - 2].k == last.k;
            let p_exceeds = head.is_none_or(|b| b.k > last.k);
            forced[n - 1] = entered_by_l && p_exceeds;
        }
        forced
    }
}

/// `b_t b_{t-1} ⋯ b_s`, stored left to right; empty for the formal identity `v(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VChain {
    blocks: Vec<Block>,
}

impl VChain {
    pub fn identity() -> Self {
        VChain { blocks: Vec::new() }
    }

    pub fn new(blocks: Vec<Block>) -> Result<Self, ClassError> {
        if let Some(head) = blocks.first() {
            if head.shape() >= -1 {
                return Err(ClassError::InvalidChain(format!("head {head} needs l - k < -1")));
            }
        }
        for pair in blocks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a.n != b.n {
                return Err(ClassError::RankMismatch(a.n(), b.n()));
            }
            if !(b.k > a.k && b.l < a.l) {
                return Err(ClassError::InvalidChain(format!("{a} -> {b} must raise k and lower l")));
            }
        }
        Ok(VChain { blocks })
    }

    /// Every chain at rank `n`: the identity first, then by head, depth first.
    pub fn all(n: usize) -> Result<Vec<VChain>, ClassError> {
        fn extend(n: usize, chain: &mut Vec<Block>, out: &mut Vec<VChain>) {
            out.push(VChain { blocks: chain.clone() });
            let last = *chain.last().expect("nonempty");
            for p in last.k() + 1..=n + 1 {
                for q in 0..last.l() {
                    chain.push(Block::new(n, p, q).expect("in range"));
                    extend(n, chain, out);
                    chain.pop();
                }
            }
        }
        let mut out = vec![VChain::identity()];
        for p in 2..=n + 1 {
            for q in 0..=n {
                let head = Block::new(n, p, q)?;
                if head.shape() < -1 {
                    extend(n, &mut vec![head], &mut out);
                }
            }
        }
        Ok(out)
    }

    pub fn head(&self) -> Option<Block> {
        self.blocks.first().copied()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Number of possible chain heads at rank `n`: pairs `(p, q)` with `q - p < -1`.
pub fn chain_head_count(n: usize) -> usize {
    (2..=n + 1).map(|p| p - 1).sum()
}

/// `u · v` with `u = a_n^{m_n} ⋯ a_1^{m_1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrangedWord {
    skeleton: USkeleton,
    exponents: Vec<u32>,
    chain: VChain,
}

impl ArrangedWord {
    /// `exponents[i]` belongs to `skeleton.components()[i]`.
    pub fn new(skeleton: USkeleton, exponents: Vec<u32>, chain: VChain) -> Result<Self, ClassError> {
        let n = skeleton.n();
        if exponents.len() != n {
            return Err(ClassError::ExponentLength { expected: n, got: exponents.len() });
        }
        let a1 = skeleton.components[n - 1];
        if let Some(head) = chain.head() {
            if head.n != a1.n {
                return Err(ClassError::RankMismatch(a1.n(), head.n()));
            }
            if !(head.k >= a1.k && head.l < a1.l) {
                return Err(ClassError::NotArranged(format!("chain head {head} incompatible with a_1 = {a1}")));
            }
        }
        for (idx, forced) in skeleton.corners(chain.head()).into_iter().enumerate() {
            if forced && exponents[idx] == 0 {
                return Err(ClassError::NotArranged(format!(
                    "corner component {} needs a positive exponent",
                    skeleton.components[idx]
                )));
            }
        }
        Ok(ArrangedWord { skeleton, exponents, chain })
    }

    /// The empty word: skeleton all `k`-steps, zero exponents, identity chain.
    pub fn empty(n: usize) -> Result<Self, ClassError> {
        let skeleton = USkeleton::all(n)?.swap_remove(0);
        Self::new(skeleton, vec![0; n], VChain::identity())
    }

    pub fn n(&self) -> usize {
        self.skeleton.n()
    }

    pub fn skeleton(&self) -> &USkeleton {
        &self.skeleton
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn chain(&self) -> &VChain {
        &self.chain
    }

    /// The block factorisation of the expanded word.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        for (b, &m) in self.skeleton.components.iter().zip(&self.exponents) {
            out.extend(std::iter::repeat_n(*b, m as usize));
        }
        out.extend_from_slice(&self.chain.blocks);
        out
    }

    pub fn len(&self) -> usize {
        let u: usize = self.skeleton.components.iter().zip(&self.exponents).map(|(b, &m)| b.len() * m as usize).sum();
        u + self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn expand(&self) -> Word {
        let mut w = Word::empty();
        for b in self.blocks() {
            w.extend_from(&b.expand());
        }
        w
    }
}

impl fmt::Display for ArrangedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (b, &m) in self.skeleton.components.iter().zip(&self.exponents) {
            match m {
                0 => {}
                1 => parts.push(b.to_string()),
                _ => parts.push(format!("{b}^{m}")),
            }
        }
        parts.extend(self.chain.blocks.iter().map(|b| b.to_string()));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Marked components (the corners of an arranged word) followed by its chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedSeq {
    n: usize,
    marks: Vec<Block>,
    chain: VChain,
}

impl MarkedSeq {
    /// Requires component marks with `k` strictly increasing and `l` strictly
    /// decreasing left to right, the first `l` below `n`, and the last mark
    /// strictly before the chain head in both coordinates.
    pub fn new(n: usize, marks: Vec<Block>, chain: VChain) -> Result<Self, ClassError> {
        if n < 2 {
            return Err(ClassError::InvalidRank(n));
        }
        for b in marks.iter().chain(chain.blocks()) {
            if b.n() != n {
                return Err(ClassError::RankMismatch(n, b.n()));
            }
        }
        let bad = |m: String| Err(ClassError::InvalidSequence(m));
        if let Some(m) = marks.iter().find(|m| !m.is_component()) {
            return bad(format!("mark {m} is not a component (l - k < -1)"));
        }
        if let Some(first) = marks.first() {
            if first.l() >= n {
                return bad(format!("first mark {first} needs l < {n}"));
            }
        }
        for pair in marks.windows(2) {
            if !(pair[1].k > pair[0].k && pair[1].l < pair[0].l) {
                return bad(format!("marks {} and {} are not strictly monotone", pair[0], pair[1]));
            }
        }
        if let (Some(last), Some(head)) = (marks.last(), chain.head()) {
            if !(last.k < head.k && last.l > head.l) {
                return bad(format!("last mark {last} must precede chain head {head}"));
            }
        }
        Ok(MarkedSeq { n, marks, chain })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marks(&self) -> &[Block] {
        &self.marks
    }

    pub fn chain(&self) -> &VChain {
        &self.chain
    }

    /// Marks then chain blocks, left to right.
    pub fn blocks(&self) -> Vec<Block> {
        self.marks.iter().chain(self.chain.blocks()).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.blocks().iter().map(|b| b.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty() && self.chain.is_identity()
    }

    pub fn expand(&self) -> Word {
        let mut w = Word::empty();
        for b in self.blocks() {
            w.extend_from(&b.expand());
        }
        w
    }
}

/// Builds the skeleton through `waypoints` (components, in order), moving
/// `k` first and `l` second between consecutive waypoints, and ending at `a_1`
/// without creating a corner that is not a waypoint.
fn skeleton_through(n: usize, waypoints: &[Block], head: Option<Block>) -> Result<USkeleton, ClassError> {
    let mut cur = Block::new(n, 2, n)?;
    let mut path = vec![cur];
    let walk = |path: &mut Vec<Block>, cur: &mut Block, k: u8, l: u8| {
        while cur.k < k {
            *cur = cur.raise_k();
            path.push(*cur);
        }
        while cur.l > l {
            *cur = cur.lower_l();
            path.push(*cur);
        }
    };
    for w in waypoints {
        if !w.is_component() || w.k < cur.k || w.l > cur.l {
            return Err(ClassError::NotArranged(format!("component {w} is not reachable from {cur}")));
        }
        walk(&mut path, &mut cur, w.k, w.l);
    }
    // end at a_1 = (K, K - 1): K = min(p, l + 1), and K = l + 1 when the chain is empty
    let mut target = cur.l + 1;
    if let Some(h) = head {
        target = target.min(h.k);
    }
    if target < cur.k {
        return Err(ClassError::NotArranged(format!("chain head {} lies before {cur}", head.expect("set"))));
    }
    walk(&mut path, &mut cur, target, target - 1);
    USkeleton::new(path)
}

/// The corners of `w` and its chain.
pub fn marked_components(w: &ArrangedWord) -> MarkedSeq {
    let marks = w
        .skeleton
        .corners(w.chain.head())
        .into_iter()
        .zip(&w.skeleton.components)
        .filter_map(|(f, b)| f.then_some(*b))
        .collect();
    MarkedSeq::new(w.n(), marks, w.chain.clone()).expect("corners of an arranged word form a marked sequence")
}

/// Exponents of `w` beyond the mandatory one at each corner.
pub fn free_exponents(w: &ArrangedWord) -> Vec<u32> {
    w.skeleton.corners(w.chain.head()).into_iter().zip(&w.exponents).map(|(f, &m)| m - u32::from(f)).collect()
}

/// The shortest arranged word with the given marked components.
pub fn rebuild(seq: &MarkedSeq) -> Result<ArrangedWord, ClassError> {
    rebuild_with_exponents(seq, &vec![0; seq.n])
}

/// The arranged word with marked components `seq` whose exponents exceed the
/// minimum by `free` (indexed like the skeleton components, `a_n` first).
pub fn rebuild_with_exponents(seq: &MarkedSeq, free: &[u32]) -> Result<ArrangedWord, ClassError> {
    let n = seq.n;
    if free.len() != n {
        return Err(ClassError::ExponentLength { expected: n, got: free.len() });
    }
    let skeleton = skeleton_through(n, &seq.marks, seq.chain.head())?;
    let corners = skeleton.corners(seq.chain.head());
    let marked: Vec<bool> = skeleton.components.iter().map(|b| seq.marks.contains(b)).collect();
    if corners != marked {
        return Err(ClassError::InvalidSequence("marks are not the corners of their skeleton".into()));
    }
    let exponents = marked.iter().zip(free).map(|(&m, &e)| e + u32::from(m)).collect();
    ArrangedWord::new(skeleton, exponents, seq.chain.clone())
}

/// Words `(r_{n,j_n})^{α_n} ⋯ (r_{1,j_1})^{α_1}` with `i ≤ j_i ≤ n`, `α_i ∈ {0,1}`,
/// of length at most `max_len`, in shortlex order of symbol indices.
pub fn r0free_enumerate(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for i in (1..=n).rev() {
        let mut next = Vec::new();
        for w in &out {
            next.push(w.clone());
            for j in i..=n {
                if w.len() + (j - i + 1) <= max_len {
                    let mut x = w.clone();
                    x.extend_from(&Word::from_indices(i as u8..=j as u8));
                    next.push(x);
                }
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every arranged word of expanded length at most `max_len`, grouped by
/// skeleton, then chain, then exponent vector.
pub fn enumerate_arranged(n: usize, max_len: usize) -> Result<Vec<ArrangedWord>, ClassError> {
    let skeletons = USkeleton::all(n)?;
    let chains = VChain::all(n)?;
    let mut out = Vec::new();
    for sk in &skeletons {
        let a1 = sk.components[n - 1];
        for ch in &chains {
            if let Some(h) = ch.head() {
                if !(h.k >= a1.k && h.l < a1.l) {
                    continue;
                }
            }
            let forced = sk.corners(ch.head());
            let base =
                ch.len() + sk.components.iter().zip(&forced).filter(|(_, &f)| f).map(|(b, _)| b.len()).sum::<usize>();
            if base > max_len {
                continue;
            }
            let mut exps: Vec<u32> = forced.iter().map(|&f| u32::from(f)).collect();
            fill_exponents(sk, ch, &forced, 0, max_len - base, &mut exps, &mut out);
        }
    }
    Ok(out)
}

fn fill_exponents(
    sk: &USkeleton,
    ch: &VChain,
    forced: &[bool],
    idx: usize,
    budget: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<ArrangedWord>,
) {
    if idx == exps.len() {
        out.push(ArrangedWord { skeleton: sk.clone(), exponents: exps.clone(), chain: ch.clone() });
        return;
    }
    let len = sk.components[idx].len();
    let base = u32::from(forced[idx]);
    let mut extra = 0;
    while extra * len <= budget {
        exps[idx] = base + extra as u32;
        fill_exponents(sk, ch, forced, idx + 1, budget - extra * len, exps, out);
        extra += 1;
    }
    exps[idx] = base;
}

/// Every marked sequence of expanded length at most `max_len`.
pub fn enumerate_marked(n: usize, max_len: usize) -> Result<Vec<MarkedSeq>, ClassError> {
    fn extend(n: usize, budget: usize, seq: &mut Vec<Block>, out: &mut Vec<MarkedSeq>) {
        let split = seq.iter().position(|b| !b.is_component()).unwrap_or(seq.len());
        let chain = VChain::new(seq[split..].to_vec()).expect("monotone tail is a chain");
        out.push(MarkedSeq::new(n, seq[..split].to_vec(), chain).expect("connected sequence is a marked sequence"));
        let (k_min, l_max) = match seq.last() {
            Some(b) => (b.k() + 1, b.l()),
            None => (2, n),
        };
        for k in k_min..=n + 1 {
            for l in 0..l_max {
                let b = Block::new(n, k, l).expect("in range");
                if b.len() <= budget {
                    seq.push(b);
                    extend(n, budget - b.len(), seq, out);
                    seq.pop();
                }
            }
        }
    }
    if n < 2 {
        return Err(ClassError::InvalidRank(n));
    }
    let mut out = Vec::new();
    extend(n, max_len, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Splits a word starting with `r0` into blocks at each `r0`.
pub fn parse_blocks(w: &Word, n: usize) -> Result<Vec<Block>, ClassError> {
    let malformed = || ClassError::Malformed(w.clone());
    let s = w.symbols();
    if s.first() != Some(&Symbol(0)) {
        return Err(malformed());
    }
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < s.len() {
        pos += 1; // r0
        let mut k = n + 1;
        while pos < s.len() && s[pos].index() == k - 1 && k > 2 {
            k -= 1;
            pos += 1;
        }
        let mut l = 0;
        while pos < s.len() && s[pos].index() == l + 1 && l < n {
            l += 1;
            pos += 1;
        }
        if pos < s.len() && s[pos] != Symbol(0) {
            return Err(malformed());
        }
        blocks.push(Block::new(n, k, l)?);
    }
    Ok(blocks)
}

/// A reduced word split as `r0free · arranged`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub r0free: Word,
    pub arranged: ArrangedWord,
}

/// Classifies words of Ã_n against the explicit basis.
#[derive(Debug, Clone)]
pub struct Classifier {
    n: usize,
    basis: RuleSet,
}

impl Classifier {
    pub fn new(n: usize) -> Result<Self, ClassError> {
        let basis = g_families(n).map_err(|e| match e {
            AffineError::InvalidRank(n) => ClassError::InvalidRank(n),
            other => unreachable!("explicit basis construction failed: {other}"),
        })?;
        Ok(Classifier { n, basis })
    }

    pub fn basis(&self) -> &RuleSet {
        &self.basis
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.basis.is_reduced(w)
    }

    pub fn classify(&self, w: &Word) -> Result<Classification, ClassError> {
        let n = self.n;
        if let Some(s) = w.iter().find(|s| s.index() > n) {
            return Err(ClassError::InvalidBlock { n, k: s.index(), l: 0 });
        }
        if let Some(rx) = self.basis.leftmost_match(w) {
            let rule = self.basis.rules()[rx.rule].clone();
            let factor = w.factor(rx.position, rx.position + rule.lhs.len());
            return Err(ClassError::NotReduced { factor, position: rx.position, rule });
        }
        let split = w.iter().position(|s| s == Symbol(0)).unwrap_or(w.len());
        let r0free = w.factor(0, split);
        let tail = w.factor(split, w.len());
        let arranged = if tail.is_empty() { ArrangedWord::empty(n)? } else { arrange(n, &parse_blocks(&tail, n)?)? };
        debug_assert_eq!(arranged.expand(), tail);
        Ok(Classification { r0free, arranged })
    }
}

/// Reconstructs the arranged word with the given block factorisation.
fn arrange(n: usize, blocks: &[Block]) -> Result<ArrangedWord, ClassError> {
    let split = blocks.iter().position(|b| !b.is_component()).unwrap_or(blocks.len());
    let chain = VChain::new(blocks[split..].to_vec())?;
    let mut runs: Vec<(Block, u32)> = Vec::new();
    for &b in &blocks[..split] {
        match runs.last_mut() {
            Some((last, m)) if *last == b => *m += 1,
            _ => runs.push((b, 1)),
        }
    }
    let waypoints: Vec<Block> = runs.iter().map(|&(b, _)| b).collect();
    let skeleton = skeleton_through(n, &waypoints, chain.head())?;
    let mut exponents = vec![0u32; n];
    for (b, m) in runs {
        let idx = (n as i32 - 2 - b.shape()) as usize;
        debug_assert_eq!(skeleton.components[idx], b);
        exponents[idx] = m;
    }
    ArrangedWord::new(skeleton, exponents, chain)
}

/// Convenience wrapper building a [`Classifier`] for one query.
pub fn classify(w: &Word, n: usize) -> Result<Classification, ClassError> {
    Classifier::new(n)?.classify(w)
}
