//! Partitions in an `n × n` box, basic partitions `(k, 1, …, 1, 0, …, 0)`,
//! the shifted sum `⊕` and Gaussian binomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::classes::{Block, ClassError, MarkedSeq};
use crate::series::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("box size must be positive")]
    EmptyBox,
    #[error("basic partition (k={k}, l={l}) is outside an {n}x{n} box")]
    InvalidBasic { n: usize, k: usize, l: usize },
    #[error("{0:?} is not a partition in its box")]
    InvalidBox(Vec<usize>),
    #[error("basic partitions {0} and {1} are not connected")]
    NotConnected(BasicPartition, BasicPartition),
    #[error("parts of different box sizes cannot be combined")]
    SizeMismatch,
    #[error("q-binomial needs r <= m, got m={m}, r={r}")]
    BinomialRange { m: usize, r: usize },
    #[error("cannot parse partition `{0}`")]
    Parse(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// `(k, 1, …, 1, 0, …, 0)` with `l` ones, as an `n`-tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicPartition {
    n: usize,
    k: usize,
    l: usize,
}

impl BasicPartition {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyBox);
        }
        if !(1..=n).contains(&k) || l >= n {
            return Err(PartitionError::InvalidBasic { n, k, l });
        }
        Ok(BasicPartition { n, k, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn size(&self) -> usize {
        self.k + self.l
    }

    pub fn parts(&self) -> Vec<usize> {
        let mut p = vec![0; self.n];
        p[0] = self.k;
        p[1..=self.l].fill(1);
        p
    }

    /// Whether `other` may follow `self` in a connected sequence.
    pub fn connects_to(&self, other: &BasicPartition) -> bool {
        self.k > other.k && self.l > other.l
    }
}

impl fmt::Display for BasicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts())
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    let s: Vec<String> = parts.iter().map(usize::to_string).collect();
    write!(f, "({})", s.join(","))
}

pub fn block_to_basic(b: Block) -> Result<BasicPartition, PartitionError> {
    BasicPartition::new(b.n(), b.n() + 2 - b.k(), b.l())
}

pub fn basic_to_block(p: BasicPartition) -> Result<Block, PartitionError> {
    Ok(Block::new(p.n, p.n + 2 - p.k, p.l)?)
}

/// A non-increasing `n`-tuple with entries in `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxPartition {
    parts: Vec<usize>,
}

impl BoxPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let n = parts.len();
        if n == 0 {
            return Err(PartitionError::EmptyBox);
        }
        if parts[0] > n || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::InvalidBox(parts));
        }
        Ok(BoxPartition { parts })
    }

    pub fn empty(n: usize) -> Result<Self, PartitionError> {
        Self::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions in the `n × n` box, in lexicographic order of parts.
    pub fn all(n: usize) -> Result<Vec<BoxPartition>, PartitionError> {
        fn go(n: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<BoxPartition>) {
            if cur.len() == n {
                out.push(BoxPartition { parts: cur.clone() });
                return;
            }
            for v in 0..=cap {
                cur.push(v);
                go(n, v, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            return Err(PartitionError::EmptyBox);
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        Ok(out)
    }
}

impl fmt::Display for BoxPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

impl FromStr for BoxPartition {
    type Err = PartitionError;

    /// Accepts `3,3,2,0` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        BoxPartition::new(parts)
    }
}

/// Basic partitions `a_1, …, a_m` with each connected to the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectedSeq {
    n: usize,
    parts: Vec<BasicPartition>,
}

impl ConnectedSeq {
    pub fn new(n: usize, parts: Vec<BasicPartition>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyBox);
        }
        if parts.iter().any(|p| p.n != n) {
            return Err(PartitionError::SizeMismatch);
        }
        for w in parts.windows(2) {
            if !w[0].connects_to(&w[1]) {
                return Err(PartitionError::NotConnected(w[0], w[1]));
            }
        }
        Ok(ConnectedSeq { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[BasicPartition] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(BasicPartition::size).sum()
    }

    /// Every connected sequence at box size `n`.
    pub fn all(n: usize) -> Result<Vec<ConnectedSeq>, PartitionError> {
        fn go(n: usize, cur: &mut Vec<BasicPartition>, out: &mut Vec<ConnectedSeq>) {
            out.push(ConnectedSeq { n, parts: cur.clone() });
            let (k_max, l_max) = cur.last().map_or((n + 1, n), |p| (p.k, p.l));
            for k in 1..k_max {
                for l in 0..l_max {
                    cur.push(BasicPartition { n, k, l });
                    go(n, cur, out);
                    cur.pop();
                }
            }
        }
        if n == 0 {
            return Err(PartitionError::EmptyBox);
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        Ok(out)
    }
}

impl fmt::Display for ConnectedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// `Σ σ^{i-1}(a_i)` where `σ` rotates a tuple one place to the right.
pub fn oplus(seq: &ConnectedSeq) -> BoxPartition {
    let n = seq.n;
    let mut sum = vec![0; n];
    for (i, a) in seq.parts.iter().enumerate() {
        for (j, v) in a.parts().into_iter().enumerate() {
            sum[(j + i) % n] += v;
        }
    }
    BoxPartition::new(sum).expect("shifted sum of a connected sequence fits the box")
}

/// Inverse of [`oplus`]: peel `(m_1, 1, …, 1)` reaching the last nonzero
/// part, rotate left and repeat.
pub fn decompose(p: &BoxPartition) -> ConnectedSeq {
    let n = p.n();
    let mut rest = p.parts.clone();
    let mut parts = Vec::new();
    while let Some(last) = rest.iter().rposition(|&v| v > 0) {
        let a = BasicPartition::new(n, rest[0], last).expect("leading part is positive");
        for v in &mut rest[1..=last] {
            *v -= 1;
        }
        rest[0] = 0;
        rest.rotate_left(1);
        parts.push(a);
    }
    ConnectedSeq::new(n, parts).expect("peeling a box partition yields a connected sequence")
}

/// Blocks of a marked sequence as basic partitions.
pub fn marked_to_connected(seq: &MarkedSeq) -> Result<ConnectedSeq, PartitionError> {
    let parts = seq.blocks().into_iter().map(block_to_basic).collect::<Result<Vec<_>, _>>()?;
    ConnectedSeq::new(seq.n(), parts)
}

/// Inverse of [`marked_to_connected`].
pub fn connected_to_marked(seq: &ConnectedSeq) -> Result<MarkedSeq, PartitionError> {
    let blocks = seq.parts.iter().map(|&p| basic_to_block(p)).collect::<Result<Vec<_>, _>>()?;
    let split = blocks.iter().position(|b| !b.is_component()).unwrap_or(blocks.len());
    let chain = crate::classes::VChain::new(blocks[split..].to_vec())?;
    Ok(MarkedSeq::new(seq.n, blocks[..split].to_vec(), chain)?)
}

/// `[m choose r]_q`, by the Pascal recurrence
/// `[m, r] = [m-1, r-1] + q^r [m-1, r]`.
pub fn q_binomial(m: usize, r: usize) -> Result<Poly, PartitionError> {
    if r > m {
        return Err(PartitionError::BinomialRange { m, r });
    }
    // row[j] = [i choose j]_q as coefficient vectors
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for i in 1..=m {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i.min(r) {
            let mut c = if j >= 1 { row[j - 1].clone() } else { Vec::new() };
            if j < row.len() && j < i {
                let shifted = &row[j];
                if c.len() < shifted.len() + j {
                    c.resize(shifted.len() + j, BigInt::from(0));
                }
                for (d, v) in shifted.iter().enumerate() {
                    c[d + j] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    Ok(Poly::new(row.swap_remove(r)))
}

/// Number of partitions of `size` in the `n × n` box.
pub fn box_count(n: usize, size: usize) -> u64 {
    // partitions with at most `parts` parts, each at most `cap`
    let mut ways = vec![vec![0u64; size + 1]; n + 1];
    for row in ways.iter_mut() {
        row[0] = 1;
    }
    // ways[c][s]: partitions of s into at most `i` parts, each at most c; iterate i
    for _ in 0..n {
        let mut next = vec![vec![0u64; size + 1]; n + 1];
        for c in 0..=n {
            for s in 0..=size {
                // largest part exactly v, the rest bounded by v
                next[c][s] = (0..=c.min(s)).map(|v| ways[v][s - v]).sum();
            }
        }
        ways = next;
    }
    ways[n][size]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::enumerate_marked;
    use crate::series::TruncatedSeries;
    use std::collections::HashSet;

    fn basic(n: usize, k: usize, l: usize) -> BasicPartition {
        BasicPartition::new(n, k, l).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(basic(4, 3, 2).parts(), vec![3, 1, 1, 0]);
        assert_eq!(basic(4, 3, 2).size(), 5);
        assert!(BasicPartition::new(4, 0, 0).is_err());
        assert!(BasicPartition::new(4, 5, 0).is_err());
        assert!(BasicPartition::new(4, 1, 4).is_err());
    }

    #[test]
    fn block_correspondence() {
        let p = block_to_basic(Block::new(2, 3, 0).unwrap()).unwrap();
        assert_eq!((p.k(), p.l(), p.size()), (1, 0, 1));
        let p = block_to_basic(Block::new(2, 2, 0).unwrap()).unwrap();
        assert_eq!((p.k(), p.l(), p.size()), (2, 0, 2));
        for n in 2..=6 {
            for k in 2..=n + 1 {
                for l in 0..n {
                    let b = Block::new(n, k, l).unwrap();
                    let p = block_to_basic(b).unwrap();
                    assert_eq!(p.size(), b.len());
                    assert_eq!(basic_to_block(p).unwrap(), b);
                }
            }
            assert!(block_to_basic(Block::new(n, 2, n).unwrap()).is_err());
        }
    }

    #[test]
    fn shifted_sum_example() {
        let s = ConnectedSeq::new(4, vec![basic(4, 3, 2), basic(4, 2, 1)]).unwrap();
        let p = oplus(&s);
        assert_eq!(p.parts(), &[3, 3, 2, 0]);
        assert_eq!(decompose(&p), s);
        assert!(ConnectedSeq::new(4, vec![basic(4, 2, 1), basic(4, 3, 0)]).is_err());
    }

    #[test]
    fn empty_partition() {
        let e = BoxPartition::empty(3).unwrap();
        assert!(decompose(&e).parts().is_empty());
        assert_eq!(oplus(&ConnectedSeq::new(3, vec![]).unwrap()), e);
    }

    #[test]
    fn bijection_is_exhaustive() {
        for n in 1..=5 {
            let boxes = BoxPartition::all(n).unwrap();
            let seqs = ConnectedSeq::all(n).unwrap();
            assert_eq!(boxes.len() as u64, binom(2 * n as u64, n as u64));
            assert_eq!(seqs.len(), boxes.len());
            for p in &boxes {
                assert_eq!(&oplus(&decompose(p)), p);
            }
            let mut seen = HashSet::new();
            for s in &seqs {
                let p = oplus(s);
                assert_eq!(p.size(), s.size());
                assert_eq!(&decompose(&p), s);
                assert!(seen.insert(p));
            }
        }
        assert_eq!(BoxPartition::all(4).unwrap().len(), 70);
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial(5, 0).unwrap(), Poly::one());
        assert_eq!(q_binomial(2, 1).unwrap(), Poly::from_i64(&[1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), Poly::from_i64(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 3).unwrap(), Poly::one());
        assert!(q_binomial(2, 3).is_err());
        for m in 0..=8 {
            for r in 0..=m {
                let q = q_binomial(m, r).unwrap();
                // quotient form
                let num = Poly::product(&(m - r + 1..=m).map(Poly::one_minus_x_pow).collect::<Vec<_>>());
                let den = Poly::product(&(1..=r).map(Poly::one_minus_x_pow).collect::<Vec<_>>());
                assert_eq!(num.div_exact(&den).unwrap(), q);
                assert_eq!(q.degree(), Some(r * (m - r)));
            }
        }
    }

    #[test]
    fn box_counts_match_q_binomial() {
        assert_eq!(box_count(3, 0), 1);
        assert_eq!(box_count(2, 2), 2);
        for n in 1..=6 {
            let q = q_binomial(2 * n, n).unwrap();
            let c = q.coeffs();
            for s in 0..=n * n {
                assert_eq!(BigInt::from(box_count(n, s)), q.coeff(s));
                assert_eq!(c[s], c[n * n - s]);
            }
            let total: u64 = (0..=n * n).map(|s| box_count(n, s)).sum();
            assert_eq!(total, binom(2 * n as u64, n as u64));
        }
    }

    #[test]
    fn marked_sequences_are_box_partitions() {
        for n in 2..=3 {
            let mut series = vec![0u64; n * n + 1];
            for m in enumerate_marked(n, n * n + 1).unwrap() {
                let c = marked_to_connected(&m).unwrap();
                assert_eq!(c.size(), m.len());
                assert_eq!(connected_to_marked(&c).unwrap(), m);
                series[m.len()] += 1;
            }
            let q = q_binomial(2 * n, n).unwrap();
            let expected = TruncatedSeries::from_poly(&q, n * n);
            assert_eq!(TruncatedSeries::from_u64(&series), expected);
        }
    }

    #[test]
    fn parse_partition() {
        assert_eq!("(3,3,2,0)".parse::<BoxPartition>().unwrap().parts(), &[3, 3, 2, 0]);
        assert!("3,4,2,0".parse::<BoxPartition>().is_err());
        assert!("3,x".parse::<BoxPartition>().is_err());
    }
}
