//! Integer partitions, multipartitions and their cell statistics.
//!
//! Diagrams use the English convention: row 1 is the longest and rows go
//! downward. The arm of a cell counts cells to its right, the leg counts
//! cells below it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("cell ({row},{col}) lies outside the diagram of {partition}")]
    CellOutside {
        row: usize,
        col: usize,
        partition: String,
    },
    #[error("cannot compare partitions of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("a multipartition needs at least one component")]
    EmptyMultiPartition,
    #[error("multipartition components have unequal sizes: {0:?}")]
    UnequalSizes(Vec<usize>),
    #[error("malformed partition {0:?}")]
    Malformed(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Partition(Vec<usize>);

/// A box `(row, col)` of a Young diagram, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    /// Sorts the parts into weakly decreasing order; zero parts are
    /// rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell { row: i + 1, col: j }))
    }

    fn check_cell(&self, s: Cell) -> Result<(), PartitionError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(PartitionError::CellOutside {
                row: s.row,
                col: s.col,
                partition: self.to_string(),
            })
        }
    }

    /// Cells strictly to the right of `s` in its row.
    pub fn arm(&self, s: Cell) -> Result<usize, PartitionError> {
        self.check_cell(s)?;
        Ok(self.part(s.row) - s.col)
    }

    /// Cells strictly below `s` in its column.
    pub fn leg(&self, s: Cell) -> Result<usize, PartitionError> {
        self.check_cell(s)?;
        Ok(self.conjugate().part(s.col) - s.row)
    }

    /// `(arm, leg)` for every cell, in row-major order.
    pub fn arm_legs(&self) -> Vec<(usize, usize)> {
        let conj = self.conjugate();
        self.cells()
            .map(|s| (self.part(s.row) - s.col, conj.part(s.col) - s.row))
            .collect()
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        self.arm_legs().into_iter().map(|(a, l)| a + l + 1).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// Dominance order: `self ≤ other` iff every partial sum of `self` is at
    /// most the matching partial sum of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        if self.size() != other.size() {
            return Err(PartitionError::SizeMismatch(self.size(), other.size()));
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 1..=len {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(i, m_i)` pairs: part value and how often it occurs.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = Π_i i^{m_i} m_i!`, the centralizer order of a permutation of
    /// cycle type λ.
    pub fn zlambda(&self) -> Scalar {
        let mut z = BigInt::one();
        for (i, m) in self.multiplicities() {
            for k in 1..=m {
                z *= BigInt::from(i) * BigInt::from(k);
            }
        }
        Scalar::from_integer(z)
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn nstat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Union of parts (the partition of the product `p_λ p_μ`).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Every part multiplied by `r`.
    pub fn scaled(&self, r: usize) -> Partition {
        Partition(self.0.iter().map(|p| p * r).collect())
    }
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
pub fn enumerate(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, grouped by size.
pub fn enumerate_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(enumerate).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `(2,1)`, `[2,1]`, `2,1`, `2 1` and `()` for the empty partition.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
            .unwrap_or(t);
        let parts: Result<Vec<usize>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>())
            .collect();
        let parts = parts.map_err(|_| PartitionError::Malformed(s.to_string()))?;
        Partition::new(parts).map_err(|_| PartitionError::Malformed(s.to_string()))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

/// A k-tuple of partitions of a common size `n`, one per puncture.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Partition>", try_from = "Vec<Partition>")]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self, PartitionError> {
        if components.is_empty() {
            return Err(PartitionError::EmptyMultiPartition);
        }
        let sizes: Vec<usize> = components.iter().map(Partition::size).collect();
        if sizes.iter().any(|&s| s != sizes[0]) {
            return Err(PartitionError::UnequalSizes(sizes));
        }
        Ok(MultiPartition(components))
    }

    pub fn single(p: Partition) -> Self {
        MultiPartition(vec![p])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// The common size.
    pub fn n(&self) -> usize {
        self.0[0].size()
    }

    /// `Σ_i Σ_j (μ_i^j)²`.
    pub fn sum_of_squares(&self) -> usize {
        self.0
            .iter()
            .flat_map(|p| p.parts().iter())
            .map(|&x| x * x)
            .sum()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Components separated by `|` or `;`, e.g. `(2)|(1,1)`.
impl FromStr for MultiPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let comps: Result<Vec<Partition>, _> = s
            .split(['|', ';'])
            .map(|c| c.parse::<Partition>())
            .collect();
        MultiPartition::new(comps?)
    }
}

impl From<MultiPartition> for Vec<Partition> {
    fn from(m: MultiPartition) -> Self {
        m.0
    }
}

impl TryFrom<Vec<Partition>> for MultiPartition {
    type Error = PartitionError;
    fn try_from(v: Vec<Partition>) -> Result<Self, Self::Error> {
        MultiPartition::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Independent partition counter: p(n, max part ≤ k).
    fn count(n: usize, k: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=k.min(n)).map(|j| count(n - j, j)).sum()
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(4).len(), 5);
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(6).len(), count(6, 6));
        assert_eq!(count(6, 6), 11);
        for n in 0..=10 {
            let all = enumerate(n);
            assert_eq!(all.len(), count(n, n));
            let mut sorted = all.clone();
            sorted.sort();
            sorted.reverse();
            assert_eq!(all, sorted, "reverse lex order at n={n}");
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn arm_leg_examples() {
        let c = Cell { row: 1, col: 1 };
        assert_eq!((p("(1)").arm(c).unwrap(), p("(1)").leg(c).unwrap()), (0, 0));
        assert_eq!((p("(2)").arm(c).unwrap(), p("(2)").leg(c).unwrap()), (1, 0));
        assert_eq!((p("(2,1)").arm(c).unwrap(), p("(2,1)").leg(c).unwrap()), (1, 1));
        assert!(matches!(
            p("(2,1)").arm(Cell { row: 2, col: 2 }),
            Err(PartitionError::CellOutside { .. })
        ));
    }

    #[test]
    fn statistics() {
        assert_eq!(p("(2,1)").conjugate(), p("(2,1)"));
        assert_eq!(p("(3,1)").conjugate(), p("(2,1,1)"));
        assert!(p("(1,1,1)").dominance_leq(&p("(2,1)")).unwrap());
        assert!(p("(2,1)").dominance_leq(&p("(3)")).unwrap());
        assert!(!p("(3)").dominance_leq(&p("(2,1)")).unwrap());
        assert!(p("(3)").dominance_leq(&p("(2)")).is_err());
        assert_eq!(p("(2,1)").zlambda(), Scalar::from_integer(2.into()));
        assert_eq!(p("(2,1)").nstat(), 1);
        assert_eq!(p("(1,1)").zlambda(), Scalar::from_integer(2.into()));
        assert_eq!(p("(2,2,1)").zlambda(), Scalar::from_integer(8.into()));
    }

    #[test]
    fn conjugation_is_involution() {
        for n in 0..=8 {
            for l in enumerate(n) {
                assert_eq!(l.conjugate().conjugate(), l);
                assert_eq!(l.conjugate().size(), n);
            }
        }
    }

    /// Number of standard Young tableaux by removing corners recursively.
    fn syt(l: &Partition) -> u64 {
        if l.size() == 0 {
            return 1;
        }
        let parts = l.parts();
        let mut total = 0;
        for i in 0..parts.len() {
            if i + 1 == parts.len() || parts[i] > parts[i + 1] {
                let mut smaller = parts.to_vec();
                smaller[i] -= 1;
                smaller.retain(|&x| x > 0);
                total += syt(&Partition(smaller));
            }
        }
        total
    }

    #[test]
    fn hook_length_formula() {
        for n in 1..=6u64 {
            let fact: u64 = (1..=n).product();
            for l in enumerate(n as usize) {
                let hooks: u64 = l.hook_lengths().iter().map(|&h| h as u64).product();
                assert_eq!(fact / hooks, syt(&l), "{l}");
                assert_eq!(fact % hooks, 0);
            }
        }
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let all = enumerate(n);
            for a in &all {
                assert!(a.dominance_leq(a).unwrap());
                for b in &all {
                    let ab = a.dominance_leq(b).unwrap();
                    let ba = b.dominance_leq(a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if ab && b.dominance_leq(c).unwrap() {
                            assert!(a.dominance_leq(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("(2, 1)").to_string(), "(2,1)");
        assert_eq!(p("[1,2]").to_string(), "(2,1)");
        assert_eq!(p("()"), Partition::empty());
        assert!("(a)".parse::<Partition>().is_err());
        assert!("(2,0)".parse::<Partition>().is_err());
        let m: MultiPartition = "(2)|(1,1)".parse().unwrap();
        assert_eq!(m.k(), 2);
        assert_eq!(m.n(), 2);
        assert_eq!(m.to_string(), "(2)|(1,1)");
        assert!(matches!(
            "(2)|(1)".parse::<MultiPartition>(),
            Err(PartitionError::UnequalSizes(_))
        ));
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[2],[1,1]]");
    }
}
