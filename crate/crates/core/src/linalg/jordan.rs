use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MatF;
use crate::error::{Error, Result};
use crate::gf::{Fel, FieldCtx};

/// Jordan type `[p]^{a_p} … [1]^{a_1}` of a nilpotent operator whose blocks
/// have size at most `p`. `mult[r - 1]` is the number of blocks of size `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanType {
    pub p: usize,
    pub mult: Vec<usize>,
}

/// Outcome of comparing two Jordan types in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl JordanType {
    pub fn new(p: usize, mult: Vec<usize>) -> Self {
        assert_eq!(mult.len(), p, "one multiplicity per block size 1..=p");
        JordanType { p, mult }
    }

    /// Type from a list of block sizes (any order).
    pub fn from_blocks(p: usize, blocks: &[usize]) -> Self {
        let mut mult = vec![0; p];
        for &b in blocks {
            assert!((1..=p).contains(&b), "block size {b} outside 1..={p}");
            mult[b - 1] += 1;
        }
        JordanType { p, mult }
    }

    /// `[p]^count`.
    pub fn free(p: usize, count: usize) -> Self {
        let mut mult = vec![0; p];
        mult[p - 1] = count;
        JordanType { p, mult }
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.mult.get(size.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `Σ r · a_r`.
    pub fn dim(&self) -> usize {
        self.mult.iter().enumerate().map(|(i, &a)| (i + 1) * a).sum()
    }

    /// Is every block of full size `p`?
    pub fn is_free(&self) -> bool {
        self.mult[..self.p - 1].iter().all(|&a| a == 0)
    }

    /// Block sizes in non-increasing order.
    pub fn partition(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for size in (1..=self.p).rev() {
            out.extend(std::iter::repeat_n(size, self.multiplicity(size)));
        }
        out
    }

    /// Dominance order on the associated partitions.
    pub fn dominance_compare(&self, other: &JordanType) -> Result<Dominance> {
        let (a, b) = (self.partition(), other.partition());
        let (da, db) = (self.dim(), other.dim());
        if da != db {
            return Err(Error::UnequalTotals(da, db));
        }
        let len = a.len().max(b.len());
        let (mut sa, mut sb) = (0usize, 0usize);
        let (mut ge, mut le) = (true, true);
        for i in 0..len {
            sa += a.get(i).copied().unwrap_or(0);
            sb += b.get(i).copied().unwrap_or(0);
            match sa.cmp(&sb) {
                Ordering::Greater => le = false,
                Ordering::Less => ge = false,
                Ordering::Equal => {}
            }
        }
        Ok(match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// Canonical nilpotent matrix with this type: blocks in non-increasing
    /// size, each with ones on the subdiagonal.
    pub fn canonical_matrix(&self, field: &FieldCtx) -> MatF {
        let n = self.dim();
        let mut m = MatF::zeros(field, n, n);
        let mut start = 0;
        for size in self.partition() {
            for i in 1..size {
                m.set(start + i, start + i - 1, Fel::ONE);
            }
            start += size;
        }
        m
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.partition();
        if parts.is_empty() {
            return write!(f, "[]");
        }
        for b in parts {
            write!(f, "[{b}]")?;
        }
        Ok(())
    }
}

/// Jordan type of a nilpotent matrix with `N^p = 0`, read off the rank
/// sequence `rank(N^r)`.
pub fn jordan_type_nilpotent(n: &MatF, p: usize) -> Result<JordanType> {
    if !n.is_square() {
        return Err(Error::Shape("Jordan type of a non-square matrix".into()));
    }
    let ranks = power_ranks(n, p)?;
    // b_r = rank(N^{r-1}) - rank(N^r): number of blocks of size ≥ r
    let at_least: Vec<usize> = (1..=p).map(|r| ranks[r - 1] - ranks[r]).collect();
    let mult = (0..p)
        .map(|i| at_least[i] - at_least.get(i + 1).copied().unwrap_or(0))
        .collect();
    Ok(JordanType { p, mult })
}

/// `[rank(N^0), rank(N^1), …, rank(N^p)]`, failing unless `N^p = 0`.
pub fn power_ranks(n: &MatF, p: usize) -> Result<Vec<usize>> {
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut power = MatF::identity(n.field(), dim);
    for r in 1..=p {
        power = power.mul(n)?;
        if power.is_zero() {
            ranks.resize(p + 1, 0);
            return Ok(ranks);
        }
        if r == p {
            return Err(Error::NotNilpotent { p });
        }
        ranks.push(power.rank());
    }
    Ok(ranks)
}
