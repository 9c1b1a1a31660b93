//! Partitions and the dominance order.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Result};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return domain("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain("partition parts must be weakly decreasing");
        }
        Ok(Partition(parts))
    }

    /// From a weakly decreasing list that may end in zeros.
    pub fn from_padded(parts: &[usize]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain("partition parts must be weakly decreasing");
        }
        Ok(Partition(parts.iter().copied().filter(|&p| p > 0).collect()))
    }

    /// Sorts an exponent vector into a partition.
    pub fn sorted(exps: &[usize]) -> Self {
        let mut v: Vec<usize> = exps.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n.max(self.len())).map(|i| self.part(i)).collect()
    }

    pub fn conjugate(&self) -> Self {
        let m = self.part(0);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `m_i`, the number of parts equal to `i`, for `i = 1..=max part`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m.remove(0);
        m
    }

    /// `z_lambda = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &mi) in self.multiplicities().iter().enumerate() {
            for j in 1..=mi {
                z *= BigInt::from((i + 1) * j);
            }
        }
        z
    }

    /// `n(lambda) = sum_i (i-1) lambda_i`.
    pub fn n_lambda(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Subtracts one from each of the first `n` parts; `None` if some is zero.
    pub fn strip_column(&self, n: usize) -> Option<Self> {
        if self.len() != n {
            return None;
        }
        Partition::from_padded(&self.0.iter().map(|p| p - 1).collect::<Vec<_>>()).ok()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of `d` with at most `max_len` parts, in decreasing
/// lexicographic order, so `(d)` comes first.
pub fn partitions_of(d: usize, max_len: usize) -> Vec<Partition> {
    fn rec(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, max_len, &mut Vec::new(), &mut out);
    out
}

/// Dominance comparison; `None` when the weights differ or the partitions
/// are incomparable.
pub fn dominance(a: &Partition, b: &Partition) -> Option<Ordering> {
    if a.weight() != b.weight() {
        return None;
    }
    let (mut sa, mut sb) = (0, 0);
    let (mut le, mut ge) = (true, true);
    for i in 0..a.len().max(b.len()) {
        sa += a.part(i);
        sb += b.part(i);
        le &= sa <= sb;
        ge &= sa >= sb;
    }
    match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

pub fn dominance_leq(a: &Partition, b: &Partition) -> bool {
    matches!(dominance(a, b), Some(Ordering::Less | Ordering::Equal))
}

/// Strictly below in dominance.
pub fn dominated(a: &Partition, b: &Partition) -> bool {
    dominance(a, b) == Some(Ordering::Less)
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
