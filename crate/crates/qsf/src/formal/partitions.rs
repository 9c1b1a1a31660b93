//! Partition counting by dynamic programming and the Rogers-Ramanujan check.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::fps::{inv_qfactorial, poch_series, Fps, PochKind};
use crate::error::{domain, Result};

/// Restriction placed on the parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    All,
    /// Parts at most `N`.
    MaxPart(usize),
    Distinct,
    Odd,
    /// Consecutive parts differ by at least 2.
    Gap2,
    /// Gap 2 and every part at least 2.
    Gap2Min2,
    /// Parts congruent to 1 or 4 mod 5.
    Mod5_14,
    /// Parts congruent to 2 or 3 mod 5.
    Mod5_23,
}

fn coin_counts(n: usize, parts: impl Iterator<Item = usize>, distinct: bool) -> Vec<BigUint> {
    let mut dp = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();
    for p in parts {
        if p == 0 || p > n {
            continue;
        }
        if distinct {
            for i in (p..=n).rev() {
                let t = dp[i - p].clone();
                dp[i] += t;
            }
        } else {
            for i in p..=n {
                let t = dp[i - p].clone();
                dp[i] += t;
            }
        }
    }
    dp
}

/// Partitions of each `k <= n` with parts differing by at least 2, all
/// parts `>= min`.
fn gap_counts(n: usize, min: usize) -> Vec<BigUint> {
    // g[m][k]: partitions of k into such parts, all at most m
    let mut g: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = vec![BigUint::zero(); n + 1];
        row[0] = BigUint::one();
        if m >= min && m >= 1 {
            for k in 1..=n {
                let mut v = g[m - 1][k].clone();
                if k >= m {
                    let below = m.saturating_sub(2);
                    v += &g[below][k - m];
                }
                row[k] = v;
            }
        }
        g.push(row);
    }
    g.swap_remove(n)
}

/// Number of partitions of `n` of the given kind.
pub fn partition_counts(n: usize, variant: Variant) -> BigUint {
    partition_count_table(n, variant).swap_remove(n)
}

/// Counts for every `k = 0..=n` at once.
pub fn partition_count_table(n: usize, variant: Variant) -> Vec<BigUint> {
    match variant {
        Variant::All => coin_counts(n, 1..=n, false),
        Variant::MaxPart(m) => coin_counts(n, 1..=m.min(n), false),
        Variant::Distinct => coin_counts(n, 1..=n, true),
        Variant::Odd => coin_counts(n, (1..=n).step_by(2), false),
        Variant::Gap2 => gap_counts(n, 1),
        Variant::Gap2Min2 => gap_counts(n, 2),
        Variant::Mod5_14 => coin_counts(n, (1..=n).filter(|p| p % 5 == 1 || p % 5 == 4), false),
        Variant::Mod5_23 => coin_counts(n, (1..=n).filter(|p| p % 5 == 2 || p % 5 == 3), false),
    }
}

/// Largest order accepted by [`rr_check`].
pub const RR_CAP: usize = 500;

/// Sum side and product side of a Rogers-Ramanujan identity to order `n`.
pub fn rr_series(which: u8, n: usize) -> Result<(Fps, Fps)> {
    let shift = match which {
        1 => 0,
        2 => 1,
        _ => return domain("Rogers-Ramanujan identity is 1 or 2"),
    };
    if n > RR_CAP {
        return domain("order exceeds the Rogers-Ramanujan cap");
    }
    let mut lhs = Fps::zero(n);
    let mut k = 0usize;
    while k * (k + shift) <= n {
        let e = k * (k + shift);
        let t = inv_qfactorial(k, n - e);
        let mut c = vec![num_rational::BigRational::zero(); n + 1];
        for i in 0..=(n - e) {
            c[e + i] = t.coeff(i).clone();
        }
        lhs = &lhs + &Fps::from_coeffs(c);
        k += 1;
    }
    let (a, b) = if which == 1 { (1, 4) } else { (2, 3) };
    let p = &poch_series(PochKind::Reciprocal, 1, a, 5, n)? * &poch_series(PochKind::Reciprocal, 1, b, 5, n)?;
    Ok((lhs, p))
}

/// Exact coefficient equality of both sides up to order `n`, cross-checked
/// against the partition counts each side enumerates.
pub fn rr_check(which: u8, n: usize) -> Result<bool> {
    let (lhs, rhs) = rr_series(which, n)?;
    if lhs != rhs {
        return Ok(false);
    }
    let (gap, modv) = if which == 1 { (Variant::Gap2, Variant::Mod5_14) } else { (Variant::Gap2Min2, Variant::Mod5_23) };
    let coeffs = match lhs.integer_coeffs() {
        Some(c) => c,
        None => return Ok(false),
    };
    let g = partition_count_table(n, gap);
    let m = partition_count_table(n, modv);
    Ok(coeffs.iter().zip(g.iter().zip(m.iter())).all(|(c, (g, m))| {
        let (g, m) = (num_bigint::BigInt::from(g.clone()), num_bigint::BigInt::from(m.clone()));
        *c == g && *c == m
    }))
}
