//! Constant term of the `A_r` product `prod_{alpha>0} prod_i (1 - q^{i-1} e^{-alpha})(1 - q^i e^alpha)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::check::CheckResult;
use crate::error::{domain, QError, Result};
use crate::formal::QPoly;

/// Largest support kept during expansion.
pub const SUPPORT_CAP: usize = 2_000_000;

/// Laurent polynomial in `x_1..x_dim` with coefficients in `Z[q]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentMulti {
    dim: usize,
    terms: BTreeMap<Vec<i32>, QPoly>,
}

impl LaurentMulti {
    pub fn one(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; dim], QPoly::one());
        LaurentMulti { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> QPoly {
        self.terms.get(e).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn constant_term(&self) -> QPoly {
        self.coeff(&vec![0; self.dim])
    }

    /// Multiplies by `sum_s c_s u^s` with `u = x^root`, keeping only
    /// exponents whose L1 norm is at most `keep`.
    pub fn mul_substituted(&self, root: &[i32], f: &BTreeMap<i32, QPoly>, keep: i64) -> Result<Self> {
        let mut out: BTreeMap<Vec<i32>, QPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (&s, g) in f {
                let e2: Vec<i32> = e.iter().zip(root).map(|(x, r)| x + s * r).collect();
                if e2.iter().map(|&x| (x as i64).abs()).sum::<i64>() > keep {
                    continue;
                }
                let v = c * g;
                let slot = out.entry(e2).or_insert_with(QPoly::zero);
                *slot = &*slot + &v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        if out.len() > SUPPORT_CAP {
            return Err(QError::Overflow(format!("Laurent support exceeds {SUPPORT_CAP}")));
        }
        Ok(LaurentMulti { dim: self.dim, terms: out })
    }
}

/// `prod_{i=1}^k (1 - q^{i-1}/u)(1 - q^i u)` as a Laurent polynomial in `u`.
pub fn root_factor(k: usize) -> BTreeMap<i32, QPoly> {
    let mut f: BTreeMap<i32, QPoly> = BTreeMap::new();
    f.insert(0, QPoly::one());
    let minus = |j: usize| QPoly::monomial(j, -BigInt::one());
    for i in 1..=k {
        for (s, g) in [(-1, minus(i - 1)), (1, minus(i))] {
            let mut next = f.clone();
            for (&e, c) in &f {
                let v = c * &g;
                let slot = next.entry(e + s).or_insert_with(QPoly::zero);
                *slot = &*slot + &v;
            }
            next.retain(|_, c| !c.is_zero());
            f = next;
        }
    }
    f
}

/// Positive roots `e_i - e_j`, `i < j`, of `A_rank` in `rank + 1` coordinates.
pub fn positive_roots(rank: usize) -> Vec<Vec<i32>> {
    let d = rank + 1;
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut r = vec![0; d];
            r[i] = 1;
            r[j] = -1;
            out.push(r);
        }
    }
    out
}

fn check_args(rank: usize, k: usize) -> Result<()> {
    if !(1..=3).contains(&rank) {
        return domain("constant term implemented for A_1, A_2, A_3");
    }
    if k > 3 {
        return domain("constant term needs k <= 3");
    }
    Ok(())
}

/// The constant term, by exact expansion.
pub fn constant_term(rank: usize, k: usize) -> Result<QPoly> {
    check_args(rank, k)?;
    let roots = positive_roots(rank);
    let f = root_factor(k);
    let mut acc = LaurentMulti::one(rank + 1);
    for (idx, r) in roots.iter().enumerate() {
        // each later factor moves the L1 norm by at most 2k
        let keep = 2 * k as i64 * (roots.len() - idx - 1) as i64;
        acc = acc.mul_substituted(r, &f, keep)?;
    }
    Ok(acc.constant_term())
}

/// `prod_{i=1}^{rank} [k d_i choose k]_q` with degrees `d_i = i + 1`.
pub fn constant_term_rhs(rank: usize, k: usize) -> QPoly {
    let mut p = QPoly::one();
    for i in 1..=rank {
        p = &p * &QPoly::q_binomial(k * (i + 1), k);
    }
    p
}

pub fn constant_term_check(rank: usize, k: usize) -> Result<CheckResult> {
    let lhs = constant_term(rank, k)?;
    let rhs = constant_term_rhs(rank, k);
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    let agreed = (0..len).filter(|&i| lhs.coeff(i) == rhs.coeff(i)).count();
    let r = CheckResult::exact("CT-MACDONALD", len, agreed)
        .with_label("constant term against the product of q-binomials")
        .with_param("rank", rank)
        .with_param("k", k);
    let deg = |p: &QPoly| p.degree().map_or(-1, |d| d as i64);
    Ok(r.with_note(&format!("q-degree lhs {} rhs {}", deg(&lhs), deg(&rhs))))
}
