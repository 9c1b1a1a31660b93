//! Laurent polynomials in `z` with truncated power series coefficients.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::fps::{poch_series, Fps, PochKind};
use crate::check::CheckResult;
use crate::error::{domain, Result};

/// `sum_k c_k(q) z^k` with `|k| <= window` and every `c_k` of one q-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Fps>,
    order: usize,
    window: i64,
}

impl LaurentPoly {
    pub fn new(order: usize, window: i64) -> Self {
        LaurentPoly { terms: BTreeMap::new(), order, window }
    }

    pub fn constant(c: Fps, window: i64) -> Self {
        let mut p = Self::new(c.order(), window);
        p.insert(0, c);
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn insert(&mut self, k: i64, c: Fps) {
        if k.abs() > self.window {
            return;
        }
        let c = c.truncate(self.order);
        let slot = self.terms.remove(&k).map(|old| &old + &c).unwrap_or(c);
        if !slot.is_zero() {
            self.terms.insert(k, slot);
        }
    }

    /// Coefficient of `z^k` (zero series when absent).
    pub fn coeff(&self, k: i64) -> Fps {
        self.terms.get(&k).cloned().unwrap_or_else(|| Fps::zero(self.order))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// Multiplies by `1 + c q^e z^s`.
    pub fn mul_binomial(&self, c: i64, e: usize, s: i64) -> Self {
        let mut out = self.clone();
        if e > self.order {
            return out;
        }
        let scale = BigRational::from_integer(BigInt::from(c));
        for (&k, f) in &self.terms {
            let mut shifted = Fps::zero(self.order);
            let mut cs = shifted.coeffs().to_vec();
            for i in 0..=(self.order - e) {
                cs[i + e] = f.coeff(i) * &scale;
            }
            shifted = Fps::from_coeffs(cs);
            out.insert(k + s, shifted);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::new(self.order.min(o.order), self.window.min(o.window));
        for (&a, f) in &self.terms {
            for (&b, g) in &o.terms {
                out.insert(a + b, f * g);
            }
        }
        out
    }
}

/// `(q;q)_inf (z;q)_inf (q/z;q)_inf` expanded to q-order `n`.
pub fn triple_product_expansion(n: usize) -> Result<LaurentPoly> {
    let window = n as i64 + 1;
    let mut p = LaurentPoly::constant(poch_series(PochKind::Numerator, 1, 1, 1, n)?, window);
    for j in 0..=n {
        p = p.mul_binomial(-1, j, 1);
    }
    for j in 1..=n {
        p = p.mul_binomial(-1, j, -1);
    }
    Ok(p)
}

/// Sum side against product side of the triple product identity, exactly,
/// for `|k| <= window` at q-order `n`.
pub fn triple_product_formal(window: usize, n: usize) -> Result<CheckResult> {
    if window * window.saturating_sub(1) / 2 > n {
        return domain("window needs K(K-1)/2 <= N");
    }
    if n > 400 {
        return domain("q-order above the cap of 400");
    }
    let p = triple_product_expansion(n)?;
    let mut agreed = 0;
    let w = window as i64;
    for k in -w..=w {
        let e = (k * (k - 1) / 2) as usize;
        let sign = if k.rem_euclid(2) == 1 { -BigRational::one() } else { BigRational::one() };
        let expect = Fps::monomial(e, sign, n);
        if p.coeff(k) == expect {
            agreed += 1;
        }
    }
    let id = "FORMAL-TRIPLE-PRODUCT";
    Ok(CheckResult::exact(id, 2 * window + 1, agreed)
        .with_param("window", window)
        .with_param("order", n)
        .with_label("Jacobi triple product, exact Laurent coefficients"))
}

