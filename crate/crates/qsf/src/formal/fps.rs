//! Truncated power series in `q` over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
///
/// Binary operations on series of different orders keep the smaller order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fps {
    c: Vec<BigRational>,
}

impl Fps {
    pub fn zero(order: usize) -> Self {
        Fps { c: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, BigRational::one(), order)
    }

    /// `coef * q^k`, truncated.
    pub fn monomial(k: usize, coef: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.c[k] = coef;
        }
        s
    }

    pub fn from_coeffs(c: Vec<BigRational>) -> Self {
        assert!(!c.is_empty(), "a series needs at least its constant term");
        Fps { c }
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, &x) in c.iter().enumerate().take(order + 1) {
            s.c[i] = BigRational::from_integer(BigInt::from(x));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn truncate(&self, order: usize) -> Self {
        Fps { c: self.c[..=order.min(self.order())].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Fps { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Multiplies by `1 + sign q^e` in place (`e >= 1`).
    pub fn mul_binomial(&mut self, sign: i64, e: usize) {
        let s = BigRational::from_integer(BigInt::from(sign));
        for i in (e..self.c.len()).rev() {
            let t = &self.c[i - e] * &s;
            self.c[i] += t;
        }
    }

    /// Divides by `1 + sign q^e` in place (`e >= 1`).
    pub fn div_binomial(&mut self, sign: i64, e: usize) {
        let s = BigRational::from_integer(BigInt::from(sign));
        for i in e..self.c.len() {
            let t = &self.c[i - e] * &s;
            self.c[i] -= t;
        }
    }

    /// Multiplicative inverse of a series with a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Fps> {
        if self.c[0].is_zero() {
            return domain("series is not a unit");
        }
        let n = self.order();
        let inv0 = self.c[0].recip();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s += &self.c[j] * &out[k - j];
                }
            }
            out[k] = -s * &inv0;
        }
        Ok(Fps { c: out })
    }

    /// Integer coefficients, if all coefficients are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.c.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
    }
}

impl<'a> Add<&'a Fps> for &'a Fps {
    type Output = Fps;
    fn add(self, o: &Fps) -> Fps {
        let n = self.order().min(o.order());
        Fps { c: (0..=n).map(|i| &self.c[i] + &o.c[i]).collect() }
    }
}

impl<'a> Sub<&'a Fps> for &'a Fps {
    type Output = Fps;
    fn sub(self, o: &Fps) -> Fps {
        let n = self.order().min(o.order());
        Fps { c: (0..=n).map(|i| &self.c[i] - &o.c[i]).collect() }
    }
}

impl<'a> Mul<&'a Fps> for &'a Fps {
    type Output = Fps;
    fn mul(self, o: &Fps) -> Fps {
        let n = self.order().min(o.order());
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !o.c[j].is_zero() {
                    c[i + j] += a * &o.c[j];
                }
            }
        }
        Fps { c }
    }
}

impl Neg for &Fps {
    type Output = Fps;
    fn neg(self) -> Fps {
        Fps { c: self.c.iter().map(|x| -x).collect() }
    }
}

/// Whether [`poch_series`] expands the product or its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochKind {
    Numerator,
    Reciprocal,
}

/// `(sign q^m; q^d)_inf` or its reciprocal to order `n`, with `sign = +1`
/// meaning `(q^m;q^d)_inf = prod (1 - q^{m+dj})`.
pub fn poch_series(kind: PochKind, sign: i64, m: usize, d: usize, n: usize) -> Result<Fps> {
    if m < 1 || d < 1 {
        return domain("(q^m; q^d)_inf needs m, d >= 1 to be a unit");
    }
    let mut s = Fps::one(n);
    let mut e = m;
    while e <= n {
        match kind {
            PochKind::Numerator => s.mul_binomial(-sign, e),
            PochKind::Reciprocal => s.div_binomial(-sign, e),
        }
        e += d;
    }
    Ok(s)
}

/// `1/(q;q)_k` to order `n`.
pub fn inv_qfactorial(k: usize, n: usize) -> Fps {
    let mut s = Fps::one(n);
    for j in 1..=k.min(n) {
        s.div_binomial(-1, j);
    }
    s
}
