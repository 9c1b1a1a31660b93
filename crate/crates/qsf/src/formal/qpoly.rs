//! Polynomials in `q` with integer coefficients and their quotients.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    c: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// `coef * q^k`
    pub fn monomial(k: usize, coef: BigInt) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = coef;
        Self::from_coeffs(c)
    }

    pub fn q_pow(k: usize) -> Self {
        Self::monomial(k, BigInt::one())
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// `1 - q^k`
    pub fn one_minus_q_pow(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        &Self::one() - &Self::q_pow(k)
    }

    /// `(q;q)_k` as a polynomial.
    pub fn q_factorial(k: usize) -> Self {
        (1..=k).fold(Self::one(), |acc, j| &acc * &Self::one_minus_q_pow(j))
    }

    /// Gaussian binomial by the q-Pascal recurrence.
    pub fn q_binomial(n: usize, k: usize) -> Self {
        if k > n {
            return Self::zero();
        }
        let mut row = vec![Self::one()];
        for m in 1..=n {
            let mut next = vec![Self::one(); m + 1];
            for j in 1..m {
                next[j] = &row[j - 1] + &(&Self::q_pow(j) * &row[j]);
            }
            row = next;
        }
        row[k].clone()
    }

    /// Exact quotient; `None` if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let dd = d.degree()?;
        let lead = &d.c[dd];
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qt, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for j in 0..=dd {
                rem[i + j] -= &qt * &d.c[j];
            }
            quo[i] = qt;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(Self::from_coeffs(quo))
        } else {
            None
        }
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Value at a float point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.c.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.c.iter().all(|x| !x.is_negative())
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        QPoly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        QPoly::from_coeffs(c)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(c)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.c.iter().map(|x| -x).collect())
    }
}

/// Quotient of two [`QPoly`]s, kept unreduced. Equality is decided by
/// cross-multiplication, so no gcd is ever needed.
#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: QPoly,
    pub den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc { num: p, den: QPoly::one() }
    }

    pub fn q_pow(k: usize) -> Self {
        Self::from_poly(QPoly::q_pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc { num: &self.num + &o.num, den: self.den.clone() };
        }
        if let Some(k) = o.den.div_exact(&self.den) {
            return RatFunc { num: &(&self.num * &k) + &o.num, den: o.den.clone() };
        }
        if let Some(k) = self.den.div_exact(&o.den) {
            return RatFunc { num: &self.num + &(&o.num * &k), den: self.den.clone() };
        }
        RatFunc { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: &self.num * &o.num, den: &self.den * &o.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
