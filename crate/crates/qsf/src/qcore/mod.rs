//! q-calculus primitives.
//!
//! Everything here works on [`Scalar`] (a double precision complex number):
//! - [`qpoch`] and [`qpoch_multi`]: q-shifted factorials of finite, negative
//!   and infinite order,
//! - [`qbinom`] and [`qbracket`]: q-binomials and the symmetric bracket notation,
//! - [`qderiv`] and [`qintegral`]: the Jackson derivative and integral,
//! - [`theta4`]: the fourth theta function as a bilateral sum and a product.

use core::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, pole, QError, Result};

mod dd;
mod sum;

pub use dd::{DD, DDC};
pub use sum::{Kahan, SeriesSum};

/// Value type of every numeric evaluation.
pub type Scalar = Complex64;

/// Real number as a [`Scalar`].
#[inline]
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// Rejects NaN and infinite values.
pub fn finite(x: Scalar, what: &str) -> Result<Scalar> {
    if x.re.is_finite() && x.im.is_finite() {
        Ok(x)
    } else {
        Err(QError::Overflow(alloc::format!("{what} is not finite")))
    }
}

static MAX_TERMS: AtomicUsize = AtomicUsize::new(1_000_000);

/// Cap on the number of terms any series or product may accumulate.
pub fn max_terms() -> usize {
    MAX_TERMS.load(Ordering::Relaxed)
}

/// Overrides the term cap (the CLI wires this to `QSF_MAX_TERMS`).
pub fn set_max_terms(n: usize) {
    MAX_TERMS.store(n.max(1), Ordering::Relaxed);
}

/// The base `q` of a q-analogue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase(pub Scalar);

impl QBase {
    pub fn new(q: Scalar) -> Self {
        QBase(q)
    }

    #[inline]
    pub fn q(self) -> Scalar {
        self.0
    }

    /// True when `q` is real and lies in (0, 1).
    pub fn is_unit_interval(self) -> bool {
        self.0.im == 0.0 && self.0.re > 0.0 && self.0.re < 1.0
    }

    /// Infinite products and sums need `|q| < 1`.
    pub fn require_inner(self) -> Result<()> {
        if self.0.norm() < 1.0 {
            Ok(())
        } else {
            domain("|q| < 1 required for infinite order")
        }
    }

    /// Real `q` in (0, 1), as used by q-integrals and theta functions.
    pub fn require_real(self) -> Result<f64> {
        if self.is_unit_interval() {
            Ok(self.0.re)
        } else {
            domain("0 < q < 1 required")
        }
    }

    /// `q^x` on the principal branch.
    pub fn pow(self, x: Scalar) -> Scalar {
        if self.0.im == 0.0 && self.0.re > 0.0 {
            (x * self.0.re.ln()).exp()
        } else {
            self.0.powc(x)
        }
    }

    pub fn powf(self, x: f64) -> Scalar {
        self.pow(re(x))
    }

    pub fn powi(self, k: i64) -> Scalar {
        self.0.powi(k as i32)
    }
}

impl From<f64> for QBase {
    fn from(q: f64) -> Self {
        QBase(re(q))
    }
}

impl From<Scalar> for QBase {
    fn from(q: Scalar) -> Self {
        QBase(q)
    }
}

/// Order of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Fin(i64),
    Infinity,
}

impl From<i64> for Order {
    fn from(k: i64) -> Self {
        Order::Fin(k)
    }
}

/// `exp(w) - 1` without cancellation for small `w`.
pub fn cexpm1(w: Scalar) -> Scalar {
    if w.norm() < 0.5 {
        let h = w * 0.5;
        let sinh = Scalar::new(h.re.sinh() * h.im.cos(), h.re.cosh() * h.im.sin());
        sinh * h.exp() * 2.0
    } else {
        w.exp() - 1.0
    }
}

/// `1 - q^e` computed without cancellation when `q` is positive real.
pub fn one_minus_qpow(q: QBase, e: Scalar) -> Scalar {
    if q.0.im == 0.0 && q.0.re > 0.0 {
        -cexpm1(e * q.0.re.ln())
    } else {
        Scalar::new(1.0, 0.0) - q.0.powc(e)
    }
}

fn prod_inf(a: Scalar, q: QBase) -> Result<Scalar> {
    q.require_inner()?;
    let mut acc = re(1.0);
    let mut x = a;
    let mut small = 0;
    let cap = max_terms();
    for _ in 0..cap {
        if x.norm() < 1e-17 {
            small += 1;
            if small >= 4 {
                return finite(acc, "infinite product");
            }
        } else {
            small = 0;
        }
        acc *= re(1.0) - x;
        if acc == re(0.0) {
            return Ok(acc);
        }
        x *= q.0;
    }
    Err(QError::Convergence { terms: cap })
}

/// `(a;q)_k` for finite, negative or infinite order.
///
/// Infinite products stop once four consecutive factors are within 1e-17
/// of one. Negative orders use `(a;q)_{-k} = 1/((1-a/q)...(1-a/q^k))`.
pub fn qpoch(a: Scalar, q: QBase, k: Order) -> Result<Scalar> {
    match k {
        Order::Infinity => prod_inf(a, q),
        Order::Fin(k) if k >= 0 => {
            let mut acc = re(1.0);
            let mut x = a;
            for _ in 0..k {
                acc *= re(1.0) - x;
                x *= q.0;
            }
            finite(acc, "q-shifted factorial")
        }
        Order::Fin(k) => {
            q.require_inner()?;
            let qi = q.0.inv();
            let mut den = re(1.0);
            let mut x = a;
            for _ in 0..(-k) {
                x *= qi;
                let f = re(1.0) - x;
                if f.norm() <= 1e-14 * x.norm().max(1.0) {
                    return pole("(a q^k; q)_inf vanishes");
                }
                den *= f;
            }
            finite(den.inv(), "q-shifted factorial")
        }
    }
}

/// `(a_1,...,a_r;q)_k`.
pub fn qpoch_multi(a: &[Scalar], q: QBase, k: Order) -> Result<Scalar> {
    let mut acc = re(1.0);
    for &x in a {
        acc *= qpoch(x, q, k)?;
    }
    finite(acc, "q-shifted factorial product")
}

/// `(a;q)_inf` in double-double arithmetic, for arguments built from
/// products of inputs: near a zero of some factor `1 - a q^k` the double
/// product would lose the digits the cancellation removes.
pub fn qpoch_inf_dd(a: DDC, q: QBase) -> Result<Scalar> {
    q.require_inner()?;
    let qd = DDC::from(q.0);
    let mut acc = DDC::ONE;
    let mut x = a;
    let mut small = 0;
    let cap = max_terms();
    for _ in 0..cap {
        if x.norm() < 1e-33 {
            small += 1;
            if small >= 4 {
                return finite(acc.to_scalar(), "infinite product");
            }
        } else {
            small = 0;
        }
        acc = acc * (DDC::ONE - x);
        x = x * qd;
    }
    Err(QError::Convergence { terms: cap })
}

/// Shorthand for `(a;q)_inf`.
pub fn qpoch_inf(a: Scalar, q: QBase) -> Result<Scalar> {
    qpoch(a, q, Order::Infinity)
}

/// Gaussian binomial `[n k]_q`, as a product of `k` paired ratios.
pub fn qbinom(n: i64, k: i64, q: QBase) -> Result<Scalar> {
    if k < 0 || n < k {
        return domain("qbinom needs n >= k >= 0");
    }
    let k = k.min(n - k);
    let mut acc = re(1.0);
    for j in 1..=k {
        let num = one_minus_qpow(q, re((n - k + j) as f64));
        let den = one_minus_qpow(q, re(j as f64));
        if den == re(0.0) {
            return pole("q is a root of unity");
        }
        acc *= num / den;
    }
    finite(acc, "q-binomial")
}

/// Which symbol [`qbracket`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bracket {
    /// `[a]_q`
    Number,
    /// `[k]_q!`
    Factorial,
    /// `([a]_q)_k`
    Pochhammer,
}

fn bracket_number(a: Scalar, q: QBase) -> Scalar {
    let h = q.pow(a * 0.5);
    let s = q.powf(0.5);
    (h - h.inv()) / (s - s.inv())
}

/// Symmetric q-number, q-factorial and q-Pochhammer symbol.
pub fn qbracket(a: Scalar, q: QBase, form: Bracket, k: u32) -> Result<Scalar> {
    if q.0 == re(1.0) {
        return domain("bracket notation needs q != 1");
    }
    let v = match form {
        Bracket::Number => bracket_number(a, q),
        Bracket::Factorial => (1..=k).map(|j| bracket_number(re(j as f64), q)).product(),
        Bracket::Pochhammer => (0..k).map(|j| bracket_number(a + j as f64, q)).product(),
    };
    finite(v, "bracket")
}

/// Jackson q-derivative, applied once or twice.
pub fn qderiv<F>(f: F, x: Scalar, q: QBase, order: u8) -> Result<Scalar>
where
    F: Fn(Scalar) -> Scalar,
{
    if x == re(0.0) {
        return domain("q-derivative at 0 needs f'(0)");
    }
    if q.0 == re(1.0) {
        return domain("q-derivative needs q != 1");
    }
    let d1 = |y: Scalar| (f(y) - f(q.0 * y)) / ((re(1.0) - q.0) * y);
    let v = match order {
        1 => d1(x),
        2 => (d1(x) - d1(q.0 * x)) / ((re(1.0) - q.0) * x),
        _ => return domain("order must be 1 or 2"),
    };
    finite(v, "q-derivative")
}

/// Integration range of a q-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bounds {
    /// From 0 to `a` on the lattice `a q^k`.
    To(f64),
    /// Difference of two `To` integrals.
    Between(f64, f64),
    /// Over (0, inf) on the two-sided lattice anchored at `a > 0`.
    ToInfinity(f64),
}

fn lattice_sum<F>(f: &F, a: f64, step: f64, tol: f64) -> Result<Scalar>
where
    F: Fn(f64) -> Scalar,
{
    let mut s = SeriesSum::new(tol);
    let mut w = 1.0;
    let mut x = a;
    let cap = max_terms();
    for _ in 0..cap {
        if s.push(f(x) * w) {
            return finite(s.value(), "q-integral");
        }
        w *= step;
        x *= step;
    }
    Err(QError::Convergence { terms: cap })
}

/// Jackson q-integral, summed until eight consecutive lattice terms fall
/// below `tol` relative to the partial sum.
pub fn qintegral<F>(f: F, bounds: Bounds, q: QBase, tol: f64) -> Result<Scalar>
where
    F: Fn(f64) -> Scalar,
{
    let qr = q.require_real()?;
    match bounds {
        Bounds::To(a) => {
            if a == 0.0 {
                return Ok(re(0.0));
            }
            Ok(lattice_sum(&f, a, qr, tol)? * (a * (1.0 - qr)))
        }
        Bounds::Between(a, b) => {
            let part = |x: f64| -> Result<Scalar> {
                if x == 0.0 {
                    Ok(re(0.0))
                } else {
                    Ok(lattice_sum(&f, x, qr, tol)? * (x * (1.0 - qr)))
                }
            };
            Ok(part(b)? - part(a)?)
        }
        Bounds::ToInfinity(a) => {
            if a <= 0.0 {
                return domain("lattice anchor must be positive");
            }
            let lower = lattice_sum(&f, a, qr, tol)?;
            let upper = lattice_sum(&f, a / qr, 1.0 / qr, tol)? / qr;
            Ok((lower + upper) * (a * (1.0 - qr)))
        }
    }
}

/// `theta_4(x;q) = sum_k (-1)^k q^{k^2} e^{2 pi i k x}` as a bilateral sum.
pub fn theta4_sum(x: f64, q: QBase) -> Result<Scalar> {
    let qr = q.require_real()?;
    let c = 2.0 * core::f64::consts::PI * x;
    let mut s = SeriesSum::new(1e-17);
    s.push(re(1.0));
    let mut k = 1.0f64;
    loop {
        let t = 2.0 * qr.powf(k * k) * (c * k).cos();
        let t = if (k as i64) % 2 == 1 { -t } else { t };
        if s.push(re(t)) {
            break;
        }
        k += 1.0;
    }
    finite(s.value(), "theta sum")
}

fn theta4_product_with(x: f64, q: QBase, printed: bool) -> Result<Scalar> {
    let qr = q.require_real()?;
    let cs = (2.0 * core::f64::consts::PI * x).cos();
    let mut acc = 1.0;
    let mut small = 0;
    let mut k = 1i32;
    while small < 4 {
        let q2k = qr.powi(2 * k);
        let lin = if printed { qr.powi(k - 1) } else { qr.powi(2 * k - 1) };
        acc *= (1.0 - q2k) * (1.0 - 2.0 * lin * cs + qr.powi(4 * k - 2));
        small = if lin < 1e-17 { small + 1 } else { 0 };
        k += 1;
        if k as usize > max_terms() {
            return Err(QError::Convergence { terms: k as usize });
        }
    }
    finite(re(acc), "theta product")
}

/// Product side `prod_k (1-q^{2k})(1 - 2 q^{2k-1} cos(2 pi x) + q^{4k-2})`.
pub fn theta4(x: f64, q: QBase) -> Result<Scalar> {
    theta4_product_with(x, q, false)
}

/// Product with the linear coefficient `q^{k-1}` in place of `q^{2k-1}`.
/// Kept for the audit that shows it disagrees with the sum.
pub fn theta4_product_misprint(x: f64, q: QBase) -> Result<Scalar> {
    theta4_product_with(x, q, true)
}

/// `(sum side, product side)` of the theta4 identity.
pub fn theta4_pair(x: f64, q: QBase) -> Result<(Scalar, Scalar)> {
    Ok((theta4_sum(x, q)?, theta4(x, q)?))
}

#[cfg(test)]
mod tests;
