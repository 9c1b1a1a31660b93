//! Basic hypergeometric series.
//!
//! [`PhiSpec`] describes a unilateral `r phi s` series and [`PsiSpec`] a
//! bilateral `r psi s` series. A terminating series is declared with an
//! integer order (the upper parameter `q^{-n}` is then implicit and its
//! factors are formed exactly); it is never inferred from a float lying close
//! to `q^{-n}`.
//!
//! Helpers built on top: very-well-poised series ([`eval_vwp`]), reversal of
//! terminating series, q-exponentials, Jackson q-Bessel functions, q-gamma and
//! q-beta, and the solutions of the q-Gauss difference equation.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, pole, QError, Result};
use crate::qcore::{finite, max_terms, one_minus_qpow, qpoch_multi, re, Order, QBase, Scalar, SeriesSum, DDC};

mod gauss;
mod special;

pub use gauss::{connection_sides, gauss_residual, gauss_solution, ConnectionForm};
pub use special::{
    bessel_relation_factor, q_bessel, q_bessel3_bounded, q_bessel3_lattice, q_beta, q_cos, q_exp, q_exp_product, q_gamma,
    q_sin, BesselFactor, ExpKind,
};

/// Default relative tolerance of the stopping rule: below round-off.
pub const TOL: f64 = 1e-17;

/// Relative distance at which a lower parameter counts as a pole.
const POLE_EPS: f64 = 1e-12;

/// A unilateral series `r phi s(a; b; q, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub q: QBase,
    pub z: Scalar,
    /// `Some(n)` adds the upper parameter `q^{-n}` and sums `k = 0..=n`.
    pub terminate: Option<usize>,
}

impl PhiSpec {
    pub fn new(upper: &[Scalar], lower: &[Scalar], q: QBase, z: Scalar) -> Self {
        PhiSpec { upper: upper.to_vec(), lower: lower.to_vec(), q, z, terminate: None }
    }

    /// Same series with the implicit upper parameter `q^{-n}`.
    pub fn terminating(mut self, n: usize) -> Self {
        self.terminate = Some(n);
        self
    }

    /// Number of upper parameters, counting the implicit `q^{-n}`.
    pub fn r(&self) -> usize {
        self.upper.len() + self.terminate.is_some() as usize
    }

    pub fn s(&self) -> usize {
        self.lower.len()
    }

    /// Upper parameters as numbers, with `q^{-n}` appended when terminating.
    pub fn upper_values(&self) -> Vec<Scalar> {
        let mut v = self.upper.clone();
        if let Some(n) = self.terminate {
            v.push(self.q.powi(-(n as i64)));
        }
        v
    }

    /// Ratio of consecutive terms, `c_{k+1}/c_k`.
    pub fn term_ratio(&self, k: usize) -> Scalar {
        let q = self.q;
        let qk = q.powi(k as i64);
        let mut num = re(1.0);
        for &a in &self.upper {
            num *= re(1.0) - a * qk;
        }
        if let Some(n) = self.terminate {
            num *= one_minus_qpow(q, re(k as f64 - n as f64));
        }
        let mut den = one_minus_qpow(q, re((k + 1) as f64));
        for &b in &self.lower {
            den *= re(1.0) - b * qk;
        }
        let e = self.s() as i64 - self.r() as i64 + 1;
        num * (-qk).powi(e as i32) * self.z / den
    }

    /// The `k`-th term from its closed form, independent of [`Self::term_ratio`].
    pub fn term(&self, k: usize) -> Result<Scalar> {
        let q = self.q;
        let kk = Order::Fin(k as i64);
        let num = qpoch_multi(&self.upper_values(), q, kk)?;
        let den = qpoch_multi(&self.lower, q, kk)? * qpoch_multi(&[q.0], q, kk)?;
        let e = self.s() as i64 - self.r() as i64 + 1;
        let sign = if k % 2 == 1 && e % 2 != 0 { -1.0 } else { 1.0 };
        let pw = q.0.powi(((k * k.saturating_sub(1) / 2) as i64 * e) as i32) * sign;
        Ok(num / den * pw * self.z.powi(k as i32))
    }
}

/// Sum of a unilateral series together with a round-off bound.
pub fn eval_phi_bounded(spec: &PhiSpec, tol: f64) -> Result<(Scalar, f64)> {
    let up: Vec<DDC> = spec.upper.iter().map(|&a| DDC::from(a)).collect();
    let lo: Vec<DDC> = spec.lower.iter().map(|&b| DDC::from(b)).collect();
    eval_phi_dd(&up, &lo, spec.q, DDC::from(spec.z), spec.terminate, tol)
}

/// Unit round-off of double-double arithmetic, with some slack.
const DD_EPS: f64 = 1e-30;

/// [`eval_phi_bounded`] with parameters supplied in double-double precision.
///
/// Terms and partial sums are carried in double-double arithmetic, so the
/// result is accurate to double precision unless the sum cancels by more
/// than about 14 digits; the returned bound covers both the accumulated
/// error and the final rounding.
pub fn eval_phi_dd(
    upper: &[DDC],
    lower: &[DDC],
    q: QBase,
    z: DDC,
    terminate: Option<usize>,
    tol: f64,
) -> Result<(Scalar, f64)> {
    let (v, max_term, count) = sum_phi_dd(upper, lower, q, z, terminate, tol)?;
    Ok((v, max_term * DD_EPS * count + v.norm() * f64::EPSILON))
}

/// Sum, largest term magnitude and number of terms.
pub(crate) fn sum_phi_dd(
    upper: &[DDC],
    lower: &[DDC],
    q: QBase,
    z: DDC,
    terminate: Option<usize>,
    tol: f64,
) -> Result<(Scalar, f64, f64)> {
    if z == DDC::ZERO {
        return Ok((re(1.0), 1.0, 1.0));
    }
    let r = upper.len() + terminate.is_some() as usize;
    let s = lower.len();
    if terminate.is_none() {
        q.require_inner()?;
        if r > s + 1 {
            return domain("non-terminating series with r > s+1 diverges");
        }
        if r == s + 1 && z.norm() >= 1.0 {
            return domain("non-terminating r = s+1 series needs |z| < 1");
        }
    }
    let e = s as i64 - r as i64 + 1;
    let qd = DDC::from(q.0);
    let one = DDC::ONE;
    let mut qk = one;
    let mut qkn = terminate.map(|n| qd.powi(-(n as i64)));
    let mut t = one;
    let mut sum = one;
    let mut max_term = 1.0f64;
    let mut small = 0u32;
    let mut terms = 1usize;
    let cap = terminate.map(|n| n + 1).unwrap_or_else(max_terms);
    for k in 0..cap {
        if terminate == Some(k) {
            break;
        }
        for &b in lower {
            if (one - b * qk).norm() < POLE_EPS {
                return pole("lower parameter equals q^{-m}");
            }
        }
        let qk1 = qk * qd;
        let den0 = one - qk1;
        if den0.norm() < POLE_EPS {
            return pole("(q;q)_k vanishes");
        }
        let mut num = z;
        for &a in upper {
            num = num * (one - a * qk);
        }
        if let Some(x) = qkn.as_mut() {
            num = num * (one - *x);
            *x = *x * qd;
        }
        let mut den = den0;
        for &b in lower {
            den = den * (one - b * qk);
        }
        if e != 0 {
            let p = (-qk).powi(e);
            num = num * p;
        }
        t = t * num / den;
        sum = sum + t;
        terms += 1;
        qk = qk1;
        let m = t.norm();
        if !m.is_finite() {
            return finite(t.to_scalar(), "series term").map(|v| (v, 0.0, 0.0));
        }
        max_term = max_term.max(m);
        if terminate.is_none() {
            small = if m == 0.0 || m <= tol * sum.norm() { small + 1 } else { 0 };
            if small >= SeriesSum::RUN {
                break;
            }
            if k + 1 == cap {
                return Err(QError::Convergence { terms: cap });
            }
        }
    }
    let v = finite(sum.to_scalar(), "series")?;
    Ok((v, max_term, terms as f64))
}

/// Sum of a unilateral series.
///
/// Terminating series are exact finite sums; otherwise the sum stops after
/// eight consecutive terms below `tol` relative to the partial sum.
pub fn eval_phi(spec: &PhiSpec, tol: f64) -> Result<Scalar> {
    eval_phi_bounded(spec, tol).map(|(v, _)| v)
}

/// A bilateral series `r psi s(a; b; q, z)`, `s >= r`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiSpec {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub q: QBase,
    pub z: Scalar,
}

impl PsiSpec {
    pub fn new(upper: &[Scalar], lower: &[Scalar], q: QBase, z: Scalar) -> Self {
        PsiSpec { upper: upper.to_vec(), lower: lower.to_vec(), q, z }
    }

    /// Numerator and denominator of `t_{k+1} / t_k`, in double-double.
    fn ratio_parts(&self, qk: DDC) -> (DDC, DDC) {
        let one = DDC::ONE;
        let mut num = DDC::from(self.z);
        for &a in &self.upper {
            num = num * (one - DDC::from(a) * qk);
        }
        let mut den = one;
        for &b in &self.lower {
            den = den * (one - DDC::from(b) * qk);
        }
        let e = (self.lower.len() - self.upper.len()) as i64;
        if e != 0 {
            num = num * (-qk).powi(e);
        }
        (num, den)
    }

    /// Whether `z` lies in the annulus of convergence.
    pub fn converges(&self) -> bool {
        let pa: Scalar = self.upper.iter().product();
        let pb: Scalar = self.lower.iter().product();
        let inner = (pb / pa).norm();
        let zn = self.z.norm();
        inner < zn && (self.lower.len() > self.upper.len() || zn < 1.0)
    }
}

/// Two-sided sum of a bilateral series; both tails use the stopping rule.
pub fn eval_psi(spec: &PsiSpec, tol: f64) -> Result<Scalar> {
    eval_psi_scaled(spec, tol).map(|(v, _)| v)
}

/// [`eval_psi`] together with the sum of the term magnitudes.
pub fn eval_psi_scaled(spec: &PsiSpec, tol: f64) -> Result<(Scalar, f64)> {
    spec.q.require_inner()?;
    if spec.lower.len() < spec.upper.len() {
        return domain("bilateral series needs s >= r");
    }
    if spec.upper.iter().chain(spec.lower.iter()).any(|p| *p == re(0.0)) {
        return domain("bilateral parameters must be nonzero");
    }
    if !spec.converges() {
        return domain("z outside the annulus of convergence");
    }
    // terms and partial sums in double-double, so cancellation between the
    // two tails costs no accuracy at double precision
    let cap = max_terms();
    let qd = DDC::from(spec.q.0);
    let qinv = DDC::ONE / qd;
    let mut pos = DDC::ONE;
    let mut abs = 1.0;
    let mut t = DDC::ONE;
    let mut qk = DDC::ONE;
    let mut small = 0u32;
    let mut done = false;
    for _ in 0..cap {
        let (num, den) = spec.ratio_parts(qk);
        if den.norm() < POLE_EPS {
            return pole("lower parameter equals q^{-m}");
        }
        t = t * num / den;
        pos = pos + t;
        abs += t.norm();
        qk = qk * qd;
        small = if t.norm() <= tol * pos.norm() { small + 1 } else { 0 };
        if small >= SeriesSum::RUN {
            done = true;
            break;
        }
    }
    if !done {
        return Err(QError::Convergence { terms: cap });
    }
    let mut neg = DDC::ZERO;
    let mut t = DDC::ONE;
    let mut qk = qinv;
    let mut small = 0u32;
    for _ in 0..cap {
        let (num, den) = spec.ratio_parts(qk);
        if num.norm() < POLE_EPS * den.norm().max(1e-300) {
            return pole("upper parameter gives (a;q)_k a pole at negative k");
        }
        t = t * den / num;
        neg = neg + t;
        abs += t.norm();
        qk = qk * qinv;
        let scale = neg.norm().max(pos.norm());
        small = if t.norm() <= tol * scale { small + 1 } else { 0 };
        if small >= SeriesSum::RUN {
            return Ok((finite((pos + neg).to_scalar(), "bilateral series")?, abs));
        }
    }
    Err(QError::Convergence { terms: cap })
}

/// `r W r-1(a1; a4, ..., ar; q, z)` expanded into its `r phi r-1` form.
///
/// With `terminate = Some(n)` the last numerator `q^{-n}` is implicit and
/// must not be listed in `rest`.
pub fn vwp_spec(a1: Scalar, rest: &[Scalar], q: QBase, z: Scalar, terminate: Option<usize>) -> PhiSpec {
    let s = a1.sqrt();
    let qq = q.0;
    let mut upper = alloc::vec![a1, qq * s, -qq * s];
    let mut lower = alloc::vec![s, -s];
    for &a in rest {
        upper.push(a);
        lower.push(qq * a1 / a);
    }
    if let Some(n) = terminate {
        lower.push(a1 * q.powi(n as i64 + 1));
    }
    PhiSpec { upper, lower, q, z, terminate }
}

/// Very-well-poised series, delegated to [`eval_phi`].
pub fn eval_vwp(a1: Scalar, rest: &[Scalar], q: QBase, z: Scalar, terminate: Option<usize>) -> Result<Scalar> {
    eval_phi(&vwp_spec(a1, rest, q, z, terminate), TOL)
}

fn near(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

/// `r phi r-1` with `z = q` and `b1...b_{r-1} = q a1...ar`.
pub fn balanced(spec: &PhiSpec, tol: f64) -> bool {
    if spec.r() != spec.s() + 1 || !near(spec.z, spec.q.0, tol) {
        return false;
    }
    let pa: Scalar = spec.upper_values().iter().product();
    let pb: Scalar = spec.lower.iter().product();
    near(pb, spec.q.0 * pa, tol)
}

/// `q a1 = a2 b1 = ... = ar b_{r-1}` and `q a1^{1/2} = a2 = -a3`.
pub fn very_well_poised(spec: &PhiSpec, tol: f64) -> bool {
    let a = spec.upper_values();
    if a.len() != spec.s() + 1 || a.len() < 3 {
        return false;
    }
    let q = spec.q.0;
    let target = q * a[0];
    let pairs_ok = a[1..].iter().zip(spec.lower.iter()).all(|(&x, &y)| near(x * y, target, tol));
    let s = a[0].sqrt();
    pairs_ok && (near(a[1], q * s, tol) && near(a[2], -q * s, tol) || near(a[2], q * s, tol) && near(a[1], -q * s, tol))
}

/// The reversed series of a terminating `s+1 phi s` and the prefactor `c`
/// such that `phi(spec) = c * phi(reversed)`.
pub fn reverse_terminating(spec: &PhiSpec) -> Result<(PhiSpec, Scalar)> {
    let n = match spec.terminate {
        Some(n) => n,
        None => return domain("reversal needs a terminating series"),
    };
    if spec.upper.len() != spec.lower.len() {
        return domain("reversal needs an s+1 phi s series");
    }
    if spec.upper.iter().chain(spec.lower.iter()).chain([spec.z].iter()).any(|p| *p == re(0.0)) {
        return domain("reversal needs nonzero parameters");
    }
    let q = spec.q;
    let nn = Order::Fin(n as i64);
    let nf = n as f64;
    let shift = q.powi(1 - n as i64);
    let pa: Scalar = spec.upper.iter().product();
    let pb: Scalar = spec.lower.iter().product();
    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    let c = q.powf(-0.5 * nf * (nf + 1.0)) * sign * qpoch_multi(&spec.upper, q, nn)?
        / qpoch_multi(&spec.lower, q, nn)?
        * spec.z.powi(n as i32);
    let rev = PhiSpec {
        upper: spec.lower.iter().map(|b| shift / b).collect(),
        lower: spec.upper.iter().map(|a| shift / a).collect(),
        q,
        z: q.powi(n as i64 + 1) * pb / (pa * spec.z),
        terminate: Some(n),
    };
    Ok((rev, finite(c, "reversal prefactor")?))
}
