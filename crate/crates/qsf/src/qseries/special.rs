//! q-exponentials, Jackson q-Bessel functions, q-gamma and q-beta.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use super::{eval_phi, sum_phi_dd, PhiSpec, TOL};
use crate::error::{domain, pole, QError, Result};
use crate::qcore::{finite, max_terms, one_minus_qpow, qpoch_inf, re, QBase, Scalar, DDC};

/// The three q-exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpKind {
    /// `e_q(z) = sum z^k/(q;q)_k`, `|z| < 1`.
    Small,
    /// `E_q(z) = sum q^{k(k-1)/2} z^k/(q;q)_k`, entire.
    Big,
    /// `eps_q(z) = sum q^{k(k-1)/4} z^k/(q;q)_k`, entire.
    Epsilon,
}

/// q-exponential from its series definition.
pub fn q_exp(kind: ExpKind, z: Scalar, q: QBase) -> Result<Scalar> {
    match kind {
        ExpKind::Small => {
            if z.norm() >= 1.0 {
                return domain("e_q(z) needs |z| < 1");
            }
            eval_phi(&PhiSpec::new(&[re(0.0)], &[], q, z), TOL)
        }
        ExpKind::Big => eval_phi(&PhiSpec::new(&[], &[], q, -z), TOL),
        ExpKind::Epsilon => {
            let h = q.powf(0.5);
            eval_phi(&PhiSpec::new(&[re(0.0)], &[-h], QBase(h), -z), TOL)
        }
    }
}

/// Product forms `1/(z;q)_inf` and `(-z;q)_inf`; `None` for `eps_q`.
pub fn q_exp_product(kind: ExpKind, z: Scalar, q: QBase) -> Option<Result<Scalar>> {
    match kind {
        ExpKind::Small => Some(qpoch_inf(z, q).map(|p| p.inv())),
        ExpKind::Big => Some(qpoch_inf(-z, q)),
        ExpKind::Epsilon => None,
    }
}

/// `(exp_q(ix) + exp_q(-ix))/2`.
pub fn q_cos(kind: ExpKind, x: Scalar, q: QBase) -> Result<Scalar> {
    let i = Scalar::i();
    Ok((q_exp(kind, i * x, q)? + q_exp(kind, -i * x, q)?) * 0.5)
}

/// `-i(exp_q(ix) - exp_q(-ix))/2`.
pub fn q_sin(kind: ExpKind, x: Scalar, q: QBase) -> Result<Scalar> {
    let i = Scalar::i();
    Ok((q_exp(kind, i * x, q)? - q_exp(kind, -i * x, q)?) * (-0.5 * i))
}

fn bessel_spec(kind: u8, nu: f64, x: f64, q: QBase) -> Result<PhiSpec> {
    let b = q.powf(nu + 1.0);
    let x2 = re(0.25 * x * x);
    match kind {
        1 => {
            if !(x > 0.0 && x < 2.0) {
                return domain("first q-Bessel function needs 0 < x < 2");
            }
            Ok(PhiSpec::new(&[re(0.0), re(0.0)], &[b], q, -x2))
        }
        2 | 3 => {
            if x <= 0.0 {
                return domain("q-Bessel function needs x > 0");
            }
            if kind == 2 {
                Ok(PhiSpec::new(&[], &[b], q, -x2 * b))
            } else {
                Ok(PhiSpec::new(&[re(0.0)], &[b], q, x2 * q.0))
            }
        }
        _ => domain("q-Bessel kind is 1, 2 or 3"),
    }
}

fn bessel_prefactor(nu: f64, x: f64, q: QBase) -> Result<Scalar> {
    let p = qpoch_inf(q.powf(nu + 1.0), q)? / qpoch_inf(q.0, q)?;
    Ok(p * (0.5 * x).powf(nu))
}

/// Jackson's q-Bessel functions of the first, second and third kind.
pub fn q_bessel(kind: u8, nu: f64, x: f64, q: QBase) -> Result<Scalar> {
    q.require_real()?;
    let spec = bessel_spec(kind, nu, x, q)?;
    finite(bessel_prefactor(nu, x, q)? * eval_phi(&spec, TOL)?, "q-Bessel")
}

/// Third q-Bessel function together with an absolute error bound.
///
/// For large `x` the value is far below its largest series term, and the
/// bound is dominated by the rounding of `x` and `q^{nu+1}` to double:
/// sixteen units in the last place of the largest term.
pub fn q_bessel3_bounded(nu: f64, x: f64, q: QBase) -> Result<(Scalar, f64)> {
    q.require_real()?;
    let spec = bessel_spec(3, nu, x, q)?;
    let pre = bessel_prefactor(nu, x, q)?;
    let up: Vec<DDC> = spec.upper.iter().map(|&a| DDC::from(a)).collect();
    let lo: Vec<DDC> = spec.lower.iter().map(|&b| DDC::from(b)).collect();
    let (v, max_term, _) = sum_phi_dd(&up, &lo, q, DDC::from(spec.z), None, TOL)?;
    let err = max_term * 16.0 * f64::EPSILON + v.norm() * f64::EPSILON;
    Ok((pre * v, pre.norm() * err))
}

/// Third q-Bessel function on the lattice `x = 2 q^{j/2}` with an error bound.
///
/// The argument enters only through `x^2/4 = q^j`, formed in double-double
/// from `q` itself, so no rounding of `x` leaks into the cancellation at
/// large `x`. The bound covers summation in double-double only; the whole
/// lattice shares the same rounded `q^{nu+1}`.
pub fn q_bessel3_lattice(nu: f64, j: i64, q: QBase) -> Result<(Scalar, f64)> {
    let qr = q.require_real()?;
    let b = q.powf(nu + 1.0);
    let z = DDC::from(q.0).powi(j + 1);
    let (v, max_term, terms) = sum_phi_dd(&[DDC::ZERO], &[DDC::from(b)], q, z, None, TOL)?;
    let pre = qpoch_inf(b, q)? / qpoch_inf(q.0, q)? * qr.powf(0.5 * nu * j as f64);
    let err = max_term * 1e-30 * terms + v.norm() * 4.0 * f64::EPSILON;
    Ok((pre * v, pre.norm() * err))
}

/// Reading of the factor relating the second q-Bessel function to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselFactor {
    /// `(-x/4; q)_inf`
    Linear,
    /// `(-x^2/4; q)_inf`
    Squared,
}

pub fn bessel_relation_factor(x: f64, q: QBase, form: BesselFactor) -> Result<Scalar> {
    let arg = match form {
        BesselFactor::Linear => -0.25 * x,
        BesselFactor::Squared => -0.25 * x * x,
    };
    qpoch_inf(re(arg), q)
}

fn nonpositive_integer(z: Scalar) -> bool {
    z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-12
}

/// `prod_j num_j/den_j` over `(1 - q^{j+n})/(1 - q^{j+d})`, stopped when all
/// factors sit within 1e-17 of one for four steps.
fn ratio_product(q: QBase, num: &[Scalar], den: &[Scalar]) -> Result<Scalar> {
    let qr = q.require_real()?;
    let mut acc = re(1.0);
    let mut small = 0;
    let cap = max_terms();
    for j in 0..cap {
        let mut biggest = 0.0f64;
        for &e in num {
            let x = e + j as f64;
            acc *= one_minus_qpow(q, x);
            biggest = biggest.max((x.re * qr.ln()).exp());
        }
        for &e in den {
            let x = e + j as f64;
            acc /= one_minus_qpow(q, x);
            biggest = biggest.max((x.re * qr.ln()).exp());
        }
        if biggest < 1e-17 {
            small += 1;
            if small >= 4 {
                return finite(acc, "q-gamma product");
            }
        } else {
            small = 0;
        }
    }
    Err(QError::Convergence { terms: cap })
}

/// q-gamma function from its product form.
pub fn q_gamma(z: Scalar, q: QBase) -> Result<Scalar> {
    if nonpositive_integer(z) {
        return pole("q-gamma at a nonpositive integer");
    }
    let qr = q.require_real()?;
    let p = ratio_product(q, &[re(1.0)], &[z])?;
    finite(p * ((re(1.0) - z) * (1.0 - qr).ln()).exp(), "q-gamma")
}

/// q-beta function `(1-q)(q, q^{a+b};q)_inf / (q^a, q^b;q)_inf`.
pub fn q_beta(a: Scalar, b: Scalar, q: QBase) -> Result<Scalar> {
    if nonpositive_integer(a) || nonpositive_integer(b) {
        return pole("q-beta at a nonpositive integer");
    }
    let qr = q.require_real()?;
    let p = ratio_product(q, &[re(1.0), a + b], &[a, b])?;
    finite(p * (1.0 - qr), "q-beta")
}
