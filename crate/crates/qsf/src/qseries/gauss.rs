//! Solutions of the second order q-difference equation of q-Gauss type.

#[allow(unused_imports)]
use num_traits::Float;

use super::{eval_phi, PhiSpec, TOL};
use crate::error::{domain, Result};
use crate::qcore::{qderiv, qpoch_multi, re, Order, QBase, Scalar};

fn phi21(a: Scalar, b: Scalar, c: Scalar, q: QBase, z: Scalar) -> Result<Scalar> {
    eval_phi(&PhiSpec::new(&[a, b], &[c], q, z), TOL)
}

/// `u_1`, `u_2` or `u_3` at `z` (principal branches of the powers of `z`).
pub fn gauss_solution(a: f64, b: f64, c: f64, q: QBase, z: Scalar, which: u8) -> Result<Scalar> {
    let p = |x: f64| q.powf(x);
    match which {
        1 | 2 if z.norm() >= 1.0 => domain("u1 and u2 need |z| < 1"),
        1 => phi21(p(a), p(b), p(c), q, z),
        2 => Ok(z.powc(re(1.0 - c)) * phi21(p(1.0 + a - c), p(1.0 + b - c), p(2.0 - c), q, z)?),
        3 => {
            let w = p(c - a - b + 1.0) / z;
            if w.norm() >= 1.0 {
                return domain("u3 needs |q^{c-a-b+1}/z| < 1");
            }
            Ok(z.powc(re(-a)) * phi21(p(a), p(a - c + 1.0), p(a - b + 1.0), q, w)?)
        }
        _ => domain("solution index is 1, 2 or 3"),
    }
}

/// Left side of the difference equation applied to `u_which`, with the sum
/// of the magnitudes of its three terms as a scale.
pub fn gauss_residual(a: f64, b: f64, c: f64, q: QBase, z: Scalar, which: u8) -> Result<(Scalar, f64)> {
    let qr = q.0.re;
    let p = |x: f64| qr.powf(x);
    for pt in [z, z * q.0, z * q.0 * q.0] {
        gauss_solution(a, b, c, q, pt, which)?;
    }
    let u = |x: Scalar| gauss_solution(a, b, c, q, x, which).unwrap_or(re(f64::NAN));
    let d2 = qderiv(u, z, q, 2)?;
    let d1 = qderiv(u, z, q, 1)?;
    let u0 = u(z);
    let br = |x: f64| (1.0 - p(x)) / (1.0 - qr);
    let t2 = z * (re(p(c)) - z * p(a + b + 1.0)) * d2;
    let t1 = (re(br(c)) - z * (p(b) * br(a) + p(a) * br(b + 1.0))) * d1;
    let t0 = -u0 * (br(a) * br(b));
    Ok((t2 + t1 + t0, t2.norm() + t1.norm() + t0.norm()))
}

/// Which coefficient is used for the `u_2` term of the connection formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionForm {
    /// The form whose `u_2` coefficient carries the extra factor `z^{c-1}`;
    /// this is the one that holds.
    Corrected,
    /// The form without that factor.
    Misprint,
}

/// Both sides of the three-term relation `u1 + A u2 = B u3` for `0 < z < 1`.
pub fn connection_sides(a: f64, b: f64, c: f64, q: QBase, z: f64, form: ConnectionForm) -> Result<(Scalar, Scalar)> {
    if !(z > 0.0 && z < 1.0) {
        return domain("connection formula checked for 0 < z < 1 only");
    }
    let zc = re(z);
    let p = |x: f64| q.powf(x);
    let inf = Order::Infinity;
    let pm = |v: &[Scalar]| qpoch_multi(v, q, inf);
    let common = pm(&[p(b - c) * zc, p(c - b + 1.0) / zc])?;
    let coef_a = pm(&[p(a), p(1.0 - c), p(c - b)])? / pm(&[p(c - 1.0), p(a - c + 1.0), p(1.0 - b)])?
        * pm(&[p(b - 1.0) * zc, p(2.0 - b) / zc])?
        / common;
    let coef_b = pm(&[p(1.0 - c), p(a - b + 1.0)])? / pm(&[p(1.0 - b), p(a - c + 1.0)])?
        * pm(&[p(a + b - c) * zc, p(c - a - b + 1.0) / zc])?
        * zc.powf(a)
        / common;
    let u1 = gauss_solution(a, b, c, q, zc, 1)?;
    let u2 = gauss_solution(a, b, c, q, zc, 2)?;
    let u3 = gauss_solution(a, b, c, q, zc, 3)?;
    let coef_a = match form {
        ConnectionForm::Corrected => coef_a * zc.powf(c - 1.0),
        ConnectionForm::Misprint => coef_a,
    };
    Ok((u1 + coef_a * u2, coef_b * u3))
}
