//! Evaluation of the individual families by terminating sums.

#[allow(unused_imports)]
use num_traits::Float;

use super::{aw_eval_z, hermite_z, z_of_x, AWParams};
use crate::error::{domain, pole, Result};
use crate::qcore::{qpoch, qpoch_multi, re, Kahan, Order, QBase, Scalar};
use crate::qseries::{eval_phi, eval_vwp, PhiSpec, TOL};

/// A family together with its parameters (the base is passed separately).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    AskeyWilson { a: Scalar, b: Scalar, c: Scalar, d: Scalar },
    ContinuousHermite,
    Ultraspherical { beta: Scalar },
    /// One of `alpha`, `beta delta`, `gamma` must equal `q^{-N-1}`.
    QRacah { alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar, big_n: usize },
    BigQJacobi { a: Scalar, b: Scalar, c: Scalar },
    LittleQJacobi { a: Scalar, b: Scalar },
    QHahn { alpha: Scalar, beta: Scalar, big_n: usize },
    StieltjesWigert,
    RahmanWilson { a: Scalar, b: Scalar, c: Scalar, d: Scalar, e: Scalar },
}

fn near(a: Scalar, b: Scalar) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(b.norm())
}

/// `C_n` as a function of `z = e^{i theta}`.
pub(crate) fn ultraspherical_z(n: usize, z: Scalar, beta: Scalar, q: QBase) -> Result<Scalar> {
    let mut s = Kahan::default();
    for k in 0..=n {
        let c = qpoch(beta, q, Order::Fin(k as i64))? * qpoch(beta, q, Order::Fin((n - k) as i64))?
            / (qpoch(q.0, q, Order::Fin(k as i64))? * qpoch(q.0, q, Order::Fin((n - k) as i64))?);
        s.add(c * z.powi(n as i32 - 2 * k as i32));
    }
    Ok(s.value())
}

/// q-Racah `R_n` at the lattice point with `q^{-y} = u`.
pub(crate) fn q_racah_u(n: usize, u: Scalar, alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar, q: QBase) -> Result<Scalar> {
    let qq = q.0;
    let upper = [alpha * beta * q.powi(n as i64 + 1), u, gamma * delta * qq / u];
    let lower = [qq * alpha, qq * beta * delta, qq * gamma];
    eval_phi(&PhiSpec::new(&upper, &lower, q, qq).terminating(n), TOL)
}

pub(crate) fn big_q_jacobi(n: usize, x: Scalar, a: Scalar, b: Scalar, c: Scalar, q: QBase) -> Result<Scalar> {
    let qq = q.0;
    let spec = PhiSpec::new(&[ab_shift(a * b, n, q), x], &[qq * a, qq * c], q, qq).terminating(n);
    eval_phi(&spec, TOL)
}

pub(crate) fn little_q_jacobi(n: usize, x: Scalar, a: Scalar, b: Scalar, q: QBase) -> Result<Scalar> {
    let qq = q.0;
    let spec = PhiSpec::new(&[ab_shift(a * b, n, q)], &[qq * a], q, qq * x).terminating(n);
    eval_phi(&spec, TOL)
}

fn ab_shift(ab: Scalar, n: usize, q: QBase) -> Scalar {
    ab * q.powi(n as i64 + 1)
}

pub(crate) fn q_hahn(n: usize, x: Scalar, alpha: Scalar, beta: Scalar, big_n: usize, q: QBase) -> Result<Scalar> {
    let qq = q.0;
    let spec = PhiSpec::new(&[ab_shift(alpha * beta, n, q), x], &[qq * alpha, q.powi(-(big_n as i64))], q, qq)
        .terminating(n);
    eval_phi(&spec, TOL)
}

pub(crate) fn stieltjes_wigert(n: usize, x: Scalar, q: QBase) -> Result<Scalar> {
    let spec = PhiSpec::new(&[], &[re(0.0)], q, -x * q.powi(n as i64 + 1)).terminating(n);
    Ok(eval_phi(&spec, TOL)? / qpoch(q.0, q, Order::Fin(n as i64))?)
}

/// Rahman-Wilson `R_n` as a function of `z`.
pub(crate) fn rahman_wilson_z(n: usize, z: Scalar, p: [Scalar; 5], q: QBase) -> Result<Scalar> {
    let [a, b, c, d, e] = p;
    let qq = q.0;
    let rest = [qq / (b * e), qq / (c * e), qq / (d * e), a * z, a / z, a * b * c * d * q.powi(n as i64 - 1)];
    eval_vwp(a / e, &rest, q, qq, Some(n))
}

/// Evaluates `family` at degree `n` and point `x`.
///
/// For the q-Racah family `x` is `q^{-y} + gamma delta q^{y+1}`; the
/// quadratic for `q^{-y}` is solved and either root gives the same value.
pub fn family_eval(family: &Family, n: usize, x: Scalar, q: QBase) -> Result<Scalar> {
    match *family {
        Family::AskeyWilson { a, b, c, d } => aw_eval_z(n, z_of_x(x), &AWParams { a, b, c, d, q }),
        Family::ContinuousHermite => hermite_z(n, z_of_x(x), q),
        Family::Ultraspherical { beta } => ultraspherical_z(n, z_of_x(x), beta, q),
        Family::QRacah { alpha, beta, gamma, delta, big_n } => {
            let target = q.powi(-(big_n as i64) - 1);
            if !(near(alpha, target) || near(beta * delta, target) || near(gamma, target)) {
                return domain("q-Racah needs alpha, beta delta or gamma equal to q^{-N-1}");
            }
            if n > big_n {
                return domain("q-Racah degree exceeds N");
            }
            let gd = gamma * delta * q.0;
            let disc = (x * x - gd * 4.0).sqrt();
            let u = (x + disc) * 0.5;
            if u == re(0.0) {
                return pole("q-Racah lattice point with q^{-y} = 0");
            }
            q_racah_u(n, u, alpha, beta, gamma, delta, q)
        }
        Family::BigQJacobi { a, b, c } => big_q_jacobi(n, x, a, b, c, q),
        Family::LittleQJacobi { a, b } => little_q_jacobi(n, x, a, b, q),
        Family::QHahn { alpha, beta, big_n } => {
            if n > big_n {
                return domain("q-Hahn degree exceeds N");
            }
            q_hahn(n, x, alpha, beta, big_n, q)
        }
        Family::StieltjesWigert => stieltjes_wigert(n, x, q),
        Family::RahmanWilson { a, b, c, d, e } => rahman_wilson_z(n, z_of_x(x), [a, b, c, d, e], q),
    }
}

/// Both sides of the little q-Jacobi polynomial written through the big
/// q-Jacobi polynomial: `(-b)^{-n} q^{-n(n+1)/2} (qb;q)_n/(qa;q)_n P_n(qbx; b, a, 0)`.
pub fn little_from_big(n: usize, x: Scalar, a: Scalar, b: Scalar, q: QBase) -> Result<(Scalar, Scalar)> {
    let lhs = little_q_jacobi(n, x, a, b, q)?;
    let nn = Order::Fin(n as i64);
    let qq = q.0;
    let pre = (-b).powi(-(n as i32)) * q.powi(-((n * (n + 1) / 2) as i64)) * qpoch(qq * b, q, nn)?
        / qpoch_multi(&[qq * a], q, nn)?;
    let rhs = pre * big_q_jacobi(n, qq * b * x, b, a, re(0.0), q)?;
    Ok((lhs, rhs))
}
