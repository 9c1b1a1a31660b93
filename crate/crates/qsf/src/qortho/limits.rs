//! Limit transitions and the ultraspherical generating function.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::families::{big_q_jacobi, little_q_jacobi, ultraspherical_z};
use super::{aw_eval_z, AWParams};
use crate::check::{CheckResult, Status};
use crate::error::Result;
use crate::qcore::{qpoch, qpoch_inf, re, Order, QBase, Scalar};
use crate::qseries::q_bessel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitCase {
    /// `(q;q)_n/(beta;q)_n C_n(cos theta; beta|q) -> 2 cos(n theta)` as `beta -> 1`.
    Chebyshev,
    /// Big q-Jacobi to classical Jacobi as `q -> 1`.
    Jacobi,
    /// Little q-Jacobi of degree `N - n` at `q^{N+k}` to the third q-Bessel function.
    QBessel,
    /// Ultraspherical as an Askey-Wilson polynomial (an identity, not a limit).
    UltrasphericalFromAW,
    /// Coefficients of the product generating function.
    GeneratingFunction,
}

/// Classical Jacobi polynomial by its three-term recurrence.
pub fn jacobi_classical(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let (a, b) = (alpha, beta);
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn rising(a: f64, n: usize) -> f64 {
    (0..n).map(|j| a + j as f64).product()
}

/// Errors shrinking across the refinement steps (or already at round-off)
/// and the last one within `tol`.
pub(crate) fn refinement(id: &str, steps: &[(f64, Scalar, Scalar)], tol: f64) -> CheckResult {
    let errs: Vec<f64> = steps.iter().map(|&(_, l, r)| crate::check::rel_err(l, r)).collect();
    let monotone = errs.windows(2).all(|w| w[1] < w[0] || w[1] <= 1e-13);
    let &(_, lhs, rhs) = steps.last().expect("at least one step");
    let trail: Vec<String> = steps.iter().zip(&errs).map(|((s, _, _), e)| format!("{s:e}:{e:.3e}")).collect();
    let mut r = CheckResult::compare(id, lhs, rhs, tol).with_note(&format!("refinement errors {}", trail.join(", ")));
    if !monotone {
        r.status = Status::Fail;
        r = r.with_note("error did not decrease under refinement");
    }
    r
}

/// Little q-Jacobi limit to the third q-Bessel function, with the power of
/// `q` in front of `J` given by `exponent(nu, n + k)`.
fn qbessel_sides(
    nu: f64,
    b: f64,
    q: f64,
    n: usize,
    k: i64,
    big_n: usize,
    exponent: fn(f64, f64) -> f64,
) -> Result<(Scalar, Scalar)> {
    let qb = QBase::from(q);
    let x = q.powi((big_n as i64 + k) as i32);
    let lhs = little_q_jacobi(big_n - n, re(x), re(q.powf(nu)), re(b), qb)?;
    let s = (n as i64 + k) as f64;
    let pre = qpoch_inf(re(q), qb)? / qpoch_inf(re(q.powf(nu + 1.0)), qb)? * q.powf(exponent(nu, s));
    let rhs = pre * q_bessel(3, nu, 2.0 * q.powf(0.5 * s), qb)?;
    Ok((lhs, rhs))
}

fn half_exponent(nu: f64, s: f64) -> f64 {
    -0.5 * nu * s
}

fn printed_exponent(nu: f64, s: f64) -> f64 {
    -nu * s
}

const QBESSEL_POINT: (f64, f64, f64, usize, i64) = (0.5, 0.4, 0.3, 1, 0);

/// The printed factor `q^{-nu(n+k)}` against `q^{-nu(n+k)/2}`: passes when
/// the printed one fails and the halved one converges, reporting it as an
/// expected failure.
pub fn qbessel_limit_audit() -> Result<CheckResult> {
    let (nu, b, q, n, k) = QBESSEL_POINT;
    let (l1, r1) = qbessel_sides(nu, b, q, n, k, 40, printed_exponent)?;
    let (l2, r2) = qbessel_sides(nu, b, q, n, k, 40, half_exponent)?;
    let printed = CheckResult::compare("x", l1, r1, 1e-3);
    let halved = CheckResult::compare("x", l2, r2, 1e-3);
    let mut r = CheckResult::compare("AUDIT-QBESSEL-LIMIT-FACTOR", l1, r1, 1e-3)
        .with_label("power of q in the little q-Jacobi to q-Bessel limit")
        .with_param("nu", nu)
        .with_param("b", b)
        .with_param("q", q)
        .with_param("N", 40usize);
    let ok = !printed.passed() && halved.passed();
    r.status = if ok { Status::Pass } else { Status::Fail };
    Ok(r.with_note(&format!(
        "expected-failure: printed q^(-nu(n+k)) rel err {:.3e}; q^(-nu(n+k)/2) rel err {:.3e}",
        printed.rel_err, halved.rel_err
    )))
}

const ULTRA_AW_POINT: (usize, f64, f64, f64) = (3, 0.4, 0.5, 1.0);

/// `C_n` directly, and through the Askey-Wilson polynomial with the factor
/// `(beta;q)_n / ((q;q)_n (beta^2 q^n;q)_n)` and with `(beta;q)_n/(q;q)_n`.
fn ultra_aw_sides() -> Result<(Scalar, Scalar, Scalar)> {
    let (n, beta, q, theta) = ULTRA_AW_POINT;
    let q = QBase::from(q);
    let b = re(beta);
    let s = b.sqrt();
    let qs = q.0.sqrt() * s;
    let p = AWParams::new(s, qs, -s, -qs, q)?;
    let z = Scalar::from_polar(1.0, theta);
    let nn = Order::Fin(n as i64);
    let short = qpoch(b, q, nn)? / qpoch(q.0, q, nn)? * aw_eval_z(n, z, &p)?;
    let full = short / qpoch(b * b * q.powi(n as i64), q, nn)?;
    Ok((ultraspherical_z(n, z, b, q)?, full, short))
}

/// The factor `(beta;q)_n/(q;q)_n` alone, against the one carrying the
/// leading-coefficient correction `1/(beta^2 q^n;q)_n`.
pub fn ultra_aw_factor_audit() -> Result<CheckResult> {
    let (c, full, short) = ultra_aw_sides()?;
    let printed = CheckResult::compare("x", c, short, 1e-12);
    let corrected = CheckResult::compare("x", c, full, 1e-12);
    let mut r = CheckResult::compare("AUDIT-ULTRA-AW-FACTOR", c, short, 1e-12)
        .with_label("prefactor of the ultraspherical polynomial as an Askey-Wilson polynomial")
        .with_param("n", ULTRA_AW_POINT.0)
        .with_param("beta", ULTRA_AW_POINT.1)
        .with_param("q", ULTRA_AW_POINT.2)
        .with_param("theta", ULTRA_AW_POINT.3);
    r.status = if !printed.passed() && corrected.passed() { Status::Pass } else { Status::Fail };
    Ok(r.with_note(&format!(
        "expected-failure: (beta;q)_n/(q;q)_n rel err {:.3e}; with 1/(beta^2 q^n;q)_n rel err {:.3e}",
        printed.rel_err, corrected.rel_err
    )))
}

const CHEBYSHEV_POINT: (usize, f64) = (3, 0.7);

/// `(q;q)_n/(beta;q)_n C_n(cos theta; beta|q)` at `beta = 1 - eps`, `q = 1/2`.
fn chebyshev_normalised(eps: f64) -> Result<Scalar> {
    let (n, theta) = CHEBYSHEV_POINT;
    let q = QBase::from(0.5);
    let z = Scalar::from_polar(1.0, theta);
    let nn = Order::Fin(n as i64);
    let beta = re(1.0 - eps);
    Ok(qpoch(q.0, q, nn)? / qpoch(beta, q, nn)? * ultraspherical_z(n, z, beta, q)?)
}

/// `T_n = cos(n theta)` as the limit, against `2 T_n`: the two terms
/// `k = 0` and `k = n` of the Fourier sum each tend to `e^{\pm i n theta}`.
pub fn chebyshev_limit_audit() -> Result<CheckResult> {
    let (n, theta) = CHEBYSHEV_POINT;
    let v = chebyshev_normalised(1e-4)?;
    let t = re((n as f64 * theta).cos());
    let printed = CheckResult::compare("x", v, t, 1e-3);
    let doubled = CheckResult::compare("x", v, t * 2.0, 1e-3);
    let mut r = CheckResult::compare("AUDIT-CHEBYSHEV-LIMIT", v, t, 1e-3)
        .with_label("normalisation of the ultraspherical to Chebyshev limit")
        .with_param("n", n)
        .with_param("theta", theta)
        .with_param("beta", 1.0 - 1e-4);
    r.status = if !printed.passed() && doubled.passed() { Status::Pass } else { Status::Fail };
    Ok(r.with_note(&format!(
        "expected-failure: limit cos(n theta) rel err {:.3e}; 2 cos(n theta) rel err {:.3e}",
        printed.rel_err, doubled.rel_err
    )))
}

/// `sum_n C_n z^n` against the product, coefficient by coefficient up to
/// `z^deg`.
pub fn generating_function_check(beta: f64, theta: f64, q: QBase, deg: usize) -> Result<Vec<CheckResult>> {
    let e = Scalar::from_polar(1.0, theta);
    let b = re(beta);
    // (c z;q)_inf and 1/(c z;q)_inf as power series in z
    let series = |c: Scalar, inverse: bool| -> Result<Vec<Scalar>> {
        (0..=deg)
            .map(|k| {
                let kk = Order::Fin(k as i64);
                let base = c.powi(k as i32) / qpoch(q.0, q, kk)?;
                Ok(if inverse { base } else { base * q.powi((k * k.saturating_sub(1) / 2) as i64) * (-1.0f64).powi(k as i32) })
            })
            .collect()
    };
    let mul = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut w = vec![re(0.0); deg + 1];
        for i in 0..=deg {
            for j in 0..=(deg - i) {
                w[i + j] += u[i] * v[j];
            }
        }
        w
    };
    let prod = mul(
        &mul(&series(b * e, false)?, &series(b / e, false)?),
        &mul(&series(e, true)?, &series(e.inv(), true)?),
    );
    let mut out = Vec::new();
    for (n, &coef) in prod.iter().enumerate() {
        let cn = ultraspherical_z(n, e, b, q)?;
        out.push(
            CheckResult::compare("ORTHO-ULTRA-GENFUN", coef, cn, 1e-10)
                .with_label("ultraspherical generating function coefficient")
                .with_param("n", n)
                .with_param("beta", beta)
                .with_param("theta", theta)
                .with_param("q", q.0),
        );
    }
    Ok(out)
}

/// Runs one limit case at its fixed evaluation point.
pub fn limit_checks(which: LimitCase) -> Result<CheckResult> {
    match which {
        LimitCase::Chebyshev => {
            let (n, theta) = CHEBYSHEV_POINT;
            let mut steps = Vec::new();
            for eps in [1e-2, 1e-3, 1e-4] {
                steps.push((eps, chebyshev_normalised(eps)?, re(2.0 * (n as f64 * theta).cos())));
            }
            Ok(refinement("ORTHO-LIMIT-CHEBYSHEV", &steps, 1e-3)
                .with_label("ultraspherical to 2 T_n as beta -> 1")
                .with_param("n", n)
                .with_param("theta", theta)
                .with_param("q", 0.5))
        }
        LimitCase::Jacobi => {
            let (n, al, be, d, x) = (3usize, 0.3, 0.7, 0.5, 0.2);
            let exact = (1..=n).map(|j| j as f64).product::<f64>() / rising(al + 1.0, n)
                * jacobi_classical(n, al, be, (2.0 * x + d - 1.0) / (d + 1.0));
            let mut steps = Vec::new();
            for eps in [1e-1, 1e-2, 1e-3] {
                let q = 1.0 - eps;
                let qb = QBase::from(q);
                let v = big_q_jacobi(n, re(x), re(q.powf(al)), re(q.powf(be)), re(-d / q), qb)?;
                steps.push((eps, v, re(exact)));
            }
            Ok(refinement("ORTHO-LIMIT-JACOBI", &steps, 1e-2)
                .with_label("big q-Jacobi to Jacobi as q -> 1")
                .with_param("n", n)
                .with_param("alpha", al)
                .with_param("beta", be)
                .with_param("d", d)
                .with_param("x", x))
        }
        LimitCase::QBessel => {
            let (nu, b, q, n, k) = QBESSEL_POINT;
            let mut steps = Vec::new();
            for big_n in [10usize, 20, 40] {
                let (l, r) = qbessel_sides(nu, b, q, n, k, big_n, half_exponent)?;
                steps.push((big_n as f64, l, r));
            }
            Ok(refinement("ORTHO-LIMIT-QBESSEL", &steps, 1e-3)
                .with_label("little q-Jacobi to third q-Bessel, factor q^(-nu(n+k)/2)")
                .with_param("nu", nu)
                .with_param("b", b)
                .with_param("q", q)
                .with_param("n", n)
                .with_param("k", k))
        }
        LimitCase::UltrasphericalFromAW => {
            let (lhs, rhs, _) = ultra_aw_sides()?;
            Ok(CheckResult::compare("ORTHO-ULTRA-AW", lhs, rhs, 1e-12)
                .with_label("ultraspherical as Askey-Wilson specialisation, factor (beta;q)_n/((q;q)_n (beta^2 q^n;q)_n)")
                .with_param("n", ULTRA_AW_POINT.0)
                .with_param("beta", ULTRA_AW_POINT.1)
                .with_param("q", ULTRA_AW_POINT.2)
                .with_param("theta", ULTRA_AW_POINT.3))
        }
        LimitCase::GeneratingFunction => {
            let all = generating_function_check(0.35, 0.9, QBase::from(0.5), 12)?;
            let worst = all
                .iter()
                .max_by(|a, b| a.rel_err.partial_cmp(&b.rel_err).unwrap())
                .cloned()
                .expect("nonempty");
            let bad = all.iter().filter(|r| !r.passed()).count();
            Ok(worst.with_note(&format!("worst of 13 coefficients, {bad} failing")))
        }
    }
}
