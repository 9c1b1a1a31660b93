//! Modified theta functions, elliptic shifted factorials, terminating theta
//! hypergeometric series and the elliptic gamma function.
//!
//! Only terminating series are evaluated. With `p = 0` every object reduces
//! to its basic hypergeometric counterpart, which the checks exploit.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::check::{CheckResult, Status};
use crate::error::{domain, pole, QError, Result};
use crate::qcore::{qpoch, qpoch_inf, re, Kahan, Order, QBase, Scalar};
use crate::qseries::eval_vwp;

#[cfg(test)]
mod tests;

/// Tolerance of the Jackson and Bailey checks.
pub const ELLIPTIC_TOL: f64 = 1e-9;
/// Tolerance of the `p = 0` degenerations.
pub const DEGENERATION_TOL: f64 = 1e-11;
/// Tolerance of the elliptic gamma relations.
pub const GAMMA_TOL: f64 = 1e-12;
/// Tolerance of the term-ratio periodicity.
pub const PERIOD_TOL: f64 = 1e-9;
/// Distance to a lattice pole treated as a pole.
pub const POLE_DIST: f64 = 1e-10;

/// The pair `(q, p)` with `|q|, |p| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticBase {
    pub q: Scalar,
    pub p: Scalar,
}

impl EllipticBase {
    pub fn new(q: Scalar, p: Scalar) -> Result<Self> {
        if q.norm() >= 1.0 || p.norm() >= 1.0 {
            return domain("elliptic base needs |q|, |p| < 1");
        }
        if q == re(0.0) {
            return domain("elliptic base needs q != 0");
        }
        Ok(EllipticBase { q, p })
    }

    /// `q = e^{2 pi i sigma}`, `p = e^{2 pi i tau}`.
    pub fn from_periods(sigma: Scalar, tau: Scalar) -> Result<Self> {
        Self::new(expi(sigma), expi(tau))
    }

    pub fn swapped(self) -> Result<Self> {
        Self::new(self.p, self.q)
    }
}

fn expi(x: Scalar) -> Scalar {
    (Scalar::new(0.0, 2.0 * core::f64::consts::PI) * x).exp()
}

/// `theta(x; p) = (x, p/x; p)_inf`.
pub fn theta_mod(x: Scalar, p: Scalar) -> Result<Scalar> {
    if x == re(0.0) {
        return domain("theta function needs x != 0");
    }
    let pb = QBase::new(p);
    pb.require_inner()?;
    Ok(qpoch_inf(x, pb)? * qpoch_inf(p / x, pb)?)
}

/// `(a; q, p)_k = theta(a) theta(aq) ... theta(a q^{k-1})`.
pub fn eshift(a: Scalar, base: &EllipticBase, k: usize) -> Result<Scalar> {
    if a == re(0.0) {
        return domain("elliptic shifted factorial needs a != 0");
    }
    let mut v = re(1.0);
    let mut x = a;
    for _ in 0..k {
        v *= theta_mod(x, base.p)?;
        x *= base.q;
    }
    Ok(v)
}

pub fn eshift_multi(a: &[Scalar], base: &EllipticBase, k: usize) -> Result<Scalar> {
    let mut v = re(1.0);
    for &x in a {
        v *= eshift(x, base, k)?;
    }
    Ok(v)
}

fn denominator(x: Scalar, base: &EllipticBase, what: &str) -> Result<Scalar> {
    let t = theta_mod(x, base.p)?;
    if t.norm() < 1e-300 || t.norm() < 1e-14 * theta_scale(x, base.p) {
        return pole(format!("theta in the denominator of {what} vanishes"));
    }
    Ok(t)
}

/// Size of the two product factors, used to judge a vanishing theta.
fn theta_scale(x: Scalar, p: Scalar) -> f64 {
    (1.0 + x.norm()) * (1.0 + (p / x).norm())
}

/// Terminating `r E r-1(a_1, ..., a_{r-1}, q^{-n}; b_1, ..., b_{r-1}; q, p; z)`;
/// the numerator `q^{-n}` is implicit.
pub fn eval_e(upper: &[Scalar], lower: &[Scalar], base: &EllipticBase, z: Scalar, terminate: Option<usize>) -> Result<Scalar> {
    let Some(n) = terminate else {
        return domain("theta hypergeometric series are evaluated only when terminating");
    };
    let qn = base.q.powi(-(n as i32));
    let mut s = Kahan::default();
    let mut term = re(1.0);
    let mut qk = re(1.0);
    s.add(term);
    for _ in 0..n {
        let mut num = theta_mod(qn * qk, base.p)? * z;
        for &a in upper {
            num *= theta_mod(a * qk, base.p)?;
        }
        let mut den = denominator(base.q * qk, base, "E")?;
        for &b in lower {
            den *= denominator(b * qk, base, "E")?;
        }
        term *= num / den;
        s.add(term);
        qk *= base.q;
    }
    Ok(s.value())
}

/// Terminating `r V r-1(a1; a6, ..., a_{r-1}, q^{-n}; q, p)` with argument 1;
/// `rest` lists `a6, ..., a_{r-1}`.
pub fn eval_v(a1: Scalar, rest: &[Scalar], base: &EllipticBase, terminate: Option<usize>) -> Result<Scalar> {
    let Some(n) = terminate else {
        return domain("very-well-poised theta series are evaluated only when terminating");
    };
    let mut s = Kahan::default();
    for t in v_terms(a1, rest, base, n)? {
        s.add(t);
    }
    Ok(s.value())
}

/// The `n + 1` terms summed by [`eval_v`].
pub fn v_terms(a1: Scalar, rest: &[Scalar], base: &EllipticBase, n: usize) -> Result<Vec<Scalar>> {
    let q = base.q;
    let mut params: Vec<Scalar> = rest.to_vec();
    params.push(q.powi(-(n as i32)));
    let t1 = denominator(a1, base, "V")?;
    let mut out = Vec::with_capacity(n + 1);
    let mut ratio = re(1.0);
    let mut qk = re(1.0);
    for k in 0..=n {
        let wp = theta_mod(a1 * qk * qk, base.p)? / t1;
        out.push(wp * ratio);
        if k == n {
            break;
        }
        let mut num = theta_mod(a1 * qk, base.p)? * q;
        let mut den = denominator(q * qk, base, "V")?;
        for &a in &params {
            num *= theta_mod(a * qk, base.p)?;
            den *= denominator(q * a1 / a * qk, base, "V")?;
        }
        ratio *= num / den;
        qk *= q;
    }
    Ok(out)
}

fn near(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
}

/// `a_1 ... a_r = q b_1 ... b_{r-1}`, with every numerator listed.
pub fn elliptic_balanced(upper: &[Scalar], lower: &[Scalar], q: Scalar, tol: f64) -> bool {
    let a: Scalar = upper.iter().product();
    let b: Scalar = lower.iter().product();
    near(a, q * b, tol)
}

/// Balancing of `r V r-1` with `a6, ..., ar` listed in `params`:
/// `a6^2 ... ar^2 = a1^{r-6} q^{r-8}`, the form under which the term ratio is
/// elliptic.
pub fn vwp_balanced(a1: Scalar, params: &[Scalar], q: Scalar, tol: f64) -> bool {
    let r = params.len() as i32 + 5;
    let lhs: Scalar = params.iter().map(|a| a * a).product();
    near(lhs, a1.powi(r - 6) * q.powi(r - 8), tol)
}

/// The variant `a6^2 ... ar^2 = a1^{r-6} q^{r-4}`.
pub fn vwp_balanced_alt(a1: Scalar, params: &[Scalar], q: Scalar, tol: f64) -> bool {
    let r = params.len() as i32 + 5;
    let lhs: Scalar = params.iter().map(|a| a * a).product();
    near(lhs, a1.powi(r - 6) * q.powi(r - 4), tol)
}

/// `g(x) = c_{x+1}/c_x` of `r E r-1` with `q^x = e^{2 pi i sigma x}`; every
/// numerator is listed in `upper`.
pub fn e_term_ratio(upper: &[Scalar], lower: &[Scalar], sigma: Scalar, p: Scalar, z: Scalar, x: Scalar) -> Result<Scalar> {
    let qx = expi(sigma * x);
    let q = expi(sigma);
    let mut num = z;
    for &a in upper {
        num *= theta_mod(a * qx, p)?;
    }
    let mut den = theta_mod(q * qx, p)?;
    for &b in lower {
        den *= theta_mod(b * qx, p)?;
    }
    Ok(num / den)
}

/// Term ratio of `r V r-1(a1; params)` as a function of a complex index.
pub fn v_term_ratio(a1: Scalar, params: &[Scalar], sigma: Scalar, p: Scalar, x: Scalar) -> Result<Scalar> {
    let qx = expi(sigma * x);
    let q = expi(sigma);
    let mut g = theta_mod(a1 * qx * qx * q * q, p)? / theta_mod(a1 * qx * qx, p)? * q;
    g *= theta_mod(a1 * qx, p)? / theta_mod(q * qx, p)?;
    for &a in params {
        g *= theta_mod(a * qx, p)? / theta_mod(q * a1 / a * qx, p)?;
    }
    Ok(g)
}

const TRANSLATES: [(f64, f64); 5] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -1.0), (-1.0, 2.0)];

/// Worst relative change of `g` over five translates `x + m/sigma + l tau/sigma`.
fn periodicity<F>(g: F, sigma: Scalar, tau: Scalar, x: Scalar) -> Result<(Scalar, Scalar, f64)>
where
    F: Fn(Scalar) -> Result<Scalar>,
{
    let g0 = g(x)?;
    let mut worst = (g0, g0, 0.0);
    for (m, l) in TRANSLATES {
        let y = x + (re(m) + tau * l) / sigma;
        let gy = g(y)?;
        let e = (gy - g0).norm() / g0.norm().max(gy.norm()).max(1e-300);
        if e >= worst.2 {
            worst = (gy, g0, e);
        }
    }
    Ok(worst)
}

/// The term ratio of a balanced `r E r-1` is unchanged by both periods.
pub fn e_periodicity_check(upper: &[Scalar], lower: &[Scalar], sigma: Scalar, tau: Scalar, z: Scalar, x: Scalar) -> Result<CheckResult> {
    let p = expi(tau);
    let (a, b, _) = periodicity(|y| e_term_ratio(upper, lower, sigma, p, z, y), sigma, tau, x)?;
    let balanced = elliptic_balanced(upper, lower, expi(sigma), 1e-12);
    Ok(CheckResult::compare("ELLIPTIC-E-PERIODIC", a, b, PERIOD_TOL)
        .with_label("term ratio invariant under x -> x + 1/sigma and x -> x + tau/sigma")
        .with_param("sigma", sigma)
        .with_param("tau", tau)
        .with_param("x", x)
        .with_note(if balanced { "balanced" } else { "not balanced" }))
}

/// Which balancing of the very-well-poised series makes its term ratio
/// elliptic: `q^{r-8}` against `q^{r-4}`, at `r = 10`.
pub fn vwp_balance_audit(a1: Scalar, b: Scalar, c: Scalar, d: Scalar, n: usize, sigma: Scalar, tau: Scalar) -> Result<CheckResult> {
    let q = expi(sigma);
    let p = expi(tau);
    let qn = q.powi(-(n as i32));
    let e_derived = a1 * a1 * q / (b * c * d * qn);
    let e_alt = a1 * a1 * q.powi(3) / (b * c * d * qn);
    let derived = [b, c, d, e_derived, qn];
    let alt = [b, c, d, e_alt, qn];
    debug_assert!(vwp_balanced(a1, &derived, q, 1e-10) && vwp_balanced_alt(a1, &alt, q, 1e-10));
    let x = Scalar::new(0.31, 0.07);
    let (ga, gb, ed) = periodicity(|y| v_term_ratio(a1, &derived, sigma, p, y), sigma, tau, x)?;
    let (_, _, ea) = periodicity(|y| v_term_ratio(a1, &alt, sigma, p, y), sigma, tau, x)?;
    let mut r = CheckResult::compare("AUDIT-ELLIPTIC-VWP-BALANCE", ga, gb, PERIOD_TOL)
        .with_label("very-well-poised balancing: a6^2...ar^2 = a1^{r-6} q^{r-4} against q^{r-8}")
        .with_param("a", a1)
        .with_param("sigma", sigma)
        .with_param("tau", tau)
        .with_param("n", n);
    let expected = ea > PERIOD_TOL && ed <= PERIOD_TOL;
    r.status = if expected { Status::Pass } else { Status::Fail };
    r.note = format!(
        "{}: q^{{r-4}} balancing term ratio period error {ea:.3e}; q^{{r-8}} balancing {ed:.3e}",
        if expected { "expected-failure" } else { "unexpected" }
    );
    Ok(r)
}

/// Both ratios of theta quasi-periodicity: `1` and `-a^{-1} q^{-x}`.
pub fn theta_quasi_periodicity(a: Scalar, sigma: Scalar, tau: Scalar, x: Scalar) -> Result<Vec<CheckResult>> {
    let p = expi(tau);
    let t0 = theta_mod(a * expi(sigma * x), p)?;
    let r1 = theta_mod(a * expi(sigma * (x + re(1.0) / sigma)), p)? / t0;
    let r2 = theta_mod(a * expi(sigma * (x + tau / sigma)), p)? / t0;
    let want2 = -(a * expi(sigma * x)).inv();
    let tag = |r: CheckResult| {
        r.with_param("a", a).with_param("sigma", sigma).with_param("tau", tau).with_param("x", x)
    };
    Ok(alloc::vec![
        tag(CheckResult::compare("ELLIPTIC-THETA-QUASI", r1, re(1.0), GAMMA_TOL).with_label("theta ratio under x -> x + 1/sigma")),
        tag(CheckResult::compare("ELLIPTIC-THETA-QUASI", r2, want2, GAMMA_TOL).with_label("theta ratio under x -> x + tau/sigma")),
    ])
}

/// `theta(x; p) = theta(p/x; p)`.
pub fn theta_inversion_check(x: Scalar, p: Scalar) -> Result<CheckResult> {
    Ok(CheckResult::compare("ELLIPTIC-THETA-INVERSION", theta_mod(x, p)?, theta_mod(p / x, p)?, GAMMA_TOL)
        .with_label("theta(x;p) = theta(p/x;p)")
        .with_param("x", x)
        .with_param("p", p))
}

/// Jackson-type summation for `10 V 9`; the fifth parameter is built as
/// `q^{n+1} a^2/(bcd)`.
pub fn jackson_sides(a: Scalar, b: Scalar, c: Scalar, d: Scalar, n: usize, base: &EllipticBase) -> Result<(Scalar, Scalar)> {
    let q = base.q;
    let e = q.powi(n as i32 + 1) * a * a / (b * c * d);
    let lhs = eval_v(a, &[b, c, d, e], base, Some(n))?;
    let num = eshift_multi(&[q * a, q * a / (b * c), q * a / (b * d), q * a / (c * d)], base, n)?;
    let den = eshift_multi(&[q * a / b, q * a / c, q * a / d, q * a / (b * c * d)], base, n)?;
    if den.norm() < 1e-300 {
        return pole("Jackson product denominator vanishes");
    }
    Ok((lhs, num / den))
}

fn tag_params(r: CheckResult, names: &[&str], vals: &[Scalar], base: &EllipticBase, n: usize) -> CheckResult {
    let mut r = r;
    for (k, v) in names.iter().zip(vals) {
        r = r.with_param(k, *v);
    }
    r.with_param("q", base.q).with_param("p", base.p).with_param("n", n)
}

pub fn jackson_check(a: Scalar, b: Scalar, c: Scalar, d: Scalar, n: usize, base: &EllipticBase) -> Result<CheckResult> {
    let (l, r) = jackson_sides(a, b, c, d, n, base)?;
    Ok(tag_params(
        CheckResult::compare("ELLIPTIC-JACKSON", l, r, ELLIPTIC_TOL).with_label("10V9 summation"),
        &["a", "b", "c", "d"],
        &[a, b, c, d],
        base,
        n,
    ))
}

/// Bailey-type transformation between two `12 V 11` series; the seventh
/// parameter is built as `q^{n+2} a^3/(bcdef)`.
pub fn bailey_sides(p6: [Scalar; 6], n: usize, base: &EllipticBase) -> Result<(Scalar, Scalar)> {
    let [a, b, c, d, e, f] = p6;
    let q = base.q;
    let g = q.powi(n as i32 + 2) * a * a * a / (b * c * d * e * f);
    let lhs = eval_v(a, &[b, c, d, e, f, g], base, Some(n))?;
    let qa = q * a;
    let num = eshift_multi(&[qa, qa / (e * f), qa * qa / (b * c * d * e), qa * qa / (b * c * d * f)], base, n)?;
    let den = eshift_multi(&[qa / e, qa / f, qa * qa / (b * c * d * e * f), qa * qa / (b * c * d)], base, n)?;
    if den.norm() < 1e-300 {
        return pole("Bailey prefactor denominator vanishes");
    }
    let a2 = q * a * a / (b * c * d);
    let rhs = eval_v(a2, &[qa / (c * d), qa / (b * d), qa / (b * c), e, f, g], base, Some(n))?;
    Ok((lhs, num / den * rhs))
}

pub fn bailey_check(p6: [Scalar; 6], n: usize, base: &EllipticBase) -> Result<CheckResult> {
    let (l, r) = bailey_sides(p6, n, base)?;
    Ok(tag_params(
        CheckResult::compare("ELLIPTIC-BAILEY", l, r, ELLIPTIC_TOL).with_label("12V11 transformation"),
        &["a", "b", "c", "d", "e", "f"],
        &p6,
        base,
        n,
    ))
}

/// At `p = 0`: shifted factorials, the `V` series, and both identities
/// against their basic hypergeometric forms.
pub fn degeneration_checks(p6: [Scalar; 6], n: usize, q: Scalar) -> Result<Vec<CheckResult>> {
    let base = EllipticBase::new(q, re(0.0))?;
    let qb = QBase::new(q);
    let [a, b, c, d, e, f] = p6;
    let mut out = Vec::new();
    let tag = |r: CheckResult| tag_params(r, &["a", "b", "c", "d", "e", "f"], &p6, &base, n);
    out.push(tag(CheckResult::compare(
        "ELLIPTIC-P0-ESHIFT",
        eshift(b, &base, n)?,
        qpoch(b, qb, Order::Fin(n as i64))?,
        DEGENERATION_TOL,
    )
    .with_label("(b;q,0)_n = (b;q)_n")));
    let rest = [b, c, d, e];
    out.push(tag(CheckResult::compare(
        "ELLIPTIC-P0-V",
        eval_v(a, &rest, &base, Some(n))?,
        eval_vwp(a, &rest, qb, q, Some(n))?,
        DEGENERATION_TOL,
    )
    .with_label("10V9 at p = 0 equals 8W7 with argument q")));
    let (jl, _) = jackson_sides(a, b, c, d, n, &base)?;
    let ee = q.powi(n as i32 + 1) * a * a / (b * c * d);
    let wl = eval_vwp(a, &[b, c, d, ee], qb, q, Some(n))?;
    let no = Order::Fin(n as i64);
    let prod = |xs: &[Scalar]| -> Result<Scalar> {
        let mut v = re(1.0);
        for &x in xs {
            v *= qpoch(x, qb, no)?;
        }
        Ok(v)
    };
    let qa = q * a;
    let wr = prod(&[qa, qa / (b * c), qa / (b * d), qa / (c * d)])? / prod(&[qa / b, qa / c, qa / d, qa / (b * c * d)])?;
    out.push(tag(CheckResult::compare("ELLIPTIC-P0-JACKSON", jl, wr, DEGENERATION_TOL)
        .with_label("elliptic Jackson sum at p = 0 against the 8W7 product")));
    out.push(tag(CheckResult::compare("ELLIPTIC-P0-JACKSON", wl, wr, DEGENERATION_TOL)
        .with_label("8W7 series against its product")));
    let (bl, br) = bailey_sides(p6, n, &base)?;
    let g = q.powi(n as i32 + 2) * a * a * a / (b * c * d * e * f);
    let w1 = eval_vwp(a, &[b, c, d, e, f, g], qb, q, Some(n))?;
    let a2 = qa * a / (b * c * d);
    let w2 = eval_vwp(a2, &[qa / (c * d), qa / (b * d), qa / (b * c), e, f, g], qb, q, Some(n))?;
    let pre = prod(&[qa, qa / (e * f), qa * qa / (b * c * d * e), qa * qa / (b * c * d * f)])?
        / prod(&[qa / e, qa / f, qa * qa / (b * c * d * e * f), qa * qa / (b * c * d)])?;
    out.push(tag(CheckResult::compare("ELLIPTIC-P0-BAILEY", bl, w1, DEGENERATION_TOL)
        .with_label("12V11 at p = 0 equals 10W9")));
    out.push(tag(CheckResult::compare("ELLIPTIC-P0-BAILEY", br, pre * w2, DEGENERATION_TOL)
        .with_label("transformed side at p = 0 equals the 10W9 transform")));
    Ok(out)
}

/// `Gamma(z; q, p) = prod_{j,k >= 0} (1 - q^{j+1} p^{k+1}/z) / (1 - z q^j p^k)`.
pub fn elliptic_gamma(z: Scalar, base: &EllipticBase) -> Result<Scalar> {
    if z == re(0.0) {
        return domain("elliptic gamma needs z != 0");
    }
    let (q, p) = (base.q, base.p);
    let mut v = re(1.0);
    let mut pk = re(1.0);
    let mut quiet_rows = 0;
    for k in 0..100_000usize {
        let mut row = re(1.0);
        let mut qj = re(1.0);
        let mut quiet = 0;
        loop {
            let den_arg = z * qj * pk;
            if (re(1.0) - den_arg).norm() < POLE_DIST {
                return pole("elliptic gamma at a lattice pole");
            }
            let num_arg = qj * q * pk * p / z;
            let f = (re(1.0) - num_arg) / (re(1.0) - den_arg);
            row *= f;
            quiet = if (f - re(1.0)).norm() < 1e-17 { quiet + 1 } else { 0 };
            if quiet >= 4 {
                break;
            }
            qj *= q;
            if qj == re(0.0) {
                break;
            }
        }
        v *= row;
        quiet_rows = if (row - re(1.0)).norm() < 1e-17 { quiet_rows + 1 } else { 0 };
        if quiet_rows >= 2 {
            return Ok(v);
        }
        pk *= p;
        if pk == re(0.0) && k > 0 {
            return Ok(v);
        }
    }
    Err(QError::Convergence { terms: 100_000 })
}

/// The shift relations for one and `n` steps, and `p <-> q` symmetry.
pub fn gamma_checks(z: Scalar, base: &EllipticBase, n: usize) -> Result<Vec<CheckResult>> {
    let g = elliptic_gamma(z, base)?;
    let tag = |r: CheckResult| r.with_param("z", z).with_param("q", base.q).with_param("p", base.p);
    let shift = elliptic_gamma(base.q * z, base)? / g;
    let shift_n = elliptic_gamma(base.q.powi(n as i32) * z, base)? / g;
    Ok(alloc::vec![
        tag(CheckResult::compare("ELLIPTIC-GAMMA-SHIFT", shift, theta_mod(z, base.p)?, GAMMA_TOL)
            .with_label("Gamma(qz)/Gamma(z) = theta(z;p)")),
        tag(CheckResult::compare("ELLIPTIC-GAMMA-SHIFT", shift_n, eshift(z, base, n)?, GAMMA_TOL)
            .with_label("Gamma(q^n z)/Gamma(z) = (z;q,p)_n")
            .with_param("n", n)),
        tag(CheckResult::compare("ELLIPTIC-GAMMA-SYM", g, elliptic_gamma(z, &base.swapped()?)?, GAMMA_TOL)
            .with_label("Gamma(z;q,p) = Gamma(z;p,q)")),
    ])
}
