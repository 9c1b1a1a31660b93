//! Orthogonality measures: quadrature, q-integrals, discrete sums and
//! weights derived by a linear solve.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use super::families::{big_q_jacobi, little_q_jacobi, q_hahn, q_racah_u, rahman_wilson_z, stieltjes_wigert, ultraspherical_z};
use super::{aw_eval_z, circle_points, AWParams};
use crate::check::CheckResult;
use crate::error::{domain, QError, Result};
use crate::qcore::{qintegral, qpoch, qpoch_inf, qpoch_multi, re, Bounds, Kahan, Order, QBase, Scalar};
use crate::qseries::q_bessel3_lattice;

/// Where the weights of a discrete measure come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSource {
    Printed,
    DerivedBySolve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    pub nodes: Vec<Scalar>,
    pub weights: Vec<Scalar>,
    pub source: WeightSource,
}

/// Largest condition number accepted by [`derive_weights`].
pub const MAX_CONDITION: f64 = 1e12;

/// Weights `w_k` with `w_0 = 1` and `sum_k rows[n][k] dual0[k] w_k = 0`
/// for `n = 1..=N`, where `N + 1` is the number of nodes.
pub fn derive_weights(rows: &[Vec<Scalar>], dual0: &[Scalar]) -> Result<Vec<Scalar>> {
    let k = dual0.len();
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return domain("need one row per node for the weight system");
    }
    let mut a = DMatrix::<Scalar>::zeros(k, k);
    let mut rhs = DMatrix::<Scalar>::zeros(k, 1);
    a[(0, 0)] = re(1.0);
    rhs[(0, 0)] = re(1.0);
    for n in 1..k {
        let row: Vec<Scalar> = (0..k).map(|j| rows[n][j] * dual0[j]).collect();
        let scale = row.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(QError::Solve(format!("row {n} of the weight system vanishes")));
        }
        for j in 0..k {
            a[(n, j)] = row[j] / scale;
        }
    }
    let sv = a.clone().svd(false, false).singular_values;
    let (hi, lo) = sv.iter().fold((0.0f64, f64::INFINITY), |(h, l), &s| (h.max(s), l.min(s)));
    if lo == 0.0 || hi / lo > MAX_CONDITION {
        return Err(QError::Solve(format!("weight system condition {:.3e} exceeds 1e12", hi / lo)));
    }
    let sol = a.lu().solve(&rhs).ok_or_else(|| QError::Solve("singular weight system".into()))?;
    Ok(sol.iter().copied().collect())
}

fn gram_entry(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Scalar {
    let mut s = Kahan::default();
    for j in 0..w.len() {
        s.add(u[j] * v[j] * w[j]);
    }
    s.value()
}

fn off_diag(id: &str, g: Scalar, gnn: Scalar, gmm: Scalar, tol: f64) -> CheckResult {
    CheckResult::residual(id, g, (gnn * gmm).norm().sqrt(), tol)
}

fn nm(r: CheckResult, n: usize, m: usize) -> CheckResult {
    r.with_param("n", n).with_param("m", m)
}

/// Positive real within round-off.
fn positive(g: Scalar) -> bool {
    g.re > 0.0 && g.im.abs() <= 1e-10 * g.re
}

/// q-Hahn orthogonality with the printed weight on the nodes `q^{-y}`;
/// the derived norms are checked for positivity.
pub fn q_hahn_orthogonality(big_n: usize, alpha: f64, beta: f64, q: QBase) -> Result<(DiscreteMeasure, Vec<CheckResult>)> {
    let qq = q.0;
    let (al, be) = (re(alpha), re(beta));
    let nodes: Vec<Scalar> = (0..=big_n).map(|y| q.powi(-(y as i64))).collect();
    let qmn = q.powi(-(big_n as i64));
    let mut weights = Vec::with_capacity(big_n + 1);
    for y in 0..=big_n {
        let yy = Order::Fin(y as i64);
        let w = qpoch_multi(&[qq * al, qmn], q, yy)? * (qq * al * be).powi(-(y as i32))
            / qpoch_multi(&[qmn / be, qq], q, yy)?;
        weights.push(w);
    }
    let rows: Vec<Vec<Scalar>> = (0..=big_n)
        .map(|n| nodes.iter().map(|&x| q_hahn(n, x, al, be, big_n, q)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let diag: Vec<Scalar> = (0..=big_n).map(|n| gram_entry(&rows[n], &rows[n], &weights)).collect();
    for n in 0..=big_n {
        for m in 0..=big_n {
            let id = "ORTHO-QHAHN";
            let r = if n == m {
                CheckResult::predicate(id, diag[n], positive(diag[n]), "derived norm h_n is positive")
            } else {
                off_diag(id, gram_entry(&rows[n], &rows[m], &weights), diag[n], diag[m], 1e-8)
            };
            out.push(
                nm(r, n, m)
                    .with_label("q-Hahn discrete orthogonality, printed weight")
                    .with_param("N", big_n)
                    .with_param("alpha", alpha)
                    .with_param("beta", beta)
                    .with_param("q", qq),
            );
        }
    }
    Ok((DiscreteMeasure { nodes, weights, source: WeightSource::Printed }, out))
}

/// Which q-Racah parameter is pinned to `q^{-N-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RacahBranch {
    Alpha,
    BetaDelta,
    Gamma,
}

impl RacahBranch {
    pub fn name(self) -> &'static str {
        match self {
            RacahBranch::Alpha => "alpha",
            RacahBranch::BetaDelta => "beta-delta",
            RacahBranch::Gamma => "gamma",
        }
    }
}

/// q-Racah orthogonality with weights derived from `R_n _|_ R_0`; the
/// pairs `1 <= n < m <= N` are the genuine check.
///
/// `params` are `(alpha, beta, gamma, delta)`; the branch overrides one of
/// them so that the pinned value is `q^{-N-1}`.
pub fn q_racah_orthogonality(
    big_n: usize,
    params: [f64; 4],
    branch: RacahBranch,
    q: QBase,
) -> Result<(DiscreteMeasure, Vec<CheckResult>)> {
    let [mut al, mut be, mut ga, de] = params.map(re);
    let pin = q.powi(-(big_n as i64) - 1);
    match branch {
        RacahBranch::Alpha => al = pin,
        RacahBranch::BetaDelta => be = pin / de,
        RacahBranch::Gamma => ga = pin,
    }
    let gd = ga * de * q.0;
    let us: Vec<Scalar> = (0..=big_n).map(|y| q.powi(-(y as i64))).collect();
    let nodes: Vec<Scalar> = us.iter().map(|&u| u + gd / u).collect();
    let distinct = (0..nodes.len())
        .all(|i| (0..i).all(|j| (nodes[i] - nodes[j]).norm() > 1e-12 * nodes[i].norm().max(nodes[j].norm())));
    let rows: Vec<Vec<Scalar>> = (0..=big_n)
        .map(|n| us.iter().map(|&u| q_racah_u(n, u, al, be, ga, de, q)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let weights = derive_weights(&rows, &rows[0])?;
    let node_note = if distinct { "nodes distinct" } else { "nodes degenerate on this branch" };
    let mut out = Vec::new();
    for n in 1..=big_n {
        for m in (n + 1)..=big_n {
            let g = gram_entry(&rows[n], &rows[m], &weights);
            let r = off_diag(
                "ORTHO-QRACAH",
                g,
                gram_entry(&rows[n], &rows[n], &weights),
                gram_entry(&rows[m], &rows[m], &weights),
                1e-8,
            );
            out.push(
                nm(r, n, m)
                    .with_label("q-Racah orthogonality, weights from a linear solve")
                    .with_note(node_note)
                    .with_param("branch", branch.name())
                    .with_param("N", big_n)
                    .with_param("alpha", al)
                    .with_param("beta", be)
                    .with_param("gamma", ga)
                    .with_param("delta", de)
                    .with_param("q", q.0),
            );
        }
    }
    Ok((DiscreteMeasure { nodes, weights, source: WeightSource::DerivedBySolve }, out))
}

/// Discrete biorthogonality of the Rahman-Wilson functions at `ab = q^{-N}`
/// on `z = a q^k`, weights from `R_n _|_ R~_0`; every pair `n != m` other
/// than the imposed `(n, 0)` is checked, so both index orders appear.
pub fn rw_discrete_orthogonality(
    big_n: usize,
    a: f64,
    c: f64,
    d: f64,
    e: f64,
    q: QBase,
) -> Result<(DiscreteMeasure, Vec<CheckResult>)> {
    let (a, c, d, e) = (re(a), re(c), re(d), re(e));
    let b = q.powi(-(big_n as i64)) / a;
    let ep = q.0 / (a * b * c * d * e);
    let zs: Vec<Scalar> = (0..=big_n).map(|k| a * q.powi(k as i64)).collect();
    let eval = |ee: Scalar| -> Result<Vec<Vec<Scalar>>> {
        (0..=big_n)
            .map(|n| zs.iter().map(|&z| rahman_wilson_z(n, z, [a, b, c, d, ee], q)).collect::<Result<_>>())
            .collect()
    };
    let rows = eval(e)?;
    let dual = eval(ep)?;
    let weights = derive_weights(&rows, &dual[0])?;
    let mut out = Vec::new();
    for n in 0..=big_n {
        for m in 0..=big_n {
            if n == m || m == 0 {
                continue;
            }
            let g = gram_entry(&rows[n], &dual[m], &weights);
            let r = off_diag(
                "ORTHO-RW-DISCRETE",
                g,
                gram_entry(&rows[n], &dual[n], &weights),
                gram_entry(&rows[m], &dual[m], &weights),
                1e-8,
            );
            out.push(
                nm(r, n, m)
                    .with_label("Rahman-Wilson discrete biorthogonality, weights from a linear solve")
                    .with_param("N", big_n)
                    .with_param("a", a)
                    .with_param("b", b)
                    .with_param("c", c)
                    .with_param("d", d)
                    .with_param("e", e)
                    .with_param("q", q.0),
            );
        }
    }
    let nodes = zs.iter().map(|&z| (z + z.inv()) * 0.5).collect();
    Ok((DiscreteMeasure { nodes, weights, source: WeightSource::DerivedBySolve }, out))
}

const GRID_START: usize = 64;
const GRID_CAP: usize = 1 << 16;

/// Gram matrix of `(u_n, v_m)` on the unit circle, doubling the trapezoid
/// grid until two resolutions agree to `0.1 tol` (relative to the largest
/// entry). Returns the finer matrix and its grid size.
fn circle_gram<F>(nmax: usize, tol: f64, f: F) -> Result<(Vec<Vec<Scalar>>, usize)>
where
    F: Fn(&[Scalar]) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, Vec<Scalar>)>,
{
    let gram = |m: usize| -> Result<Vec<Vec<Scalar>>> {
        let zs = circle_points(m);
        let (u, v, w) = f(&zs)?;
        Ok((0..=nmax)
            .map(|n| (0..=nmax).map(|k| gram_entry(&u[n], &v[k], &w) / m as f64).collect())
            .collect())
    };
    let mut m = GRID_START;
    let mut prev = gram(m)?;
    while m < GRID_CAP {
        m *= 2;
        let next = gram(m)?;
        let scale = next.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        let diff = next.iter().flatten().zip(prev.iter().flatten()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if diff <= 0.1 * tol * scale {
            return Ok((next, m));
        }
        prev = next;
    }
    Err(QError::Convergence { terms: GRID_CAP })
}

/// Continuous q-ultraspherical orthogonality against the printed norm.
pub fn ultraspherical_orthogonality(nmax: usize, beta: f64, q: QBase) -> Result<Vec<CheckResult>> {
    if !(beta > -1.0 && beta < 1.0) {
        return domain("ultraspherical orthogonality needs -1 < beta < 1");
    }
    q.require_real()?;
    let b = re(beta);
    let (g, grid) = circle_gram(nmax, 1e-10, |zs| {
        let vals: Vec<Vec<Scalar>> = (0..=nmax)
            .map(|n| zs.iter().map(|&z| ultraspherical_z(n, z, b, q)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let w = zs
            .iter()
            .map(|&z| {
                let z2 = z * z;
                // |f(e^{2i theta})|^2 = f(z^2) f(z^{-2}) for real coefficients
                Ok(qpoch_inf(z2, q)? * qpoch_inf(z2.inv(), q)? / (qpoch_inf(b * z2, q)? * qpoch_inf(b / z2, q)?) * 0.5)
            })
            .collect::<Result<_>>()?;
        Ok((vals.clone(), vals, w))
    })?;
    let qq = q.0;
    let h_inf = qpoch_multi(&[b, qq * b], q, Order::Infinity)? / qpoch_multi(&[b * b, qq], q, Order::Infinity)?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        let nn = Order::Fin(n as i64);
        let h = h_inf * (1.0 - b) / (re(1.0) - b * q.powi(n as i64)) * qpoch(b * b, q, nn)? / qpoch(qq, q, nn)?;
        for m in 0..=nmax {
            let id = "ORTHO-ULTRA-ORTH";
            let r = if n == m {
                CheckResult::compare(id, g[n][n], h, 1e-8)
            } else {
                off_diag(id, g[n][m], g[n][n], g[m][m], 1e-8)
            };
            out.push(
                nm(r, n, m)
                    .with_label("continuous q-ultraspherical orthogonality")
                    .with_param("beta", beta)
                    .with_param("q", qq)
                    .with_param("grid", grid),
            );
        }
    }
    Ok(out)
}

fn qgram<F>(nmax: usize, f: F) -> Result<Vec<Vec<Scalar>>>
where
    F: Fn(usize, usize) -> Result<Scalar>,
{
    let mut g = vec![vec![re(0.0); nmax + 1]; nmax + 1];
    for n in 0..=nmax {
        for m in n..=nmax {
            let v = f(n, m)?;
            g[n][m] = v;
            g[m][n] = v;
        }
    }
    Ok(g)
}

/// Big q-Jacobi orthogonality by the q-integral from `qc` to `qa`.
/// Norms are derived as diagonal values and checked for positivity.
pub fn big_q_jacobi_orthogonality(nmax: usize, a: f64, b: f64, c: f64, q: QBase) -> Result<Vec<CheckResult>> {
    let qr = q.require_real()?;
    if !(0.0 < a && a < 1.0 / qr && 0.0 < b && b < 1.0 / qr && c < 0.0) {
        return domain("big q-Jacobi orthogonality needs 0 < a, b < 1/q and c < 0");
    }
    let (ac, bc, cc) = (re(a), re(b), re(c));
    let weight = |x: f64| -> Result<Scalar> {
        let x = re(x);
        Ok(qpoch_inf(x / ac, q)? * qpoch_inf(x / cc, q)? / (qpoch_inf(x, q)? * qpoch_inf(bc * x / cc, q)?))
    };
    let g = qgram(nmax, |n, m| {
        let f = |x: f64| -> Scalar {
            let v = || -> Result<Scalar> {
                Ok(big_q_jacobi(n, re(x), ac, bc, cc, q)? * big_q_jacobi(m, re(x), ac, bc, cc, q)? * weight(x)?)
            };
            v().unwrap_or(Scalar::new(f64::NAN, 0.0))
        };
        let v = qintegral(f, Bounds::Between(qr * c, qr * a), q, 1e-17)?;
        Ok(v)
    })?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=nmax {
            let id = "ORTHO-BIGQJ-ORTH";
            let r = if n == m {
                CheckResult::predicate(id, g[n][n], positive(g[n][n]), "derived norm h_n is positive")
            } else {
                off_diag(id, g[n][m], g[n][n], g[m][m], 1e-8)
            };
            out.push(
                nm(r, n, m)
                    .with_label("big q-Jacobi orthogonality by q-integral")
                    .with_param("a", a)
                    .with_param("b", b)
                    .with_param("c", c)
                    .with_param("q", qr),
            );
        }
    }
    Ok(out)
}

/// Little q-Jacobi orthogonality against the printed norm.
pub fn little_q_jacobi_orthogonality(nmax: usize, a: f64, b: f64, q: QBase) -> Result<Vec<CheckResult>> {
    let qr = q.require_real()?;
    if !(0.0 < a && a < 1.0 / qr && b < 1.0 / qr) {
        return domain("little q-Jacobi orthogonality needs 0 < a < 1/q and b < 1/q");
    }
    let (ac, bc) = (re(a), re(b));
    let expo = a.ln() / qr.ln();
    let g = qgram(nmax, |n, m| {
        let f = |x: f64| -> Scalar {
            let v = || -> Result<Scalar> {
                let w = qpoch_inf(re(qr * x), q)? / qpoch_inf(re(qr * b * x), q)? * x.powf(expo);
                Ok(little_q_jacobi(n, re(x), ac, bc, q)? * little_q_jacobi(m, re(x), ac, bc, q)? * w)
            };
            v().unwrap_or(Scalar::new(f64::NAN, 0.0))
        };
        qintegral(f, Bounds::To(1.0), q, 1e-17)
    })?;
    let qq = q.0;
    let pre = qpoch_multi(&[qq, qq * ac * bc], q, Order::Infinity)? / qpoch_multi(&[qq * ac, qq * bc], q, Order::Infinity)?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        let nn = Order::Fin(n as i64);
        let h = pre * (1.0 - qr) * (qq * ac).powi(n as i32) / (re(1.0) - ac * bc * q.powi(2 * n as i64 + 1))
            * qpoch_multi(&[qq, qq * bc], q, nn)?
            / qpoch_multi(&[qq * ac, qq * ac * bc], q, nn)?;
        for m in 0..=nmax {
            let id = "ORTHO-LITTLEQJ-ORTH";
            let r = if n == m {
                CheckResult::compare(id, g[n][n], h, 1e-10)
            } else {
                off_diag(id, g[n][m], g[n][n], g[m][m], 1e-10)
            };
            out.push(
                nm(r, n, m)
                    .with_label("little q-Jacobi orthogonality against the printed norm")
                    .with_param("a", a)
                    .with_param("b", b)
                    .with_param("q", qr),
            );
        }
    }
    Ok(out)
}

/// Lattice sum of the third q-Bessel function.
///
/// Toward `k -> +inf` terms decay geometrically. Toward `k -> -inf` the
/// true terms decay very fast while the series for large arguments cancels
/// heavily; the sum stops at the first term buried in its error bound,
/// provided value plus bound is below `1e-12` of the summed term moduli.
fn q_bessel_lattice(n: i64, m: i64, nu: f64, q: QBase, qr: f64) -> Result<Scalar> {
    let j = |idx: i64| q_bessel3_lattice(nu, idx, q);
    let term = |k: i64| -> Result<(Scalar, f64)> {
        let (u, eu) = j(n + k)?;
        let (v, ev) = j(m + k)?;
        let w = qr.powi(k as i32);
        Ok((u * v * w, (eu * v.norm() + ev * u.norm() + eu * ev) * w))
    };
    let mut s = Kahan::default();
    let mut mass = 0.0f64;
    let mut small = 0;
    let mut k = 0i64;
    loop {
        let (t, _) = term(k)?;
        s.add(t);
        mass += t.norm();
        small = if t.norm() < 1e-18 * mass || t == re(0.0) { small + 1 } else { 0 };
        if small >= 8 {
            break;
        }
        k += 1;
        if k > 100_000 {
            return Err(QError::Convergence { terms: k as usize });
        }
    }
    let mut small = 0;
    let mut k = -1i64;
    loop {
        let (t, et) = term(k)?;
        if et >= 0.5 * t.norm() {
            if t.norm() + et <= 1e-12 * mass {
                break;
            }
            return Err(QError::Convergence { terms: (-k) as usize });
        }
        s.add(t);
        mass += t.norm();
        small = if t.norm() < 1e-18 * mass { small + 1 } else { 0 };
        if small >= 2 {
            break;
        }
        k -= 1;
    }
    Ok(s.value())
}

/// Orthogonality of `J_nu^{(3)}(2 q^{(n+k)/2})` over the two-sided lattice,
/// diagonal against `q^{-n}`.
pub fn q_bessel_orthogonality(ns: &[i64], nu: f64, q: QBase) -> Result<Vec<CheckResult>> {
    let qr = q.require_real()?;
    if nu <= -1.0 {
        return domain("q-Bessel orthogonality needs nu > -1");
    }
    let mut out = Vec::new();
    for &n in ns {
        for &m in ns {
            let g = q_bessel_lattice(n, m, nu, q, qr)?;
            let id = "ORTHO-QBESSEL-ORTH";
            let r = if n == m {
                CheckResult::compare(id, g, re(qr.powi(-(n as i32))), 1e-8)
            } else {
                CheckResult::residual(id, g, qr.powf(-0.5 * (n + m) as f64), 1e-8)
            };
            out.push(
                r.with_label("third q-Bessel lattice orthogonality")
                    .with_param("n", n)
                    .with_param("m", m)
                    .with_param("nu", nu)
                    .with_param("q", qr),
            );
        }
    }
    Ok(out)
}

/// `sum_j ln(1 + c q^j)` for `c > 0`.
fn ln_qpoch_neg(c: f64, q: f64) -> f64 {
    let mut s = 0.0;
    let mut t = c;
    let mut j = 0;
    while t > 1e-18 || j < 4 {
        s += t.ln_1p();
        t *= q;
        j += 1;
    }
    s
}

const SW_HALF_WIDTH: f64 = 40.0;

fn sw_gram(nmax: usize, q: QBase, qr: f64, first: bool, h: f64) -> Result<Vec<Vec<f64>>> {
    let l = -qr.ln();
    let ln_qq = qpoch_inf(q.0, q)?.re.ln();
    let steps = (2.0 * SW_HALF_WIDTH / h).round() as i64;
    let mut g = vec![vec![Kahan::default(); nmax + 1]; nmax + 1];
    let sq = qr.sqrt();
    for i in 0..=steps {
        let u = -SW_HALF_WIDTH + i as f64 * h;
        let x = u.exp();
        // weight times dx/du = x
        let lnw = if first {
            0.5 * qr.ln() - l.ln() - ln_qq - ln_qpoch_neg(sq * x, qr) - ln_qpoch_neg(sq / x, qr) + u
        } else {
            0.5 * qr.ln() - 0.5 * (2.0 * core::f64::consts::PI * l).ln() - u * u / (2.0 * l) + u
        };
        // polynomials grow at most like x^{2 nmax}
        if lnw + 2.0 * nmax as f64 * u.max(0.0) < -50.0 {
            continue;
        }
        let w = lnw.exp();
        let s: Vec<f64> = (0..=nmax).map(|n| stieltjes_wigert(n, re(sq * x), q).map(|v| v.re)).collect::<Result<_>>()?;
        for n in 0..=nmax {
            for m in n..=nmax {
                g[n][m].add(re(s[n] * s[m] * w * h));
            }
        }
    }
    let mut out = vec![vec![0.0; nmax + 1]; nmax + 1];
    for n in 0..=nmax {
        for m in n..=nmax {
            out[n][m] = g[n][m].value().re;
            out[m][n] = out[n][m];
        }
    }
    Ok(out)
}

fn sw_gram_adaptive(nmax: usize, q: QBase, qr: f64, first: bool) -> Result<(Vec<Vec<f64>>, f64)> {
    let mut h = 0.2;
    let mut prev = sw_gram(nmax, q, qr, first, h)?;
    while h > 1e-3 {
        h *= 0.5;
        let next = sw_gram(nmax, q, qr, first, h)?;
        let scale = next.iter().flatten().fold(0.0f64, |a, &b| a.max(b.abs()));
        let diff = next.iter().flatten().zip(prev.iter().flatten()).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        if diff <= 1e-12 * scale {
            return Ok((next, h));
        }
        prev = next;
    }
    Err(QError::Convergence { terms: (2.0 * SW_HALF_WIDTH / h) as usize })
}

/// Stieltjes-Wigert orthogonality under both printed weights, after
/// `x = e^u`, by the trapezoid rule on `|u| <= 40`.
///
/// Each weight is checked against `delta_{nm}/(q^n (q;q)_n)` and the two
/// Gram matrices against each other.
pub fn sw_orthogonality(nmax: usize, q: QBase) -> Result<Vec<CheckResult>> {
    let qr = q.require_real()?;
    if !(0.0 < qr && qr < 1.0) {
        return domain("Stieltjes-Wigert orthogonality needs 0 < q < 1");
    }
    let (g1, _) = sw_gram_adaptive(nmax, q, qr, true)?;
    let (g2, _) = sw_gram_adaptive(nmax, q, qr, false)?;
    let mut out = Vec::new();
    let target = |n: usize| -> Result<f64> { Ok(1.0 / (qr.powi(n as i32) * qpoch(q.0, q, Order::Fin(n as i64))?.re)) };
    for (wname, g) in [("theta", &g1), ("lognormal", &g2)] {
        for n in 0..=nmax {
            for m in 0..=nmax {
                let id = "ORTHO-SW-ORTH";
                let r = if n == m {
                    CheckResult::compare(id, re(g[n][n]), re(target(n)?), 1e-7)
                } else {
                    CheckResult::residual(id, re(g[n][m]), (target(n)? * target(m)?).sqrt(), 1e-7)
                };
                out.push(
                    nm(r, n, m)
                        .with_label("Stieltjes-Wigert orthogonality")
                        .with_param("weight", wname)
                        .with_param("q", qr),
                );
            }
        }
    }
    for n in 0..=nmax {
        for m in 0..=nmax {
            let r = CheckResult::residual(
                "ORTHO-SW-WEIGHTS-AGREE",
                re(g1[n][m] - g2[n][m]),
                (g1[n][n] * g1[m][m]).abs().sqrt(),
                1e-8,
            );
            out.push(nm(r, n, m).with_label("both Stieltjes-Wigert weights give one Gram matrix").with_param("q", qr));
        }
    }
    Ok(out)
}

/// Rahman-Wilson contour biorthogonality: `h_0` against its product form,
/// off-diagonals as residuals, the other diagonals for stability under grid
/// doubling.
pub fn rw_contour_orthogonality(nmax: usize, p: [f64; 5], q: QBase) -> Result<Vec<CheckResult>> {
    q.require_inner()?;
    if p.iter().any(|x| x.abs() >= 1.0) {
        return domain("unit-circle contour needs all parameters inside the unit disk");
    }
    let [a, b, c, d, e] = p.map(re);
    let big = a * b * c * d * e;
    let ep = q.0 / big;
    let build = |zs: &[Scalar]| -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, Vec<Scalar>)> {
        let u = (0..=nmax)
            .map(|n| zs.iter().map(|&z| rahman_wilson_z(n, z, [a, b, c, d, e], q)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let v = (0..=nmax)
            .map(|n| zs.iter().map(|&z| rahman_wilson_z(n, z, [a, b, c, d, ep], q)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let w = zs
            .iter()
            .map(|&z| {
                let mut w = qpoch_inf(z * z, q)? * qpoch_inf((z * z).inv(), q)? * qpoch_inf(big * z, q)? * qpoch_inf(big / z, q)?;
                for x in [a, b, c, d, e] {
                    w /= qpoch_inf(x * z, q)? * qpoch_inf(x / z, q)?;
                }
                Ok(w)
            })
            .collect::<Result<_>>()?;
        Ok((u, v, w))
    };
    let (g, grid) = circle_gram(nmax, 1e-10, build)?;
    let num = qpoch_multi(&[b * c * d * e, a * c * d * e, a * b * d * e, a * b * c * e, a * b * c * d], q, Order::Infinity)?;
    let den = qpoch_multi(
        &[q.0, a * b, a * c, a * d, a * e, b * c, b * d, b * e, c * d, c * e, d * e],
        q,
        Order::Infinity,
    )?;
    let h0 = num / den;
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=nmax {
            let id = "ORTHO-RW-CONTOUR";
            let r = if n == 0 && m == 0 {
                CheckResult::compare(id, g[0][0], h0 * 2.0, 1e-8)
            } else if n == m {
                CheckResult::predicate(id, g[n][n], g[n][n].norm() > 0.0, "derived h_n nonzero and grid-converged")
            } else {
                off_diag(id, g[n][m], g[n][n], g[m][m], 1e-8)
            };
            out.push(
                nm(r, n, m)
                    .with_label("Rahman-Wilson contour biorthogonality")
                    .with_param("a", p[0])
                    .with_param("b", p[1])
                    .with_param("c", p[2])
                    .with_param("d", p[3])
                    .with_param("e", p[4])
                    .with_param("q", q.0)
                    .with_param("grid", grid),
            );
        }
    }
    Ok(out)
}

/// Family whose second-order q-difference equation is checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QDiffFamily {
    AskeyWilson(AWParams),
    Ultraspherical { beta: Scalar, q: QBase },
    BigQJacobi { a: Scalar, b: Scalar, c: Scalar, q: QBase },
}

/// Residual of the q-difference equation at `point` (`z` for the
/// symmetric families, `x` for big q-Jacobi), scaled by the sum of the
/// magnitudes of its four terms; tolerance 1e-10.
pub fn qdiff_residual(family: QDiffFamily, n: usize, point: Scalar) -> Result<CheckResult> {
    let one = re(1.0);
    let (terms, id, label) = match family {
        QDiffFamily::AskeyWilson(p) => {
            let q = p.q;
            let [a, b, c, d] = p.list();
            let big_a =
                |z: Scalar| (one - a * z) * (one - b * z) * (one - c * z) * (one - d * z) / ((one - z * z) * (one - q.0 * z * z));
            let z = point;
            let f = |z| aw_eval_z(n, z, &p);
            let (az, ai) = (big_a(z), big_a(z.inv()));
            let lam = (q.powi(-(n as i64)) - one) * (one - q.powi(n as i64 - 1) * a * b * c * d);
            let pz = f(z)?;
            ([az * f(q.0 * z)?, -(az + ai) * pz, ai * f(z / q.0)?, -lam * pz], "ORTHO-AW-QDIFF", "Askey-Wilson q-difference equation")
        }
        QDiffFamily::Ultraspherical { beta, q } => {
            let big_a = |z: Scalar| (one - beta * z * z) * (one - q.0 * beta * z * z) / ((one - z * z) * (one - q.0 * z * z));
            let z = point;
            let f = |z| ultraspherical_z(n, z, beta, q);
            let (az, ai) = (big_a(z), big_a(z.inv()));
            let lam = (q.powi(-(n as i64)) - one) * (one - q.powi(n as i64) * beta * beta);
            let pz = f(z)?;
            (
                [az * f(q.0 * z)?, -(az + ai) * pz, ai * f(z / q.0)?, -lam * pz],
                "ORTHO-ULTRA-QDIFF",
                "continuous q-ultraspherical q-difference equation",
            )
        }
        QDiffFamily::BigQJacobi { a, b, c, q } => {
            let x = point;
            let qq = q.0;
            let big_a = a * qq * (x - one) * (b * x - c) / (x * x);
            let big_c = (x - qq * a) * (x - qq * c) / (x * x);
            let f = |x| big_q_jacobi(n, x, a, b, c, q);
            let lam = (q.powi(-(n as i64)) - one) * (one - a * b * q.powi(n as i64 + 1));
            let px = f(x)?;
            (
                [big_a * f(qq * x)?, -(big_a + big_c) * px, big_c * f(x / qq)?, -lam * px],
                "ORTHO-BIGQJ-QDIFF",
                "big q-Jacobi q-difference equation",
            )
        }
    };
    let value: Scalar = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    Ok(CheckResult::residual(id, value, scale, 1e-10)
        .with_label(label)
        .with_param("n", n)
        .with_param("point", point))
}
