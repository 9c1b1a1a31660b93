//! q-orthogonal polynomial families: Askey-Wilson and its specialisations,
//! q-Racah, big and little q-Jacobi, q-Hahn, Stieltjes-Wigert and the
//! Rahman-Wilson biorthogonal rational functions.
//!
//! Evaluation is by exact terminating sums. Orthogonality is checked by
//! trapezoid rules on the unit circle, Jackson q-integrals, discrete sums
//! with printed weights, or weights derived by a linear solve.

mod families;
mod limits;
mod measures;

#[cfg(test)]
mod tests;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::check::{CheckResult, Param};
use crate::error::{domain, Result};
use crate::qcore::{qpoch, qpoch_inf, qpoch_multi, re, Kahan, Order, QBase, Scalar};
use crate::qseries::{eval_phi, PhiSpec, TOL};

pub use families::{family_eval, little_from_big, Family};
pub(crate) use limits::refinement;
pub use limits::{
    chebyshev_limit_audit, generating_function_check, jacobi_classical, limit_checks, qbessel_limit_audit, ultra_aw_factor_audit, LimitCase,
};
pub use measures::{
    big_q_jacobi_orthogonality, derive_weights, little_q_jacobi_orthogonality, q_bessel_orthogonality,
    q_hahn_orthogonality, q_racah_orthogonality, qdiff_residual, rw_contour_orthogonality,
    rw_discrete_orthogonality, sw_orthogonality, ultraspherical_orthogonality, DiscreteMeasure, QDiffFamily,
    RacahBranch, WeightSource,
};

/// Parameters `a, b, c, d` and base of an Askey-Wilson polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AWParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub q: QBase,
}

fn closed_under_conjugation(v: &[Scalar]) -> bool {
    let mut used = [false; 4];
    for i in 0..v.len() {
        if used[i] {
            continue;
        }
        if v[i].im.abs() <= 1e-15 * v[i].norm().max(1.0) {
            used[i] = true;
            continue;
        }
        let partner = (0..v.len()).find(|&j| j != i && !used[j] && (v[j] - v[i].conj()).norm() <= 1e-12);
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => return false,
        }
    }
    true
}

impl AWParams {
    /// Real parameters or conjugate pairs, all pairwise products inside the
    /// unit disk.
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar, q: QBase) -> Result<Self> {
        let p = AWParams { a, b, c, d, q };
        let v = p.list();
        if !closed_under_conjugation(&v) {
            return domain("Askey-Wilson parameters must be real or come in conjugate pairs");
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if (v[i] * v[j]).norm() >= 1.0 {
                    return domain("Askey-Wilson pairwise products need modulus < 1");
                }
            }
        }
        q.require_inner()?;
        Ok(p)
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64, q: f64) -> Result<Self> {
        Self::new(re(a), re(b), re(c), re(d), QBase::from(q))
    }

    pub fn list(&self) -> [Scalar; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Regime of the plain unit-circle contour.
    pub fn require_inside(&self) -> Result<()> {
        if self.list().iter().any(|x| x.norm() >= 1.0) {
            return domain("unit-circle orthogonality needs |a|,|b|,|c|,|d| < 1");
        }
        Ok(())
    }

    /// Same polynomial with the parameters permuted.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let v = self.list();
        AWParams { a: v[perm[0]], b: v[perm[1]], c: v[perm[2]], d: v[perm[3]], q: self.q }
    }
}

/// `e^{i theta}` for `x = cos theta`: `theta` in `[0, pi]` on `[-1, 1]`,
/// otherwise the root of `z + 1/z = 2x` outside the unit disk.
pub fn z_of_x(x: Scalar) -> Scalar {
    if x.im == 0.0 && x.re.abs() <= 1.0 {
        return Scalar::new(x.re, (1.0 - x.re * x.re).max(0.0).sqrt());
    }
    let z = x + (x * x - 1.0).sqrt();
    if z.norm() < 1.0 {
        z.inv()
    } else {
        z
    }
}

/// `e^{i n theta}` Fourier sum of the continuous q-Hermite polynomial.
pub(crate) fn hermite_z(n: usize, z: Scalar, q: QBase) -> Result<Scalar> {
    let mut s = Kahan::default();
    for k in 0..=n {
        let c = crate::qcore::qbinom(n as i64, k as i64, q)?;
        s.add(c * z.powi(n as i32 - 2 * k as i32));
    }
    Ok(s.value())
}

/// `p_n(x)` as a function of `z = e^{i theta}`.
pub fn aw_eval_z(n: usize, z: Scalar, p: &AWParams) -> Result<Scalar> {
    let v = p.list();
    // symmetric in a,b,c,d: put the largest parameter in front
    let lead = (0..4).max_by(|&i, &j| v[i].norm().partial_cmp(&v[j].norm()).unwrap()).unwrap();
    if v[lead] == re(0.0) {
        return hermite_z(n, z, p.q);
    }
    let a = v[lead];
    let others: Vec<Scalar> = (0..4).filter(|&i| i != lead).map(|i| v[i]).collect();
    let q = p.q;
    let abcd = a * others[0] * others[1] * others[2];
    let lower: Vec<Scalar> = others.iter().map(|&x| a * x).collect();
    let upper = [abcd * q.powi(n as i64 - 1), a * z, a / z];
    let spec = PhiSpec::new(&upper, &lower, q, q.0).terminating(n);
    let sum = eval_phi(&spec, TOL)?;
    let pre = qpoch_multi(&lower, q, Order::Fin(n as i64))? / a.powi(n as i32);
    Ok(pre * sum)
}

/// Askey-Wilson polynomial `p_n(x; a, b, c, d | q)`.
pub fn aw_eval(n: usize, x: Scalar, p: &AWParams) -> Result<Scalar> {
    aw_eval_z(n, z_of_x(x), p)
}

/// `(z^2, z^{-2}; q)_inf / prod (a z, a/z; q)_inf` over the four parameters.
pub fn aw_weight(z: Scalar, p: &AWParams) -> Result<Scalar> {
    let q = p.q;
    let mut w = qpoch_inf(z * z, q)? * qpoch_inf((z * z).inv(), q)?;
    for x in p.list() {
        w /= qpoch_inf(x * z, q)? * qpoch_inf(x / z, q)?;
    }
    Ok(w)
}

/// Squared norm `h_n`.
pub fn aw_norm(n: usize, p: &AWParams) -> Result<Scalar> {
    let q = p.q;
    let [a, b, c, d] = p.list();
    let abcd = a * b * c * d;
    let pairs = [q.0, a * b, a * c, a * d, b * c, b * d, c * d];
    let h0 = qpoch_inf(abcd, q)? / qpoch_multi(&pairs, q, Order::Infinity)?;
    if n == 0 {
        return Ok(h0);
    }
    let nn = Order::Fin(n as i64);
    let r = (re(1.0) - abcd * q.powi(n as i64 - 1)) / (re(1.0) - abcd * q.powi(2 * n as i64 - 1))
        * qpoch_multi(&pairs, q, nn)?
        / qpoch(abcd, q, nn)?;
    Ok(h0 * r)
}

/// Mean of `f` over `m` equally spaced points of the unit circle, which is
/// `(1/2 pi i) \oint f(z) dz/z` by the trapezoid rule.
pub fn circle_mean<F>(f: F, m: usize) -> Result<Scalar>
where
    F: Fn(Scalar) -> Result<Scalar>,
{
    let mut s = Kahan::default();
    for j in 0..m {
        let th = 2.0 * core::f64::consts::PI * j as f64 / m as f64;
        s.add(f(Scalar::from_polar(1.0, th))?);
    }
    Ok(s.value() / m as f64)
}

/// Unit circle grid and the values of several functions on it.
pub(crate) fn circle_points(m: usize) -> Vec<Scalar> {
    (0..m).map(|j| Scalar::from_polar(1.0, 2.0 * core::f64::consts::PI * j as f64 / m as f64)).collect()
}

/// The Askey-Wilson integral `(1/2 pi i) \oint w(z) dz/z = 2 h_0` by an
/// `m`-point trapezoid.
pub fn aw_integral(p: &AWParams, m: usize) -> Result<Scalar> {
    p.require_inside()?;
    circle_mean(|z| aw_weight(z, p), m)
}

/// One entry of the contour Gram matrix against `2 h_n delta_{nm}`.
pub fn aw_orthogonality(n: usize, m: usize, p: &AWParams, grid: usize) -> Result<CheckResult> {
    Ok(aw_orthogonality_table(n.max(m), p, grid)?
        .into_iter()
        .find(|r| r.params.get("n") == Some(&Param::Int(n as i64)) && r.params.get("m") == Some(&Param::Int(m as i64)))
        .expect("pair is in the table"))
}

/// All pairs `n, m <= nmax`; diagonals against `2 h_n` (tol 1e-8),
/// off-diagonals as residuals scaled by `2 sqrt(h_n h_m)`.
pub fn aw_orthogonality_table(nmax: usize, p: &AWParams, grid: usize) -> Result<Vec<CheckResult>> {
    p.require_inside()?;
    let zs = circle_points(grid);
    let w: Vec<Scalar> = zs.iter().map(|&z| aw_weight(z, p)).collect::<Result<_>>()?;
    let vals: Vec<Vec<Scalar>> =
        (0..=nmax).map(|n| zs.iter().map(|&z| aw_eval_z(n, z, p)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let h: Vec<Scalar> = (0..=nmax).map(|n| aw_norm(n, p)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=nmax {
            let mut s = Kahan::default();
            for j in 0..grid {
                s.add(vals[n][j] * vals[m][j] * w[j]);
            }
            let g = s.value() / grid as f64;
            let r = if n == m {
                CheckResult::compare("ORTHO-AW-ORTH", g, h[n] * 2.0, 1e-8)
            } else {
                CheckResult::residual("ORTHO-AW-ORTH", g, 2.0 * (h[n] * h[m]).norm().sqrt(), 1e-8)
            };
            out.push(
                r.with_label("Askey-Wilson contour orthogonality")
                    .with_param("n", n)
                    .with_param("m", m)
                    .with_param("grid", grid)
                    .with_param("a", p.a)
                    .with_param("b", p.b)
                    .with_param("c", p.c)
                    .with_param("d", p.d)
                    .with_param("q", p.q.0),
            );
        }
    }
    Ok(out)
}
