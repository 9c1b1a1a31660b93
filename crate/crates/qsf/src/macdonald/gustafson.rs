//! Gustafson's `n`-variable extension of the Askey-Wilson integral.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::check::CheckResult;
use crate::error::{domain, QError, Result};
use crate::qcore::{qpoch_inf, re, Kahan, QBase, Scalar};
use crate::qortho::{aw_integral, AWParams};

/// Tolerance against the product formula.
pub const GUSTAFSON_TOL: f64 = 1e-8;
/// Tolerance of the one-variable case against the Askey-Wilson integral.
pub const GUSTAFSON_AW_TOL: f64 = 1e-10;
/// Largest number of grid points.
pub const GRID_BUDGET: usize = 1 << 22;

fn check_args(n: usize, abcd: &[Scalar; 4], t: Scalar, q: QBase, m: usize) -> Result<()> {
    if !(1..=2).contains(&n) {
        return domain("Gustafson integral implemented for n = 1, 2");
    }
    q.require_inner()?;
    if abcd.iter().any(|x| x.norm() >= 1.0) || t.norm() >= 1.0 {
        return domain("Gustafson integral needs |a|,|b|,|c|,|d|,|t| < 1");
    }
    if !m.is_power_of_two() || m < 4 {
        return domain("grid size must be a power of two, at least 4");
    }
    if m.checked_pow(n as u32).is_none_or(|p| p > GRID_BUDGET) {
        return Err(QError::Overflow("quadrature budget exceeded".into()));
    }
    Ok(())
}

/// `2^n n! prod_j (t, t^{n+j-2} abcd; q)_inf / (t^j, q, ab t^{j-1}, ..., cd t^{j-1}; q)_inf`.
pub fn gustafson_product(n: usize, abcd: &[Scalar; 4], t: Scalar, q: QBase) -> Result<Scalar> {
    let [a, b, c, d] = *abcd;
    let mut v = re((1u64 << n) as f64 * (1..=n).map(|x| x as f64).product::<f64>());
    for j in 1..=n {
        let tj = t.powi(j as i32 - 1);
        let num = qpoch_inf(t, q)? * qpoch_inf(t.powi((n + j) as i32 - 2) * a * b * c * d, q)?;
        let mut den = qpoch_inf(t.powi(j as i32), q)? * qpoch_inf(q.0, q)?;
        for p in [a * b, a * c, a * d, b * c, b * d, c * d] {
            den *= qpoch_inf(p * tj, q)?;
        }
        v *= num / den;
    }
    Ok(v)
}

/// Trapezoid mean of `|Delta|^2` over `[0, 2 pi]^n` with `m` points per axis.
pub fn gustafson_quadrature(n: usize, abcd: &[Scalar; 4], t: Scalar, q: QBase, m: usize) -> Result<Scalar> {
    check_args(n, abcd, t, q, m)?;
    let roots: Vec<Scalar> =
        (0..m).map(|j| Scalar::from_polar(1.0, 2.0 * core::f64::consts::PI * j as f64 / m as f64)).collect();
    // (u;q)/(tu;q) on the grid, shared by z_i z_j and z_i/z_j
    let pair: Vec<Scalar> = roots.iter().map(|&u| Ok(qpoch_inf(u, q)? / qpoch_inf(t * u, q)?)).collect::<Result<_>>()?;
    let single: Vec<Scalar> = roots
        .iter()
        .map(|&z| {
            let mut den = re(1.0);
            for &p in abcd {
                den *= qpoch_inf(p * z, q)?;
            }
            Ok(qpoch_inf(z * z, q)? / den)
        })
        .collect::<Result<_>>()?;
    let total = m.pow(n as u32);
    let mut idx = vec![0usize; n];
    let mut acc = Kahan::default();
    for _ in 0..total {
        let mut delta = re(1.0);
        for i in 0..n {
            delta *= single[idx[i]];
            for j in i + 1..n {
                delta *= pair[(idx[i] + idx[j]) % m] * pair[(idx[i] + m - idx[j]) % m];
            }
        }
        acc.add(re(delta.norm_sqr()));
        for d in idx.iter_mut() {
            *d += 1;
            if *d < m {
                break;
            }
            *d = 0;
        }
    }
    Ok(acc.value() / total as f64)
}

pub fn gustafson_integral(n: usize, abcd: [Scalar; 4], t: Scalar, q: QBase, m: usize) -> Result<CheckResult> {
    let lhs = gustafson_quadrature(n, &abcd, t, q, m)?;
    let rhs = gustafson_product(n, &abcd, t, q)?;
    Ok(CheckResult::compare("GUSTAFSON", lhs, rhs, GUSTAFSON_TOL)
        .with_label("torus integral of |Delta|^2 against the product formula")
        .with_param("n", n)
        .with_param("a", abcd[0])
        .with_param("b", abcd[1])
        .with_param("c", abcd[2])
        .with_param("d", abcd[3])
        .with_param("t", t)
        .with_param("q", q.0)
        .with_param("grid", m))
}

/// For one variable the weight is the Askey-Wilson weight.
pub fn gustafson_aw_check(abcd: [Scalar; 4], q: QBase, m: usize) -> Result<CheckResult> {
    let lhs = gustafson_quadrature(1, &abcd, re(0.0), q, m)?;
    let p = AWParams::new(abcd[0], abcd[1], abcd[2], abcd[3], q)?;
    let rhs = aw_integral(&p, m)?;
    Ok(CheckResult::compare("GUSTAFSON-AW", lhs, rhs, GUSTAFSON_AW_TOL)
        .with_label("one-variable case equals the Askey-Wilson integral")
        .with_param("a", abcd[0])
        .with_param("b", abcd[1])
        .with_param("c", abcd[2])
        .with_param("d", abcd[3])
        .with_param("q", q.0)
        .with_param("grid", m))
}
