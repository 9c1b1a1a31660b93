//! The `(q,t)` inner product and two independent constructions of `P_lambda`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{inverse, matmul, solve, RatMatrix};
use super::partition::{dominated, dominance_leq, partitions_of, Partition};
use super::sym::{monomial_value, rpow, SymFunc};
use super::Rat;
use crate::error::{domain, QError, Result};

/// Transition data for one degree, with `n = d` variables so that the
/// monomial basis is faithful.
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub parts: Vec<Partition>,
    /// Row `lambda`: coefficients of `p_lambda` on `m_mu`.
    pub p_to_m: RatMatrix,
    pub m_to_p: RatMatrix,
    /// `<m_mu, m_nu>_{q,t}`.
    pub gram: RatMatrix,
}

impl DegreeData {
    pub fn index(&self, mu: &Partition) -> Option<usize> {
        self.parts.iter().position(|p| p == mu)
    }
}

/// The inner product with `<p_lambda, p_mu> = delta z_lambda prod (1-q^l_i)/(1-t^l_i)`.
#[derive(Debug, Clone)]
pub struct QTInnerProduct {
    q: Rat,
    t: Rat,
    cache: BTreeMap<usize, DegreeData>,
}

impl QTInnerProduct {
    pub fn new(q: Rat, t: Rat) -> Self {
        QTInnerProduct { q, t, cache: BTreeMap::new() }
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn power_sum_norm(&self, lambda: &Partition) -> Result<Rat> {
        let mut v = Rat::from_integer(lambda.z());
        for &r in lambda.parts() {
            let den = Rat::one() - rpow(&self.t, r);
            if den.is_zero() {
                return domain("inner product needs t^k != 1");
            }
            v = v * (Rat::one() - rpow(&self.q, r)) / den;
        }
        Ok(v)
    }

    pub fn degree(&mut self, d: usize) -> Result<&DegreeData> {
        if !self.cache.contains_key(&d) {
            let parts = partitions_of(d, d);
            let k = parts.len();
            let p_to_m: RatMatrix = parts
                .iter()
                .map(|l| {
                    let p = SymFunc::power_sum(l, d);
                    parts.iter().map(|mu| p.coeff(mu)).collect()
                })
                .collect();
            let m_to_p = inverse(&p_to_m).ok_or_else(|| QError::Solve("power sums are not a basis".into()))?;
            let w: Vec<Rat> = parts.iter().map(|l| self.power_sum_norm(l)).collect::<Result<_>>()?;
            let mut gram = vec![vec![Rat::zero(); k]; k];
            for i in 0..k {
                for j in i..k {
                    let mut s = Rat::zero();
                    for l in 0..k {
                        if !m_to_p[i][l].is_zero() && !m_to_p[j][l].is_zero() {
                            s += &m_to_p[i][l] * &m_to_p[j][l] * &w[l];
                        }
                    }
                    gram[i][j] = s.clone();
                    gram[j][i] = s;
                }
            }
            self.cache.insert(d, DegreeData { parts, p_to_m, m_to_p, gram });
        }
        Ok(&self.cache[&d])
    }

    /// True when the two transition matrices multiply to the identity.
    pub fn transition_inverse_check(&mut self, d: usize) -> Result<bool> {
        let dd = self.degree(d)?;
        Ok(super::linalg::is_identity(&matmul(&dd.p_to_m, &dd.m_to_p)))
    }

    /// `<f, g>` for symmetric functions given in at least `degree` variables.
    pub fn inner(&mut self, f: &SymFunc, g: &SymFunc) -> Result<Rat> {
        if f.degree() != g.degree() || f.is_zero() || g.is_zero() {
            return Ok(Rat::zero());
        }
        let d = f.degree();
        if f.n() < d || g.n() < d {
            return domain("inner product needs at least as many variables as the degree");
        }
        let dd = self.degree(d)?;
        let fv: Vec<Rat> = dd.parts.iter().map(|m| f.coeff(m)).collect();
        let gv: Vec<Rat> = dd.parts.iter().map(|m| g.coeff(m)).collect();
        let mut s = Rat::zero();
        for i in 0..fv.len() {
            if fv[i].is_zero() {
                continue;
            }
            for j in 0..gv.len() {
                if !gv[j].is_zero() {
                    s += &fv[i] * &gv[j] * &dd.gram[i][j];
                }
            }
        }
        Ok(s)
    }

    /// `P_lambda` in `|lambda|` variables: the monic combination of `m_mu`,
    /// `mu <= lambda`, orthogonal to every `m_nu` with `nu < lambda`.
    pub fn macdonald(&mut self, lambda: &Partition) -> Result<SymFunc> {
        let d = lambda.weight();
        let dd = self.degree(d)?;
        let li = dd.index(lambda).unwrap();
        let lower: Vec<usize> = (0..dd.parts.len()).filter(|&i| dominated(&dd.parts[i], lambda)).collect();
        let a: RatMatrix = lower.iter().map(|&r| lower.iter().map(|&c| dd.gram[r][c].clone()).collect()).collect();
        let b: Vec<Rat> = lower.iter().map(|&r| -dd.gram[r][li].clone()).collect();
        let u = solve(&a, &b).ok_or_else(|| QError::Solve(format!("Gram system for {lambda} is singular")))?;
        let mut terms = vec![(lambda.clone(), Rat::one())];
        for (k, &i) in lower.iter().enumerate() {
            terms.push((dd.parts[i].clone(), u[k].clone()));
        }
        SymFunc::from_terms(d, d, terms)
    }

    /// Gram-Schmidt of the monomial basis of degree `d`, processed in the
    /// given order; returns the results keyed by leading partition.
    pub fn gram_schmidt(&mut self, d: usize, order: &[Partition]) -> Result<BTreeMap<Partition, SymFunc>> {
        let mut done: Vec<(SymFunc, Rat)> = Vec::new();
        let mut out = BTreeMap::new();
        for mu in order {
            let m = SymFunc::monomial(mu, d)?;
            let mut f = m.clone();
            for (g, ng) in &done {
                let c = self.inner(&m, g)? / ng;
                f = f.sub(&g.scale(&c));
            }
            let nf = self.inner(&f, &f)?;
            if nf.is_zero() {
                return Err(QError::Solve(format!("Gram-Schmidt pivot for {mu} vanishes")));
            }
            out.insert(mu.clone(), f.clone());
            done.push((f, nf));
        }
        Ok(out)
    }
}

/// `P_lambda(z; q, t)` in `n` variables via the inner product.
pub fn macdonald_p(lambda: &Partition, n: usize, q: &Rat, t: &Rat) -> Result<SymFunc> {
    if lambda.len() > n {
        return domain("partition has more parts than variables");
    }
    Ok(QTInnerProduct::new(q.clone(), t.clone()).macdonald(lambda)?.restrict(n))
}

/// `sum_i q^{lambda_i} t^{n-i}`.
pub fn eigenvalue(lambda: &Partition, n: usize, q: &Rat, t: &Rat) -> Rat {
    let mut s = Rat::zero();
    for i in 0..n {
        s += rpow(q, lambda.part(i)) * rpow(t, n - 1 - i);
    }
    s
}

/// The operator `D = sum_i prod_{j != i} (t z_i - z_j)/(z_i - z_j) tau_{q,z_i}`
/// applied to `f` and evaluated at `z`; `f` is any evaluator.
pub fn apply_operator<F>(f: F, z: &[Rat], q: &Rat, t: &Rat) -> Result<Rat>
where
    F: Fn(&[Rat]) -> Rat,
{
    let n = z.len();
    let mut s = Rat::zero();
    for i in 0..n {
        let mut a = Rat::one();
        for j in 0..n {
            if j != i {
                let den = &z[i] - &z[j];
                if den.is_zero() {
                    return domain("operator needs distinct coordinates");
                }
                a *= (t * &z[i] - &z[j]) / den;
            }
        }
        let mut w = z.to_vec();
        w[i] = q * &w[i];
        s += a * f(&w);
    }
    Ok(s)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<Rat>> {
    (0..count)
        .map(|_| loop {
            let z: Vec<Rat> = (0..n)
                .map(|_| {
                    let num = 1 + (rng.next_u32() % 40) as i64;
                    let den = 1 + (rng.next_u32() % 9) as i64;
                    Rat::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            if (0..n).all(|i| (i + 1..n).all(|j| z[i] != z[j])) {
                break z;
            }
        })
        .collect()
}

/// Matrix of `D` on `{m_mu : |mu| = d, l(mu) <= n}`: row `mu` holds the
/// coefficients of `D m_mu`, recovered by interpolation at rational points.
pub fn operator_matrix(d: usize, n: usize, q: &Rat, t: &Rat) -> Result<(Vec<Partition>, RatMatrix)> {
    let parts = partitions_of(d, n);
    let k = parts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6364 ^ ((d as u64) << 8) ^ n as u64);
    for _ in 0..16 {
        let pts = random_points(&mut rng, n, k);
        let e: RatMatrix = pts.iter().map(|z| parts.iter().map(|mu| monomial_value(mu, z)).collect()).collect();
        let Some(einv) = inverse(&e) else { continue };
        let mut rows = Vec::with_capacity(k);
        for mu in &parts {
            let vals: Vec<Vec<Rat>> = pts
                .iter()
                .map(|z| apply_operator(|w| monomial_value(mu, w), z, q, t).map(|v| vec![v]))
                .collect::<Result<_>>()?;
            let c = matmul(&einv, &vals);
            rows.push(c.into_iter().map(|mut r| r.pop().unwrap()).collect());
        }
        return Ok((parts, rows));
    }
    Err(QError::Solve("no invertible interpolation points found".into()))
}

/// `P_lambda` in `n` variables as the monic eigenvector of `D`, with the
/// eigenvalue `sum q^{lambda_i} t^{n-i}`; independent of the inner product.
pub fn macdonald_p_operator(lambda: &Partition, n: usize, q: &Rat, t: &Rat) -> Result<SymFunc> {
    if lambda.len() > n {
        return domain("partition has more parts than variables");
    }
    let d = lambda.weight();
    let (parts, m) = operator_matrix(d, n, q, t)?;
    let ev = eigenvalue(lambda, n, q, t);
    let li = parts.iter().position(|p| p == lambda).unwrap();
    let lower: Vec<usize> = (0..parts.len()).filter(|&i| dominated(&parts[i], lambda)).collect();
    // component nu of (D - ev) v, with v = m_lambda + sum_{mu < lambda} v_mu m_mu
    let a: RatMatrix = lower
        .iter()
        .map(|&nu| {
            lower
                .iter()
                .map(|&mu| if mu == nu { &m[mu][nu] - &ev } else { m[mu][nu].clone() })
                .collect()
        })
        .collect();
    let b: Vec<Rat> = lower.iter().map(|&nu| -m[li][nu].clone()).collect();
    let v = solve(&a, &b).ok_or_else(|| QError::Solve(format!("eigenvalue of {lambda} is not simple")))?;
    let mut terms = vec![(lambda.clone(), Rat::one())];
    for (k, &i) in lower.iter().enumerate() {
        terms.push((parts[i].clone(), v[k].clone()));
    }
    let p = SymFunc::from_terms(n, d, terms)?;
    for nu in 0..parts.len() {
        let mut s = -(&ev * p.coeff(&parts[nu]));
        for (mu, c) in p.terms() {
            let r = parts.iter().position(|x| x == mu).unwrap();
            s += c * &m[r][nu];
        }
        if !s.is_zero() {
            return Err(QError::Solve(format!("operator is not triangular at {}", parts[nu])));
        }
    }
    debug_assert!(p.terms().all(|(mu, _)| dominance_leq(mu, lambda)));
    Ok(p)
}
