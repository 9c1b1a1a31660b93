//! Symmetric polynomials in `n` variables on the monomial basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partition::{distinct_permutations, partitions_of, Partition};
use super::Rat;
use crate::error::{domain, Result};
use crate::qcore::Scalar;

/// A homogeneous symmetric polynomial with exact coefficients on `m_mu`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymFunc {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Partition, Rat>,
}

/// Which classical basis element to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    PowerSum,
    Schur,
}

fn mu_ok(mu: &Partition, n: usize) -> Result<()> {
    if mu.len() > n {
        return domain("partition has more parts than variables");
    }
    Ok(())
}

impl SymFunc {
    pub fn zero(n: usize, degree: usize) -> Self {
        SymFunc { n, degree, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut f = Self::zero(n, 0);
        f.coeffs.insert(Partition::empty(), Rat::one());
        f
    }

    pub fn monomial(mu: &Partition, n: usize) -> Result<Self> {
        mu_ok(mu, n)?;
        let mut f = Self::zero(n, mu.weight());
        f.coeffs.insert(mu.clone(), Rat::one());
        Ok(f)
    }

    /// `h_k`, the sum of all `m_mu` with `|mu| = k`.
    pub fn complete(k: usize, n: usize) -> Self {
        let mut f = Self::zero(n, k);
        for mu in partitions_of(k, n) {
            f.coeffs.insert(mu, Rat::one());
        }
        f
    }

    /// `e_k = m_{1^k}`, zero when `k > n`.
    pub fn elementary(k: usize, n: usize) -> Self {
        let mut f = Self::zero(n, k);
        if k <= n {
            f.coeffs.insert(Partition::from_padded(&vec![1; k]).unwrap(), Rat::one());
        }
        f
    }

    /// `p_lambda` as a product of power sums `p_r = m_(r)`.
    pub fn power_sum(lambda: &Partition, n: usize) -> Self {
        let mut f = Self::one(n);
        for &r in lambda.parts() {
            let pr = Self::monomial(&Partition::from_padded(&[r]).unwrap(), n.max(1)).unwrap();
            f = if n == 0 { Self::zero(0, f.degree + r) } else { f.mul(&pr) };
        }
        f
    }

    /// Schur function by the Jacobi-Trudi determinant in `h`, or its dual
    /// in `e` when the conjugate is shorter.
    pub fn schur(lambda: &Partition, n: usize) -> Result<Self> {
        mu_ok(lambda, n)?;
        let lc = lambda.conjugate();
        let (rows, gen): (&Partition, fn(usize, usize) -> SymFunc) =
            if lc.len() < lambda.len() { (&lc, Self::elementary) } else { (lambda, Self::complete) };
        let l = rows.len();
        if l == 0 {
            return Ok(Self::one(n));
        }
        let perms = distinct_permutations(&(0..l).collect::<Vec<_>>());
        let mut out = Self::zero(n, lambda.weight());
        for p in perms {
            let mut inv = 0;
            for i in 0..l {
                for j in i + 1..l {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let mut term = Self::one(n);
            let mut vanish = false;
            for (i, &j) in p.iter().enumerate() {
                let k = rows.part(i) as i64 - i as i64 + j as i64;
                if k < 0 {
                    vanish = true;
                    break;
                }
                term = term.mul(&gen(k as usize, n));
            }
            if vanish {
                continue;
            }
            out = if inv % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        Ok(out)
    }

    pub fn basis(kind: Basis, lambda: &Partition, n: usize) -> Result<Self> {
        match kind {
            Basis::Monomial => Self::monomial(lambda, n),
            Basis::PowerSum => Ok(Self::power_sum(lambda, n)),
            Basis::Schur => Self::schur(lambda, n),
        }
    }

    /// Builds from explicit coefficients, dropping zeros.
    pub fn from_terms(n: usize, degree: usize, terms: impl IntoIterator<Item = (Partition, Rat)>) -> Result<Self> {
        let mut f = Self::zero(n, degree);
        for (mu, c) in terms {
            mu_ok(&mu, n)?;
            if mu.weight() != degree {
                return domain("term degree differs from the declared degree");
            }
            if !c.is_zero() {
                *f.coeffs.entry(mu).or_insert_with(Rat::zero) += c;
            }
        }
        f.coeffs.retain(|_, c| !c.is_zero());
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, mu: &Partition) -> Rat {
        self.coeffs.get(mu).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        assert_eq!(self.n, other.n, "variable counts differ");
        if self.is_zero() {
            let mut r = other.scale(&Rat::from_integer(BigInt::from(sign)));
            r.degree = other.degree;
            return r;
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degrees differ");
        let mut r = self.clone();
        for (mu, c) in &other.coeffs {
            let e = r.coeffs.entry(mu.clone()).or_insert_with(Rat::zero);
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        r.coeffs.retain(|_, c| !c.is_zero());
        r
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut r = Self::zero(self.n, self.degree);
        if !k.is_zero() {
            for (mu, c) in &self.coeffs {
                r.coeffs.insert(mu.clone(), c * k);
            }
        }
        r
    }

    /// Product in `n` variables: the coefficient of `m_kappa` is read off as
    /// the coefficient of the monomial `z^kappa`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "variable counts differ");
        let n = self.n;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(n, degree);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let mut expanded: Vec<(Vec<usize>, &Rat)> = Vec::new();
        for (mu, c) in &self.coeffs {
            for a in distinct_permutations(&mu.padded(n)) {
                expanded.push((a, c));
            }
        }
        for kappa in partitions_of(degree, n) {
            let kp = kappa.padded(n);
            let mut s = Rat::zero();
            for (a, c) in &expanded {
                if a.iter().zip(&kp).all(|(x, y)| x <= y) {
                    let beta: Vec<usize> = kp.iter().zip(a).map(|(y, x)| y - x).collect();
                    if let Some(d) = other.coeffs.get(&Partition::sorted(&beta)) {
                        s += *c * d;
                    }
                }
            }
            if !s.is_zero() {
                out.coeffs.insert(kappa, s);
            }
        }
        out
    }

    /// Sets the last variables to zero, keeping `n` of them.
    pub fn restrict(&self, n: usize) -> Self {
        let mut r = Self::zero(n, self.degree);
        for (mu, c) in &self.coeffs {
            if mu.len() <= n {
                r.coeffs.insert(mu.clone(), c.clone());
            }
        }
        r
    }

    /// Multiplication by `z_1 ... z_n`.
    pub fn mul_top_elementary(&self) -> Self {
        let mut r = Self::zero(self.n, self.degree + self.n);
        for (mu, c) in &self.coeffs {
            let shifted: Vec<usize> = mu.padded(self.n).iter().map(|p| p + 1).collect();
            r.coeffs.insert(Partition::from_padded(&shifted).unwrap(), c.clone());
        }
        r
    }

    fn eval_generic<T>(&self, z: &[T], lift: impl Fn(&Rat) -> T) -> Result<T>
    where
        T: Clone + Zero + One + for<'a> Mul<&'a T, Output = T> + Add<Output = T>,
    {
        if z.len() != self.n {
            return domain("point has the wrong number of coordinates");
        }
        let mut s = T::zero();
        for (mu, c) in &self.coeffs {
            s = s + lift(c) * &monomial_value(mu, z);
        }
        Ok(s)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, z: &[Rat]) -> Result<Rat> {
        self.eval_generic(z, |c| c.clone())
    }

    pub fn eval_complex(&self, z: &[Scalar]) -> Result<Scalar> {
        self.eval_generic(z, |c| Scalar::new(rat_to_f64(c), 0.0))
    }
}

/// `m_mu(z)`, summing `z^alpha` over distinct rearrangements of `mu`.
pub fn monomial_value<T>(mu: &Partition, z: &[T]) -> T
where
    T: Clone + Zero + One + for<'a> Mul<&'a T, Output = T> + Add<Output = T>,
{
    if mu.len() > z.len() {
        return T::zero();
    }
    let mut s = T::zero();
    for a in distinct_permutations(&mu.padded(z.len())) {
        let mut m = T::one();
        for (zi, &e) in z.iter().zip(&a) {
            for _ in 0..e {
                m = m * zi;
            }
        }
        s = s + m;
    }
    s
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// `x^k` for integer `k >= 0`, with `0^0 = 1`.
pub fn rpow(x: &Rat, k: usize) -> Rat {
    let mut r = Rat::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

/// Exact `(a;q)_k`.
pub fn rpoch(a: &Rat, q: &Rat, k: usize) -> Rat {
    let mut r = Rat::one();
    let mut qi = Rat::one();
    for _ in 0..k {
        r *= Rat::one() - a * &qi;
        qi *= q;
    }
    r
}
