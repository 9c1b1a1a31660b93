//! Polynomials in two q-commuting variables, `xy = q yx`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::qpoly::{QPoly, RatFunc};

/// Linear combination of normal-ordered words `y^a x^b`.
#[derive(Debug, Clone, Default)]
pub struct NCPoly {
    terms: BTreeMap<(u32, u32), RatFunc>,
}

impl PartialEq for NCPoly {
    fn eq(&self, o: &Self) -> bool {
        let keys: alloc::collections::BTreeSet<_> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.into_iter().all(|k| match (self.terms.get(k), o.terms.get(k)) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) | (None, Some(a)) => a.is_zero(),
            (None, None) => true,
        })
    }
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(0, 0, RatFunc::one())
    }

    /// `c y^a x^b`
    pub fn word(a: u32, b: u32, c: RatFunc) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn x() -> Self {
        Self::word(0, 1, RatFunc::one())
    }

    pub fn y() -> Self {
        Self::word(1, 0, RatFunc::one())
    }

    fn add_term(&mut self, a: u32, b: u32, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(a, b)) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert((a, b), v);
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> RatFunc {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RatFunc)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &o.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    /// Product truncated to total degree `max_deg`: moving `x^b` past `y^c`
    /// costs `q^{bc}`.
    pub fn mul_trunc(&self, o: &Self, max_deg: u32) -> Self {
        let mut out = Self::zero();
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &o.terms {
                if a + b + c + d > max_deg {
                    continue;
                }
                let w = &(u * v) * &RatFunc::q_pow((b * c) as usize);
                out.add_term(a + c, b + d, w);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_trunc(o, u32::MAX)
    }

    pub fn pow_trunc(&self, n: u32, max_deg: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul_trunc(self, max_deg))
    }
}

/// Normal form of a word given letter by letter (`true` = x), found by
/// counting the x-before-y pairs rather than by multiplication.
pub fn normal_order_word(word: &[bool]) -> NCPoly {
    let mut inversions = 0usize;
    let mut xs = 0u32;
    let mut ys = 0u32;
    for &is_x in word {
        if is_x {
            xs += 1;
        } else {
            inversions += xs as usize;
            ys += 1;
        }
    }
    NCPoly::word(ys, xs, RatFunc::q_pow(inversions))
}

/// `(x+y)^n` against `sum_k [n k]_q y^{n-k} x^k`.
pub fn nc_binomial_check(n: u32) -> bool {
    let lhs = NCPoly::x().add(&NCPoly::y()).pow_trunc(n, n);
    let mut rhs = NCPoly::zero();
    for k in 0..=n {
        let c = RatFunc::from_poly(QPoly::q_binomial(n as usize, k as usize));
        rhs = rhs.add(&NCPoly::word(n - k, k, c));
    }
    lhs == rhs
}

fn exp_series(arg: &NCPoly, big: bool, deg: u32) -> NCPoly {
    let mut out = NCPoly::zero();
    let mut power = NCPoly::one();
    for k in 0..=deg {
        let mut c = RatFunc::new(QPoly::one(), QPoly::q_factorial(k as usize));
        if big {
            c = &c * &RatFunc::q_pow((k * k.saturating_sub(1) / 2) as usize);
        }
        out = out.add(&power.scale(&c));
        power = power.mul_trunc(arg, deg);
    }
    out
}

/// The four functional equations of `e_q` and `E_q` for `xy = qyx`, each
/// compared to total degree `order`:
/// `e(x+y) = e(y)e(x)`, `E(x+y) = E(x)E(y)`, `e(x+y-yx) = e(x)e(y)` and
/// `E(x+y+yx) = E(y)E(x)`.
pub fn nc_exp_checks(order: u32) -> Vec<bool> {
    let (x, y) = (NCPoly::x(), NCPoly::y());
    let s = x.add(&y);
    let yx = y.mul(&x);
    let minus_one = RatFunc::from_poly(QPoly::from_i64(&[-1]));
    let s_minus = s.add(&yx.scale(&minus_one));
    let s_plus = s.add(&yx);
    let (ex, ey) = (exp_series(&x, false, order), exp_series(&y, false, order));
    let (bx, by) = (exp_series(&x, true, order), exp_series(&y, true, order));
    alloc::vec![
        exp_series(&s, false, order) == ey.mul_trunc(&ex, order),
        exp_series(&s, true, order) == bx.mul_trunc(&by, order),
        exp_series(&s_minus, false, order) == ex.mul_trunc(&ey, order),
        exp_series(&s_plus, true, order) == by.mul_trunc(&bx, order),
    ]
}
