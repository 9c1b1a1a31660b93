//! Double-double arithmetic (about 32 significant digits), used where a
//! sum cancels far below the size of its terms.

use core::ops::{Add, Div, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use super::Scalar;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        DD { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> Self {
        DD::new(x)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, o: DD) -> DD {
        self + (-o)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self - o * DD::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DD::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DDC {
    pub re: DD,
    pub im: DD,
}

impl DDC {
    pub const ZERO: DDC = DDC { re: DD::ZERO, im: DD::ZERO };
    pub const ONE: DDC = DDC { re: DD::ONE, im: DD::ZERO };

    pub fn to_scalar(self) -> Scalar {
        Scalar::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Modulus, rounded to double.
    pub fn norm(self) -> f64 {
        self.to_scalar().norm()
    }

    pub fn powi(self, k: i64) -> DDC {
        if k < 0 {
            return DDC::ONE / self.powi(-k);
        }
        let mut base = self;
        let mut acc = DDC::ONE;
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl From<Scalar> for DDC {
    fn from(z: Scalar) -> Self {
        DDC { re: DD::new(z.re), im: DD::new(z.im) }
    }
}

impl From<f64> for DDC {
    fn from(x: f64) -> Self {
        DDC { re: DD::new(x), im: DD::ZERO }
    }
}

impl Add for DDC {
    type Output = DDC;
    fn add(self, o: DDC) -> DDC {
        DDC { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for DDC {
    type Output = DDC;
    fn sub(self, o: DDC) -> DDC {
        DDC { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for DDC {
    type Output = DDC;
    fn neg(self) -> DDC {
        DDC { re: -self.re, im: -self.im }
    }
}

impl Mul for DDC {
    type Output = DDC;
    fn mul(self, o: DDC) -> DDC {
        if self.im == DD::ZERO && o.im == DD::ZERO {
            return DDC { re: self.re * o.re, im: DD::ZERO };
        }
        DDC { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for DDC {
    type Output = DDC;
    fn div(self, o: DDC) -> DDC {
        if o.im == DD::ZERO {
            return DDC { re: self.re / o.re, im: self.im / o.re };
        }
        // scale by a power of two to keep |o|^2 in range
        let m = o.re.hi.abs().max(o.im.hi.abs());
        let s = DD::new(2f64.powi(-(m.log2().floor() as i32)));
        let (or, oi) = (o.re * s, o.im * s);
        let d = or * or + oi * oi;
        let num = self * DDC { re: or, im: -oi };
        DDC { re: num.re * s / d, im: num.im * s / d }
    }
}
