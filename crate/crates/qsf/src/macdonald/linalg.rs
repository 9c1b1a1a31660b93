//! Gaussian elimination over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;

/// Solves `a x = b` for square `a`; `None` if `a` is singular.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: RatMatrix = a.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rat::one() / m[col][col].clone();
        for x in m[col].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(solve(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn matmul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    let mut s = Rat::zero();
                    for l in 0..k {
                        if !row[l].is_zero() && !b[l][j].is_zero() {
                            s += &row[l] * &b[l][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(a: &RatMatrix) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Exact rational determinant by elimination.
pub fn det(a: &RatMatrix) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d *= m[col][col].clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    d
}
