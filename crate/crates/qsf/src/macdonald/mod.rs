//! Symmetric functions and Macdonald polynomials for `A_{n-1}`.
//!
//! Coefficients are exact rationals with `q, t` specialised to rational
//! values. `P_lambda` is built two ways: from the `(q,t)` inner product on
//! power sums, and as an eigenvector of the q-difference operator in `n`
//! variables. Also here: the `A_r` constant term and Gustafson's integral.

mod checks;
mod ct;
mod gustafson;
mod linalg;
mod partition;
mod poly;
mod sym;

#[cfg(test)]
mod tests;

pub type Rat = num_rational::BigRational;

pub use checks::{
    hall_littlewood_value, kostka_check, macdonald_p_hl, macdonald_property_checks, macdonald_suite,
    schur_bialternant_check, torus_norm, MacdonaldContext, EIGEN_TOL, TORUS_TOL, ULTRA_TOL,
};
pub use ct::{constant_term, constant_term_check, constant_term_rhs, positive_roots, root_factor, LaurentMulti, SUPPORT_CAP};
pub use gustafson::{
    gustafson_aw_check, gustafson_integral, gustafson_product, gustafson_quadrature, GRID_BUDGET, GUSTAFSON_AW_TOL,
    GUSTAFSON_TOL,
};
pub use linalg::{det, inverse, solve, RatMatrix};
pub use partition::{distinct_permutations, dominance, dominance_leq, dominated, partitions_of, Partition};
pub use poly::{apply_operator, eigenvalue, macdonald_p, macdonald_p_operator, operator_matrix, DegreeData, QTInnerProduct};
pub use sym::{monomial_value, rat_to_f64, rpoch, rpow, Basis, SymFunc};

/// Parses `A/B` or an integer into an exact rational.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let bad = || crate::QError::Domain(alloc::format!("not a rational: {s}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}
