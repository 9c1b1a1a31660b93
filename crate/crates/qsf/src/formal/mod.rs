//! Exact arithmetic: truncated power series over the rationals, Laurent
//! polynomials, partition counts and two q-commuting variables.
//!
//! No floating point is used anywhere in this module.

mod fps;
mod laurent;
mod nc;
mod partitions;
mod qpoly;

pub use fps::{inv_qfactorial, poch_series, Fps, PochKind};
pub use laurent::{triple_product_expansion, triple_product_formal, LaurentPoly};
pub use nc::{nc_binomial_check, nc_exp_checks, normal_order_word, NCPoly};
pub use partitions::{partition_count_table, partition_counts, rr_check, rr_series, Variant, RR_CAP};
pub use qpoly::{QPoly, RatFunc};

#[cfg(test)]
mod tests;
