//! q-special functions with machine-checked identities.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//! - [`qcore`]: q-shifted factorials, q-binomials, Jackson derivative and integral,
//! - [`qseries`]: basic hypergeometric and bilateral series, q-Bessel, q-gamma,
//! - [`qortho`]: q-orthogonal polynomial families and their orthogonality,
//! - [`formal`]: exact power series, partitions and q-commuting variables,
//! - [`macdonald`]: symmetric functions, Macdonald polynomials, constant terms,
//! - [`elliptic`]: theta functions, elliptic hypergeometric series, elliptic gamma,
//! - [`idsuite`]: the seeded identity-check registry.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod check;
pub mod elliptic;
pub mod error;
pub mod formal;
pub mod idsuite;
pub mod macdonald;
pub mod qortho;
pub mod qcore;
pub mod qseries;

pub use error::{QError, Result};
pub use qcore::{re, QBase, Scalar};
