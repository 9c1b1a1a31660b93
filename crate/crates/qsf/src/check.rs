//! Outcome of a single identity check.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

#[allow(unused_imports)]
use num_traits::Float;

use crate::qcore::{re, Scalar};

/// Smallest tolerance any check may use.
pub const TOL_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

/// A parameter value echoed into reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Int(i64),
    Real(f64),
    Complex(Scalar),
    Text(String),
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<Scalar> for Param {
    fn from(v: Scalar) -> Self {
        if v.im == 0.0 {
            Param::Real(v.re)
        } else {
            Param::Complex(v)
        }
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

pub type Params = BTreeMap<String, Param>;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: String,
    /// Human readable name of the identity.
    pub label: String,
    pub params: Params,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub status: Status,
    pub note: String,
}

/// `|a-b| / max(|a|, |b|, 1e-300)`.
pub fn rel_err(a: Scalar, b: Scalar) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

impl CheckResult {
    /// Numeric comparison; passes iff the relative error is within `tol`.
    pub fn compare(id: &str, lhs: Scalar, rhs: Scalar, tol: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel = rel_err(lhs, rhs);
        let status = if rel <= tol { Status::Pass } else { Status::Fail };
        CheckResult {
            id: id.to_string(),
            label: String::new(),
            params: Params::new(),
            lhs,
            rhs,
            abs_err,
            rel_err: rel,
            tol,
            status,
            note: String::new(),
        }
    }

    /// Residual check: `value` should vanish relative to `scale`.
    pub fn residual(id: &str, value: Scalar, scale: f64, tol: f64) -> Self {
        let mut r = Self::compare(id, value, re(0.0), tol);
        r.rel_err = value.norm() / scale.max(1e-300);
        r.status = if r.rel_err <= tol { Status::Pass } else { Status::Fail };
        r.note = alloc::format!("residual scaled by {scale:.3e}");
        r
    }

    /// Exact comparison of `compared` entries of which `agreed` matched.
    pub fn exact(id: &str, compared: usize, agreed: usize) -> Self {
        let mut r = Self::compare(id, re(compared as f64), re(agreed as f64), TOL_FLOOR);
        if compared != agreed {
            r.status = Status::Fail;
        }
        r.note = String::from("exact: lhs = entries compared, rhs = entries equal");
        r
    }

    /// Exact equality decided elsewhere; `lhs` and `rhs` are shown rounded.
    pub fn exact_values(id: &str, lhs: Scalar, rhs: Scalar, equal: bool) -> Self {
        let mut r = Self::compare(id, lhs, rhs, TOL_FLOOR);
        r.status = if equal { Status::Pass } else { Status::Fail };
        if equal {
            r.abs_err = 0.0;
            r.rel_err = 0.0;
        }
        r.note = String::from("exact rational comparison");
        r
    }

    /// A yes/no property of `value`, such as positivity of a derived norm.
    pub fn predicate(id: &str, value: Scalar, holds: bool, what: &str) -> Self {
        let mut r = Self::compare(id, value, value, TOL_FLOOR);
        if !holds {
            r.status = Status::Fail;
        }
        r.note = what.to_string();
        r
    }

    pub fn skip(id: &str, reason: &str) -> Self {
        let mut r = Self::compare(id, re(0.0), re(0.0), TOL_FLOOR);
        r.status = Status::Skip;
        r.rel_err = 0.0;
        r.note = reason.to_string();
        r
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn with_param(mut self, key: &str, v: impl Into<Param>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        if self.note.is_empty() {
            self.note = note.to_string();
        } else {
            self.note = alloc::format!("{note}; {}", self.note);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
