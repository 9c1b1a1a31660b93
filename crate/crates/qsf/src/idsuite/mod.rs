//! Registry of identity checks.
//!
//! Every entry evaluates both sides of one identity (or runs a small
//! battery of related checks) at seeded parameter points. Points are drawn
//! from a ChaCha8 stream keyed by the run seed, the case id and the point
//! index, so a report depends only on `(filter, seed, points)`.

mod others;
mod series;

#[cfg(test)]
mod tests;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::{CheckResult, Param, Params, Status, TOL_FLOOR};
use crate::error::{domain, QError, Result};
use crate::qcore::{re, Scalar};

/// A parameter point: named values echoed into the report.
pub type Point = Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Category {
    Evaluation,
    Transformation,
    Limit,
    Orthogonality,
    Formal,
    Macdonald,
    Elliptic,
    Audit,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Evaluation => "evaluation",
            Category::Transformation => "transformation",
            Category::Limit => "limit",
            Category::Orthogonality => "orthogonality",
            Category::Formal => "formal",
            Category::Macdonald => "macdonald",
            Category::Elliptic => "elliptic",
            Category::Audit => "audit",
        }
    }
}

/// How the parameter points of a case are produced.
#[derive(Clone, Copy)]
pub enum Points {
    /// Seeded draws; the count comes from the run or the case default.
    Sampled { sampler: fn(&mut Draw), default: usize },
    /// A fixed list, run in full whatever the requested count.
    Fixed(fn() -> Vec<Point>),
}

/// What a case computes at one point.
#[derive(Clone, Copy)]
pub enum Eval {
    /// Both sides of one identity, compared at the case tolerance.
    Sides(fn(&Point) -> Result<(Scalar, Scalar)>),
    /// A battery of checks that carry their own ids and tolerances.
    Checks(fn(&Point) -> Result<Vec<CheckResult>>),
}

#[derive(Clone, Copy)]
pub struct IdentityCase {
    pub id: &'static str,
    /// Printed name of the identity.
    pub paper_eq: &'static str,
    pub category: Category,
    pub tol: f64,
    pub points: Points,
    /// Returns a reason when the point lies outside the validity region.
    pub constraint: Option<fn(&Point) -> Option<&'static str>>,
    pub eval: Eval,
    /// Reading notes attached to every result.
    pub note: &'static str,
}

impl IdentityCase {
    pub(crate) const fn sides(
        id: &'static str,
        paper_eq: &'static str,
        category: Category,
        tol: f64,
        sampler: fn(&mut Draw),
        default: usize,
        eval: fn(&Point) -> Result<(Scalar, Scalar)>,
    ) -> Self {
        IdentityCase {
            id,
            paper_eq,
            category,
            tol,
            points: Points::Sampled { sampler, default },
            constraint: None,
            eval: Eval::Sides(eval),
            note: "",
        }
    }

    pub(crate) const fn checks(
        id: &'static str,
        paper_eq: &'static str,
        category: Category,
        points: Points,
        eval: fn(&Point) -> Result<Vec<CheckResult>>,
    ) -> Self {
        IdentityCase { id, paper_eq, category, tol: TOL_FLOOR, points, constraint: None, eval: Eval::Checks(eval), note: "" }
    }

    pub(crate) const fn with_constraint(mut self, c: fn(&Point) -> Option<&'static str>) -> Self {
        self.constraint = Some(c);
        self
    }

    pub(crate) const fn with_note(mut self, note: &'static str) -> Self {
        self.note = note;
        self
    }

    /// Whether `filter` selects this case: a category name, or a
    /// case-insensitive prefix of the id.
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_ascii_uppercase();
        self.category.as_str().eq_ignore_ascii_case(filter) || self.id.starts_with(f.as_str())
    }

    /// The points this case runs at for a given seed.
    pub fn points_for(&self, seed: u64, count: Option<usize>) -> Vec<Point> {
        match self.points {
            Points::Fixed(f) => f(),
            Points::Sampled { default, .. } => {
                (0..count.unwrap_or(default)).filter_map(|i| self.draw(seed, i, 0)).collect()
            }
        }
    }

    /// Draw `attempt` of sampled point `index`; attempt 0 is the point
    /// [`Self::points_for`] returns. `None` for fixed cases.
    pub fn draw(&self, seed: u64, index: usize, attempt: u32) -> Option<Point> {
        let Points::Sampled { sampler, .. } = self.points else {
            return None;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(self.id));
        rng.set_stream(index as u64 | (attempt as u64) << 32);
        let mut d = Draw { rng, point: Point::new() };
        sampler(&mut d);
        Some(d.point)
    }
}

/// 64-bit FNV-1a, used to decorrelate the streams of different cases.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Seeded draws that record themselves into the point.
pub struct Draw {
    rng: ChaCha8Rng,
    pub point: Point,
}

impl Draw {
    pub fn new(seed: u64) -> Self {
        Draw { rng: ChaCha8Rng::seed_from_u64(seed), point: Point::new() }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn sign(&mut self) -> f64 {
        if self.rng.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn below(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.rng.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn real(&mut self, key: &str, lo: f64, hi: f64) -> f64 {
        let v = self.uniform(lo, hi);
        self.set(key, v);
        v
    }

    /// Magnitude uniform in `[lo, hi]`, random sign.
    pub fn signed(&mut self, key: &str, lo: f64, hi: f64) -> f64 {
        let v = self.uniform(lo, hi) * self.sign();
        self.set(key, v);
        v
    }

    /// Modulus uniform in `[lo, hi]`, argument uniform.
    pub fn complex(&mut self, key: &str, lo: f64, hi: f64) -> Scalar {
        let r = self.uniform(lo, hi);
        let th = self.uniform(-core::f64::consts::PI, core::f64::consts::PI);
        let v = Scalar::from_polar(r, th);
        self.set(key, v);
        v
    }

    pub fn int(&mut self, key: &str, lo: i64, hi: i64) -> i64 {
        let v = self.below(lo, hi);
        self.set(key, v);
        v
    }

    pub fn set(&mut self, key: &str, v: impl Into<Param>) {
        self.point.insert(key.to_string(), v.into());
    }
}

pub(crate) fn point(entries: &[(&str, Param)]) -> Point {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub(crate) fn get_real(p: &Point, key: &str) -> Result<f64> {
    match p.get(key) {
        Some(Param::Real(v)) => Ok(*v),
        Some(Param::Int(v)) => Ok(*v as f64),
        _ => domain(alloc::format!("missing real parameter {key}")),
    }
}

pub(crate) fn get_scalar(p: &Point, key: &str) -> Result<Scalar> {
    match p.get(key) {
        Some(Param::Complex(v)) => Ok(*v),
        Some(Param::Real(v)) => Ok(re(*v)),
        Some(Param::Int(v)) => Ok(re(*v as f64)),
        _ => domain(alloc::format!("missing parameter {key}")),
    }
}

pub(crate) fn get_int(p: &Point, key: &str) -> Result<i64> {
    match p.get(key) {
        Some(Param::Int(v)) => Ok(*v),
        _ => domain(alloc::format!("missing integer parameter {key}")),
    }
}

pub(crate) fn get_usize(p: &Point, key: &str) -> Result<usize> {
    let v = get_int(p, key)?;
    if v < 0 {
        return domain(alloc::format!("parameter {key} must be nonnegative"));
    }
    Ok(v as usize)
}

pub(crate) fn get_text<'a>(p: &'a Point, key: &str) -> Result<&'a str> {
    match p.get(key) {
        Some(Param::Text(v)) => Ok(v.as_str()),
        _ => domain(alloc::format!("missing text parameter {key}")),
    }
}

/// Round-off unit used to bound cancellation in a sum of double terms.
const ROUNDOFF: f64 = 1e-15;

/// Domain error (reported as SKIP) when a sum cancels so much that
/// `ROUNDOFF * sum |t_k|` exceeds `tol * |sum t_k|`.
///
/// Used where the inputs themselves carry that round-off: a balancing
/// parameter computed from the others, or a sum accumulated in double.
/// The point then decides nothing about the identity.
pub(crate) fn guard(terms: &[Scalar], tol: f64) -> Result<()> {
    guard_scale(terms.iter().sum(), terms.iter().map(|t| t.norm()).sum(), ROUNDOFF, tol)
}

/// [`guard`] for a sum already reduced to its value and `sum |t_k|`, with
/// the round-off unit `eps` of the arithmetic that produced it.
pub(crate) fn guard_scale(value: Scalar, scale: f64, eps: f64, tol: f64) -> Result<()> {
    if eps * scale > tol * value.norm() {
        let k = scale / value.norm().max(1e-300);
        return domain(alloc::format!("sum cancels: sum |t_k| / |sum t_k| = {k:.1e} exceeds tol / {eps:.0e}"));
    }
    Ok(())
}

/// All registered cases, sorted by id.
pub fn registry() -> Vec<IdentityCase> {
    let mut all = series::cases();
    all.extend(others::cases());
    all.sort_by(|a, b| a.id.cmp(b.id));
    all
}

pub fn find_case(id: &str) -> Option<IdentityCase> {
    registry().into_iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

fn error_result(id: &str, e: &QError) -> CheckResult {
    match e {
        QError::Domain(_) | QError::Convergence { .. } => CheckResult::skip(id, &e.to_string()),
        _ => {
            let mut r = CheckResult::compare(id, re(0.0), re(0.0), TOL_FLOOR);
            r.status = Status::Fail;
            r.abs_err = f64::INFINITY;
            r.rel_err = f64::INFINITY;
            r.note = alloc::format!("error: {e}");
            r
        }
    }
}

fn with_point(mut r: CheckResult, p: &Point, note: &str) -> CheckResult {
    for (k, v) in p {
        r.params.entry(k.clone()).or_insert_with(|| v.clone());
    }
    if !note.is_empty() {
        r = r.with_note(note);
    }
    r
}

/// Evaluates a case at one point. `Sides` cases give one result; `Checks`
/// cases give one per inner check. A tolerance override applies to
/// `Sides` cases only, and never goes below the floor.
pub fn run_case(case: &IdentityCase, p: &Point, tol: Option<f64>) -> Vec<CheckResult> {
    if let Some(reason) = case.constraint.and_then(|c| c(p)) {
        let r = CheckResult::skip(case.id, &alloc::format!("constraint: {reason}"));
        return alloc::vec![with_point(r, p, "")];
    }
    let out = match case.eval {
        Eval::Sides(f) => {
            let tol = tol.unwrap_or(case.tol).max(TOL_FLOOR);
            match f(p) {
                Ok((l, r)) => alloc::vec![CheckResult::compare(case.id, l, r, tol)],
                Err(e) => alloc::vec![error_result(case.id, &e)],
            }
        }
        Eval::Checks(f) => match f(p) {
            Ok(v) if !v.is_empty() => v,
            Ok(_) => alloc::vec![CheckResult::skip(case.id, "no checks produced")],
            Err(e) => alloc::vec![error_result(case.id, &e)],
        },
    };
    out.into_iter()
        .map(|mut r| {
            if r.label.is_empty() {
                r.label = case.paper_eq.to_string();
            }
            with_point(r, p, case.note)
        })
        .collect()
}

/// One line of a suite report.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEntry {
    pub case_id: &'static str,
    pub paper_eq: &'static str,
    pub category: Category,
    pub point_index: usize,
    pub result: CheckResult,
}

/// Redraws allowed per sampled point before its skip is reported.
pub const MAX_REDRAWS: u32 = 32;

/// One unit of work: a case at one of its points.
#[derive(Clone)]
pub struct Job {
    pub case: IdentityCase,
    pub seed: u64,
    pub point_index: usize,
    pub point: Point,
}

impl Job {
    /// Runs the case. A sampled point that is skipped, because it falls
    /// outside the validity region or the sum cancels below round-off, is
    /// replaced by a fresh draw; the note records how many were rejected.
    pub fn run(&self) -> Vec<SuiteEntry> {
        let mut out = run_case(&self.case, &self.point, None);
        let mut rejected: Option<(u32, String)> = None;
        let mut attempt = 0;
        while out.iter().any(|r| r.status == Status::Skip) && attempt < MAX_REDRAWS {
            attempt += 1;
            let Some(p) = self.case.draw(self.seed, self.point_index, attempt) else {
                break;
            };
            let first = rejected.take().map_or_else(|| out[0].note.clone(), |(_, n)| n);
            rejected = Some((attempt, first));
            out = run_case(&self.case, &p, None);
        }
        out.into_iter()
            .map(|mut result| {
                if let Some((k, first)) = &rejected {
                    if result.status != Status::Skip {
                        result.params.insert("redraws".to_string(), Param::Int(*k as i64));
                        result = result.with_note(&alloc::format!("{k} draw(s) rejected, first: {first}"));
                    }
                }
                SuiteEntry {
                    case_id: self.case.id,
                    paper_eq: self.case.paper_eq,
                    category: self.case.category,
                    point_index: self.point_index,
                    result,
                }
            })
            .collect()
    }
}

/// The jobs of a run in report order: by case id, then point index.
pub fn plan(filter: Option<&str>, seed: u64, points: Option<usize>) -> Vec<Job> {
    let mut jobs = Vec::new();
    for case in registry() {
        if filter.is_some_and(|f| !case.matches(f)) {
            continue;
        }
        for (i, p) in case.points_for(seed, points).into_iter().enumerate() {
            jobs.push(Job { case, seed, point_index: i, point: p });
        }
    }
    jobs
}

/// Runs every selected case serially; callers wanting parallelism run the
/// jobs of [`plan`] themselves and concatenate in plan order.
pub fn run_all(filter: Option<&str>, seed: u64, points: Option<usize>) -> Vec<SuiteEntry> {
    plan(filter, seed, points).iter().flat_map(Job::run).collect()
}

/// `(pass, fail, skip)` counts.
pub fn summary(entries: &[SuiteEntry]) -> (usize, usize, usize) {
    let mut s = (0, 0, 0);
    for e in entries {
        match e.result.status {
            Status::Pass => s.0 += 1,
            Status::Fail => s.1 += 1,
            Status::Skip => s.2 += 1,
        }
    }
    s
}
