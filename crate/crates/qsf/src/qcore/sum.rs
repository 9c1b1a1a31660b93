use super::Scalar;

/// Compensated (Kahan) accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: Scalar,
    comp: Scalar,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Scalar) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Scalar {
        self.sum
    }
}

/// Kahan sum with the stopping rule used by all infinite series: done once
/// eight consecutive terms are each below `tol` times the partial sum.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    acc: Kahan,
    tol: f64,
    small: u32,
    count: usize,
    max_term: f64,
}

impl SeriesSum {
    pub const RUN: u32 = 8;

    pub fn new(tol: f64) -> Self {
        SeriesSum { acc: Kahan::new(), tol, small: 0, count: 0, max_term: 0.0 }
    }

    /// Adds a term; returns true when the stopping rule is met.
    pub fn push(&mut self, t: Scalar) -> bool {
        self.acc.add(t);
        self.count += 1;
        let m = t.norm();
        if m > self.max_term {
            self.max_term = m;
        }
        if m == 0.0 || m <= self.tol * self.acc.value().norm() {
            self.small += 1;
        } else {
            self.small = 0;
        }
        self.small >= Self::RUN
    }

    pub fn value(&self) -> Scalar {
        self.acc.value()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Round-off bound: largest term times machine epsilon times term count.
    pub fn error_bound(&self) -> f64 {
        self.max_term * f64::EPSILON * (self.count.max(1) as f64)
    }
}
