//! Compensated accumulation with the common truncation rule for every series in the crate.

pub const MAX_TERMS: usize = 10_000;
const SMALL_RUN: usize = 3;
const REL_CUTOFF: f64 = 1e-16;

/// Neumaier-compensated running sum that decides when a series may stop:
/// three consecutive terms below `1e-16·|partial sum|`.
#[derive(Debug, Clone, Default)]
pub struct SeriesAccumulator {
    sum: f64,
    comp: f64,
    small_run: usize,
    terms: usize,
    max_abs_term: f64,
}

impl SeriesAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a term; returns `true` once the stopping rule is met.
    pub fn push(&mut self, term: f64) -> bool {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
        self.terms += 1;
        self.max_abs_term = self.max_abs_term.max(term.abs());
        if term.abs() <= REL_CUTOFF * self.value().abs() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= SMALL_RUN
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn exhausted(&self) -> bool {
        self.terms >= MAX_TERMS
    }

    /// Largest term magnitude seen; `max_abs_term / |value|` bounds the cancellation loss.
    pub fn max_abs_term(&self) -> f64 {
        self.max_abs_term
    }
}
