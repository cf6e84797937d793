//! Summation helpers shared by the series evaluators.

use crate::error::{Error, Result};

/// Compensated (Kahan–Babuška–Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Truncation policy for the infinite series in the exact error-probability expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    /// Cap on the outer sum over the specular index `m`.
    pub max_terms_m: usize,
    /// Cap on the inner DPSK sum over `p`.
    pub max_terms_p: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-10,
            max_terms_m: 500,
            max_terms_p: 2000,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Config(format!(
                "series rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms_m == 0 || self.max_terms_p == 0 {
            return Err(Error::Config("series term caps must be positive".into()));
        }
        Ok(())
    }
}

/// Number of consecutive negligible terms required before a series is declared converged.
pub(crate) const SMALL_RUN: usize = 3;

/// Accumulates series terms and applies the stopping rule: a term is negligible when
/// `|term| < rel_tol·|partial sum|`, and the series has converged after
/// [`SMALL_RUN`] negligible terms in a row.
#[derive(Debug, Clone)]
pub(crate) struct SeriesSum {
    sum: NeumaierSum,
    abs_sum: f64,
    rel_tol: f64,
    run: usize,
    terms: usize,
    tail: f64,
}

impl SeriesSum {
    pub fn new(rel_tol: f64) -> Self {
        SeriesSum {
            sum: NeumaierSum::default(),
            abs_sum: 0.0,
            rel_tol,
            run: 0,
            terms: 0,
            tail: 0.0,
        }
    }

    /// Adds a term; returns `true` once the series has converged.
    pub fn push(&mut self, term: f64) -> bool {
        self.sum.add(term);
        self.abs_sum += term.abs();
        self.terms += 1;
        let partial = self.sum.value().abs();
        if term.abs() <= self.rel_tol * partial || (term == 0.0 && partial == 0.0 && self.terms > 1) {
            self.run += 1;
            self.tail += term.abs();
        } else {
            self.run = 0;
            self.tail = 0.0;
        }
        self.run >= SMALL_RUN
    }

    pub fn value(&self) -> f64 {
        self.sum.value()
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Sum of the magnitudes of the trailing negligible terms.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Ratio of the summed term magnitudes to the magnitude of the sum.
    pub fn cancellation(&self) -> f64 {
        let v = self.sum.value().abs();
        if v == 0.0 {
            f64::INFINITY
        } else {
            self.abs_sum / v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_lost_bits() {
        let mut s = NeumaierSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn stops_after_three_small_terms() {
        let mut s = SeriesSum::new(1e-3);
        assert!(!s.push(1.0));
        assert!(!s.push(1e-4));
        assert!(!s.push(1e-4));
        assert!(!s.push(0.5));
        assert!(!s.push(1e-4));
        assert!(!s.push(1e-5));
        assert!(s.push(1e-6));
        assert_eq!(s.terms(), 7);
    }

    #[test]
    fn single_accidental_zero_does_not_stop() {
        let mut s = SeriesSum::new(1e-12);
        s.push(1.0);
        assert!(!s.push(0.0));
        assert!(!s.push(-0.5));
    }

    #[test]
    fn config_validation() {
        assert!(SeriesConfig::default().validate().is_ok());
        let bad = SeriesConfig {
            rel_tol: 0.0,
            ..SeriesConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
