//! Real-argument special functions: modified Bessel `I_n`, log-Gamma, Gauss ₂F₁
//! and Appell F₁.
//!
//! Everything here is a pure function of its arguments.

mod appell;
mod bessel;
mod gamma;
mod hyp2f1;

pub use appell::appell_f1;
pub use bessel::{bessel_i, bessel_i_scaled, bessel_i_scaled_seq, MAX_ORDER};
pub use gamma::{ln_gamma, ln_pochhammer};
pub use hyp2f1::{gauss_2f1, gauss_2f1_poly, hyp2f1_three_halves};

use crate::error::{Error, Result};

/// Accuracy and effort limits for the special-function kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub rel_tol: f64,
    /// Cap on the number of terms of any power series.
    pub max_terms: usize,
    /// Cap on the bisection depth of the adaptive quadrature.
    pub quad_max_depth: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            rel_tol: 1e-12,
            max_terms: 10_000,
            quad_max_depth: 40,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Config(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms == 0 || self.quad_max_depth == 0 {
            return Err(Error::Config(
                "max_terms and quad_max_depth must be positive".into(),
            ));
        }
        Ok(())
    }
}
