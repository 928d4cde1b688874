//! Independent numerical oracles: adaptive quadrature, direct-series
//! reference sums, finite-difference moment extraction, and limit-rate
//! fitting. Every closed form in the crate is certified against paths in
//! this module that share none of its code.

mod oracles;
mod quad;
mod rate;

pub use oracles::{cf_oracle, integrate_disk_radialized, moment_oracle, run_default_suite};
pub use quad::{integrate_radial, integrate_radial_real};
pub use rate::{limit_rate, RateFit, RATE_NOISE_FLOOR};

use serde::Serialize;

use crate::error::{Error, Result};

/// How the two ends of a radial integration interval are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointSubstitution {
    /// Plain adaptive integration on [0, L].
    #[default]
    None,
    /// Exponential substitution clustering nodes at 0 (integrable
    /// singularity on the left).
    LogLeft,
    /// Exponential substitution clustering nodes at L.
    ExpRight,
    /// Split at L/2 and substitute at both ends.
    Both,
}

/// Tolerances and refinement limits for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub endpoint_substitution: EndpointSubstitution,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_depth: 40,
            endpoint_substitution: EndpointSubstitution::None,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::Domain(format!(
                "quadrature tolerances must be positive, got abs {} rel {}",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_depth == 0 {
            return Err(Error::Domain("max_depth must be positive".into()));
        }
        Ok(())
    }

    /// Same spec with a different substitution.
    pub fn with_substitution(self, endpoint_substitution: EndpointSubstitution) -> Self {
        QuadratureSpec {
            endpoint_substitution,
            ..self
        }
    }
}

/// One certified comparison between a closed form and its oracle.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub label: String,
    pub formula_re: f64,
    pub formula_im: f64,
    pub oracle_re: f64,
    pub oracle_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

impl VerificationReport {
    /// Build a report from the two values; pass holds iff the absolute or
    /// the relative error meets the tolerance.
    pub fn compare(
        label: &str,
        formula: num_complex::Complex64,
        oracle: num_complex::Complex64,
        tol: f64,
        runtime_ms: f64,
    ) -> Self {
        let abs_err = (formula - oracle).norm();
        let scale = oracle.norm();
        let rel_err = if scale > 0.0 {
            abs_err / scale
        } else {
            abs_err
        };
        VerificationReport {
            label: label.to_string(),
            formula_re: formula.re,
            formula_im: formula.im,
            oracle_re: oracle.re,
            oracle_im: oracle.im,
            abs_err,
            rel_err,
            tol,
            pass: abs_err <= tol || rel_err <= tol,
            runtime_ms,
        }
    }
}
