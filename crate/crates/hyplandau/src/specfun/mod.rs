//! Special-function layer: factorial-type symbols, Gamma/Beta in the log
//! domain, orthogonal polynomials, one- and two-variable hypergeometric
//! series, and the double-series summation identities built on them.

mod gamma;
mod hyper;
mod poly;
mod twovar;

pub use gamma::{beta_fn, binomial_general, gamma_ratio, log_gamma, pochhammer};
pub(crate) use hyper::bessel_i_ln;
pub use hyper::{bessel_i, gauss_2f1, gauss_2f1_euler, hyp_1f1, hyp_pfq};
pub use poly::{jacobi_p, jacobi_zeros, laguerre_generating_check, laguerre_l};
pub use twovar::{
    humbert_phi1, jacobi_linearization_coeffs, kampe_de_feriet, kdf_prop1_sides,
    prop1_rhs_proof_form, KdFParams,
};

use crate::error::{Error, Result};

/// Truncation policy for every infinite or double series in the crate.
///
/// A series stops once `consecutive_small` successive terms fall below
/// `rel_tol` times the running partial sum; `max_terms` bounds each series
/// axis. Terminating series ignore the policy and are summed exactly.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-12,
            max_terms: 10_000,
            consecutive_small: 3,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Domain(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        if self.consecutive_small < 1 {
            return Err(Error::Domain("consecutive_small must be at least 1".into()));
        }
        Ok(())
    }

    /// Config for the inner series of a nested double sum: one decade
    /// tighter, same budgets.
    pub(crate) fn inner(&self) -> SeriesConfig {
        SeriesConfig {
            rel_tol: self.rel_tol / 10.0,
            ..*self
        }
    }
}
