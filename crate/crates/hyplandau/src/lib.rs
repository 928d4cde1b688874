//! Phase-space distributions for Landau levels on the hyperbolic disk.
//!
//! The crate evaluates Husimi densities of pure Landau eigenstates and of
//! thermal (Gibbs) mixtures over the coherent states of a charged particle
//! on a disk of finite radius, together with the special-function layer
//! they are built from and an independent verification harness (adaptive
//! quadrature oracles, rate-of-convergence probes, and trace-inequality
//! checks).

// Negated comparisons like `!(x > 0.0)` are deliberate throughout: they
// reject NaN along with the out-of-range values, which `x <= 0.0` silently
// lets through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference constants are recorded at full oracle precision; the extra
// digits beyond f64 document the true value being approximated.
#![allow(clippy::excessive_precision)]

pub mod coherent;
pub mod error;
pub mod husimi_mixed;
pub mod husimi_pure;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use specfun::SeriesConfig;
