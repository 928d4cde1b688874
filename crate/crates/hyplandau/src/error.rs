use std::fmt;

/// Everything that can go wrong in a numerical evaluation.
///
/// `Domain` is an argument outside an operation's precondition, `Pole` is a
/// gamma-type pole hit exactly, `Divergence` is a series evaluated outside
/// its convergence region, `NoConvergence` is a series that ran out of its
/// term budget, and `QuadratureDepth` is an adaptive integration that ran
/// out of refinement depth (the best estimate is attached).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Domain(String),
    Pole(String),
    Divergence(String),
    NoConvergence {
        context: &'static str,
        terms: usize,
    },
    QuadratureDepth {
        estimate_re: f64,
        estimate_im: f64,
        err_estimate: f64,
    },
    BranchCut(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Pole(msg) => write!(f, "pole error: {msg}"),
            Error::Divergence(msg) => write!(f, "divergence error: {msg}"),
            Error::NoConvergence { context, terms } => {
                write!(f, "no convergence in {context} after {terms} terms")
            }
            Error::QuadratureDepth {
                estimate_re,
                estimate_im,
                err_estimate,
            } => write!(
                f,
                "quadrature depth exhausted: estimate {estimate_re}+{estimate_im}i, \
                 error estimate {err_estimate:.3e}"
            ),
            Error::BranchCut(msg) => write!(f, "branch cut: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
