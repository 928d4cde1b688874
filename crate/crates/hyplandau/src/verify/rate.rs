//! Least-squares rate fitting for large-R limit claims: the slope of
//! log(error) against log(R) estimates the power-law order of convergence.

use crate::error::{Error, Result};

/// Outcome of a limit-rate fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    /// Fitted slope of log(err) vs log(R); negative means convergence.
    pub slope: f64,
    /// False when the error sequence was not strictly decreasing in R.
    pub monotone: bool,
}

/// Noise floor multiplier: points whose error is within 1e3x of quadrature
/// noise would fit the floor, not the rate, and are excluded.
pub const RATE_NOISE_FLOOR: f64 = 1e-12 * 1e3;

/// Fit log(err) = slope * log(R) + c over the given radii by evaluating the
/// error function at each R. Radii must be positive increasing, errors
/// positive; points at or below the noise floor are dropped.
pub fn limit_rate<F: FnMut(f64) -> Result<f64>>(mut err_at: F, radii: &[f64]) -> Result<RateFit> {
    if radii.len() < 2 {
        return Err(Error::Domain(
            "rate fitting needs at least two radii".into(),
        ));
    }
    let mut pts = Vec::with_capacity(radii.len());
    let mut monotone = true;
    let mut prev: Option<f64> = None;
    for &r in radii {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radii must be positive, got {r}")));
        }
        if let Some(p) = prev {
            if r <= p {
                return Err(Error::Domain("radii must be strictly increasing".into()));
            }
        }
        prev = Some(r);
        let e = err_at(r)?;
        if !(e > 0.0) || !e.is_finite() {
            return Err(Error::Domain(format!(
                "limit errors must be positive and finite, got {e} at R = {r}"
            )));
        }
        pts.push((r, e));
    }
    for w in pts.windows(2) {
        if w[1].1 >= w[0].1 {
            monotone = false;
        }
    }
    let kept: Vec<(f64, f64)> = pts
        .iter()
        .copied()
        .filter(|&(_, e)| e > RATE_NOISE_FLOOR)
        .collect();
    if kept.len() < 2 {
        return Err(Error::Domain(
            "too few error points above the quadrature noise floor to fit a rate".into(),
        ));
    }
    let n = kept.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(r, e) in &kept {
        let x = r.ln();
        let y = e.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(RateFit { slope, monotone })
}
