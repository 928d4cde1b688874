//! Jacobi and Laguerre polynomials, Jacobi zeros, and the Laguerre
//! generating-formula self-check.

use num_complex::Complex64;

use super::gamma::{binomial_general, log_gamma};
use super::hyper::{gauss_2f1, hyp_pfq};
use super::SeriesConfig;
use crate::error::{Error, Result};

/// Direct binomial sum for P_n^{(a,b)}(x); also returns the sum of absolute
/// term values as a cancellation estimate.
fn jacobi_direct(n: u32, a: f64, b: f64, x: f64) -> (f64, f64) {
    let up = (x + 1.0) / 2.0;
    let dn = (x - 1.0) / 2.0;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for k in 0..=n {
        let t = binomial_general(n as f64 + a, k)
            * binomial_general(n as f64 + b, n - k)
            * up.powi(k as i32)
            * dn.powi((n - k) as i32);
        sum += t;
        abs_sum += t.abs();
    }
    (sum, abs_sum)
}

/// Gauss-series form: P_n^{(a,b)}(x) = (b+1)_n/n! ((x-1)/2)^n
/// 2F1(-n, -n-a; b+1; (x+1)/(x-1)). Kept as an independent second form for
/// cross-checks; like the direct sum it cancels at high degree, so the
/// production path switches to the three-term recurrence instead.
#[cfg_attr(not(test), allow(dead_code))]
fn jacobi_via_2f1(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    if x == 1.0 {
        return Ok(binomial_general(n as f64 + a, n));
    }
    let ln_poch = log_gamma(b + 1.0 + n as f64)? - log_gamma(b + 1.0)? - log_gamma(n as f64 + 1.0)?;
    let arg = (x + 1.0) / (x - 1.0);
    let f = gauss_2f1(
        -(n as f64),
        -(n as f64) - a,
        b + 1.0,
        Complex64::new(arg, 0.0),
        &SeriesConfig::default(),
    )?;
    Ok(ln_poch.exp() * ((x - 1.0) / 2.0).powi(n as i32) * f.re)
}

/// Three-term recurrence in the degree, numerically stable on [-1, 1] and
/// wherever P_n dominates; requires a, b > -1 so no coefficient vanishes.
fn jacobi_recurrence(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c2 = (2.0 * kf + a + b - 1.0)
            * ((2.0 * kf + a + b) * (2.0 * kf + a + b - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let next = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = next;
    }
    p1
}

const JACOBI_DEGREE_SWITCH: u32 = 30;
const JACOBI_CANCEL_SWITCH: f64 = 1e6;

/// Jacobi polynomial P_n^{(a,b)}(x). The three-term recurrence takes over
/// at degree >= 30 or when the direct sum's cancellation exceeds 1e6; the
/// b <= -1 extension always uses the exact finite sum.
pub fn jacobi_p(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) {
        return Err(Error::Domain(format!("jacobi_p requires a > -1, got {a}")));
    }
    if n >= JACOBI_DEGREE_SWITCH && b > -1.0 {
        return Ok(jacobi_recurrence(n, a, b, x));
    }
    let (val, abs_sum) = jacobi_direct(n, a, b, x);
    if b > -1.0 && val != 0.0 && abs_sum / val.abs() > JACOBI_CANCEL_SWITCH {
        return Ok(jacobi_recurrence(n, a, b, x));
    }
    Ok(val)
}

/// Laguerre polynomial L_n^{(a)}(x) as its exact finite sum.
pub fn laguerre_l(n: u32, a: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut x_pow = 1.0;
    let mut fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            x_pow *= -x;
            fact *= k as f64;
        }
        sum += binomial_general(n as f64 + a, n - k) * x_pow / fact;
    }
    sum
}

/// The n zeros of P_n^{(a,b)} in (-1,1), ascending, found by sign-change
/// bracketing plus bisection and a secant polish to 1e-14.
pub fn jacobi_zeros(n: u32, a: f64, b: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(vec![]);
    }
    let p = |x: f64| jacobi_p(n, a, b, x);
    // scale for the residual check: largest magnitude over a coarse grid
    let mut scale = 0.0f64;
    let mut grid_n = (8 * n as usize).max(64);
    let brackets = loop {
        let mut brk = Vec::with_capacity(n as usize);
        let mut prev_x = -1.0 + 1e-12;
        let mut prev_f = p(prev_x)?;
        scale = scale.max(prev_f.abs());
        for i in 1..=grid_n {
            let x = -1.0 + 2.0 * i as f64 / grid_n as f64 - if i == grid_n { 1e-12 } else { 0.0 };
            let f = p(x)?;
            scale = scale.max(f.abs());
            if prev_f == 0.0 {
                brk.push((prev_x, prev_x));
            } else if prev_f * f < 0.0 {
                brk.push((prev_x, x));
            }
            prev_x = x;
            prev_f = f;
        }
        if brk.len() >= n as usize {
            break brk;
        }
        // all Jacobi zeros are simple, so a fine enough grid must see n sign changes
        grid_n *= 4;
        if grid_n > 1 << 22 {
            return Err(Error::NoConvergence {
                context: "jacobi_zeros bracketing",
                terms: grid_n,
            });
        }
    };

    let mut zeros = Vec::with_capacity(n as usize);
    for &(mut lo, mut hi) in brackets.iter().take(n as usize) {
        if lo == hi {
            zeros.push(lo);
            continue;
        }
        let mut f_lo = p(lo)?;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let f_mid = p(mid)?;
            if f_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if f_lo * f_mid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        // secant polish
        let mut x0 = lo;
        let mut x1 = hi.max(lo + 1e-15);
        let mut f0 = p(x0)?;
        let mut f1 = p(x1)?;
        for _ in 0..4 {
            if (f1 - f0).abs() < 1e-300 {
                break;
            }
            let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if !(-1.0..=1.0).contains(&x2) || (x2 - x1).abs() < 1e-16 {
                break;
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = p(x1)?;
        }
        zeros.push(if f1.abs() <= p(0.5 * (lo + hi))?.abs() {
            x1
        } else {
            0.5 * (lo + hi)
        });
    }
    zeros.sort_by(f64::total_cmp);
    for &z in &zeros {
        let r = p(z)?;
        if r.abs() >= 1e-12 * scale.max(1e-300) {
            return Err(Error::NoConvergence {
                context: "jacobi_zeros refinement",
                terms: 80,
            });
        }
    }
    Ok(zeros)
}

/// Both sides of the Laguerre generating formula
/// sum_n lambda^n 2F1(-n,b;1+a|t) L_n^{(a)}(x)
///   = (1-lambda)^{b-1-a} (1-lambda+t lambda)^{-b} exp(-x lambda/(1-lambda))
///     * 1F1(b; 1+a | lambda x t / ((1-lambda)(1-lambda+t lambda))),
/// returned as (series side, closed side) for comparison tests.
pub fn laguerre_generating_check(
    a: f64,
    b: f64,
    t: f64,
    x: f64,
    lambda: f64,
    cfg: &SeriesConfig,
) -> Result<(f64, f64)> {
    if !(a >= 0.0) {
        return Err(Error::Domain(format!(
            "generating formula requires a >= 0, got {a}"
        )));
    }
    let lim = if (1.0 - t).abs() > 1.0 {
        1.0 / (1.0 - t).abs()
    } else {
        1.0
    };
    if !(lambda.abs() < lim.min(1.0)) {
        return Err(Error::Domain(format!(
            "generating formula requires |lambda| < min(1, 1/|1-t|), got {lambda}"
        )));
    }

    let mut lhs = 0.0;
    let mut lam_pow = 1.0;
    let mut small_run = 0usize;
    let mut converged = false;
    for n in 0..cfg.max_terms {
        let f = gauss_2f1(-(n as f64), b, 1.0 + a, Complex64::new(t, 0.0), cfg)?.re;
        let term = lam_pow * f * laguerre_l(n as u32, a, x);
        lhs += term;
        lam_pow *= lambda;
        if term.abs() <= cfg.rel_tol * lhs.abs() {
            small_run += 1;
            if small_run >= cfg.consecutive_small {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            context: "laguerre_generating_check series",
            terms: cfg.max_terms,
        });
    }

    let q = 1.0 - lambda + t * lambda;
    let arg = lambda * x * t / ((1.0 - lambda) * q);
    let rhs = (1.0 - lambda).powf(b - 1.0 - a)
        * q.powf(-b)
        * (-x * lambda / (1.0 - lambda)).exp()
        * hyp_pfq(&[b], &[1.0 + a], Complex64::new(arg, 0.0), cfg)?.re;
    Ok((lhs, rhs))
}
