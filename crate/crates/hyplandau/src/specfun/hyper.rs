//! Generalized hypergeometric series pFq and the modified Bessel I series,
//! evaluated by term recurrence. Termination by a non-positive-integer
//! numerator parameter is detected up front, so terminating series are
//! summed exactly and denominator poles are only an error when a series
//! would actually reach them.

use num_complex::Complex64;

use super::gamma::{log_gamma, nonpositive_int};
use super::SeriesConfig;
use crate::error::{Error, Result};

/// Smallest k at which some numerator parameter makes every later term
/// vanish: terms k = 0..=n survive when some a_i = -n.
fn termination_index(a: &[f64]) -> Option<u32> {
    a.iter().filter_map(|&ai| nonpositive_int(ai)).min()
}

/// First k at which a denominator parameter hits zero: (c)_k vanishes from
/// k = n+1 on when c = -n.
fn pole_index(c: &[f64]) -> Option<u32> {
    c.iter()
        .filter_map(|&ci| nonpositive_int(ci))
        .min()
        .map(|n| n + 1)
}

/// pFq(a; c | z) by term recurrence.
pub fn hyp_pfq(a: &[f64], c: &[f64], z: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    let n_term = termination_index(a);
    if let Some(pole_at) = pole_index(c) {
        let reaches_pole = match n_term {
            Some(n) => n + 1 >= pole_at,
            None => true,
        };
        if reaches_pole {
            return Err(Error::Pole(format!(
                "denominator parameter of pFq vanishes at term {pole_at} before the \
                 numerator terminates (a={a:?}, c={c:?})"
            )));
        }
    }
    if n_term.is_none() {
        if a.len() > c.len() + 1 && z != Complex64::new(0.0, 0.0) {
            return Err(Error::Divergence(format!(
                "pFq with p={} > q+1={} diverges for z != 0",
                a.len(),
                c.len() + 1
            )));
        }
        if a.len() == c.len() + 1 && z.norm() >= 1.0 {
            return Err(Error::Divergence(format!(
                "series for {}F{} diverges at |z| = {} >= 1",
                a.len(),
                c.len(),
                z.norm()
            )));
        }
    }

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    if let Some(n) = n_term {
        for k in 0..n {
            let kf = k as f64;
            let mut ratio = Complex64::new(1.0 / (kf + 1.0), 0.0);
            for &ai in a {
                ratio *= ai + kf;
            }
            for &ci in c {
                ratio /= ci + kf;
            }
            term *= ratio * z;
            sum += term;
        }
        return Ok(sum);
    }

    let mut small_run = 0usize;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        let mut ratio = Complex64::new(1.0 / (kf + 1.0), 0.0);
        for &ai in a {
            ratio *= ai + kf;
        }
        for &ci in c {
            ratio /= ci + kf;
        }
        term *= ratio * z;
        sum += term;
        if term.norm() <= cfg.rel_tol * sum.norm() {
            small_run += 1;
            if small_run >= cfg.consecutive_small {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence {
        context: "hyp_pfq",
        terms: cfg.max_terms,
    })
}

/// Gauss 2F1(a,b;c|z).
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    hyp_pfq(&[a, b], &[c], z, cfg)
}

/// Confluent 1F1(a;c|z).
pub fn hyp_1f1(a: f64, c: f64, z: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    hyp_pfq(&[a], &[c], z, cfg)
}

/// Euler-transformed Gauss series: (1-z)^(c-a-b) 2F1(c-a, c-b; c | z).
/// Agrees with `gauss_2f1` on the common domain and extends evaluation to
/// parameter ranges where the transformed series converges faster.
pub fn gauss_2f1_euler(
    a: f64,
    b: f64,
    c: f64,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::BranchCut(format!(
            "(1-z)^s is on its branch cut for real z = {} >= 1",
            z.re
        )));
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let factor = one_minus.powc(Complex64::new(c - a - b, 0.0));
    Ok(factor * hyp_pfq(&[c - a, c - b], &[c], z, cfg)?)
}

/// Modified Bessel function of the first kind, order a > -1, by its
/// ascending series (z/2)^a / Gamma(a+1) * 0F1(; a+1 | z^2/4).
pub fn bessel_i(a: f64, z: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    if !(a > -1.0) {
        return Err(Error::Domain(format!(
            "bessel_i requires order > -1, got {a}"
        )));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(if a == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    let half = z / 2.0;
    let front = half.powc(Complex64::new(a, 0.0)) * (-log_gamma(a + 1.0)?).exp();
    Ok(front * hyp_pfq(&[], &[a + 1.0], half * half, cfg)?)
}

/// log I_a(x) for real x > 0, a > -1: all series terms are positive, so the
/// log-domain assembly never cancels and never overflows for the argument
/// scales the thermal kernel produces.
pub(crate) fn bessel_i_ln(a: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(a > -1.0) {
        return Err(Error::Domain(format!(
            "bessel_i_ln requires order > -1, got {a}"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "bessel_i_ln requires x > 0, got {x}"
        )));
    }
    let series = hyp_pfq(&[], &[a + 1.0], Complex64::new(x * x / 4.0, 0.0), cfg)?;
    Ok(a * (x / 2.0).ln() - log_gamma(a + 1.0)? + series.re.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pfq_trivial_points() {
        let cfg = SeriesConfig::default();
        let one = hyp_pfq(&[0.3, 1.7], &[2.2], c(0.0, 0.0), &cfg).unwrap();
        assert_eq!(one, c(1.0, 0.0));
        // 1F0(a;|z) = (1-z)^(-a)
        let v = hyp_pfq(&[1.3], &[], c(0.4, 0.0), &cfg).unwrap();
        assert_relative_eq!(v.re, (1.0f64 - 0.4).powf(-1.3), max_relative = 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn pfq_terminating_matches_direct_loop() {
        let cfg = SeriesConfig::default();
        // 2F1(-3, 1.5; 2.5 | z): direct k <= 3 loop
        let (b, cc, z) = (1.5, 2.5, c(0.8, -0.3));
        let got = hyp_pfq(&[-3.0, b], &[cc], z, &cfg).unwrap();
        let mut want = c(0.0, 0.0);
        let mut num = 1.0;
        let mut den = 1.0;
        let mut fact = 1.0;
        let mut poch_a = 1.0;
        for k in 0..=3u32 {
            if k > 0 {
                let kf = (k - 1) as f64;
                poch_a *= -3.0 + kf;
                num *= b + kf;
                den *= cc + kf;
                fact *= k as f64;
            }
            want += z.powu(k) * (poch_a * num / (den * fact));
        }
        assert!((got - want).norm() <= 1e-13 * want.norm());
    }

    #[test]
    fn pfq_divergence_and_poles() {
        let cfg = SeriesConfig::default();
        // p > q+1, non-terminating
        assert!(matches!(
            hyp_pfq(&[1.0, 2.0, 3.0], &[4.0], c(0.1, 0.0), &cfg),
            Err(Error::Divergence(_))
        ));
        // 2F1 at |z| >= 1, non-terminating
        assert!(matches!(
            hyp_pfq(&[0.5, 0.5], &[1.5], c(1.0, 0.0), &cfg),
            Err(Error::Divergence(_))
        ));
        // denominator pole before termination
        assert!(matches!(
            hyp_pfq(&[0.5], &[-2.0], c(0.3, 0.0), &cfg),
            Err(Error::Pole(_))
        ));
        // termination at n=1 protects the pole at k=3: legal
        assert!(hyp_pfq(&[-1.0, 0.7], &[-2.0], c(0.3, 0.0), &cfg).is_ok());
    }

    #[test]
    fn euler_transform_terminating_example() {
        let cfg = SeriesConfig::default();
        // 2F1(-1,1;2|0.5) = 1 - 0.5/2 = 0.75; Euler side (0.5)^2 * 2F1(3,1;2|0.5)
        let direct = gauss_2f1(-1.0, 1.0, 2.0, c(0.5, 0.0), &cfg).unwrap();
        let euler = gauss_2f1_euler(-1.0, 1.0, 2.0, c(0.5, 0.0), &cfg).unwrap();
        assert_relative_eq!(direct.re, 0.75, max_relative = 1e-13);
        assert!((direct - euler).norm() < 1e-12);
        assert_eq!(
            gauss_2f1_euler(0.5, 0.5, 1.5, c(1.2, 0.0), &cfg),
            Err(Error::BranchCut(
                "(1-z)^s is on its branch cut for real z = 1.2 >= 1".into()
            ))
        );
    }

    #[test]
    fn bessel_small_order_values() {
        let cfg = SeriesConfig::default();
        assert_eq!(bessel_i(0.0, c(0.0, 0.0), &cfg).unwrap(), c(1.0, 0.0));
        assert_eq!(bessel_i(1.5, c(0.0, 0.0), &cfg).unwrap(), c(0.0, 0.0));
        // I_{1/2}(z) = sqrt(2/(pi z)) sinh z
        let z = 1.0f64;
        let got = bessel_i(0.5, c(z, 0.0), &cfg).unwrap();
        let want = (2.0 / (std::f64::consts::PI * z)).sqrt() * z.sinh();
        assert_relative_eq!(got.re, want, max_relative = 1e-10);
        assert!(bessel_i(-1.0, c(1.0, 0.0), &cfg).is_err());
    }

    #[test]
    fn bessel_log_form_consistent() {
        let cfg = SeriesConfig::default();
        let (a, x) = (1.5, 2.7);
        let lin = bessel_i(a, c(x, 0.0), &cfg).unwrap().re;
        let logv = bessel_i_ln(a, x, &cfg).unwrap();
        assert_relative_eq!(logv, lin.ln(), max_relative = 1e-12);
    }
}
