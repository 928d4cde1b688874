//! Pure-state Husimi distribution on the disk: pointwise values, the
//! radial probability density with its CDF, the closed-form characteristic
//! function with its linearization coefficients, moments, interior zeros,
//! and the large-R (Euclidean) limit forms.

use num_complex::Complex64;

use crate::coherent::{DiskPoint, ModelParams};
use crate::error::{Error, Result};
use crate::specfun::{
    binomial_general, gamma_ratio, hyp_1f1, jacobi_linearization_coeffs, jacobi_p, jacobi_zeros,
    laguerre_l, log_gamma, pochhammer, SeriesConfig,
};
use crate::verify::{integrate_radial_real, EndpointSubstitution, QuadratureSpec};

/// A Fock level on top of the model parameters; the pair fixes one pure
/// state and therefore one Husimi distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureStateSpec {
    pub j: u32,
    pub params: ModelParams,
}

impl PureStateSpec {
    /// min(m, j), the degree of every polynomial factor attached to the pair.
    pub(crate) fn low(&self) -> u32 {
        self.params.m().min(self.j)
    }

    /// |m - j|, the order offset between the level and the Fock index.
    pub(crate) fn diff(&self) -> u32 {
        self.params.m().abs_diff(self.j)
    }
}

/// Which state a radial density was built from.
#[derive(Debug, Clone, Copy)]
pub enum DensityMeta {
    Pure(PureStateSpec),
    Mixed(crate::husimi_mixed::MixedStateSpec),
}

/// Probability density of lambda = |z|^2 on [0, support_end]; evaluates to
/// zero outside the support so it can be fed directly to quadrature and
/// Fourier oracles.
pub struct RadialDensity {
    pub support_end: f64,
    pub eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub meta: DensityMeta,
}

/// Normalization ratio (m^j)! Gamma(2(BR^2-m) + m v j) /
/// ((m v j)! Gamma(2(BR^2-m) + m^j)) carried by every pure-state quantity,
/// assembled from a Gamma ratio so large tau never overflows.
pub fn tau_factor(s: &PureStateSpec) -> f64 {
    let low = s.low();
    let high = s.params.m().max(s.j);
    let g = s.params.alpha() + 1.0;
    let mut fact_ratio = 1.0;
    for i in (low + 1)..=high {
        fact_ratio /= f64::from(i);
    }
    fact_ratio
        * gamma_ratio(g + f64::from(high), g + f64::from(low))
            .expect("gamma arguments are positive for admissible parameters")
}

/// Husimi value Q_j(z) of the pure Fock state at a phase-space point.
pub fn q_pure(s: &PureStateSpec, pt: &DiskPoint) -> Result<f64> {
    let t = s.params.t_of(pt)?;
    let g = s.params.alpha() + 1.0;
    let p = jacobi_p(
        s.low(),
        f64::from(s.diff()),
        s.params.alpha(),
        1.0 - 2.0 * t,
    )?;
    Ok(tau_factor(s) * (1.0 - t).powf(g) * t.powi(s.diff() as i32) * p * p)
}

/// Flat-plane Husimi value the disk expression converges to as R grows,
/// written in the Laguerre form.
///
/// The caller promises b > 0; the level pair (j, m) is unconstrained here
/// because the flat plane hosts every level.
pub fn q_pure_euclid(j: u32, m: u32, b: f64, z: Complex64) -> f64 {
    let x = 2.0 * b * z.norm_sqr();
    let low = m.min(j);
    let d = m.abs_diff(j);
    let mut fact_ratio = 1.0;
    for i in (low + 1)..=m.max(j) {
        fact_ratio /= f64::from(i);
    }
    let l = laguerre_l(low, f64::from(d), x);
    fact_ratio * (-x).exp() * x.powi(d as i32) * l * l
}

/// Density of lambda = |z|^2 on [0, R^2] for the pure state, with the
/// surface-measure Jacobian folded into the boundary exponent so the
/// endpoint is evaluable.
pub fn radial_density(s: &PureStateSpec) -> RadialDensity {
    let spec = *s;
    let r2 = s.params.r() * s.params.r();
    let alpha = s.params.alpha();
    let g = alpha + 1.0;
    let low = s.low();
    let d = s.diff();
    let norm = tau_factor(s) * alpha / r2;
    let eval = Box::new(move |lambda: f64| -> f64 {
        if !(0.0..=r2).contains(&lambda) {
            return 0.0;
        }
        let t = lambda / r2;
        let p = jacobi_p(low, f64::from(d), alpha, 1.0 - 2.0 * t)
            .expect("Jacobi parameters are in range for admissible model parameters");
        norm * (1.0 - t).powf(g - 2.0) * t.powi(d as i32) * p * p
    });
    RadialDensity {
        support_end: r2,
        eval,
        meta: DensityMeta::Pure(spec),
    }
}

/// P(lambda <= r_squared) for the pure radial law, by adaptive quadrature
/// with the boundary substitution that resolves the (1 - lambda/R^2)
/// endpoint power.
pub fn cdf_lambda(s: &PureStateSpec, r_squared: f64, q: &QuadratureSpec) -> Result<f64> {
    let r2 = s.params.r() * s.params.r();
    if !(0.0..=r2).contains(&r_squared) {
        return Err(Error::Domain(format!(
            "cdf argument {r_squared} outside [0, {r2}]"
        )));
    }
    if r_squared == 0.0 {
        return Ok(0.0);
    }
    let density = radial_density(s);
    let q = q.with_substitution(EndpointSubstitution::ExpRight);
    let mass = integrate_radial_real(|l| (density.eval)(l), r_squared, &q)?;
    Ok(mass.clamp(0.0, 1.0))
}

/// Coefficient C_{j,k} expanding the squared Jacobi factor of Q_j over the
/// same Jacobi family; k runs over 0..=2 min(m,j) and every higher
/// coefficient vanishes.
pub fn cjk_coeff(s: &PureStateSpec, k: u32) -> Result<f64> {
    let low = s.low();
    if k > 2 * low {
        return Err(Error::Domain(format!(
            "coefficient index {k} outside 0..={}",
            2 * low
        )));
    }
    let coeffs = cjk_all(s)?;
    Ok(coeffs[k as usize])
}

fn cjk_all(s: &PureStateSpec) -> Result<Vec<f64>> {
    jacobi_linearization_coeffs(s.low(), f64::from(s.diff()), s.params.alpha())
}

/// Characteristic function E[exp(iu lambda)] of the pure radial law, as
/// the finite sum of confluent-hypergeometric terms weighted by C_{j,k}.
pub fn cf_pure(s: &PureStateSpec, u: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    let alpha = s.params.alpha();
    let d = f64::from(s.diff());
    let r2 = s.params.r() * s.params.r();
    let iur2 = Complex64::new(0.0, u * r2);
    let coeffs = cjk_all(s)?;

    let mut sum = Complex64::new(0.0, 0.0);
    // (-iuR^2)^k / k!, advanced incrementally
    let mut pw = Complex64::new(1.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        let kf = k as f64;
        if k > 0 {
            pw *= -iur2 / kf;
        }
        let ln_ratio = log_gamma(alpha + kf)? + log_gamma(d + kf + 1.0)?
            - log_gamma(alpha + 1.0 + d + 2.0 * kf)?;
        let f11 = hyp_1f1(d + kf + 1.0, alpha + 1.0 + d + 2.0 * kf, iur2, cfg)?;
        sum += c * ln_ratio.exp() * pw * f11;
    }
    Ok(alpha * tau_factor(s) * sum)
}

/// Characteristic function of the flat-plane radial law in its
/// dimensionless variable; comparing against the disk form at scale u
/// means evaluating this at u / (2B).
///
/// b only fixes that scale for callers; the closed form itself is
/// scale-free and b must be positive.
pub fn cf_pure_euclid(j: u32, m: u32, b: f64, u: f64) -> Complex64 {
    debug_assert!(b > 0.0);
    let mut poly = 0.0;
    // (iu)^{2k} = (-u^2)^k, advanced incrementally
    let mut pw = 1.0;
    for k in 0..=m.min(j) {
        if k > 0 {
            pw *= -u * u;
        }
        poly += binomial_general(f64::from(m), k) * binomial_general(f64::from(j), k) * pw;
    }
    Complex64::new(1.0, -u).powi(-(i32::try_from(m + j).expect("level fits i32") + 1)) * poly
}

/// Mean of the pure radial law from the closed C_{j,0}, C_{j,1} form.
pub fn mean_pure(s: &PureStateSpec) -> f64 {
    let coeffs = cjk_all(s).expect("linearization terminates for admissible parameters");
    let ck = |k: usize| coeffs.get(k).copied().unwrap_or(0.0);
    let g = s.params.alpha() + 1.0;
    let d = f64::from(s.diff());
    let r2 = s.params.r() * s.params.r();

    let mut fact = 1.0;
    for i in 2..=(s.diff() + 1) {
        fact *= f64::from(i);
    }
    let front = tau_factor(s) * r2 * fact / pochhammer(g, s.diff() + 1);
    front * (ck(0) - (g - 1.0) * ck(1) / (g + d + 1.0))
}

/// Variance of the pure radial law from the closed C_{j,0..2} form.
pub fn var_pure(s: &PureStateSpec) -> f64 {
    let coeffs = cjk_all(s).expect("linearization terminates for admissible parameters");
    let ck = |k: usize| coeffs.get(k).copied().unwrap_or(0.0);
    let g = s.params.alpha() + 1.0;
    let d = f64::from(s.diff());
    let r2 = s.params.r() * s.params.r();

    let mut fact = 1.0;
    for i in 2..=(s.diff() + 2) {
        fact *= f64::from(i);
    }
    let front = tau_factor(s) * r2 * r2 * fact / pochhammer(g, s.diff() + 2);
    let second = front
        * (ck(0) - 2.0 * (g - 1.0) * ck(1) / (g + d + 2.0)
            + (g - 1.0) * g * ck(2) / ((g + d + 2.0) * (g + d + 3.0)));
    let mean = mean_pure(s);
    second - mean * mean
}

/// The min(m,j) radii in (0, R) where Q_j vanishes, recovered from the
/// zeros of the attached Jacobi polynomial through 1 - 2 r^2/R^2 = x,
/// returned ascending.
pub fn zeros_of_q(s: &PureStateSpec) -> Result<Vec<f64>> {
    let xs = jacobi_zeros(s.low(), f64::from(s.diff()), s.params.alpha())?;
    let r = s.params.r();
    let mut radii: Vec<f64> = xs.iter().map(|&x| r * ((1.0 - x) / 2.0).sqrt()).collect();
    radii.sort_by(f64::total_cmp);
    Ok(radii)
}
