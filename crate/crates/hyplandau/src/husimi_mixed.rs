//! Thermal-state Husimi distribution: the oscillator spectrum and partition
//! function, the heat kernel, the closed-form Q at inverse temperature beta,
//! its radial density, characteristic function and moments, the flat-plane
//! limit law, and the convexity lower bound on the thermodynamic potential.

use num_complex::Complex64;
use serde::Serialize;

use crate::coherent::{DiskPoint, ModelParams};
use crate::error::{Error, Result};
use crate::husimi_pure::{DensityMeta, RadialDensity};
use crate::specfun::{
    bessel_i_ln, beta_fn, binomial_general, gauss_2f1, humbert_phi1, laguerre_l, SeriesConfig,
};
use crate::verify::{integrate_radial, EndpointSubstitution, QuadratureSpec};

/// Inverse temperature and fugacity on top of the model parameters; the
/// triple fixes one thermal state (the fugacity only enters the
/// thermodynamic bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedStateSpec {
    beta: f64,
    params: ModelParams,
    epsilon: f64,
}

impl MixedStateSpec {
    pub fn new(beta: f64, params: ModelParams, epsilon: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "inverse temperature must be positive and finite, got {beta}"
            )));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::Domain(format!(
                "fugacity must be positive and finite, got {epsilon}"
            )));
        }
        Ok(MixedStateSpec {
            beta,
            params,
            epsilon,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The Boltzmann ratio e^{-beta} between successive level weights.
    pub(crate) fn xi(&self) -> f64 {
        (-self.beta).exp()
    }
}

/// The oscillator spectrum attached to one set of model parameters:
/// unit-spaced levels eta_j starting at 4(BR^2 - m) - 1.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumView {
    pub tau: f64,
    base: f64,
}

impl SpectrumView {
    pub fn new(p: &ModelParams) -> Self {
        let tau = p.tau();
        SpectrumView {
            tau,
            base: 4.0 * (tau - f64::from(p.m())) - 1.0,
        }
    }

    pub fn eta(&self, j: u32) -> f64 {
        f64::from(j) + self.base
    }
}

/// Oscillator eigenvalue eta_j = j + 4(BR^2 - m) - 1.
pub fn eigenvalue_eta(j: u32, p: &ModelParams) -> f64 {
    SpectrumView::new(p).eta(j)
}

/// Partition function Z = sum_j e^{-beta eta_j}, summed in closed geometric
/// form.
pub fn partition_z(ms: &MixedStateSpec) -> f64 {
    let sv = SpectrumView::new(&ms.params);
    (-ms.beta * sv.eta(0)).exp() / (1.0 - ms.xi())
}

/// Heat kernel W_beta(r, rho) of the oscillator on the half-line, assembled
/// in the log domain so large level offsets neither overflow nor underflow.
pub fn heat_kernel(ms: &MixedStateSpec, r: f64, rho: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(r > 0.0) || !(rho > 0.0) {
        return Err(Error::Domain(format!(
            "heat kernel needs positive radial coordinates, got ({r}, {rho})"
        )));
    }
    let p = &ms.params;
    let alpha = p.alpha();
    let tm = p.tau() - f64::from(p.m());
    let xi = ms.xi();
    let ln_w = -ms.beta * (3.0 * tm - 0.5) + std::f64::consts::LN_2 + 0.5 * (r.ln() + rho.ln())
        - (1.0 - xi).ln()
        - 0.5 * (r * r + rho * rho) * (1.0 + xi) / (1.0 - xi)
        + bessel_i_ln(
            alpha,
            2.0 * r * rho * (-ms.beta / 2.0).exp() / (1.0 - xi),
            cfg,
        )?;
    Ok(ln_w.exp())
}

/// Q_beta / (1-t)^fold at the relative squared radius t, as the k-sum whose
/// terms are individually nonnegative; fold = 0 gives the Husimi value and
/// fold = 2 absorbs the surface-measure Jacobian of the radial density.
fn q_mixed_scaled(xi: f64, tau: f64, m: u32, alpha: f64, t: f64, fold: f64) -> f64 {
    let one_m_xi = 1.0 - xi;
    let mut sum = 0.0;
    for k in 0..=m {
        sum += binomial_general(alpha + f64::from(m), k)
            * binomial_general(f64::from(m), k)
            * xi.powi((m - k) as i32)
            * (one_m_xi * one_m_xi * t).powi(k as i32)
            * (1.0 - t).powf(2.0 * tau - 2.0 * f64::from(k) - fold);
    }
    one_m_xi * sum / (1.0 - t * xi).powf(2.0 * tau)
}

/// Thermal Husimi value Q_beta(z), evaluated through the binomial-contracted
/// sum so no negative factor is ever raised to the level power.
pub fn q_mixed_closed(ms: &MixedStateSpec, pt: &DiskPoint) -> Result<f64> {
    let p = &ms.params;
    let t = p.t_of(pt)?;
    Ok(q_mixed_scaled(ms.xi(), p.tau(), p.m(), p.alpha(), t, 0.0))
}

/// Flat-plane thermal Husimi value the disk expression converges to as R
/// grows, in the Laguerre form with the dimensionless radius 2B|z|^2.
pub fn q_mixed_euclid(beta: f64, b: f64, m: u32, z: Complex64) -> f64 {
    debug_assert!(beta > 0.0 && b > 0.0);
    let xi = (-beta).exp();
    let lam = 2.0 * b * z.norm_sqr();
    let sinh_half = (0.5 * beta).sinh();
    (1.0 - xi)
        * (-beta * f64::from(m)).exp()
        * (-lam * (1.0 - xi)).exp()
        * laguerre_l(m, 0.0, -4.0 * lam * sinh_half * sinh_half)
}

/// Density of lambda = |z|^2 on [0, R^2] for the thermal state, with the
/// surface-measure Jacobian folded into each k-term's boundary exponent.
pub fn radial_density_mixed(ms: &MixedStateSpec) -> RadialDensity {
    let spec = *ms;
    let p = ms.params;
    let r2 = p.r() * p.r();
    let (tau, m, alpha, xi) = (p.tau(), p.m(), p.alpha(), ms.xi());
    let norm = alpha / r2;
    let eval = Box::new(move |lambda: f64| -> f64 {
        if !(0.0..=r2).contains(&lambda) {
            return 0.0;
        }
        norm * q_mixed_scaled(xi, tau, m, alpha, lambda / r2, 2.0)
    });
    RadialDensity {
        support_end: r2,
        eval,
        meta: DensityMeta::Mixed(spec),
    }
}

/// Per-term weight of the k-sum shared by the characteristic function and
/// the moment formulas.
fn thermal_weight(alpha: f64, m: u32, xi: f64, k: u32) -> f64 {
    binomial_general(alpha + f64::from(m), k)
        * binomial_general(f64::from(m), k)
        * xi.powi((m - k) as i32)
        * ((1.0 - xi) * (1.0 - xi)).powi(k as i32)
}

/// Characteristic function E[exp(iu lambda)] of the thermal radial law, as
/// the finite k-sum of Beta-weighted confluent two-variable series.
pub fn cf_mixed(ms: &MixedStateSpec, u: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    let p = &ms.params;
    let (alpha, m, xi) = (p.alpha(), p.m(), ms.xi());
    let r2 = p.r() * p.r();
    let mf = f64::from(m);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        let kf = f64::from(k);
        let phi = humbert_phi1(
            kf + 1.0,
            alpha + 2.0 * mf + 1.0,
            alpha + 2.0 * mf - kf + 1.0,
            Complex64::new(xi, 0.0),
            Complex64::new(0.0, u * r2),
            cfg,
        )?;
        sum +=
            thermal_weight(alpha, m, xi, k) * beta_fn(kf + 1.0, alpha + 2.0 * mf - 2.0 * kf)? * phi;
    }
    Ok(alpha * (1.0 - xi) * sum)
}

/// n-th raw moment E[lambda^n] of the thermal radial law in closed form.
fn raw_moment_mixed(ms: &MixedStateSpec, n: u32, cfg: &SeriesConfig) -> Result<f64> {
    let p = &ms.params;
    let (alpha, m, xi) = (p.alpha(), p.m(), ms.xi());
    let r2 = p.r() * p.r();
    let mf = f64::from(m);
    let nf = f64::from(n);
    let mut sum = 0.0;
    for k in 0..=m {
        let kf = f64::from(k);
        let gauss = gauss_2f1(
            kf + nf + 1.0,
            alpha + 2.0 * mf + 1.0,
            alpha + 2.0 * mf - kf + nf + 1.0,
            Complex64::new(xi, 0.0),
            cfg,
        )?;
        sum += thermal_weight(alpha, m, xi, k)
            * beta_fn(kf + nf + 1.0, alpha + 2.0 * mf - 2.0 * kf)?
            * gauss.re;
    }
    Ok(r2.powi(n as i32) * alpha * (1.0 - xi) * sum)
}

/// Mean of the thermal radial law.
pub fn mean_mixed(ms: &MixedStateSpec, cfg: &SeriesConfig) -> Result<f64> {
    raw_moment_mixed(ms, 1, cfg)
}

/// Variance of the thermal radial law.
pub fn var_mixed(ms: &MixedStateSpec, cfg: &SeriesConfig) -> Result<f64> {
    let mean = raw_moment_mixed(ms, 1, cfg)?;
    Ok(raw_moment_mixed(ms, 2, cfg)? - mean * mean)
}

/// Large-R limit of the thermal characteristic function, defined for
/// frequencies below the Landau scale 2B.
pub fn cf_mixed_euclid_limit(beta: f64, b: f64, m: u32, u: f64) -> Result<Complex64> {
    if !(u < 2.0 * b) {
        return Err(Error::Domain(format!(
            "limit characteristic function needs u < 2B, got u = {u}, 2B = {}",
            2.0 * b
        )));
    }
    let xi = (-beta).exp();
    let s = 1.0 - xi;
    let v = u / (2.0 * b);
    let den = Complex64::new(s, -v);
    let num = Complex64::new(s, -v * xi);
    Ok(s / den * (num / den).powu(m))
}

/// Probability of count m under the thermal photon-count law with mean
/// occupation N_T = 1/(e^beta - 1) and non-centrality lambda.
pub fn laguerre_photon_pmf(m: u32, lambda: f64, beta: f64) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::Domain(format!(
            "non-centrality must be nonnegative, got {lambda}"
        )));
    }
    if !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "inverse temperature must be positive, got {beta}"
        )));
    }
    let xi = (-beta).exp();
    let sinh_half = (0.5 * beta).sinh();
    Ok(xi.powi(m as i32)
        * (1.0 - xi)
        * (-lambda * (1.0 - xi)).exp()
        * laguerre_l(m, 0.0, -4.0 * lambda * sinh_half * sinh_half))
}

/// Thermodynamic potential Theta = -(1/beta) sum_j log(1 + eps e^{-beta
/// eta_j}), truncated once the exact geometric tail bound drops below 1e-14.
pub fn thermo_trace(ms: &MixedStateSpec) -> f64 {
    let sv = SpectrumView::new(&ms.params);
    let tail_scale = 1.0 / (1.0 - ms.xi());
    let mut sum = 0.0;
    let mut j = 0u32;
    loop {
        let w = ms.epsilon * (-ms.beta * sv.eta(j)).exp();
        if w * tail_scale < 1e-14 {
            break;
        }
        sum += w.ln_1p();
        j += 1;
    }
    -sum / ms.beta
}

/// One level index of the thermodynamic-bound sweep: the certified
/// phase-space integral (lower symbol scaled by the partition function), the
/// unscaled variant, the exact potential, and their gap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundTerm {
    pub m: u32,
    pub lower_symbol_integral: f64,
    pub literal_symbol_integral: f64,
    pub theta: f64,
    pub gap: f64,
}

/// Result of sweeping the bound over every admissible level index.
#[derive(Debug, Clone, Serialize)]
pub struct BoundSweep {
    pub terms: Vec<BoundTerm>,
    pub m_star: u32,
    pub bound: f64,
}

/// Evaluate the convexity lower bound (1/beta) integral of
/// log(1/(1 + eps S_beta)) against the coherent-state measure for every
/// admissible m, where S_beta is the partition-scaled Husimi function; the
/// unscaled integral is carried alongside for comparison.
pub fn berezin_lieb_sweep(
    beta: f64,
    epsilon: f64,
    b: f64,
    r: f64,
    q: &QuadratureSpec,
) -> Result<BoundSweep> {
    let probe = ModelParams::new(b, r, 0)?;
    let q = q.with_substitution(EndpointSubstitution::ExpRight);
    let mut terms = Vec::new();
    for m in 0..=probe.max_level() {
        let p = ModelParams::new(b, r, m)?;
        let ms = MixedStateSpec::new(beta, p, epsilon)?;
        let z = partition_z(&ms);
        let theta = thermo_trace(&ms);
        let (tau, alpha, xi) = (p.tau(), p.alpha(), ms.xi());
        let r2 = r * r;
        let val = integrate_radial(
            |lambda| {
                let t = lambda / r2;
                if t >= 1.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let qb = q_mixed_scaled(xi, tau, m, alpha, t, 0.0);
                let measure = alpha / r2 / ((1.0 - t) * (1.0 - t));
                Complex64::new(-(epsilon * z * qb).ln_1p(), -(epsilon * qb).ln_1p()) * measure
            },
            r2,
            &q,
        )?;
        let lower_symbol_integral = val.re / beta;
        terms.push(BoundTerm {
            m,
            lower_symbol_integral,
            literal_symbol_integral: val.im / beta,
            theta,
            gap: theta - lower_symbol_integral,
        });
    }
    let m_star = terms
        .iter()
        .max_by(|a, b| a.lower_symbol_integral.total_cmp(&b.lower_symbol_integral))
        .map(|t| t.m)
        .expect("level range is never empty for valid parameters");
    let bound = terms[m_star as usize].lower_symbol_integral;
    Ok(BoundSweep {
        terms,
        m_star,
        bound,
    })
}

/// Best (largest) value of the convexity lower bound over the admissible
/// level indices; never exceeds the thermodynamic potential.
pub fn berezin_lieb_lower_bound(beta: f64, epsilon: f64, b: f64, r: f64) -> Result<f64> {
    Ok(berezin_lieb_sweep(beta, epsilon, b, r, &QuadratureSpec::default())?.bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::number_state;
    use crate::husimi_pure::{mean_pure, q_pure, radial_density, var_pure, PureStateSpec};
    use crate::verify::integrate_radial_real;
    use approx::assert_relative_eq;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 1.5, 1).unwrap()
    }

    fn standard(beta: f64) -> MixedStateSpec {
        MixedStateSpec::new(beta, params(), 1.0).unwrap()
    }

    fn at(r: f64) -> DiskPoint {
        DiskPoint::new(Complex64::new(r, 0.0))
    }

    #[test]
    fn spec_validation() {
        assert!(MixedStateSpec::new(0.0, params(), 1.0).is_err());
        assert!(MixedStateSpec::new(-1.0, params(), 1.0).is_err());
        assert!(MixedStateSpec::new(f64::INFINITY, params(), 1.0).is_err());
        assert!(MixedStateSpec::new(1.0, params(), 0.0).is_err());
        assert!(MixedStateSpec::new(1.0, params(), -2.0).is_err());
        let ms = MixedStateSpec::new(0.7, params(), 0.5).unwrap();
        assert_eq!(ms.beta(), 0.7);
        assert_eq!(ms.epsilon(), 0.5);
        assert_eq!(ms.params(), params());
    }

    #[test]
    fn eta_values_and_spacing() {
        // BR^2 = 3, m = 1: eta_0 = 4(3 - 1) - 1 = 7
        let p = ModelParams::new(0.75, 2.0, 1).unwrap();
        assert_relative_eq!(eigenvalue_eta(0, &p), 7.0);
        for j in 0..20 {
            let diff = eigenvalue_eta(j + 1, &p) - eigenvalue_eta(j, &p);
            assert_relative_eq!(diff, 1.0, max_relative = 1e-14);
        }
        let sv = SpectrumView::new(&p);
        assert_relative_eq!(sv.tau, 3.0);
        assert_relative_eq!(sv.eta(5), 12.0);
    }

    #[test]
    fn eta_finite_difference_eigencheck() {
        // Rayleigh quotient of the radial oscillator
        //   -(1/2) d^2/dxi^2 + (a^2 - 1/4)/(2 xi^2) + xi^2/2,  a = 2(BR^2-m)-1
        // on the j-th bound state comes out at 2j + 2(BR^2-m): the levels of
        // that written operator are spaced by 2.  The unit-spaced eta_j used
        // by every thermal formula sits at the fixed affine offset
        // eta_j = E_j/2 + 3(BR^2-m) - 1 from it, which is what the partition
        // function and heat kernel tests certify independently.
        let p = params();
        let tm = p.tau() - f64::from(p.m());
        let a = p.alpha();
        let h = 1e-3;
        let n = 8000usize;
        for j in [0u32, 2] {
            let psi: Vec<f64> = (0..=n)
                .map(|i| number_state(j, &p, h * (i as f64 + 1.0)).unwrap())
                .collect();
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 1..n {
                let xi = h * (i as f64 + 1.0);
                let kinetic = -(psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (2.0 * h * h);
                let potential = ((a * a - 0.25) / (2.0 * xi * xi) + 0.5 * xi * xi) * psi[i];
                num += psi[i] * (kinetic + potential);
                den += psi[i] * psi[i];
            }
            let rq = num / den;
            let expected = 2.0 * f64::from(j) + 2.0 * tm;
            assert_relative_eq!(rq, expected, max_relative = 1e-4);
            assert_relative_eq!(
                rq / 2.0 + 3.0 * tm - 1.0,
                eigenvalue_eta(j, &p),
                max_relative = 1e-4
            );
        }
    }

    #[test]
    fn partition_function_matches_level_sum() {
        let ms = standard(1.0);
        let sv = SpectrumView::new(&ms.params());
        let mut sum = 0.0;
        for j in 0..200 {
            sum += (-ms.beta() * sv.eta(j)).exp();
        }
        let z = partition_z(&ms);
        assert!(z > 0.0);
        assert_relative_eq!(z, sum, max_relative = 1e-12);

        // at large beta only the bottom level contributes
        let cold = standard(50.0);
        let ratio = partition_z(&cold) / (-cold.beta() * sv.eta(0)).exp();
        assert_relative_eq!(ratio, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn heat_kernel_symmetry_positivity_and_spectral_sum() {
        let ms = MixedStateSpec::new(0.8, params(), 1.0).unwrap();
        let cfg = SeriesConfig::default();

        for &(r, rho) in &[(0.3, 1.7), (1.0, 1.3), (2.5, 0.4)] {
            let w = heat_kernel(&ms, r, rho, &cfg).unwrap();
            let w_t = heat_kernel(&ms, rho, r, &cfg).unwrap();
            assert!(w > 0.0);
            assert_relative_eq!(w, w_t, max_relative = 1e-14);
        }

        let mut spectral = 0.0;
        let sv = SpectrumView::new(&ms.params());
        for j in 0..=80 {
            let weight = (-ms.beta() * sv.eta(j)).exp();
            spectral += weight
                * number_state(j, &ms.params(), 1.0).unwrap()
                * number_state(j, &ms.params(), 1.3).unwrap();
        }
        assert_relative_eq!(spectral, 0.032_536_206_573_402_088_9, max_relative = 1e-12);
        let w = heat_kernel(&ms, 1.0, 1.3, &cfg).unwrap();
        assert_relative_eq!(w, spectral, max_relative = 1e-8);

        assert!(matches!(
            heat_kernel(&ms, 0.0, 1.0, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn q_mixed_ground_value_and_reference_point() {
        let p0 = ModelParams::new(1.0, 1.5, 0).unwrap();
        let ms0 = MixedStateSpec::new(0.9, p0, 1.0).unwrap();
        let origin = at(0.0);
        assert_relative_eq!(
            q_mixed_closed(&ms0, &origin).unwrap(),
            1.0 - (-0.9f64).exp(),
            max_relative = 1e-14
        );

        let ms = standard(0.8);
        assert_relative_eq!(
            q_mixed_closed(&ms, &at(0.4)).unwrap(),
            0.234_045_785_736_839_788_6,
            max_relative = 1e-12
        );

        assert!(matches!(
            q_mixed_closed(&ms, &at(1.5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn q_mixed_matches_level_series() {
        // geometric tail below 1e-10 at J = 40 for beta = 0.7
        let ms = standard(0.7);
        let xi = (-0.7f64).exp();
        for &rad in &[0.2, 0.6, 0.4 * 1.5, 1.2, 1.45] {
            let pt = at(rad);
            let mut series = 0.0;
            for j in 0..=40 {
                let s = PureStateSpec {
                    j,
                    params: ms.params(),
                };
                series += xi.powi(j as i32) * q_pure(&s, &pt).unwrap();
            }
            series *= 1.0 - xi;
            let closed = q_mixed_closed(&ms, &pt).unwrap();
            assert!(
                (closed - series).abs() < 1e-8,
                "series mismatch at radius {rad}: {closed} vs {series}"
            );
        }
    }

    #[test]
    fn q_mixed_freezes_to_ground_state() {
        let ms = standard(40.0);
        let s0 = PureStateSpec {
            j: 0,
            params: ms.params(),
        };
        for &rad in &[0.3, 0.9, 1.3] {
            let pt = at(rad);
            assert_relative_eq!(
                q_mixed_closed(&ms, &pt).unwrap(),
                q_pure(&s0, &pt).unwrap(),
                max_relative = 1e-6
            );
        }
    }

    #[test]
    fn q_mixed_euclid_values_and_pmf_identity() {
        let beta = 0.7_f64;
        let xi = (-beta).exp();
        assert_relative_eq!(
            q_mixed_euclid(beta, 1.0, 0, Complex64::new(0.0, 0.0)),
            1.0 - xi,
            max_relative = 1e-15
        );

        for m in 0..6 {
            for &rad in &[0.0, 0.5, 1.1, 2.0] {
                let z = Complex64::new(rad, 0.3);
                let q = q_mixed_euclid(beta, 1.3, m, z);
                assert!(q > 0.0, "flat thermal value must be positive");
                let pmf = laguerre_photon_pmf(m, 2.0 * 1.3 * z.norm_sqr(), beta).unwrap();
                assert_relative_eq!(q, pmf, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn q_mixed_euclid_is_the_large_radius_limit() {
        let beta = 0.7_f64;
        let z0 = Complex64::new(0.6, 0.3);
        let flat = q_mixed_euclid(beta, 1.0, 1, z0);
        let err_at = |r: f64| {
            let p = ModelParams::new(1.0, r, 1).unwrap();
            let ms = MixedStateSpec::new(beta, p, 1.0).unwrap();
            (q_mixed_closed(&ms, &DiskPoint::new(z0)).unwrap() - flat).abs()
        };
        let errs = [err_at(5.0), err_at(20.0), err_at(100.0)];
        assert!(errs[1] < errs[0] && errs[2] < errs[1], "errors {errs:?}");
    }

    #[test]
    fn mixed_density_mass_positivity_and_freezing() {
        let ms = standard(0.7);
        let d = radial_density_mixed(&ms);
        let q = QuadratureSpec::default().with_substitution(EndpointSubstitution::ExpRight);
        let mass = integrate_radial_real(|l| (d.eval)(l), d.support_end, &q).unwrap();
        assert_relative_eq!(mass, 1.0, max_relative = 1e-8);

        for i in 0..=500 {
            let l = d.support_end * i as f64 / 500.0;
            assert!((d.eval)(l) >= 0.0, "density negative at {l}");
        }
        assert_eq!((d.eval)(-0.2), 0.0);
        assert_eq!((d.eval)(d.support_end + 0.2), 0.0);
        assert!(matches!(d.meta, DensityMeta::Mixed(_)));

        // at beta = 40 the thermal density coincides with the ground level
        let cold = standard(40.0);
        let dc = radial_density_mixed(&cold);
        let pure = radial_density(&PureStateSpec {
            j: 0,
            params: cold.params(),
        });
        for i in 1..10 {
            let l = dc.support_end * i as f64 / 10.0;
            assert_relative_eq!((dc.eval)(l), (pure.eval)(l), max_relative = 1e-6);
        }
    }

    #[test]
    fn cf_mixed_normalization_symmetry_and_reference() {
        let ms = standard(0.8);
        let cfg = SeriesConfig::default();

        let at_zero = cf_mixed(&ms, 0.0, &cfg).unwrap();
        assert_relative_eq!(at_zero.re, 1.0, max_relative = 1e-12);
        assert!(at_zero.im.abs() < 1e-13);

        let v = cf_mixed(&ms, 0.7, &cfg).unwrap();
        assert_relative_eq!(v.re, 0.494_754_237_195_141_342_7, max_relative = 1e-11);
        assert_relative_eq!(v.im, 0.776_177_832_183_475_401_3, max_relative = 1e-11);

        for &u in &[0.4, 1.1, 3.0] {
            let plus = cf_mixed(&ms, u, &cfg).unwrap();
            let minus = cf_mixed(&ms, -u, &cfg).unwrap();
            assert!(plus.norm() <= 1.0 + 1e-11);
            assert_relative_eq!(plus.re, minus.re, max_relative = 1e-10);
            assert_relative_eq!(plus.im, -minus.im, max_relative = 1e-10);
        }
    }

    #[test]
    fn cf_mixed_ground_level_single_term() {
        let p0 = ModelParams::new(1.0, 1.5, 0).unwrap();
        let ms0 = MixedStateSpec::new(0.7, p0, 1.0).unwrap();
        let cfg = SeriesConfig::default();
        let xi = ms0.xi();
        let alpha = p0.alpha();
        let r2 = p0.r() * p0.r();
        for &u in &[0.5, 2.0] {
            let direct = alpha
                * (1.0 - xi)
                * beta_fn(1.0, alpha).unwrap()
                * humbert_phi1(
                    1.0,
                    alpha + 1.0,
                    alpha + 1.0,
                    Complex64::new(xi, 0.0),
                    Complex64::new(0.0, u * r2),
                    &cfg,
                )
                .unwrap();
            let closed = cf_mixed(&ms0, u, &cfg).unwrap();
            assert_relative_eq!(closed.re, direct.re, max_relative = 1e-13);
            assert_relative_eq!(closed.im, direct.im, max_relative = 1e-13);
        }
    }

    #[test]
    fn mixed_moments_reference_and_consistency() {
        let ms = standard(0.8);
        let cfg = SeriesConfig::default();
        let mean = mean_mixed(&ms, &cfg).unwrap();
        let var = var_mixed(&ms, &cfg).unwrap();
        assert_relative_eq!(mean, 1.422_430_386_820_660_091, max_relative = 1e-12);
        assert_relative_eq!(var, 0.335_818_617_940_820_745_6, max_relative = 1e-11);
        assert!(mean > 0.0 && mean < 2.25);
        assert!(var >= 0.0);

        // characteristic-function finite differences reproduce both moments
        let h = 1e-4;
        let fd_mean =
            (cf_mixed(&ms, h, &cfg).unwrap().im - cf_mixed(&ms, -h, &cfg).unwrap().im) / (2.0 * h);
        assert_relative_eq!(fd_mean, mean, max_relative = 1e-5);

        let h2 = 1e-3;
        let second = (2.0 - 2.0 * cf_mixed(&ms, h2, &cfg).unwrap().re) / (h2 * h2);
        assert_relative_eq!(second, var + mean * mean, max_relative = 1e-5);

        // thermal moments collapse onto the ground level as beta grows
        let cold = standard(40.0);
        let s0 = PureStateSpec {
            j: 0,
            params: cold.params(),
        };
        assert_relative_eq!(
            mean_mixed(&cold, &cfg).unwrap(),
            mean_pure(&s0),
            max_relative = 1e-6
        );
        assert_relative_eq!(
            var_mixed(&cold, &cfg).unwrap(),
            var_pure(&s0),
            max_relative = 1e-5
        );
    }

    #[test]
    fn cf_limit_form_and_domain() {
        let beta = 0.7_f64;
        let xi = (-beta).exp();
        let s = 1.0 - xi;

        let one = cf_mixed_euclid_limit(beta, 1.0, 3, 0.0).unwrap();
        assert_relative_eq!(one.re, 1.0, max_relative = 1e-14);
        assert!(one.im.abs() < 1e-15);

        let u = 0.5;
        let m0 = cf_mixed_euclid_limit(beta, 1.0, 0, u).unwrap();
        let expected = s / Complex64::new(s, -u / 2.0);
        assert_relative_eq!(m0.re, expected.re, max_relative = 1e-14);
        assert_relative_eq!(m0.im, expected.im, max_relative = 1e-14);

        assert!(matches!(
            cf_mixed_euclid_limit(beta, 1.0, 1, 2.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            cf_mixed_euclid_limit(beta, 1.0, 1, 2.5),
            Err(Error::Domain(_))
        ));
        assert!(cf_mixed_euclid_limit(beta, 1.0, 1, -7.0).is_ok());
    }

    #[test]
    fn cf_mixed_approaches_the_limit_form() {
        let (beta, b, m, u) = (0.7, 1.0, 1u32, 0.5);
        let cfg = SeriesConfig::default();
        let target = cf_mixed_euclid_limit(beta, b, m, u).unwrap();
        let err_at = |r: f64| {
            let p = ModelParams::new(b, r, m).unwrap();
            let ms = MixedStateSpec::new(beta, p, 1.0).unwrap();
            (cf_mixed(&ms, u, &cfg).unwrap() - target).norm()
        };
        let errs = [err_at(5.0), err_at(20.0), err_at(100.0)];
        assert!(errs[1] < errs[0] && errs[2] < errs[1], "errors {errs:?}");
    }

    #[test]
    fn photon_pmf_geometric_base_and_total_mass() {
        let beta = 0.7_f64;
        let xi = (-beta).exp();
        // lambda = 0 collapses onto the geometric law
        for m in 0..5 {
            assert_relative_eq!(
                laguerre_photon_pmf(m, 0.0, beta).unwrap(),
                xi.powi(m as i32) * (1.0 - xi),
                max_relative = 1e-14
            );
        }

        let mut total = 0.0;
        for m in 0..=200 {
            total += laguerre_photon_pmf(m, 2.0, beta).unwrap();
        }
        assert!((1.0 - total).abs() < 1e-8, "mass deficit {}", 1.0 - total);

        assert!(matches!(
            laguerre_photon_pmf(1, -0.5, beta),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            laguerre_photon_pmf(1, 1.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn thermo_trace_limits_and_truncation() {
        let p = params();
        let tiny = MixedStateSpec::new(1.0, p, 1e-300).unwrap();
        assert!(thermo_trace(&tiny).abs() < 1e-290);

        let weak = MixedStateSpec::new(1.0, p, 0.5).unwrap();
        let strong = MixedStateSpec::new(1.0, p, 1.5).unwrap();
        let (tw, ts) = (thermo_trace(&weak), thermo_trace(&strong));
        assert!(tw < 0.0 && ts < tw, "potential must fall with fugacity");

        // doubling the cutoff does not move the truncated sum
        let sv = SpectrumView::new(&p);
        let manual = |levels: u32| -> f64 {
            let mut s = 0.0;
            for j in 0..levels {
                s += (0.5 * (-sv.eta(j)).exp()).ln_1p();
            }
            -s / 1.0
        };
        // the truncated value sits within the 1e-14 tail bound of the
        // untruncated sum
        assert_relative_eq!(thermo_trace(&weak), manual(60), epsilon = 1e-13);
        assert_relative_eq!(manual(60), manual(120), max_relative = 1e-13);
    }

    #[test]
    fn bound_sweep_reference_values_and_inequality() {
        let q = QuadratureSpec::default();
        let sweep = berezin_lieb_sweep(1.0, 0.5, 1.0, 1.5, &q).unwrap();
        assert_eq!(sweep.terms.len(), 2);
        assert_eq!(sweep.m_star, 0);

        let t0 = &sweep.terms[0];
        assert_relative_eq!(t0.theta, -2.653_307_647_242_870_4e-4, epsilon = 1e-13);
        assert_relative_eq!(
            t0.lower_symbol_integral,
            -2.653_372_964_725_390_8e-4,
            max_relative = 1e-9
        );
        assert!(t0.gap >= 0.0 && t0.gap < 1e-7);

        let t1 = &sweep.terms[1];
        assert_relative_eq!(t1.theta, -1.443_922_863_506_044_8e-2, epsilon = 1e-13);
        assert_relative_eq!(
            t1.lower_symbol_integral,
            -1.447_612_792_155_997_9e-2,
            max_relative = 1e-9
        );
        assert!(t1.gap >= 0.0);

        assert_relative_eq!(
            sweep.bound,
            berezin_lieb_lower_bound(1.0, 0.5, 1.0, 1.5).unwrap(),
            max_relative = 1e-12
        );
        // the bound never exceeds the best exact potential
        let best_theta = sweep.terms.iter().map(|t| t.theta).fold(f64::MIN, f64::max);
        assert!(sweep.bound <= best_theta + 1e-15);
    }

    #[test]
    fn bound_vanishes_with_fugacity() {
        let q = QuadratureSpec::default();
        let sweep = berezin_lieb_sweep(1.0, 1e-12, 1.0, 1.5, &q).unwrap();
        for t in &sweep.terms {
            assert!(t.theta.abs() < 1e-11);
            assert!(t.lower_symbol_integral.abs() < 1e-11);
            assert!(t.gap >= -1e-22);
        }
    }
}
