//! Quadrature oracles over radial densities, the disk-measure reduction,
//! and the shipped verification suite comparing every closed form in the
//! crate against an independent numerical path.

use std::time::Instant;

use num_complex::Complex64;

use crate::coherent::{number_state, DiskPoint, ModelParams};
use crate::error::{Error, Result};
use crate::husimi_mixed::{
    berezin_lieb_sweep, cf_mixed, heat_kernel, mean_mixed, q_mixed_closed, radial_density_mixed,
    var_mixed, MixedStateSpec, SpectrumView,
};
use crate::husimi_pure::{
    cf_pure, mean_pure, q_pure, q_pure_euclid, radial_density, var_pure, PureStateSpec,
    RadialDensity,
};
use crate::specfun::SeriesConfig;
use crate::verify::{
    integrate_radial, integrate_radial_real, limit_rate, EndpointSubstitution, QuadratureSpec,
    VerificationReport,
};

/// Reduce a rotation-invariant disk integral to one dimension:
/// 2 pi Int_0^R g(r) w(r) r dr, evaluated in the squared-radius variable so
/// the endpoint substitutions of the radial integrator apply.
pub fn integrate_disk_radialized<G, W>(
    mut g: G,
    mut weight: W,
    r_max: f64,
    q: &QuadratureSpec,
) -> Result<f64>
where
    G: FnMut(f64) -> f64,
    W: FnMut(f64) -> f64,
{
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(Error::Domain(format!(
            "disk radius must be positive and finite, got {r_max}"
        )));
    }
    let value = integrate_radial_real(
        |lambda| {
            let r = lambda.sqrt();
            g(r) * weight(r)
        },
        r_max * r_max,
        q,
    )?;
    Ok(std::f64::consts::PI * value)
}

/// Fourier transform E[exp(iu lambda)] of a radial density by direct
/// quadrature; the right-endpoint substitution is always applied because
/// the built-in densities carry a steep boundary factor there.
pub fn cf_oracle(d: &RadialDensity, u: f64, q: &QuadratureSpec) -> Result<Complex64> {
    let q = q.with_substitution(EndpointSubstitution::ExpRight);
    integrate_radial(
        |lambda| Complex64::new(0.0, u * lambda).exp() * (d.eval)(lambda),
        d.support_end,
        &q,
    )
}

/// First or second raw moment of a radial density by direct quadrature.
pub fn moment_oracle(d: &RadialDensity, k: u32, q: &QuadratureSpec) -> Result<f64> {
    if !(1..=2).contains(&k) {
        return Err(Error::Domain(format!(
            "moment order must be 1 or 2, got {k}"
        )));
    }
    let q = q.with_substitution(EndpointSubstitution::ExpRight);
    integrate_radial_real(
        |lambda| lambda.powi(k as i32) * (d.eval)(lambda),
        d.support_end,
        &q,
    )
}

fn timed<F: FnOnce() -> Result<(Complex64, Complex64)>>(
    label: &str,
    tol: f64,
    body: F,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let (formula, oracle) = body()?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(VerificationReport::compare(
        label, formula, oracle, tol, runtime_ms,
    ))
}

fn real_pair(formula: f64, oracle: f64) -> (Complex64, Complex64) {
    (Complex64::new(formula, 0.0), Complex64::new(oracle, 0.0))
}

/// Run the shipped verification suite: every closed form against its
/// independent oracle at pinned parameters and tolerances. All reports
/// pass on a healthy build.
pub fn run_default_suite() -> Result<Vec<VerificationReport>> {
    let cfg = SeriesConfig::default();
    let quad = QuadratureSpec::default();
    let right = quad.with_substitution(EndpointSubstitution::ExpRight);
    let both = quad.with_substitution(EndpointSubstitution::Both);

    let params = ModelParams::new(1.0, 1.5, 1)?;
    let pure = PureStateSpec { j: 2, params };
    let mixed = MixedStateSpec::new(0.7, params, 1.0)?;
    let r2 = params.r() * params.r();
    let alpha = params.alpha();

    let mut reports = Vec::new();

    reports.push(timed(
        "radial quadrature on the Beta(3/2,1/2) singular integrand",
        3e-8,
        || {
            let v = integrate_radial_real(|x| x.sqrt() * (1.0 - x).powf(-0.5), 1.0, &both)?;
            Ok(real_pair(v, std::f64::consts::PI / 2.0))
        },
    )?);

    reports.push(timed(
        "pure radial density mass, (B,R,m,j)=(1,1.5,1,2)",
        1e-7,
        || {
            let d = radial_density(&pure);
            let mass = integrate_radial_real(|l| (d.eval)(l), d.support_end, &right)?;
            Ok(real_pair(mass, 1.0))
        },
    )?);

    reports.push(timed(
        "thermal radial density mass, (B,R,m,beta)=(1,1.5,1,0.7)",
        1e-7,
        || {
            let d = radial_density_mixed(&mixed);
            let mass = integrate_radial_real(|l| (d.eval)(l), d.support_end, &right)?;
            Ok(real_pair(mass, 1.0))
        },
    )?);

    reports.push(timed(
        "disk integral of the pure Husimi value against the state measure",
        1e-7,
        || {
            let v = integrate_disk_radialized(
                |r| q_pure(&pure, &DiskPoint::new(Complex64::new(r, 0.0))).unwrap_or(0.0),
                |r| alpha / (std::f64::consts::PI * r2) / (1.0 - r * r / r2).powi(2),
                params.r(),
                &right,
            )?;
            Ok(real_pair(v, 1.0))
        },
    )?);

    reports.push(timed(
        "disk integral of the thermal Husimi value against the state measure",
        1e-7,
        || {
            let v = integrate_disk_radialized(
                |r| q_mixed_closed(&mixed, &DiskPoint::new(Complex64::new(r, 0.0))).unwrap_or(0.0),
                |r| alpha / (std::f64::consts::PI * r2) / (1.0 - r * r / r2).powi(2),
                params.r(),
                &right,
            )?;
            Ok(real_pair(v, 1.0))
        },
    )?);

    reports.push(timed(
        "disk area under the unit Lebesgue weight",
        1e-9,
        || {
            let v = integrate_disk_radialized(|_| 1.0, |_| 1.0, params.r(), &quad)?;
            Ok(real_pair(v, std::f64::consts::PI * r2))
        },
    )?);

    for &u in &[0.7, 2.0] {
        reports.push(timed(
            &format!("pure characteristic function vs Fourier quadrature, u={u}"),
            1e-6,
            || {
                let d = radial_density(&pure);
                Ok((cf_pure(&pure, u, &cfg)?, cf_oracle(&d, u, &quad)?))
            },
        )?);
    }

    reports.push(timed(
        "thermal characteristic function vs Fourier quadrature, u=0.7",
        1e-6,
        || {
            let d = radial_density_mixed(&mixed);
            Ok((cf_mixed(&mixed, 0.7, &cfg)?, cf_oracle(&d, 0.7, &quad)?))
        },
    )?);

    reports.push(timed("pure mean vs quadrature moment", 1e-6, || {
        let d = radial_density(&pure);
        Ok(real_pair(mean_pure(&pure), moment_oracle(&d, 1, &quad)?))
    })?);

    reports.push(timed("pure variance vs quadrature moments", 1e-6, || {
        let d = radial_density(&pure);
        let m1 = moment_oracle(&d, 1, &quad)?;
        let m2 = moment_oracle(&d, 2, &quad)?;
        Ok(real_pair(var_pure(&pure), m2 - m1 * m1))
    })?);

    reports.push(timed("thermal mean vs quadrature moment", 1e-6, || {
        let d = radial_density_mixed(&mixed);
        Ok(real_pair(
            mean_mixed(&mixed, &cfg)?,
            moment_oracle(&d, 1, &quad)?,
        ))
    })?);

    reports.push(timed(
        "thermal variance vs quadrature moments",
        1e-6,
        || {
            let d = radial_density_mixed(&mixed);
            let m1 = moment_oracle(&d, 1, &quad)?;
            let m2 = moment_oracle(&d, 2, &quad)?;
            Ok(real_pair(var_mixed(&mixed, &cfg)?, m2 - m1 * m1))
        },
    )?);

    reports.push(timed(
        "heat kernel vs truncated spectral sum, (r,rho,beta)=(1,1.3,0.8)",
        1e-8,
        || {
            let warm = MixedStateSpec::new(0.8, params, 1.0)?;
            let sv = SpectrumView::new(&params);
            let mut spectral = 0.0;
            for j in 0..=80 {
                spectral += (-warm.beta() * sv.eta(j)).exp()
                    * number_state(j, &params, 1.0)?
                    * number_state(j, &params, 1.3)?;
            }
            Ok(real_pair(heat_kernel(&warm, 1.0, 1.3, &cfg)?, spectral))
        },
    )?);

    reports.push(timed(
        "thermal Husimi closed form vs truncated level series at |z|=0.6",
        1e-8,
        || {
            let pt = DiskPoint::new(Complex64::new(0.6, 0.0));
            let xi = (-mixed.beta()).exp();
            let mut series = 0.0;
            for j in 0..=40 {
                let s = PureStateSpec { j, params };
                series += xi.powi(j as i32) * q_pure(&s, &pt)?;
            }
            series *= 1.0 - xi;
            Ok(real_pair(q_mixed_closed(&mixed, &pt)?, series))
        },
    )?);

    reports.push(timed(
        "thermodynamic bound gap stays nonnegative, (beta,eps)=(1,0.5)",
        1e-12,
        || {
            let sweep = berezin_lieb_sweep(1.0, 0.5, 1.0, 1.5, &quad)?;
            let worst = sweep
                .terms
                .iter()
                .map(|t| t.gap)
                .fold(f64::INFINITY, f64::min);
            Ok(real_pair(worst.min(0.0), 0.0))
        },
    )?);

    reports.push(timed(
        "flat-plane limit rate of the pure Husimi value",
        1.0,
        || {
            let z0 = Complex64::new(0.6, 0.3);
            let flat = q_pure_euclid(2, 1, 1.0, z0);
            let fit = limit_rate(
                |r| {
                    let p = ModelParams::new(1.0, r, 1)?;
                    let s = PureStateSpec { j: 2, params: p };
                    Ok((q_pure(&s, &DiskPoint::new(z0))? - flat).abs())
                },
                &[5.0, 20.0, 100.0],
            )?;
            Ok(real_pair(fit.slope, -2.0))
        },
    )?);

    Ok(reports)
}
