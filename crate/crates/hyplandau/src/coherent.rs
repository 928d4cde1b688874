//! Generalized coherent states for a charged particle on the hyperbolic
//! disk: the admissible vector, half-plane and disk wavefunctions, the
//! rescaled states on L^2(R_+, dxi), the number-state basis with its
//! expansion coefficients, the phase-space measure, and the reproducing
//! kernels of the half-plane and disk eigenspaces.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{gamma_ratio, gauss_2f1, jacobi_p, laguerre_l, log_gamma, SeriesConfig};

/// Magnetic-strength parameter B, disk radius R, and Landau level index m,
/// validated together: the discrete spectrum requires 2BR^2 > 1 and only
/// the levels m = 0, 1, ..., floor(BR^2 - 1/2) are bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    b: f64,
    r: f64,
    m: u32,
}

impl ModelParams {
    pub fn new(b: f64, r: f64, m: u32) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!("B must be positive, got {b}")));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("R must be positive, got {r}")));
        }
        let tau = b * r * r;
        if !(2.0 * tau > 1.0) {
            return Err(Error::Domain(format!(
                "bound levels require 2BR^2 > 1, got 2BR^2 = {}",
                2.0 * tau
            )));
        }
        let max_m = (tau - 0.5).floor();
        if (m as f64) > max_m {
            return Err(Error::Domain(format!(
                "level index m = {m} exceeds floor(BR^2 - 1/2) = {max_m}"
            )));
        }
        Ok(ModelParams { b, r, m })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// tau = B R^2, the disk-rescaled magnetic parameter.
    pub fn tau(&self) -> f64 {
        self.b * self.r * self.r
    }

    /// alpha = 2(BR^2 - m) - 1 > 0, the Laguerre/Jacobi order attached to
    /// the level.
    pub fn alpha(&self) -> f64 {
        2.0 * (self.tau() - self.m as f64) - 1.0
    }

    /// Largest admissible level index floor(BR^2 - 1/2).
    pub fn max_level(&self) -> u32 {
        (self.tau() - 0.5).floor() as u32
    }

    /// |z|^2 / R^2 for a phase-space point, validated inside the disk.
    pub(crate) fn t_of(&self, pt: &DiskPoint) -> Result<f64> {
        let t = pt.z.norm_sqr() / (self.r * self.r);
        if t >= 1.0 {
            return Err(Error::Domain(format!(
                "phase-space point |z| = {} lies outside the open disk of radius {}",
                pt.z.norm(),
                self.r
            )));
        }
        Ok(t)
    }
}

/// Phase-space label z; the |z| < R constraint is checked where the point
/// meets a ModelParams, so one point can be reused across radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    pub z: Complex64,
}

impl DiskPoint {
    pub fn new(z: Complex64) -> Self {
        DiskPoint { z }
    }
}

/// Affine-group coordinates (x, y) with y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    x: f64,
    y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::Domain(format!(
                "half-plane coordinate y must be positive, got {y}"
            )));
        }
        Ok(HalfPlanePoint { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// The point as the complex number x + iy.
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::Domain(format!(
            "radial coordinate xi must be positive, got {xi}"
        )));
    }
    Ok(())
}

/// Admissible vector: phi_{B,m}(xi) =
/// (Gamma(2B-m)/m!)^{-1/2} xi^{B-m} e^{-xi/2} L_m^{(2(B-m)-1)}(xi),
/// a unit vector of L^2(R_+, xi^{-1} dxi).
pub fn phi_admissible(b: f64, m: u32, xi: f64) -> Result<f64> {
    if !(2.0 * b - m as f64 > 0.0) {
        return Err(Error::Domain(format!(
            "admissible vector needs 2B - m > 0, got {}",
            2.0 * b - m as f64
        )));
    }
    check_xi(xi)?;
    let ln_norm = 0.5 * (log_gamma(m as f64 + 1.0)? - log_gamma(2.0 * b - m as f64)?);
    let bm = b - m as f64;
    let lag = laguerre_l(m, 2.0 * bm - 1.0, xi);
    Ok((ln_norm + bm * xi.ln() - xi / 2.0).exp() * lag)
}

/// Half-plane coherent-state wavefunction:
/// (Gamma(2B-m)/m!)^{-1/2} (xi y)^{B-m} e^{-xi(y-ix)/2} L_m^{(2(B-m)-1)}(xi y).
pub fn tau_wavefunction(p: &HalfPlanePoint, b: f64, m: u32, xi: f64) -> Result<Complex64> {
    if !(2.0 * b - m as f64 > 0.0) {
        return Err(Error::Domain(format!(
            "half-plane state needs 2B - m > 0, got {}",
            2.0 * b - m as f64
        )));
    }
    check_xi(xi)?;
    let ln_norm = 0.5 * (log_gamma(m as f64 + 1.0)? - log_gamma(2.0 * b - m as f64)?);
    let bm = b - m as f64;
    let lag = laguerre_l(m, 2.0 * bm - 1.0, xi * p.y);
    let modulus = (ln_norm + bm * (xi * p.y).ln() - xi * p.y / 2.0).exp() * lag;
    Ok(Complex64::new(0.0, xi * p.x / 2.0).exp() * modulus)
}

/// Inverse Cayley transform D -> G:
/// z |-> (-2 Im z / |1-z|^2, (1-|z|^2)/|1-z|^2).
pub fn inverse_cayley(z: Complex64) -> Result<HalfPlanePoint> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "inverse Cayley transform needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let d = (Complex64::new(1.0, 0.0) - z).norm_sqr();
    HalfPlanePoint::new(-2.0 * z.im / d, (1.0 - z.norm_sqr()) / d)
}

/// Disk coherent-state wavefunction on L^2(R_+, xi^{-1} dxi):
/// sqrt(m!/Gamma(2B-m)) |1-z|^{2m} (1-z)^{-2B} ((1-|z|^2) xi)^{B-m}
/// e^{-(xi/2)(1+z)/(1-z)} L_m^{(2(B-m)-1)}(xi (1-|z|^2)/|1-z|^2),
/// principal branch for (1-z)^{2B}.
pub fn kappa_wavefunction(z: Complex64, b: f64, m: u32, xi: f64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "disk state needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    if !(2.0 * b - m as f64 > 0.0) {
        return Err(Error::Domain(format!(
            "disk state needs 2B - m > 0, got {}",
            2.0 * b - m as f64
        )));
    }
    check_xi(xi)?;
    let one = Complex64::new(1.0, 0.0);
    let ln_norm = 0.5 * (log_gamma(m as f64 + 1.0)? - log_gamma(2.0 * b - m as f64)?);
    let omz = one - z;
    let t = z.norm_sqr();
    let bm = b - m as f64;
    let lag = laguerre_l(m, 2.0 * bm - 1.0, xi * (1.0 - t) / omz.norm_sqr());
    let scalar = (ln_norm + 2.0 * (m as f64) * omz.norm().ln() + bm * ((1.0 - t) * xi).ln()).exp();
    let phase = omz.powc(Complex64::new(-2.0 * b, 0.0));
    let expo = (-(xi / 2.0) * (one + z) / omz).exp();
    Ok(phase * expo * scalar * lag)
}

/// Rescaled coherent state on L^2(R_+, dxi):
/// <xi|kt_z> = sqrt(2/xi) <xi^2 | kappa_{z/R, BR^2, m}>.
pub fn kappa_tilde_wavefunction(pt: &DiskPoint, p: &ModelParams, xi: f64) -> Result<Complex64> {
    p.t_of(pt)?;
    check_xi(xi)?;
    let inner = kappa_wavefunction(pt.z / p.r(), p.tau(), p.m(), xi * xi)?;
    Ok(inner * (2.0 / xi).sqrt())
}

/// Number-state wavefunction:
/// <xi|j> = (2 j!/Gamma(2(BR^2-m)+j))^{1/2} xi^{2(BR^2-m)-1/2} e^{-xi^2/2}
/// L_j^{(2(BR^2-m)-1)}(xi^2), assembled in the log domain so large BR^2
/// neither overflows the power nor underflows the Gaussian.
pub fn number_state(j: u32, p: &ModelParams, xi: f64) -> Result<f64> {
    check_xi(xi)?;
    let alpha = p.alpha();
    let ln_norm = 0.5
        * (std::f64::consts::LN_2 + log_gamma(j as f64 + 1.0)?
            - log_gamma(alpha + 1.0 + j as f64)?);
    let lag = laguerre_l(j, alpha, xi * xi);
    if lag == 0.0 {
        return Ok(0.0);
    }
    let ln_mag = ln_norm + (alpha + 0.5) * xi.ln() - xi * xi / 2.0 + lag.abs().ln();
    Ok(lag.signum() * ln_mag.exp())
}

/// Expansion coefficient of the coherent state over the number states:
/// gamma_j(z) = (-1)^m ((2(BR^2-m)-1)/pi *
/// (m^j)! Gamma(2(BR^2-m)+(mvj)) / ((mvj)! Gamma(2(BR^2-m)+(m^j))))^{1/2}
/// * (-1)^{m^j} (1-t)^{-m} t^{|m-j|/2} e^{-i(m-j) arg z}
/// * P_{m^j}^{(|m-j|, 2(BR^2-m)-1)}(1-2t), with t = |z|^2/R^2.
pub fn gamma_coeff(j: u32, p: &ModelParams, pt: &DiskPoint) -> Result<Complex64> {
    let t = p.t_of(pt)?;
    let m = p.m();
    let lo = m.min(j);
    let hi = m.max(j);
    let diff = (hi - lo) as f64;
    let base = 2.0 * (p.tau() - m as f64);
    let ratio = gamma_ratio(base + hi as f64, base + lo as f64)?;
    let mut fact = 1.0;
    for i in (lo + 1)..=hi {
        fact *= i as f64;
    }
    let amp = (p.alpha() / std::f64::consts::PI * ratio / fact).sqrt();
    let sign = if (m + lo).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let radial = (1.0 - t).powi(-(m as i32))
        * t.powf(diff / 2.0)
        * jacobi_p(lo, diff, p.alpha(), 1.0 - 2.0 * t)?;
    let phase = if pt.z == Complex64::new(0.0, 0.0) {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, -((m as f64) - (j as f64)) * pt.z.arg()).exp()
    };
    Ok(phase * (sign * amp * radial))
}

/// Coherent-state normalization
/// N(z) = pi^{-1} (2(BR^2-m)-1) (1 - |z|^2/R^2)^{-2BR^2}.
pub fn normalization_n(p: &ModelParams, pt: &DiskPoint) -> Result<f64> {
    let t = p.t_of(pt)?;
    Ok(p.alpha() / std::f64::consts::PI * (1.0 - t).powf(-2.0 * p.tau()))
}

/// Density of the phase-space measure with respect to Lebesgue measure:
/// (2(BR^2-m)-1) / (pi R^2 (1 - |z|^2/R^2)^2).
pub fn measure_density(p: &ModelParams, pt: &DiskPoint) -> Result<f64> {
    let t = p.t_of(pt)?;
    Ok(p.alpha() / (std::f64::consts::PI * p.r() * p.r() * (1.0 - t) * (1.0 - t)))
}

/// Reproducing kernel of the half-plane eigenspace:
/// K(w, zeta) = alpha_{B,m} (|w-conj(zeta)|^2/(4 Im w Im zeta))^{-B+m}
/// ((zeta-conj(w))/(w-conj(zeta)))^B
/// 2F1(-m, 2B-m; 2(B-m) | 4 Im w Im zeta / |w-conj(zeta)|^2)
/// with alpha_{B,m} = (-1)^m Gamma(2B-m)/(m! Gamma(2B-2m)). This is the
/// overlap of two unit coherent states, so the diagonal is exactly 1; the
/// Gauss-series parameters are fixed by that normalization together with
/// quadrature cross-checks of the overlap integral.
pub fn kernel_halfplane(w: Complex64, zeta: Complex64, b: f64, m: u32) -> Result<Complex64> {
    if !(w.im > 0.0 && zeta.im > 0.0) {
        return Err(Error::Domain(format!(
            "kernel points must lie in the upper half-plane, got Im = ({}, {})",
            w.im, zeta.im
        )));
    }
    if !(2.0 * (b - m as f64) > 0.0) {
        return Err(Error::Domain(format!(
            "kernel needs 2(B - m) > 0, got {}",
            2.0 * (b - m as f64)
        )));
    }
    let mf = m as f64;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut fact = 1.0;
    for i in 1..=m {
        fact *= i as f64;
    }
    let alpha_bm = sign * gamma_ratio(2.0 * b - mf, 2.0 * b - 2.0 * mf)? / fact;
    let d = (w - zeta.conj()).norm_sqr();
    let arg = 4.0 * w.im * zeta.im / d;
    let power = (1.0 / arg).powf(-b + mf);
    let ratio = ((zeta - w.conj()) / (w - zeta.conj())).powc(Complex64::new(b, 0.0));
    let f = gauss_2f1(
        -mf,
        2.0 * b - mf,
        2.0 * (b - mf),
        Complex64::new(arg, 0.0),
        &SeriesConfig::default(),
    )?;
    Ok(ratio * (alpha_bm * power) * f)
}

/// Reproducing kernel of the disk eigenspace (unit disk, R = 1):
/// K(z, w) = pi^{-1} (2(B-m)-1) (1-z conj(w))^{-2B}
/// (|1-z conj(w)|^2/((1-|z|^2)(1-|w|^2)))^m
/// P_m^{(0, 2(B-m)-1)}(2 (1-|z|^2)(1-|w|^2)/|1-z conj(w)|^2 - 1).
pub fn kernel_disk(z: Complex64, w: Complex64, b: f64, m: u32) -> Result<Complex64> {
    if z.norm() >= 1.0 || w.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "disk kernel needs |z|, |w| < 1, got ({}, {})",
            z.norm(),
            w.norm()
        )));
    }
    if !(2.0 * (b - m as f64) - 1.0 > 0.0) {
        return Err(Error::Domain(format!(
            "disk kernel needs 2(B - m) - 1 > 0, got {}",
            2.0 * (b - m as f64) - 1.0
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let cross = one - z * w.conj();
    let prod = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr());
    let ratio = cross.norm_sqr() / prod;
    let jac = jacobi_p(m, 0.0, 2.0 * (b - m as f64) - 1.0, 2.0 / ratio - 1.0)?;
    let power = cross.powc(Complex64::new(-2.0 * b, 0.0));
    Ok(power * ((2.0 * (b - m as f64) - 1.0) / std::f64::consts::PI * ratio.powi(m as i32) * jac))
}
