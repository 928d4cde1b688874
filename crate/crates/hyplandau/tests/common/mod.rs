//! Shared fixtures for the integration suites: half-line quadrature through
//! an exponential substitution, Gram matrices of the two basis families, and
//! exact rational-arithmetic reference sums for terminating series.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use hyplandau::coherent::{gamma_coeff, number_state, DiskPoint, ModelParams};
use hyplandau::verify::{
    integrate_radial, integrate_radial_real, EndpointSubstitution, QuadratureSpec,
};
use hyplandau::Result;

/// Substitution window for half-line integrals: xi = e^s with
/// s in [-SHIFT, SPAN - SHIFT] covers xi from ~3e-20 to ~3e3, beyond which
/// every integrand in this crate has provably vanished.
const SHIFT: f64 = 45.0;
const SPAN: f64 = 53.0;

/// Integral of `f` over (0, infinity) through the substitution xi = e^s,
/// which resolves both power-law behavior at the origin and (super-)
/// exponential tails.
pub fn integrate_halfline<F: FnMut(f64) -> f64>(mut f: F, q: &QuadratureSpec) -> Result<f64> {
    integrate_radial_real(
        |t| {
            let xi = (t - SHIFT).exp();
            let v = f(xi) * xi;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        SPAN,
        q,
    )
}

/// Gram matrix of the number states under the plain-Lebesgue half-line
/// inner product, entries (j, k) for j, k <= jmax.
pub fn number_gram(p: &ModelParams, jmax: u32, q: &QuadratureSpec) -> Result<Vec<Vec<f64>>> {
    let n = (jmax + 1) as usize;
    let mut gram = vec![vec![0.0; n]; n];
    for j in 0..=jmax {
        for k in j..=jmax {
            let entry = integrate_halfline(
                |xi| number_state(j, p, xi).unwrap_or(0.0) * number_state(k, p, xi).unwrap_or(0.0),
                q,
            )?;
            gram[j as usize][k as usize] = entry;
            gram[k as usize][j as usize] = entry;
        }
    }
    Ok(gram)
}

/// Gram matrix of the expansion coefficients gamma_j over the disk under
/// the weight R^{-2} (1 - |z|^2/R^2)^{2 tau - 2} against Lebesgue measure,
/// computed by polar quadrature: a trapezoid rule in the angle (exact for
/// the single harmonics these products carry) and adaptive quadrature in
/// the squared radius.
pub fn gamma_gram(
    p: &ModelParams,
    jmax: u32,
    n_theta: usize,
    q: &QuadratureSpec,
) -> Result<Vec<Vec<Complex64>>> {
    let n = (jmax + 1) as usize;
    let r2 = p.r() * p.r();
    let weight_pow = 2.0 * p.tau() - 2.0;
    let quad = q.with_substitution(EndpointSubstitution::Both);
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..=jmax {
        for k in j..=jmax {
            let entry = integrate_radial(
                |lambda| {
                    let r = lambda.sqrt();
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 0..n_theta {
                        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n_theta as f64);
                        let z = Complex64::from_polar(r, theta);
                        let pt = DiskPoint::new(z);
                        let gj = gamma_coeff(j, p, &pt).unwrap_or(Complex64::new(0.0, 0.0));
                        let gk = gamma_coeff(k, p, &pt).unwrap_or(Complex64::new(0.0, 0.0));
                        acc += gj * gk.conj();
                    }
                    let weight = (1.0 - lambda / r2).max(0.0).powf(weight_pow) / r2;
                    acc * (std::f64::consts::PI / (n_theta as f64)) * weight
                },
                r2,
                &quad,
            )?;
            gram[j as usize][k as usize] = entry;
            gram[k as usize][j as usize] = entry.conj();
        }
    }
    Ok(gram)
}

/// Largest absolute deviation of a complex matrix from the identity.
pub fn identity_deviation(gram: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, row) in gram.iter().enumerate() {
        for (k, &entry) in row.iter().enumerate() {
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((entry - target).norm());
        }
    }
    worst
}

/// Largest absolute deviation of a real matrix from the identity.
pub fn identity_deviation_real(gram: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, row) in gram.iter().enumerate() {
        for (k, &entry) in row.iter().enumerate() {
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((entry - target).abs());
        }
    }
    worst
}

pub type Rat = Ratio<BigInt>;

pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

fn is_nonpositive_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Exact rational sum of a terminating pFq series, together with the sum
/// of term magnitudes (the natural scale for comparing against a float
/// evaluation when the signed sum cancels). Returns None when no numerator
/// parameter terminates the series or when a denominator Pochhammer
/// vanishes strictly before the numerator does (a pole).
pub fn pfq_rational(a: &[Rat], c: &[Rat], z: &Rat) -> Option<(Rat, Rat)> {
    let cutoff = a
        .iter()
        .filter(|p| is_nonpositive_integer(p))
        .map(|p| (-p.to_integer()).to_u32().expect("small termination index"))
        .min()?;
    let mut term: Rat = Ratio::one();
    let mut sum: Rat = Ratio::one();
    let mut scale: Rat = Ratio::one();
    for k in 0..cutoff {
        let kr = Rat::from_integer(BigInt::from(k));
        for p in a {
            term *= p.clone() + kr.clone();
        }
        for p in c {
            let factor = p.clone() + kr.clone();
            if factor.is_zero() {
                return None;
            }
            term /= factor;
        }
        term *= z.clone();
        term /= Rat::from_integer(BigInt::from(k + 1));
        sum += term.clone();
        scale += term.abs();
    }
    Some((sum, scale))
}

/// Exact rational double sum of a terminating Kampe de Feriet series with
/// one coupled top group `a` (Pochhammer in r+s), axis top groups `b` (r)
/// and `c` (s), and bottom groups in the same layout, together with the
/// sum of term magnitudes. Termination caps must make the support finite;
/// a vanishing bottom Pochhammer inside the support is a pole (None).
#[allow(clippy::too_many_arguments)]
pub fn kdf_rational(
    a: &[Rat],
    b: &[Rat],
    c: &[Rat],
    alpha: &[Rat],
    beta: &[Rat],
    gamma: &[Rat],
    x: &Rat,
    y: &Rat,
    r_cap: u32,
    s_cap: u32,
) -> Option<(Rat, Rat)> {
    let poch = |p: &Rat, k: u32| -> Rat {
        let mut acc: Rat = Ratio::one();
        for i in 0..k {
            acc *= p.clone() + Rat::from_integer(BigInt::from(i));
        }
        acc
    };
    let mut sum: Rat = Ratio::zero();
    let mut scale: Rat = Ratio::zero();
    for r in 0..=r_cap {
        for s in 0..=s_cap {
            let mut num: Rat = Ratio::one();
            for p in a {
                num *= poch(p, r + s);
            }
            for p in b {
                num *= poch(p, r);
            }
            for p in c {
                num *= poch(p, s);
            }
            let mut den: Rat = Ratio::one();
            for p in alpha {
                den *= poch(p, r + s);
            }
            for p in beta {
                den *= poch(p, r);
            }
            for p in gamma {
                den *= poch(p, s);
            }
            if den.is_zero() {
                if num.is_zero() {
                    continue;
                }
                return None;
            }
            let mut fact: Rat = Ratio::one();
            for i in 1..=r {
                fact *= Rat::from_integer(BigInt::from(i));
            }
            for i in 1..=s {
                fact *= Rat::from_integer(BigInt::from(i));
            }
            let mut power: Rat = Ratio::one();
            for _ in 0..r {
                power *= x.clone();
            }
            for _ in 0..s {
                power *= y.clone();
            }
            let term = num / den * power / fact;
            scale += term.abs();
            sum += term;
        }
    }
    Some((sum, scale))
}

/// Relative deviation with an absolute floor for values near zero.
pub fn close(a: f64, b: f64, rel: f64, abs_floor: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs_floor || diff <= rel * a.abs().max(b.abs())
}

pub fn close_c(a: Complex64, b: Complex64, rel: f64, abs_floor: f64) -> bool {
    let diff = (a - b).norm();
    diff <= abs_floor || diff <= rel * a.norm().max(b.norm())
}
