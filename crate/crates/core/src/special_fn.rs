//! The Airy function, its heat-flow extension `Ai(x, z)` and the
//! imaginary-time closed form.
//!
//! Throughout, the Airy integrand is `cos(ξ³/3 + (x/A) ξ)`: only the cubic
//! term carries the factor 1/3. With that form `Ai(x, z) = exp(z ∂ₓ²) Ai(x/A)`
//! has the damped representation
//!
//! ```text
//! Ai(x, z) = (1/π) ∫₀^∞ cos(ξ³/3 + xξ/A) exp(-z ξ²/A²) dξ
//! ```
//!
//! and completing the cube in the Fourier integral gives the closed form
//!
//! ```text
//! Ai(x, z) = exp(2z³/(3A⁶) + xz/A³) · Ai((A³x + z²)/A⁴).
//! ```
//!
//! Continuing `z -> iτ` yields `Ai(x, iτ) = exp(iΘ) Ai((A³x - τ²)/A⁴)` with
//! `Θ(x, τ) = (τ/A⁶)(A³x - 2τ²/3)`. This sign of Θ is the one the damped
//! integral produces; see `theta_matches_direct_quadrature` in the tests.
//!
//! Two independent evaluation routes exist for `Ai(x)`:
//! * [`airy_ai`]: Maclaurin series of `y'' = xy` on `[-7, 3]`, the Stokes
//!   asymptotic expansion below `-7`, and a steepest-descent integral above 3.
//! * [`airy_ai_quadrature`]: the defining oscillatory integral, summed panel by
//!   panel up to `xi_max` with an integration-by-parts tail.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// `Ai(0)`.
pub const AI_0: f64 = 0.355_028_053_887_817_2;
/// `-Ai'(0)`.
pub const AI_PRIME_0_NEG: f64 = 0.258_819_403_792_806_8;
/// First zero of `Ai'`, where `Ai` attains its global maximum.
pub const AI_PEAK_X: f64 = -1.018_792_971_647_471;

/// Positive length scale `A` of the initial profile `Ai(x/A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryScale(f64);

impl AiryScale {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a.is_finite() {
            Ok(Self(a))
        } else {
            Err(Error::domain(format!("Airy scale must be positive, got {a}")))
        }
    }

    pub fn unit() -> Self {
        Self(1.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for AiryScale {
    fn default() -> Self {
        Self::unit()
    }
}

/// Controls the oscillatory ξ-integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Explicit integration range before the asymptotic tail takes over.
    pub xi_max: f64,
    /// Gauss-Legendre nodes per panel; each panel spans at most ~π of phase.
    pub n_points: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { xi_max: 30.0, n_points: 20, abs_tol: 1e-10, rel_tol: 1e-8 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.xi_max > 0.0 && self.xi_max.is_finite()) {
            return Err(Error::domain(format!("xi_max must be positive, got {}", self.xi_max)));
        }
        if self.n_points < 16 {
            return Err(Error::domain(format!("n_points must be >= 16, got {}", self.n_points)));
        }
        for (name, t) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::domain(format!("{name} must lie in (0, 1), got {t}")));
            }
        }
        Ok(())
    }
}

fn finite(x: f64, name: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {x}")))
    }
}

/// `Ai(x)` for real `x`.
pub fn airy_ai(x: f64) -> Result<f64> {
    finite(x, "x")?;
    Ok(ai(x))
}

/// Infallible kernel used on hot paths; `x` must be finite.
pub(crate) fn ai(x: f64) -> f64 {
    if x < -7.0 {
        ai_negative_asymptotic(-x)
    } else if x <= 3.0 {
        airy_ai_series(x)
    } else {
        let (mantissa, exponent) = ai_positive_scaled(x);
        mantissa * (-exponent).exp()
    }
}

/// Maclaurin series `Ai(x) = Ai(0) f(x) + Ai'(0) g(x)` of the Airy equation.
///
/// Accurate to ~1e-13 absolute on `[-7, 3]`; cancellation grows beyond that.
pub fn airy_ai_series(x: f64) -> f64 {
    let x3 = x * x * x;
    let (mut a, mut b) = (1.0, x);
    let (mut f, mut g) = (a, b);
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        a *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        b *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        f += a;
        g += b;
        if a.abs() + b.abs() <= 1e-18 * (f.abs() + g.abs()) {
            break;
        }
    }
    AI_0 * f - AI_PRIME_0_NEG * g
}

/// `Ai(-y)` for large positive `y` from the optimally truncated Stokes series.
fn ai_negative_asymptotic(y: f64) -> f64 {
    let zeta = 2.0 / 3.0 * y.powf(1.5);
    let (mut even, mut odd) = (0.0, 0.0);
    let mut u = 1.0;
    let mut term_prev = f64::INFINITY;
    let mut zpow = 1.0;
    for k in 0..60usize {
        if k > 0 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            zpow *= zeta;
        }
        let term = u / zpow;
        if term > term_prev {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            even += sign * term;
        } else {
            odd += sign * term;
        }
        if term < 1e-17 {
            break;
        }
        term_prev = term;
    }
    let phase = zeta - FRAC_PI_4;
    (phase.cos() * even + phase.sin() * odd) / (PI.sqrt() * y.powf(0.25))
}

/// For `x > 0`, returns `(m, ζ)` with `Ai(x) = m · exp(-ζ)`.
///
/// Shifting the Fourier contour through the saddle `ξ = i√x` gives
/// `Ai(x) = (e^{-ζ}/π) ∫₀^∞ exp(-√x t²) cos(t³/3) dt`, a Gaussian-damped
/// integrand that Gauss-Legendre panels resolve to full relative precision.
fn ai_positive_scaled(x: f64) -> (f64, f64) {
    thread_local! {
        static RULE: GaussLegendre = GaussLegendre::new(24);
    }
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let s = x.sqrt();
    let t_max = (40.0 / s).sqrt();
    let panels = 6;
    let h = t_max / panels as f64;
    let integral = RULE.with(|gl| {
        (0..panels)
            .map(|p| {
                let a = p as f64 * h;
                gl.integrate(a, a + h, |t: f64| (-s * t * t).exp() * (t * t * t / 3.0).cos())
            })
            .sum::<f64>()
    });
    (integral / PI, zeta)
}

/// `∫₀^∞ exp(i(ξ³/3 + c2 ξ² + c1 ξ)) dξ` for `Im c1, Im c2 >= 0`.
///
/// Panels of at most ~π phase each are summed up to `xi_max` (extended if the
/// stationary points lie further out); the remainder is the three-term
/// integration-by-parts expansion of the tail, which is exact in the Abel sense
/// for the undamped case.
pub fn cubic_phase_integral(c1: Complex64, c2: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    if c1.im < 0.0 || c2.im < 0.0 {
        return Err(Error::domain("cubic phase integral needs Im c1, Im c2 >= 0"));
    }
    let psi = |xi: f64| xi * xi * xi / 3.0 + c2 * xi * xi + c1 * xi;
    let dpsi = |xi: f64| xi * xi + 2.0 * c2 * xi + c1;
    let r_end = cfg.xi_max.max(2.0 * c1.norm().sqrt() + 4.0 * c2.norm() + 8.0);
    let gl = GaussLegendre::new(cfg.n_points);
    let i = Complex64::i();

    let mut sum = Complex64::new(0.0, 0.0);
    let mut a = 0.0;
    while a < r_end {
        // Damped integrands: stop once the envelope is negligible and still shrinking.
        let envelope = -psi(a).im;
        if envelope < -45.0 && (c2.im * a + 0.5 * c1.im) > 0.0 {
            return Ok(sum);
        }
        let mut h = (PI / (dpsi(a).norm() + 1.0)).min(0.5);
        while dpsi(a + h).norm() * h > 1.5 * PI {
            h *= 0.5;
        }
        let b = (a + h).min(r_end);
        sum += gl.integrate(a, b, |xi: f64| (i * psi(xi)).exp());
        a = b;
    }

    let d1 = dpsi(r_end);
    let d2 = 2.0 * r_end + 2.0 * c2;
    let d3 = 2.0;
    let h0 = -i / d1;
    let h1 = -d2 / (d1 * d1 * d1);
    let h2 = -i * (d3 / d1.powi(4) - 3.0 * d2 * d2 / d1.powi(5));
    let tail = -(i * psi(r_end)).exp() * (h0 + h1 + h2);
    let total = sum + tail;
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(Error::Numeric("cubic phase integral overflowed".into()));
    }
    Ok(total)
}

/// `Ai(x)` from its defining oscillatory integral (independent of [`airy_ai`]).
pub fn airy_ai_quadrature(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    finite(x, "x")?;
    let j = cubic_phase_integral(Complex64::new(x, 0.0), Complex64::new(0.0, 0.0), cfg)?;
    Ok(j.re / PI)
}

/// `Ai(x, z) = exp(z ∂ₓ²) Ai(x/A)` for `z >= 0`, via the cube-completed closed form.
pub fn airy_two_var(x: f64, z: f64, scale: AiryScale) -> Result<f64> {
    finite(x, "x")?;
    finite(z, "z")?;
    if z < 0.0 {
        return Err(Error::domain(format!(
            "Ai(x, z) requires z >= 0 (anti-diffusion excluded), got {z}"
        )));
    }
    let a = scale.value();
    let a3 = a * a * a;
    let arg = (a3 * x + z * z) / (a3 * a);
    let growth = 2.0 * z * z * z / (3.0 * a3 * a3) + x * z / a3;
    if arg > 3.0 {
        let (m, zeta) = ai_positive_scaled(arg);
        Ok(m * (growth - zeta).exp())
    } else {
        Ok(growth.exp() * ai(arg))
    }
}

/// `Ai(x, z)` from the damped integral representation (independent route).
pub fn airy_two_var_quadrature(x: f64, z: f64, scale: AiryScale, cfg: &QuadratureConfig) -> Result<f64> {
    finite(x, "x")?;
    finite(z, "z")?;
    if z < 0.0 {
        return Err(Error::domain(format!("Ai(x, z) requires z >= 0, got {z}")));
    }
    let a = scale.value();
    let j = cubic_phase_integral(Complex64::new(x / a, 0.0), Complex64::new(0.0, z / (a * a)), cfg)?;
    Ok(j.re / PI)
}

/// Phase `Θ(x, τ) = (τ/A⁶)(A³x - 2τ²/3)` of the free Airy packet.
pub fn theta_phase(x: f64, tau: f64, scale: AiryScale) -> f64 {
    let a3 = scale.value().powi(3);
    tau / (a3 * a3) * (a3 * x - 2.0 / 3.0 * tau * tau)
}

/// `Ai(x, iτ) = exp(iΘ(x, τ)) · Ai((A³x - τ²)/A⁴)`: free Schrödinger evolution
/// of `Ai(x/A)`, a rigid translation with a phase.
pub fn airy_complex_closed_form(x: f64, tau: f64, scale: AiryScale) -> Result<Complex64> {
    finite(x, "x")?;
    finite(tau, "tau")?;
    let a = scale.value();
    let a3 = a * a * a;
    let amplitude = ai((a3 * x - tau * tau) / (a3 * a));
    Ok(Complex64::from_polar(1.0, theta_phase(x, tau, scale)) * amplitude)
}

/// `Ai(x, iτ)` straight from `(1/π)∫₀^∞ cos(ξ³/3 + xξ/A) exp(-iτξ²/A²) dξ`.
///
/// Splitting the cosine gives `exp(iφ₋)` and `exp(-iφ₊)` with
/// `φ± = ξ³/3 ± τξ²/A² + xξ/A`.
pub fn airy_complex_quadrature(x: f64, tau: f64, scale: AiryScale, cfg: &QuadratureConfig) -> Result<Complex64> {
    finite(x, "x")?;
    finite(tau, "tau")?;
    let a = scale.value();
    let c1 = Complex64::new(x / a, 0.0);
    let minus = cubic_phase_integral(c1, Complex64::new(-tau / (a * a), 0.0), cfg)?;
    let plus = cubic_phase_integral(c1, Complex64::new(tau / (a * a), 0.0), cfg)?;
    Ok((minus + plus.conj()) / (2.0 * PI))
}

/// Candidate second-order ODEs for `y(x) = Ai(x, z)` at fixed `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryOdeForm {
    /// `A³y'' + 2A²z y' + x y = 0`, as commonly printed.
    Printed,
    /// `A³y'' - 2z y' - x y = 0`, the equation the function actually satisfies.
    Verified,
}

impl AiryOdeForm {
    /// Coefficients `(c2, c1, c0)` of `c2 y'' + c1 y' + c0 x y`.
    pub fn coefficients(self, z: f64, scale: AiryScale) -> (f64, f64, f64) {
        let a = scale.value();
        match self {
            AiryOdeForm::Printed => (a * a * a, 2.0 * a * a * z, 1.0),
            AiryOdeForm::Verified => (a * a * a, -2.0 * z, -1.0),
        }
    }
}

const FD_STEP: f64 = 1e-2;

fn derivatives_at(x: f64, z: f64, scale: AiryScale) -> Result<(f64, f64, f64)> {
    let h = FD_STEP * scale.value();
    let mut s = [0.0; 7];
    for (k, v) in s.iter_mut().enumerate() {
        *v = airy_two_var(x + (k as f64 - 3.0) * h, z, scale)?;
    }
    let d1 = (0.75 * (s[4] - s[2]) - 0.15 * (s[5] - s[1]) + (s[6] - s[0]) / 60.0) / h;
    let d2 = (-49.0 / 18.0 * s[3] + 1.5 * (s[4] + s[2]) - 0.15 * (s[5] + s[1]) + (s[6] + s[0]) / 90.0)
        / (h * h);
    Ok((s[3], d1, d2))
}

/// Residual `c2 y'' + c1 y' + c0 x y` of the chosen ODE form for `y = Ai(·, z)`,
/// with sixth-order central differences.
pub fn airy_ode_residual(x: f64, z: f64, scale: AiryScale, form: AiryOdeForm) -> Result<f64> {
    let (y, d1, d2) = derivatives_at(x, z, scale)?;
    let (c2, c1, c0) = form.coefficients(z, scale);
    Ok(c2 * d2 + c1 * d1 + c0 * x * y)
}

/// Least-squares fit of `A³y'' = p·y' + q·x·y` over sample points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryOdeFit {
    /// Fitted coefficient of `y'`; `2z` for the true equation.
    pub first_derivative: f64,
    /// Fitted coefficient of `x·y`; `1` for the true equation.
    pub potential: f64,
    /// RMS of `A³y'' - p y' - q x y` over the samples.
    pub rms_residual: f64,
}

pub fn fit_airy_ode(z: f64, scale: AiryScale, xs: &[f64]) -> Result<AiryOdeFit> {
    if xs.len() < 3 {
        return Err(Error::domain("ODE fit needs at least three sample points"));
    }
    let a3 = scale.value().powi(3);
    let rows: Vec<(f64, f64, f64)> = xs
        .iter()
        .map(|&x| derivatives_at(x, z, scale).map(|(y, d1, d2)| (d1, x * y, a3 * d2)))
        .collect::<Result<_>>()?;
    let (mut s11, mut s12, mut s22, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(u, v, t) in &rows {
        s11 += u * u;
        s12 += u * v;
        s22 += v * v;
        r1 += u * t;
        r2 += v * t;
    }
    let det = s11 * s22 - s12 * s12;
    if det.abs() <= 1e-14 * s11 * s22 {
        return Err(Error::Numeric("ODE fit is ill-conditioned for these samples".into()));
    }
    let p = (r1 * s22 - r2 * s12) / det;
    let q = (s11 * r2 - s12 * r1) / det;
    let rms = (rows.iter().map(|&(u, v, t)| (t - p * u - q * v).powi(2)).sum::<f64>()
        / rows.len() as f64)
        .sqrt();
    Ok(AiryOdeFit { first_derivative: p, potential: q, rms_residual: rms })
}
