//! Factorised solutions of the heat equation with a linear term,
//! `∂ₜF = ∂ₓ²F + βxF`, and of the rescaled Schrödinger equation with a
//! linear potential, `i∂_τΨ = -∂ₓ²Ψ + bxΨ`.
//!
//! The evolution operator splits into a phase, a translation and a diffusion:
//! `F(x, t) = exp(Φ(x, t; β)) · f(x + βt², t)` with `Φ = β²t³/3 + βtx` and
//! `f(·, t)` the Gauss-Weierstrass transform of the initial data. The
//! Schrödinger case follows from `t → iτ`, `β → -b`:
//! `Ψ(x, τ) = exp(-iΦ(x, τ; b)) · f(x + bτ², iτ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{find_peak, GridFunction, GridSpec, Peak, Window};
use crate::quadrature::cumulative_trapezoid;
use crate::special_fn::{ai, airy_complex_closed_form, theta_phase, AiryScale, AI_PEAK_X};
use crate::transforms::{gauss_weierstrass, gauss_weierstrass_quadrature_shifted, translate, Support};

/// Coefficients of the linear-potential problems in rescaled units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPotentialParams {
    /// Heat-equation linear coefficient.
    pub beta: f64,
    /// Schrödinger field strength, an inverse cubed length.
    pub b: f64,
    /// Airy packet scale `A`.
    pub scale: f64,
    /// Centroid normalisation `B = ∛(2mF)`.
    pub big_b: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl Default for LinearPotentialParams {
    fn default() -> Self {
        Self { beta: 0.5, b: 1.0, scale: 1.0, big_b: 1.0, mass: 1.0, hbar: 1.0 }
    }
}

impl LinearPotentialParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("beta", self.beta), ("b", self.b)] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite")));
            }
        }
        for (name, v) in [("scale", self.scale), ("B", self.big_b), ("mass", self.mass), ("hbar", self.hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn airy_scale(&self) -> Result<AiryScale> {
        AiryScale::new(self.scale)
    }
}

/// Physical parameters of `iħ∂ₜΨ = -(ħ²/2m)∂ₓ²Ψ + FxΨ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalUnits {
    pub mass: f64,
    pub force: f64,
    pub hbar: f64,
}

impl PhysicalUnits {
    pub fn new(mass: f64, force: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0 && hbar > 0.0 && mass.is_finite() && hbar.is_finite() && force.is_finite()) {
            return Err(Error::domain("need positive mass and hbar and a finite force"));
        }
        Ok(Self { mass, force, hbar })
    }

    /// Rescaled time `τ = ħt/(2m)`.
    pub fn tau(&self, t: f64) -> f64 {
        self.hbar * t / (2.0 * self.mass)
    }

    /// Rescaled field `b = 2Fm/ħ²`.
    pub fn b(&self) -> f64 {
        2.0 * self.force * self.mass / (self.hbar * self.hbar)
    }

    /// Airy normalisation `B = ∛(2mF)`.
    pub fn big_b(&self) -> f64 {
        (2.0 * self.mass * self.force).cbrt()
    }
}

/// `Φ(x, t; β) = β²t³/3 + βtx`.
pub fn phase_phi(x: f64, t: f64, beta: f64) -> f64 {
    beta * beta * t * t * t / 3.0 + beta * t * x
}

/// The two phase functions of the factorised solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFactors {
    pub beta: f64,
    pub scale: AiryScale,
}

impl PhaseFactors {
    /// Heat-equation phase `Φ(x, t; β)`.
    pub fn phi(&self, x: f64, t: f64) -> f64 {
        phase_phi(x, t, self.beta)
    }

    /// Phase `Θ(x, τ)` of the freely evolving Airy packet.
    pub fn theta(&self, x: f64, tau: f64) -> f64 {
        theta_phase(x, tau, self.scale)
    }
}

/// How the diffusion step of [`solve_heat_linear_with`] is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeatMethod {
    /// FFT multiplier followed by a band-limited shift.
    #[default]
    Spectral,
    /// Heat-kernel quadrature evaluated directly at the shifted points.
    Quadrature,
}

/// [`solve_heat_linear_with`] using the spectral method.
pub fn solve_heat_linear(f0: &GridFunction, beta: f64, t: f64) -> Result<GridFunction> {
    solve_heat_linear_with(f0, beta, t, HeatMethod::Spectral)
}

/// `exp(Φ(x, t; β)) · f(x + βt², t)` with `f(·, t) = exp(t∂²)f0`.
pub fn solve_heat_linear_with(f0: &GridFunction, beta: f64, t: f64, method: HeatMethod) -> Result<GridFunction> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("heat evolution needs t > 0, got {t}")));
    }
    if !beta.is_finite() {
        return Err(Error::domain("beta must be finite"));
    }
    let shift = beta * t * t;
    let moved = match method {
        HeatMethod::Spectral => translate(&gauss_weierstrass(f0, Complex64::new(t, 0.0))?, shift)?,
        HeatMethod::Quadrature => gauss_weierstrass_quadrature_shifted(f0, t, shift, Support::Full)?,
    };
    moved.map(|x, v| v * phase_phi(x, t, beta).exp())
}

/// Closed-form heat evolution of `exp(-x²)` under the linear term.
pub fn gleisher(x: f64, t: f64, beta: f64) -> f64 {
    let s = 1.0 + 4.0 * t;
    let y = x + beta * t * t;
    (phase_phi(x, t, beta) - y * y / s).exp() / s.sqrt()
}

/// Free Schrödinger evolution of `exp(-x²)`: `exp(-x²/(1 + 4iτ))/√(1 + 4iτ)`.
pub fn free_gaussian(x: f64, tau: f64) -> Complex64 {
    let s = Complex64::new(1.0, 4.0 * tau);
    (-(x * x) / s).exp() / s.sqrt()
}

/// Closed-form Schrödinger evolution of `exp(-x²)` in the field `b`.
pub fn gaussian_in_field(x: f64, tau: f64, b: f64) -> Complex64 {
    Complex64::from_polar(1.0, -phase_phi(x, tau, b)) * free_gaussian(x + b * tau * tau, tau)
}

/// `exp(-iΦ(x, τ; b)) · [exp(iτ∂²)f0](x + bτ²)`, with the free step done by the
/// FFT multiplier `exp(-iτk²)` on the periodic grid.
pub fn solve_schrodinger_linear(f0: &GridFunction, b: f64, tau: f64) -> Result<GridFunction> {
    if !(b.is_finite() && tau.is_finite()) {
        return Err(Error::domain("b and tau must be finite"));
    }
    if tau == 0.0 {
        return Ok(f0.clone());
    }
    let free = gauss_weierstrass(f0, Complex64::new(0.0, tau))?;
    let moved = translate(&free, b * tau * tau)?;
    moved.map(|x, v| v * Complex64::from_polar(1.0, -phase_phi(x, tau, b)))
}

/// `Ai(x/A)` on a grid, optionally apodised.
pub fn airy_initial(grid: &GridSpec, scale: AiryScale, window: Option<&Window>) -> Result<GridFunction> {
    let a = scale.value();
    grid.sample_real(|x| ai(x / a) * window.map_or(1.0, |w| w.weight(x)))
}

/// Closed-form Airy packet together with its density peak.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryPacket {
    pub field: GridFunction,
    /// Peak of `|Ψ|²` located on the grid.
    pub peak: Option<Peak>,
    /// Where the peak should be: `A·x₀ - (b - A⁻³)τ²`.
    pub predicted_peak_x: f64,
    /// `|Ai(x₀)|²`, the τ-independent peak density.
    pub predicted_peak_density: f64,
}

/// Non-spreading packet in the field `b`:
/// `exp(-iΦ(x, τ; b)) · exp(iΘ(x + bτ², τ)) · Ai((A³x + (A³b - 1)τ²)/A⁴)`.
pub fn solve_schrodinger_airy(grid: &GridSpec, b: f64, tau: f64, scale: AiryScale) -> Result<AiryPacket> {
    if !(b.is_finite() && tau.is_finite()) {
        return Err(Error::domain("b and tau must be finite"));
    }
    let dx = grid.dx();
    let values = (0..grid.n)
        .map(|j| {
            let x = grid.x_min + j as f64 * dx;
            let free = airy_complex_closed_form(x + b * tau * tau, tau, scale)?;
            Ok(Complex64::from_polar(1.0, -phase_phi(x, tau, b)) * free)
        })
        .collect::<Result<Vec<_>>>()?;
    let field = GridFunction::new(grid.x_min, dx, values)?;
    let density = field.abs2();
    let peak = find_peak(&density, field.x0(), field.dx(), 0, density.len());
    Ok(AiryPacket {
        field,
        peak,
        predicted_peak_x: airy_peak_position(b, tau, scale),
        predicted_peak_density: ai(AI_PEAK_X).powi(2),
    })
}

/// `A·x₀ - (b - A⁻³)τ²`, with `x₀` the first maximum of `Ai`.
pub fn airy_peak_position(b: f64, tau: f64, scale: AiryScale) -> f64 {
    let a = scale.value();
    a * AI_PEAK_X - (b - a.powi(-3)) * tau * tau
}

/// `X_c(t) = B³t²/(4m²) + ∫₀ᵗ(t - s)φ(s)ds/m`, with the integral done by
/// cumulative trapezoid sums of `φ` and `sφ` on `t_grid`.
pub fn centroid_trajectory(phi: &[f64], big_b: f64, mass: f64, t_grid: &[f64]) -> Result<Vec<f64>> {
    if phi.len() != t_grid.len() {
        return Err(Error::domain(format!(
            "{} field samples for {} times",
            phi.len(),
            t_grid.len()
        )));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("time grid must be strictly increasing"));
    }
    if !(big_b > 0.0 && mass > 0.0) {
        return Err(Error::domain("B and mass must be positive"));
    }
    let t0 = t_grid.first().copied().unwrap_or(0.0);
    let s_phi: Vec<f64> = t_grid.iter().zip(phi).map(|(s, p)| (s - t0) * p).collect();
    let int_phi = cumulative_trapezoid(t_grid, phi);
    let int_s_phi = cumulative_trapezoid(t_grid, &s_phi);
    let self_accel = big_b.powi(3) / (4.0 * mass * mass);
    Ok(t_grid
        .iter()
        .zip(int_phi.iter().zip(&int_s_phi))
        .map(|(t, (i0, i1))| {
            let t = t - t0;
            self_accel * t * t + (t * i0 - i1) / mass
        })
        .collect())
}

/// Second derivative of samples on a possibly non-uniform grid; endpoints are `None`.
pub fn second_difference(y: &[f64], t: &[f64]) -> Vec<Option<f64>> {
    (0..y.len())
        .map(|i| {
            if i == 0 || i + 1 >= y.len() {
                return None;
            }
            let (h0, h1) = (t[i] - t[i - 1], t[i + 1] - t[i]);
            Some(2.0 * (h0 * y[i + 1] - (h0 + h1) * y[i] + h1 * y[i - 1]) / (h0 * h1 * (h0 + h1)))
        })
        .collect()
}
