//! Ordering functions for `∂ₜF = α(t)∂ₓ²F + β(t)xF` with time-dependent
//! coefficients.
//!
//! The evolution operator is written as
//! `U(t) = exp(a)·exp(d·x)·exp(b·∂ₓ)·exp(c·∂ₓ²)` with
//! `ȧ = -βb`, `ḃ = -2βc`, `ċ = α`, `ḋ = β` and all four zero at `t = 0`.
//! Integrating directly gives `c = ∫α`, `d = ∫β`, `b = -2∫βc` and, after
//! swapping the order of the double integral, `a = 2∫₀ᵗβ(r)c(r)(d(t) - d(r))dr`.
//! Moving `exp(d·x)` to the left produces
//! `F = exp(a + d(cd + b + x)) · f(x + b + 2cd, c)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use ode_solvers::{Dopri5, OutputType, System, Vector4};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::quadrature::{adaptive_with_breaks, AdaptiveConfig};
use crate::transforms::{gauss_weierstrass, translate};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar coefficient as a function of time.
#[derive(Clone)]
pub enum Profile {
    Constant(f64),
    /// `offset + slope·t`
    Linear { offset: f64, slope: f64 },
    /// `amplitude·sin(ω t)`
    Sin { amplitude: f64, omega: f64 },
    /// `amplitude·cos(ω t)`
    Cos { amplitude: f64, omega: f64 },
    /// Ascending coefficients.
    Polynomial(Vec<f64>),
    /// `values[k]` on `[breaks[k-1], breaks[k])`, with `values.len() == breaks.len() + 1`.
    PiecewiseConstant { breaks: Vec<f64>, values: Vec<f64> },
    /// Arbitrary side-effect-free function with an optional exact `∫₀ᵗ`.
    Custom { f: ScalarFn, antiderivative: Option<ScalarFn> },
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Constant(v) => write!(f, "Constant({v})"),
            Profile::Linear { offset, slope } => write!(f, "Linear({offset} + {slope} t)"),
            Profile::Sin { amplitude, omega } => write!(f, "Sin({amplitude} sin({omega} t))"),
            Profile::Cos { amplitude, omega } => write!(f, "Cos({amplitude} cos({omega} t))"),
            Profile::Polynomial(c) => write!(f, "Polynomial({c:?})"),
            Profile::PiecewiseConstant { breaks, values } => {
                write!(f, "PiecewiseConstant(breaks {breaks:?}, values {values:?})")
            }
            Profile::Custom { antiderivative, .. } => {
                write!(f, "Custom(antiderivative: {})", antiderivative.is_some())
            }
        }
    }
}

impl Profile {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Profile::Custom { f: Arc::new(f), antiderivative: None }
    }

    pub fn piecewise(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breaks.len() + 1 {
            return Err(Error::domain("piecewise profile needs one more value than breaks"));
        }
        if breaks.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("piecewise breaks must be strictly increasing"));
        }
        Ok(Profile::PiecewiseConstant { breaks, values })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Profile::Constant(v) => *v,
            Profile::Linear { offset, slope } => offset + slope * t,
            Profile::Sin { amplitude, omega } => amplitude * (omega * t).sin(),
            Profile::Cos { amplitude, omega } => amplitude * (omega * t).cos(),
            Profile::Polynomial(c) => c.iter().rev().fold(0.0, |acc, k| acc * t + k),
            Profile::PiecewiseConstant { breaks, values } => {
                values[breaks.iter().take_while(|&&b| t >= b).count()]
            }
            Profile::Custom { f, .. } => f(t),
        }
    }

    /// Exact `∫₀ᵗ` when a closed form is known.
    pub fn antiderivative(&self, t: f64) -> Option<f64> {
        Some(match self {
            Profile::Constant(v) => v * t,
            Profile::Linear { offset, slope } => offset * t + 0.5 * slope * t * t,
            Profile::Sin { amplitude, omega } => {
                if *omega == 0.0 {
                    0.0
                } else {
                    amplitude * (1.0 - (omega * t).cos()) / omega
                }
            }
            Profile::Cos { amplitude, omega } => {
                if *omega == 0.0 {
                    amplitude * t
                } else {
                    amplitude * (omega * t).sin() / omega
                }
            }
            Profile::Polynomial(c) => c
                .iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (k, ck)| acc * t + ck / (k as f64 + 1.0))
                * t,
            Profile::PiecewiseConstant { breaks, .. } => {
                let (lo, hi, sign) = if t >= 0.0 { (0.0, t, 1.0) } else { (t, 0.0, -1.0) };
                let mut edges = vec![lo];
                edges.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
                edges.push(hi);
                sign * edges.windows(2).map(|w| (w[1] - w[0]) * self.eval(0.5 * (w[0] + w[1]))).sum::<f64>()
            }
            Profile::Custom { antiderivative, .. } => return antiderivative.as_ref().map(|a| a(t)),
        })
    }

    /// Points where the profile may be discontinuous.
    pub fn breaks(&self) -> &[f64] {
        match self {
            Profile::PiecewiseConstant { breaks, .. } => breaks,
            _ => &[],
        }
    }
}

/// Diffusion coefficient `α(t)` and linear-term coefficient `β(t)`.
#[derive(Debug, Clone)]
pub struct CoeffFunctions {
    pub alpha: Profile,
    pub beta: Profile,
}

impl CoeffFunctions {
    pub fn new(alpha: Profile, beta: Profile) -> Self {
        Self { alpha, beta }
    }

    /// Constant unit diffusion with the given `β(t)`.
    pub fn unit_diffusion(beta: Profile) -> Self {
        Self { alpha: Profile::Constant(1.0), beta }
    }

    fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.alpha.breaks().iter().chain(self.beta.breaks()).copied().collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// Samples `α` on `[0, t]` (and at every break) and rejects negative values.
    fn check_diffusive(&self, t: f64) -> Result<()> {
        let probes = (0..=256).map(|k| t * k as f64 / 256.0).chain(self.breaks());
        for s in probes.filter(|s| (0.0..=t).contains(s)) {
            let a = self.alpha.eval(s);
            if !a.is_finite() || a < 0.0 {
                return Err(Error::domain(format!("alpha({s}) = {a}; need alpha >= 0")));
            }
            if !self.beta.eval(s).is_finite() {
                return Err(Error::domain(format!("beta({s}) is not finite")));
            }
        }
        Ok(())
    }
}

/// Ordering functions at one time.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WeiNormanCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl WeiNormanCoeffs {
    /// `a + d(cd + b + x)`.
    pub fn phase(&self, x: f64) -> f64 {
        self.a + self.d * (self.c * self.d + self.b + x)
    }

    /// `b + 2cd`.
    pub fn shift(&self) -> f64 {
        self.b + 2.0 * self.c * self.d
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d]
            .iter()
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest relative deviation, with each component scaled by `max(|value|, 1)`.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        [(self.a, other.a), (self.b, other.b), (self.c, other.c), (self.d, other.d)]
            .iter()
            .fold(0.0, |m, (x, y)| m.max((x - y).abs() / y.abs().max(1.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Adaptive Dormand-Prince integration of the ordering ODEs.
    #[default]
    Ode,
    /// Closed-form nested integrals evaluated by adaptive quadrature.
    NestedQuadrature,
}

/// Tolerances of both methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiNormanConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for WeiNormanConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-12 }
    }
}

struct OrderingOde<'a> {
    coeffs: &'a CoeffFunctions,
}

impl System<f64, Vector4<f64>> for OrderingOde<'_> {
    fn system(&self, t: f64, y: &Vector4<f64>, dy: &mut Vector4<f64>) {
        let (alpha, beta) = (self.coeffs.alpha.eval(t), self.coeffs.beta.eval(t));
        // y = (a, b, c, d)
        dy[0] = -beta * y[1];
        dy[1] = -2.0 * beta * y[2];
        dy[2] = alpha;
        dy[3] = beta;
    }
}

/// `(a, b, c, d)(t)` for `t > 0`.
pub fn wei_norman_coeffs(coeffs: &CoeffFunctions, t: f64, method: Method) -> Result<WeiNormanCoeffs> {
    wei_norman_coeffs_with(coeffs, t, method, &WeiNormanConfig::default())
}

pub fn wei_norman_coeffs_with(
    coeffs: &CoeffFunctions,
    t: f64,
    method: Method,
    cfg: &WeiNormanConfig,
) -> Result<WeiNormanCoeffs> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("need t > 0, got {t}")));
    }
    coeffs.check_diffusive(t)?;
    match method {
        Method::Ode => by_ode(coeffs, t, cfg),
        Method::NestedQuadrature => by_quadrature(coeffs, t, cfg),
    }
}

fn by_ode(coeffs: &CoeffFunctions, t: f64, cfg: &WeiNormanConfig) -> Result<WeiNormanCoeffs> {
    // integrate piece by piece so the stepper never straddles a jump
    let mut edges = vec![0.0];
    edges.extend(coeffs.breaks().into_iter().filter(|&b| b > 0.0 && b < t));
    edges.push(t);
    let mut y = Vector4::zeros();
    for w in edges.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mut stepper = Dopri5::new(OrderingOde { coeffs }, t0, t1, t1 - t0, y, cfg.rel_tol, cfg.abs_tol);
        // accepted steps only; dense output would interpolate the endpoint
        stepper.set_output(OutputType::Sparse);
        let stats = stepper.integrate().map_err(|e| {
            Error::Numeric(format!("ordering ODE failed on [{t0}, {t1}]: {e}"))
        })?;
        y = *stepper
            .y_out()
            .last()
            .ok_or_else(|| Error::Numeric(format!("ordering ODE produced no output ({stats:?})")))?;
    }
    Ok(WeiNormanCoeffs { a: y[0], b: y[1], c: y[2], d: y[3] })
}

fn by_quadrature(coeffs: &CoeffFunctions, t: f64, cfg: &WeiNormanConfig) -> Result<WeiNormanCoeffs> {
    let qcfg = AdaptiveConfig { abs_tol: cfg.abs_tol, rel_tol: cfg.rel_tol, max_intervals: 4000 };
    let breaks = coeffs.breaks();
    let integral = |p: &Profile, s: f64| -> Result<f64> {
        match p.antiderivative(s) {
            Some(v) => Ok(v),
            None => adaptive_with_breaks(&|r| p.eval(r), 0.0, s, p.breaks(), &qcfg),
        }
    };
    let c_t = integral(&coeffs.alpha, t)?;
    let d_t = integral(&coeffs.beta, t)?;

    // inner integrals can fail inside the outer integrand; keep the first error
    let failure = std::cell::RefCell::new(None);
    let guarded = |p: &Profile, s: f64| -> f64 {
        integral(p, s).unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            0.0
        })
    };
    let b_t = -2.0
        * adaptive_with_breaks(
            &|r| coeffs.beta.eval(r) * guarded(&coeffs.alpha, r),
            0.0,
            t,
            &breaks,
            &qcfg,
        )?;
    let a_t = 2.0
        * adaptive_with_breaks(
            &|r| coeffs.beta.eval(r) * guarded(&coeffs.alpha, r) * (d_t - guarded(&coeffs.beta, r)),
            0.0,
            t,
            &breaks,
            &qcfg,
        )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(WeiNormanCoeffs { a: a_t, b: b_t, c: c_t, d: d_t })
}

/// `F(x, t) = exp(a + d(cd + b + x)) · [exp(c∂²)f0](x + b + 2cd)`.
pub fn factorized_evolution(coeffs: &CoeffFunctions, f0: &GridFunction, t: f64) -> Result<GridFunction> {
    let w = wei_norman_coeffs(coeffs, t, Method::Ode)?;
    evolve_with(&w, f0)
}

/// Applies precomputed ordering functions to `f0`.
pub fn evolve_with(w: &WeiNormanCoeffs, f0: &GridFunction) -> Result<GridFunction> {
    if w.c < 0.0 {
        return Err(Error::domain(format!("accumulated diffusion c = {} is negative", w.c)));
    }
    let diffused = gauss_weierstrass(f0, Complex64::new(w.c, 0.0))?;
    let moved = translate(&diffused, w.shift())?;
    moved.map(|x, v| v * w.phase(x).exp())
}

/// Schrödinger evolution `i∂_τΨ = -∂ₓ²Ψ + φ(τ)xΨ` by continuing the
/// factorised heat solution to `α = i`, `β = -iφ`.
///
/// With `(a, b, c, d)` the real ordering functions of `α ≡ 1`, `β = φ`, this
/// gives `Ψ = exp(-i(a + d(cd + b + x))) · [exp(ic∂²)f0](x + b + 2cd)`.
pub fn factorized_schrodinger(field: &Profile, f0: &GridFunction, tau: f64) -> Result<GridFunction> {
    if tau == 0.0 {
        return Ok(f0.clone());
    }
    let w = wei_norman_coeffs(&CoeffFunctions::unit_diffusion(field.clone()), tau, Method::Ode)?;
    let free = gauss_weierstrass(f0, Complex64::new(0.0, w.c))?;
    let moved = translate(&free, w.shift())?;
    moved.map(|x, v| v * Complex64::from_polar(1.0, -w.phase(x)))
}
