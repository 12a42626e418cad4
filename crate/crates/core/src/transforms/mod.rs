//! Gauss-Weierstrass and Airy transforms, cubic diffusion, and the operator
//! identities connecting them.
//!
//! Every transform has a grid path (FFT or quadrature on a [`GridFunction`])
//! and, where it makes sense, an exact polynomial path on [`PolyDense`].
//!
//! The Airy transform is normalised with `1/|α|`, so that for either sign of
//! `α` it realises the operator `exp(-(α³/3)∂³)` with Fourier multiplier
//! `exp(iα³k³/3)`. Cubic diffusion `exp(t∂³)` is then the Airy transform with
//! `α = -∛(3t)`.

pub mod spectral;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::polynomials::PolyDense;
use crate::quadrature::GaussLegendre;
use crate::special_fn::ai;

pub use spectral::{apply_multiplier, convolve, derivative, translate, wavenumbers};

/// Beyond this argument the Airy kernel is below 1e-27 and is dropped.
const AI_KERNEL_CUTOFF: f64 = 20.0;

/// Relative edge magnitude above which a quadrature input counts as non-decaying.
const EDGE_TOL: f64 = 1e-10;

/// Parameters of the three transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    /// Gauss-Weierstrass diffusion time `b`.
    pub diffusion_time: f64,
    /// Airy transform scale `α`.
    pub airy_scale: f64,
    /// Cubic diffusion time `t`.
    pub cubic_time: f64,
}

impl TransformParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.diffusion_time > 0.0 && self.diffusion_time.is_finite()) {
            return Err(Error::domain(format!(
                "diffusion time must be positive, got {}",
                self.diffusion_time
            )));
        }
        if self.airy_scale == 0.0 || !self.airy_scale.is_finite() {
            return Err(Error::domain("Airy transform scale must be nonzero and finite"));
        }
        if !self.cubic_time.is_finite() {
            return Err(Error::domain("cubic time must be finite"));
        }
        Ok(())
    }
}

impl Default for TransformParams {
    fn default() -> Self {
        Self { diffusion_time: 0.5, airy_scale: 1.0, cubic_time: 0.2 }
    }
}

/// Gauss-Weierstrass transform `exp(b∂²)f` via the FFT multiplier `exp(-b k²)`.
///
/// `b` may be complex with `Re b >= 0`; `b = iτ` is the free Schrödinger
/// propagator. The grid is treated as periodic.
pub fn gauss_weierstrass(f: &GridFunction, b: Complex64) -> Result<GridFunction> {
    if !(b.re.is_finite() && b.im.is_finite()) || b.re < 0.0 {
        return Err(Error::domain(format!("need finite b with Re b >= 0, got {b}")));
    }
    if b == Complex64::new(0.0, 0.0) {
        return Ok(f.clone());
    }
    apply_multiplier(f, |k| (-b * k * k).exp())
}

/// Which output samples the quadrature path returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Every grid point. The input must decay at both edges.
    Full,
    /// Only points whose kernel support lies inside the grid; works for
    /// non-decaying inputs such as exponentials or constants.
    Interior,
}

/// Gauss-Weierstrass transform for real `b > 0` by direct trapezoidal
/// quadrature of the heat kernel.
///
/// The discrete kernel is renormalised to unit mass, which is a no-op when
/// `√b ≫ dx` and gives the identity in the `b → 0⁺` limit.
pub fn gauss_weierstrass_quadrature(f: &GridFunction, b: f64, support: Support) -> Result<GridFunction> {
    gauss_weierstrass_quadrature_shifted(f, b, 0.0, support)
}

/// As [`gauss_weierstrass_quadrature`], but evaluated at `x + shift`, i.e. the
/// transform followed by the translation `exp(shift·∂)`, in one quadrature.
pub fn gauss_weierstrass_quadrature_shifted(
    f: &GridFunction,
    b: f64,
    shift: f64,
    support: Support,
) -> Result<GridFunction> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(Error::domain(format!("need real b >= 0, got {b}")));
    }
    if !shift.is_finite() {
        return Err(Error::domain("shift must be finite"));
    }
    let n = f.len() as i64;
    let dx = f.dx();
    // x_i + shift = x_{i+q} + r with 0 <= r < dx
    let q = (shift / dx).floor();
    let r = shift - q * dx;
    let q = q as i64;
    if b == 0.0 && r.abs() <= 1e-12 * dx {
        return match support {
            Support::Full if q == 0 => Ok(f.clone()),
            _ => {
                let (lo, hi) = ((-q).max(0), (n - q).min(n));
                if hi - lo < 2 {
                    return Err(Error::grid("shift moves every sample off the grid"));
                }
                GridFunction::new(f.x(lo as usize), dx, f.values()[(lo + q) as usize..(hi + q) as usize].to_vec())
            }
        };
    }
    if b == 0.0 {
        return Err(Error::domain("off-grid translation without diffusion needs the spectral path"));
    }
    let reach = ((160.0 * b).sqrt() / dx).ceil() as i64 + 1;
    // kernel[m + reach] = K(m*dx + r)
    let kernel: Vec<f64> = (-reach..=reach)
        .map(|m| {
            let s = m as f64 * dx + r;
            (-s * s / (4.0 * b)).exp()
        })
        .collect();
    let mass: f64 = kernel.iter().sum();

    let (start, end) = match support {
        Support::Full => {
            if f.edge_fraction(4) > EDGE_TOL {
                return Err(Error::Convergence(format!(
                    "input does not decay at the grid edges (edge/max = {:.2e}); \
                     apodize it or use interior support",
                    f.edge_fraction(4)
                )));
            }
            (0, n)
        }
        Support::Interior => {
            let (lo, hi) = ((reach - q).max(0), (n - reach - q).min(n));
            if hi - lo < 2 {
                return Err(Error::grid(format!(
                    "kernel half-width of {reach} samples leaves no interior on {n} samples"
                )));
            }
            (lo, hi)
        }
    };

    let vals = f.values();
    let out: Vec<Complex64> = (start..end)
        .map(|i| {
            let center = i + q;
            let lo = (center - reach).max(0);
            let hi = (center + reach).min(n - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in lo..=hi {
                acc += vals[j as usize] * kernel[(center - j + reach) as usize];
            }
            acc / mass
        })
        .collect();
    GridFunction::new(f.x(0) + start as f64 * dx, dx, out)
}

/// Exact Gauss-Weierstrass transform of a polynomial: `exp(b∂²)p`.
pub fn gauss_weierstrass_poly(p: &PolyDense, b: &BigRational) -> PolyDense {
    p.exp_derivative(2, b)
}

/// Airy transform `Φ(η) = (1/|α|)∫f(x)Ai((η - x)/α)dx` on `f`'s grid.
///
/// `f` must be negligible at the edge where the kernel oscillates (the right
/// edge for `α > 0`); growth toward the other edge is tolerated because the
/// kernel decays super-exponentially there.
pub fn airy_transform(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::domain("Airy transform scale must be nonzero and finite"));
    }
    let k = 4.min(f.len() / 2);
    let n = f.len();
    let tail = if alpha > 0.0 { &f.values()[n - k..] } else { &f.values()[..k] };
    let tail_max = tail.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    let max = f.max_abs();
    if max > 0.0 && tail_max > EDGE_TOL * max {
        return Err(Error::Convergence(format!(
            "input is not negligible where the Airy kernel oscillates (edge/max = {:.2e})",
            tail_max / max
        )));
    }
    let norm = 1.0 / alpha.abs();
    convolve(f, |s| {
        let arg = s / alpha;
        if arg > AI_KERNEL_CUTOFF {
            0.0
        } else {
            ai(arg) * norm
        }
    })
}

/// `∛(3t)`, the Airy kernel width of cubic diffusion.
pub fn cubic_kernel_width(t: f64) -> f64 {
    (3.0 * t).cbrt()
}

/// Cubic diffusion `exp(t∂³)g` on a grid, i.e. `(1/|γ|)∫Ai((ξ - x)/γ)g(ξ)dξ`
/// with `γ = ∛(3t)`.
pub fn cubic_evolution(g: &GridFunction, t: f64) -> Result<GridFunction> {
    if !t.is_finite() {
        return Err(Error::domain("cubic time must be finite"));
    }
    if t == 0.0 {
        return Ok(g.clone());
    }
    airy_transform(g, -cubic_kernel_width(t))
}

/// Exact cubic diffusion of a polynomial (a terminating operator series).
pub fn cubic_evolution_poly(p: &PolyDense, t: &BigRational) -> PolyDense {
    p.exp_derivative(3, t)
}

/// `X̂ = η - α³∂²`, the image of multiplication by `x` under the Airy transform.
pub fn airy_position(p: &PolyDense, alpha: &BigRational) -> PolyDense {
    let a3 = alpha * alpha * alpha;
    p.mul_x().sub(&p.nth_derivative(2).scale(&a3))
}

/// Residual of the conjugation identity `X̂ηⁿ = exp(-(α³/3)∂³)(η·exp((α³/3)∂³)ηⁿ)`,
/// as the largest coefficient deviation. Exact arithmetic gives zero.
pub fn weyl_conjugation_check(n: usize, alpha: &BigRational) -> Result<f64> {
    if n > 12 {
        return Err(Error::domain(format!("conjugation check supports n <= 12, got {n}")));
    }
    let f = PolyDense::monomial(n);
    let lambda = alpha * alpha * alpha / BigRational::from_integer(3.into());
    let direct = airy_position(&f, alpha);
    let conjugated = f.exp_derivative(3, &lambda).mul_x().exp_derivative(3, &(-lambda));
    Ok(direct.max_coeff_diff(&conjugated))
}

/// Residual of `[X̂, ∂]f = -f` on a polynomial.
pub fn commutator_residual(f: &PolyDense, alpha: &BigRational) -> f64 {
    let lhs = airy_position(&f.derivative(), alpha).sub(&airy_position(f, alpha).derivative());
    let minus_f = f.scale(&-BigRational::from_integer(1.into()));
    lhs.max_coeff_diff(&minus_f)
}

/// Airy scale that turns the linear-potential Schrödinger equation into a
/// pure phase equation: `α³ = -1/b`.
pub fn schrodinger_airy_scale(b: f64) -> Result<f64> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::domain("need nonzero finite b"));
    }
    Ok((-1.0 / b).cbrt())
}

/// Phase `exp(-ibητ)` acquired by the transformed wave function at that scale.
pub fn transformed_phase(b: f64, eta: f64, tau: f64) -> Complex64 {
    Complex64::from_polar(1.0, -b * eta * tau)
}

/// `∫exp(uσ)Ai(σ)dσ` by panel quadrature; equals `exp(u³/3)` for `u > 0`.
pub fn exp_cube_moment(u: f64) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::domain(format!("exponential moment needs u > 0, got {u}")));
    }
    // left tail ~ exp(uσ)|σ|^{-1/4}, right tail ~ exp(uσ - 2σ^{3/2}/3)
    let lo = -45.0 / u;
    let mut hi = (1.5 * u).powi(2).max(1.0);
    while u * hi - 2.0 / 3.0 * hi.powf(1.5) > -45.0 + u.powi(3) / 3.0 {
        hi += 1.0;
    }
    let gl = GaussLegendre::new(20);
    let panels = ((hi - lo) / 0.5).ceil() as usize;
    let h = (hi - lo) / panels as f64;
    let total: f64 = (0..panels)
        .map(|i| {
            let a = lo + i as f64 * h;
            gl.integrate(a, a + h, |s: f64| (u * s).exp() * ai(s))
        })
        .sum();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{rel_l2, rel_linf};
    use crate::polynomials::{hermite_higher, rational};

    fn gaussian(n: usize, half: f64) -> GridFunction {
        GridFunction::real_on_interval(-half, half, n, |x| (-x * x).exp()).unwrap()
    }

    #[test]
    fn spectral_gw_reproduces_gaussian_spreading() {
        let f = gaussian(512, 20.0);
        for t in [0.1, 0.5, 1.0] {
            let g = gauss_weierstrass(&f, Complex64::new(t, 0.0)).unwrap();
            let exact: Vec<Complex64> = f
                .xs()
                .map(|x| Complex64::new((-x * x / (1.0 + 4.0 * t)).exp() / (1.0 + 4.0 * t).sqrt(), 0.0))
                .collect();
            assert!(rel_linf(g.values(), &exact) < 1e-12);
        }
    }

    #[test]
    fn quadrature_gw_matches_spectral() {
        let f = gaussian(800, 20.0);
        let a = gauss_weierstrass(&f, Complex64::new(0.3, 0.0)).unwrap();
        let b = gauss_weierstrass_quadrature(&f, 0.3, Support::Full).unwrap();
        assert!(rel_linf(b.values(), a.values()) < 1e-12);
    }

    #[test]
    fn quadrature_gw_rejects_non_decaying_input() {
        let f = GridFunction::real_on_interval(-5.0, 5.0, 100, |_| 1.0).unwrap();
        assert!(matches!(
            gauss_weierstrass_quadrature(&f, 0.1, Support::Full),
            Err(Error::Convergence(_))
        ));
        let inner = gauss_weierstrass_quadrature(&f, 0.1, Support::Interior).unwrap();
        assert!(inner.values().iter().all(|v| (v.re - 1.0).abs() < 1e-14));
    }

    #[test]
    fn shifted_quadrature_matches_spectral_translation() {
        let f = gaussian(800, 20.0);
        let shift = 0.4321;
        let a = translate(&gauss_weierstrass(&f, Complex64::new(0.3, 0.0)).unwrap(), shift).unwrap();
        let b = gauss_weierstrass_quadrature_shifted(&f, 0.3, shift, Support::Full).unwrap();
        assert!(rel_linf(b.values(), a.values()) < 1e-12);
        let neg = gauss_weierstrass_quadrature_shifted(&f, 0.3, -shift, Support::Interior).unwrap();
        let j = f.index_range(0.0, 0.0).0;
        let k = neg.index_range(0.0, 0.0).0;
        let want = (-(shift * shift) / 2.2).exp() / 2.2f64.sqrt();
        assert!((neg.values()[k].re - want).abs() < 1e-12 && f.x(j) == neg.x(k));
    }

    #[test]
    fn tiny_diffusion_is_identity() {
        let f = gaussian(200, 10.0);
        let g = gauss_weierstrass_quadrature(&f, 1e-9, Support::Full).unwrap();
        assert!(rel_linf(g.values(), f.values()) < 1e-12);
    }

    #[test]
    fn semigroup() {
        let f = gaussian(512, 25.0);
        let c = |t| Complex64::new(t, 0.0);
        let two = gauss_weierstrass(&gauss_weierstrass(&f, c(0.2)).unwrap(), c(0.3)).unwrap();
        let one = gauss_weierstrass(&f, c(0.5)).unwrap();
        assert!(rel_l2(two.values(), one.values()) < 1e-7);
    }

    #[test]
    fn polynomial_gw_is_heat_polynomial() {
        let t = rational(3, 7);
        for n in 0..=12 {
            let p = gauss_weierstrass_poly(&PolyDense::monomial(n), &t);
            assert_eq!(p, hermite_higher(n, 2, &t).unwrap());
        }
    }

    #[test]
    fn weyl_and_commutator_are_exact() {
        let alpha = rational(3, 2);
        for n in 0..=12 {
            assert_eq!(weyl_conjugation_check(n, &alpha).unwrap(), 0.0);
            assert_eq!(commutator_residual(&PolyDense::monomial(n), &alpha), 0.0);
        }
        assert!(weyl_conjugation_check(13, &alpha).is_err());
        // (η - α³∂²)η = η²
        assert_eq!(airy_position(&PolyDense::monomial(1), &alpha), PolyDense::monomial(2));
    }

    #[test]
    fn exponential_cube_moment() {
        for u in [0.5, 1.0, 1.5] {
            let v = exp_cube_moment(u).unwrap();
            let exact = (u * u * u / 3.0f64).exp();
            assert!((v - exact).abs() < 1e-9 * exact, "u = {u}: {v} vs {exact}");
        }
        assert!(exp_cube_moment(0.0).is_err());
    }

    #[test]
    fn airy_transform_rejects_zero_scale() {
        let f = gaussian(64, 5.0);
        assert!(matches!(airy_transform(&f, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn cubic_evolution_shortcuts_zero_time() {
        let f = gaussian(64, 5.0);
        assert_eq!(cubic_evolution(&f, 0.0).unwrap(), f);
    }
}
