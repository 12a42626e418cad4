//! Named numerical checks grouped by criterion. Shared by the acceptance
//! tests and the `validate` command so both report the same quantities.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::evolution::{
    airy_peak_position, centroid_trajectory, gleisher, second_difference, solve_heat_linear,
    solve_heat_linear_with, solve_schrodinger_airy, HeatMethod,
};
use crate::grid::{central_derivative, rel_l2, rel_linf};
use crate::oracle::{crank_nicolson_heat, split_step_schrodinger, OracleConfig, Scheme};
use crate::polynomials::{hermite_higher, rational, verify_recurrences};
use crate::special_fn::{airy_ai, AiryScale};
use crate::transforms::{
    airy_transform, cubic_evolution_poly, derivative, exp_cube_moment, gauss_weierstrass,
    gauss_weierstrass_poly, gauss_weierstrass_quadrature, translate, weyl_conjugation_check, Support,
};
use crate::wei_norman::{factorized_evolution, wei_norman_coeffs, CoeffFunctions, Method, Profile};
use crate::{Error, GridFunction, GridSpec, PolyDense, Result, Window, WindowSide};

/// One measured quantity compared against a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value < tolerance`.
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let passed = value.is_finite() && value < tolerance;
        Check { name: name.into(), value, tolerance, passed }
    }

    /// Passes only on an exact zero residual.
    pub fn exact(name: impl Into<String>, residual: f64) -> Self {
        Check { name: name.into(), value: residual, tolerance: 0.0, passed: residual == 0.0 }
    }

    /// Inclusive range check, used for convergence ratios.
    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        let passed = (lo..=hi).contains(&value);
        Check { name: name.into(), value, tolerance: hi - lo, passed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    Gleisher,
    HeatOracle,
    AiryPacket,
    Polynomials,
    TransformIdentities,
    WeiNorman,
    Centroid,
    Weyl,
    ChainRule,
}

impl Criterion {
    pub const ALL: [Criterion; 9] = [
        Criterion::Gleisher,
        Criterion::HeatOracle,
        Criterion::AiryPacket,
        Criterion::Polynomials,
        Criterion::TransformIdentities,
        Criterion::WeiNorman,
        Criterion::Centroid,
        Criterion::Weyl,
        Criterion::ChainRule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Gleisher => "gleisher",
            Criterion::HeatOracle => "heat-oracle",
            Criterion::AiryPacket => "airy-packet",
            Criterion::Polynomials => "polynomials",
            Criterion::TransformIdentities => "transform-identities",
            Criterion::WeiNorman => "wei-norman",
            Criterion::Centroid => "centroid",
            Criterion::Weyl => "weyl",
            Criterion::ChainRule => "chain-rule",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn run(self) -> Result<Vec<Check>> {
        match self {
            Criterion::Gleisher => gleisher_checks(),
            Criterion::HeatOracle => heat_oracle_checks(),
            Criterion::AiryPacket => airy_packet_checks(),
            Criterion::Polynomials => polynomial_checks(),
            Criterion::TransformIdentities => transform_identity_checks(),
            Criterion::WeiNorman => wei_norman_checks(),
            Criterion::Centroid => centroid_checks(),
            Criterion::Weyl => weyl_checks(),
            Criterion::ChainRule => chain_rule_checks(),
        }
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn gaussian(half: f64, n: usize) -> Result<GridFunction> {
    GridFunction::real_on_interval(-half, half, n, |x| (-x * x).exp())
}

fn interior_error(f: &GridFunction, approx: &[Complex64], exact: &[Complex64], lo: f64, hi: f64) -> f64 {
    let (s, e) = f.index_range(lo, hi);
    rel_linf(&approx[s..e], &exact[s..e])
}

fn gleisher_checks() -> Result<Vec<Check>> {
    let f0 = gaussian(40.0, 2048)?;
    let mut out = Vec::new();
    for beta in [0.0, 0.5] {
        for t in [0.1, 0.5, 1.0] {
            let f = solve_heat_linear_with(&f0, beta, t, HeatMethod::Quadrature)?;
            let exact: Vec<Complex64> = f0.xs().map(|x| real(gleisher(x, t, beta))).collect();
            out.push(Check::below(
                format!("gleisher_linf_beta{beta}_t{t}"),
                rel_linf(f.values(), &exact),
                1e-6,
            ));
        }
    }
    Ok(out)
}

fn heat_oracle_checks() -> Result<Vec<Check>> {
    let cfg = OracleConfig::new(-40.0, 40.0, 2048, 1e-3, Window::new(0.0, 32.0)?, Scheme::CrankNicolson)?;
    let f0 = cfg.sample(|x| real((-x * x).exp()))?;
    let oracle = crank_nicolson_heat(&f0, &|_| 0.5, &|_| 1.0, 0.4, &cfg)?;
    let analytic = solve_heat_linear(&f0, 0.5, 0.4)?;
    let mut out = vec![Check::below("heat_vs_crank_nicolson_l2", rel_l2(analytic.values(), oracle.values()), 1e-3)];

    let error = |n: usize, dt: f64| -> Result<f64> {
        let cfg = OracleConfig::new(-20.0, 20.0, n, dt, Window::new(0.0, 16.0)?, Scheme::CrankNicolson)?;
        let f0 = cfg.sample(|x| real((-x * x).exp()))?;
        let f = crank_nicolson_heat(&f0, &|_| 0.5, &|_| 1.0, 0.5, &cfg)?;
        let exact: Vec<Complex64> = f.xs().map(|x| real(gleisher(x, 0.5, 0.5))).collect();
        Ok(rel_l2(f.values(), &exact))
    };
    out.push(Check::within("crank_nicolson_refinement_ratio", error(256, 0.02)? / error(512, 0.01)?, 3.5, 4.5));
    Ok(out)
}

fn airy_packet_checks() -> Result<Vec<Check>> {
    let scale = AiryScale::unit();
    let mut out = Vec::new();

    let grid = GridSpec::new(-30.0, 30.0, 6000)?;
    let mut heights = Vec::new();
    for k in 0..=20 {
        let p = solve_schrodinger_airy(&grid, 1.0, 0.1 * k as f64, scale)?;
        heights.push(p.peak.map_or(f64::NAN, |p| p.value));
    }
    let max = heights.iter().cloned().fold(f64::MIN, f64::max);
    let min = heights.iter().cloned().fold(f64::MAX, f64::min);
    out.push(Check::below("closed_form_peak_variation", (max - min) / max, 1e-2));

    let window = Window::with_side(-30.0, 30.0, WindowSide::Left)?;
    let cfg = OracleConfig::new(-100.0, 60.0, 4096, 1e-3, window, Scheme::SplitStepFourier)?;
    let dx = cfg.dx();
    let f0 = cfg.sample_apodized(|x| real(airy_ai(x).unwrap_or(f64::NAN)))?;
    for b in [0.5, 1.0] {
        let (_, diag) = split_step_schrodinger(&f0, &|_| b, 2.0, 20, &cfg)?;
        let first = *diag.peaks.first().ok_or_else(|| Error::Numeric("no peak samples recorded".into()))?;
        let decay = diag
            .peaks
            .iter()
            .map(|p| (first.density - p.density) / first.density)
            .fold(0.0, f64::max);
        out.push(Check::below(format!("split_step_peak_decay_b{b}"), decay, 0.03));
        let drift = diag
            .peaks
            .iter()
            .map(|p| (p.x - airy_peak_position(b, p.tau, scale)).abs() / dx)
            .fold(0.0, f64::max);
        out.push(Check::below(format!("peak_trajectory_cells_b{b}"), drift, 2.0));
        if b == 1.0 {
            let last = diag.peaks.last().copied().unwrap_or(first);
            out.push(Check::below("frozen_packet_displacement_cells", (last.x - first.x).abs() / dx, 1.0));
        }
    }
    Ok(out)
}

fn polynomial_checks() -> Result<Vec<Check>> {
    let t = rational(3, 7);
    let mut gw = 0.0;
    let mut cubic = 0.0;
    for n in 0..=12 {
        let x_n = PolyDense::monomial(n);
        gw = f64::max(gw, gauss_weierstrass_poly(&x_n, &t).max_coeff_diff(&hermite_higher(n, 2, &t)?));
        cubic = f64::max(cubic, cubic_evolution_poly(&x_n, &t).max_coeff_diff(&hermite_higher(n, 3, &t)?));
    }
    let mut out = vec![Check::exact("gauss_weierstrass_monomials", gw), Check::exact("cubic_evolution_monomials", cubic)];
    for p in [2, 3, 4] {
        let report = verify_recurrences(12, p, &t)?;
        let failures = report.entries.iter().filter(|e| !(e.raising && e.lowering)).count();
        out.push(Check::exact(format!("recurrences_p{p}"), failures as f64));
    }
    Ok(out)
}

fn transform_identity_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f = GridFunction::real_on_interval(-30.0, 30.0, 3000, |x| (-(x - 0.5) * (x - 0.5)).exp() * (1.0 + 0.3 * x))?;
    let df = derivative(&f, 1)?;
    let xf = f.map(|x, v| v * x)?;
    for alpha in [1.0, -1.2] {
        let phi = airy_transform(&f, alpha)?;
        let dphi = central_derivative(phi.values(), phi.dx(), 1);
        let lhs = airy_transform(&df, alpha)?;
        out.push(Check::below(
            format!("airy_transform_derivative_alpha{alpha}"),
            interior_error(&f, lhs.values(), &dphi, -10.0, 10.0),
            1e-4,
        ));
        let d2 = central_derivative(phi.values(), phi.dx(), 2);
        let a3 = alpha * alpha * alpha;
        let rhs: Vec<Complex64> =
            phi.values().iter().zip(&d2).enumerate().map(|(j, (v, dd))| v * phi.x(j) - dd * a3).collect();
        let lhs = airy_transform(&xf, alpha)?;
        out.push(Check::below(
            format!("airy_transform_position_alpha{alpha}"),
            interior_error(&f, lhs.values(), &rhs, -10.0, 10.0),
            1e-4,
        ));
    }

    let t = 0.35;
    let g = gauss_weierstrass(&f, real(t))?;
    let dg = derivative(&g, 1)?;
    let lhs = gauss_weierstrass(&xf, real(t))?;
    let rhs: Vec<Complex64> =
        g.values().iter().zip(dg.values()).enumerate().map(|(j, (v, d))| v * g.x(j) + d * (2.0 * t)).collect();
    out.push(Check::below("gauss_weierstrass_position", interior_error(&f, lhs.values(), &rhs, -10.0, 10.0), 1e-4));
    let lhs = gauss_weierstrass(&df, real(t))?;
    out.push(Check::below(
        "gauss_weierstrass_derivative",
        interior_error(&f, lhs.values(), dg.values(), -10.0, 10.0),
        1e-4,
    ));

    let want = (1.0f64 / 3.0).exp();
    out.push(Check::below("exp_cube_moment_u1", (exp_cube_moment(1.0)? - want).abs() / want, 1e-5));
    Ok(out)
}

fn wei_norman_checks() -> Result<Vec<Check>> {
    let presets = [
        ("constant", CoeffFunctions::new(Profile::Constant(1.0), Profile::Constant(0.5))),
        (
            "linear",
            CoeffFunctions::new(Profile::Linear { offset: 0.5, slope: 1.0 }, Profile::Linear { offset: -1.0, slope: 2.0 }),
        ),
        ("sin", CoeffFunctions::unit_diffusion(Profile::Sin { amplitude: 1.0, omega: 1.0 })),
        (
            "polynomial",
            CoeffFunctions::new(Profile::Polynomial(vec![1.0, 0.0, 0.5]), Profile::Polynomial(vec![0.2, -0.3, 0.0, 0.1])),
        ),
        (
            "piecewise",
            CoeffFunctions::new(
                Profile::piecewise(vec![0.4], vec![2.0, 0.5])?,
                Profile::piecewise(vec![0.3, 1.1], vec![1.0, -2.0, 0.5])?,
            ),
        ),
    ];
    let mut out = Vec::new();
    for (name, c) in &presets {
        let mut worst: f64 = 0.0;
        for t in [0.25, 1.0, 2.5] {
            let ode = wei_norman_coeffs(c, t, Method::Ode)?;
            let quad = wei_norman_coeffs(c, t, Method::NestedQuadrature)?;
            worst = worst.max(ode.rel_diff(&quad));
        }
        out.push(Check::below(format!("ode_vs_nested_{name}"), worst, 1e-6));
    }

    let (beta, t) = (0.5, 0.9);
    let w = wei_norman_coeffs(&CoeffFunctions::unit_diffusion(Profile::Constant(beta)), t, Method::Ode)?;
    let phase_err = [-2.0, 0.0, 1.7]
        .iter()
        .map(|&x| (w.phase(x) - (beta * beta * t * t * t / 3.0 + beta * t * x)).abs())
        .fold(0.0, f64::max);
    out.push(Check::below("constant_coefficient_phase", phase_err, 1e-12));

    let cfg = OracleConfig::new(-40.0, 40.0, 2048, 1e-3, Window::new(0.0, 32.0)?, Scheme::CrankNicolson)?;
    let f0 = cfg.sample(|x| real((-x * x).exp()))?;
    let coeffs = CoeffFunctions::unit_diffusion(Profile::Sin { amplitude: 1.0, omega: 1.0 });
    let analytic = factorized_evolution(&coeffs, &f0, 1.0)?;
    let oracle = crank_nicolson_heat(&f0, &f64::sin, &|_| 1.0, 1.0, &cfg)?;
    out.push(Check::below("sin_field_vs_crank_nicolson_l2", rel_l2(analytic.values(), oracle.values()), 1e-3));
    Ok(out)
}

fn centroid_checks() -> Result<Vec<Check>> {
    let n = 2001;
    let t: Vec<f64> = (0..n).map(|i| i as f64 * 0.005).collect();
    let (big_b, mass) = (1.0, 1.0);
    let cases: [(&str, fn(f64) -> f64); 3] = [("zero", |_| 0.0), ("const", |_| 0.7), ("sin", f64::sin)];
    let mut out = Vec::new();
    for (name, phi) in cases {
        let samples: Vec<f64> = t.iter().map(|&s| phi(s)).collect();
        let x = centroid_trajectory(&samples, big_b, mass, &t)?;
        let acc = second_difference(&x, &t);
        let want: Vec<f64> = t.iter().map(|&s| big_b.powi(3) / (2.0 * mass * mass) + phi(s) / mass).collect();
        let scale = want.iter().fold(0.0_f64, |s, w| s.max(w.abs()));
        let err = acc.iter().zip(&want).filter_map(|(a, w)| a.map(|a| (a - w).abs())).fold(0.0, f64::max);
        out.push(Check::below(format!("centroid_acceleration_{name}"), err / scale, 1e-4));
    }
    Ok(out)
}

fn weyl_checks() -> Result<Vec<Check>> {
    let alphas: [BigRational; 3] = [rational(1, 1), rational(-3, 2), rational(2, 5)];
    let mut worst: f64 = 0.0;
    for alpha in &alphas {
        for n in 0..=12 {
            worst = worst.max(weyl_conjugation_check(n, alpha)?);
        }
    }
    Ok(vec![Check::exact("weyl_conjugation_monomials", worst)])
}

fn chain_rule_checks() -> Result<Vec<Check>> {
    let (p, q) = (0.1, 0.5);
    let g = gaussian(25.0, 2048)?;
    let lhs = gauss_weierstrass(&g.map(|x, v| v * (q * x).exp())?, real(p))?;
    let shifted = translate(&gauss_weierstrass(&g, real(p))?, 2.0 * p * q)?;
    let rhs = shifted.map(|x, v| v * (p * q * q + q * x).exp())?;
    let mut out = vec![Check::below("chain_rule_gaussian_linf", rel_linf(lhs.values(), rhs.values()), 1e-6)];

    let eg = GridFunction::real_on_interval(-10.0, 10.0, 2000, |x| (q * x).exp())?;
    let one = gauss_weierstrass_quadrature(&eg, p, Support::Interior)?;
    let exact: Vec<Complex64> = one.xs().map(|x| real((p * q * q + q * x).exp())).collect();
    out.push(Check::below("chain_rule_constant_linf", rel_linf(one.values(), &exact), 1e-8));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Criterion::ALL {
            assert_eq!(Criterion::from_name(c.name()), Some(c));
        }
        assert_eq!(Criterion::from_name("nope"), None);
    }

    #[test]
    fn check_constructors() {
        assert!(Check::below("a", 0.5, 1.0).passed);
        assert!(!Check::below("a", f64::NAN, 1.0).passed);
        assert!(Check::exact("b", 0.0).passed);
        assert!(!Check::exact("b", 1e-300).passed);
        assert!(Check::within("c", 4.0, 3.5, 4.5).passed);
    }
}
