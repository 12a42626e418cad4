use airy_evolve::evolution::{phase_phi, solve_heat_linear, solve_schrodinger_linear};
use airy_evolve::grid::rel_linf;
use airy_evolve::transforms::gauss_weierstrass;
use airy_evolve::wei_norman::{
    factorized_evolution, factorized_schrodinger, wei_norman_coeffs, CoeffFunctions, Method, Profile,
};
use airy_evolve::GridFunction;
use num_complex::Complex64;

fn library() -> Vec<(&'static str, CoeffFunctions)> {
    vec![
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
                Profile::piecewise(vec![0.4], vec![2.0, 0.5]).unwrap(),
                Profile::piecewise(vec![0.3, 1.1], vec![1.0, -2.0, 0.5]).unwrap(),
            ),
        ),
        (
            "custom",
            CoeffFunctions::new(Profile::custom(|t| 1.0 + t * t), Profile::custom(|t| (-t).exp() * (3.0 * t).cos())),
        ),
    ]
}

#[test]
fn ode_and_nested_quadrature_agree() {
    for (name, c) in library() {
        for t in [0.25, 1.0, 2.5] {
            let ode = wei_norman_coeffs(&c, t, Method::Ode).unwrap();
            let quad = wei_norman_coeffs(&c, t, Method::NestedQuadrature).unwrap();
            assert!(ode.rel_diff(&quad) < 1e-6, "{name} at t = {t}: {ode:?} vs {quad:?}");
        }
    }
}

#[test]
fn finite_differences_satisfy_the_ordering_odes() {
    let h = 1e-4;
    for (name, c) in library() {
        let t = 0.8;
        let at = |s| wei_norman_coeffs(&c, s, Method::NestedQuadrature).unwrap();
        let (m, w, p) = (at(t - h), at(t), at(t + h));
        let deriv = |f: fn(&airy_evolve::wei_norman::WeiNormanCoeffs) -> f64| (f(&p) - f(&m)) / (2.0 * h);
        let (alpha, beta) = (c.alpha.eval(t), c.beta.eval(t));
        let residuals = [
            deriv(|w| w.a) + beta * w.b,
            deriv(|w| w.b) + 2.0 * beta * w.c,
            deriv(|w| w.c) - alpha,
            deriv(|w| w.d) - beta,
        ];
        for r in residuals {
            assert!(r.abs() < 1e-4, "{name}: {residuals:?}");
        }
    }
}

#[test]
fn ordering_functions_vanish_at_the_start() {
    for (name, c) in library() {
        let w = wei_norman_coeffs(&c, 1e-9, Method::Ode).unwrap();
        assert!(w.max_abs_diff(&Default::default()) < 1e-8, "{name}: {w:?}");
    }
}

#[test]
fn constant_coefficients_reduce_to_the_linear_heat_solution() {
    let beta = 0.5;
    let c = CoeffFunctions::unit_diffusion(Profile::Constant(beta));
    let w = wei_norman_coeffs(&c, 0.9, Method::Ode).unwrap();
    for x in [-2.0, 0.0, 1.7] {
        assert!((w.phase(x) - phase_phi(x, 0.9, beta)).abs() < 1e-12);
    }
    let f0 = GridFunction::real_on_interval(-30.0, 30.0, 1024, |x| (-x * x).exp()).unwrap();
    let a = factorized_evolution(&c, &f0, 0.9).unwrap();
    let b = solve_heat_linear(&f0, beta, 0.9).unwrap();
    assert!(rel_linf(a.values(), b.values()) < 1e-8);
}

#[test]
fn no_linear_term_is_reparametrised_diffusion() {
    let c = CoeffFunctions::new(Profile::Linear { offset: 0.2, slope: 0.6 }, Profile::Constant(0.0));
    let f0 = GridFunction::real_on_interval(-30.0, 30.0, 1024, |x| (-x * x).exp()).unwrap();
    let a = factorized_evolution(&c, &f0, 1.5).unwrap();
    let b = gauss_weierstrass(&f0, Complex64::new(0.2 * 1.5 + 0.3 * 1.5 * 1.5, 0.0)).unwrap();
    assert!(rel_linf(a.values(), b.values()) < 1e-12);
}

#[test]
fn tiny_times_return_the_initial_data() {
    let c = CoeffFunctions::unit_diffusion(Profile::Sin { amplitude: 1.0, omega: 1.0 });
    let f0 = GridFunction::real_on_interval(-30.0, 30.0, 1024, |x| (-x * x).exp()).unwrap();
    let f = factorized_evolution(&c, &f0, 1e-12).unwrap();
    assert!(rel_linf(f.values(), f0.values()) < 1e-10);
}

#[test]
fn schrodinger_variant_with_constant_field() {
    let f0 = GridFunction::real_on_interval(-60.0, 60.0, 4096, |x| (-x * x).exp()).unwrap();
    let a = factorized_schrodinger(&Profile::Constant(0.8), &f0, 1.2).unwrap();
    let b = solve_schrodinger_linear(&f0, 0.8, 1.2).unwrap();
    assert!(rel_linf(a.values(), b.values()) < 1e-8);
}
