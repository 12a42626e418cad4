use airy_evolve::grid::{central_derivative, rel_linf};
use airy_evolve::polynomials::{airy_polynomial, rational};
use airy_evolve::transforms::{
    airy_transform, cubic_evolution, cubic_evolution_poly, derivative, gauss_weierstrass,
    gauss_weierstrass_quadrature, translate, Support,
};
use airy_evolve::{GridFunction, PolyDense, Window};
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Max deviation on `[lo, hi]`, relative to the largest reference value there.
fn interior_error(grid: &GridFunction, approx: &[Complex64], exact: &[Complex64], lo: f64, hi: f64) -> f64 {
    let (s, e) = grid.index_range(lo, hi);
    rel_linf(&approx[s..e], &exact[s..e])
}

fn smooth_bump() -> GridFunction {
    GridFunction::real_on_interval(-30.0, 30.0, 3000, |x| (-(x - 0.5) * (x - 0.5)).exp() * (1.0 + 0.3 * x)).unwrap()
}

#[test]
fn airy_transform_derivative_identity() {
    let f = smooth_bump();
    for alpha in [1.0, 0.7, -1.2] {
        let df = derivative(&f, 1).unwrap();
        let lhs = airy_transform(&df, alpha).unwrap();
        let phi = airy_transform(&f, alpha).unwrap();
        let rhs = central_derivative(phi.values(), phi.dx(), 1);
        let err = interior_error(&f, lhs.values(), &rhs, -10.0, 10.0);
        assert!(err < 1e-5, "alpha = {alpha}: {err:.3e}");
    }
}

#[test]
fn airy_transform_position_identity() {
    let f = smooth_bump();
    for alpha in [1.0, 0.7, -1.2] {
        let xf = f.map(|x, v| v * x).unwrap();
        let lhs = airy_transform(&xf, alpha).unwrap();
        let phi = airy_transform(&f, alpha).unwrap();
        let d2 = central_derivative(phi.values(), phi.dx(), 2);
        let a3 = alpha * alpha * alpha;
        let rhs: Vec<Complex64> = phi
            .values()
            .iter()
            .zip(&d2)
            .enumerate()
            .map(|(j, (v, dd))| v * phi.x(j) - dd * a3)
            .collect();
        let err = interior_error(&f, lhs.values(), &rhs, -10.0, 10.0);
        assert!(err < 1e-4, "alpha = {alpha}: {err:.3e}");
    }
}

#[test]
fn airy_transform_of_decaying_exponential() {
    // Φ(η) = exp(1/3 - η) for f = exp(-x), α = 1
    let f = GridFunction::real_on_interval(-15.0, 50.0, 6500, |x| (-x).exp()).unwrap();
    let phi = airy_transform(&f, 1.0).unwrap();
    let j0 = f.index_range(0.0, 0.0).0;
    assert!(f.x(j0).abs() < 1e-12);
    let want = (1.0f64 / 3.0).exp();
    assert!((phi.values()[j0].re - want).abs() < 1e-5 * want);
    let (s, e) = f.index_range(-3.0, 3.0);
    for j in s..e {
        let w = (1.0 / 3.0 - f.x(j)).exp();
        assert!((phi.values()[j].re - w).abs() < 1e-5 * w);
    }
}

#[test]
fn gauss_weierstrass_identities() {
    let f = GridFunction::real_on_interval(-30.0, 30.0, 1024, |x| (-(x * x) / 2.0).exp() * (2.0 * x).cos()).unwrap();
    let t = 0.35;
    let g = gauss_weierstrass(&f, c(t)).unwrap();
    let dg = derivative(&g, 1).unwrap();

    let xf = f.map(|x, v| v * x).unwrap();
    let lhs = gauss_weierstrass(&xf, c(t)).unwrap();
    let rhs: Vec<Complex64> = g
        .values()
        .iter()
        .zip(dg.values())
        .enumerate()
        .map(|(j, (v, d))| v * g.x(j) + d * (2.0 * t))
        .collect();
    assert!(rel_linf(lhs.values(), &rhs) < 1e-10);

    let df = derivative(&f, 1).unwrap();
    let lhs = gauss_weierstrass(&df, c(t)).unwrap();
    assert!(rel_linf(lhs.values(), dg.values()) < 1e-10);
}

#[test]
fn chain_rule_on_gaussian() {
    let (p, q) = (0.1, 0.5);
    let g = GridFunction::real_on_interval(-25.0, 25.0, 2048, |x| (-x * x).exp()).unwrap();
    let eg = g.map(|x, v| v * (q * x).exp()).unwrap();
    let lhs = gauss_weierstrass(&eg, c(p)).unwrap();

    let diffused = gauss_weierstrass(&g, c(p)).unwrap();
    let shifted = translate(&diffused, 2.0 * p * q).unwrap();
    let rhs = shifted.map(|x, v| v * (p * q * q + q * x).exp()).unwrap();
    assert!(rel_linf(lhs.values(), rhs.values()) < 1e-6);
}

#[test]
fn chain_rule_on_constant() {
    let (p, q) = (0.1, 0.5);
    let eg = GridFunction::real_on_interval(-10.0, 10.0, 2000, |x| (q * x).exp()).unwrap();
    let out = gauss_weierstrass_quadrature(&eg, p, Support::Interior).unwrap();
    let exact: Vec<Complex64> = out.xs().map(|x| c((p * q * q + q * x).exp())).collect();
    assert!(rel_linf(out.values(), &exact) < 1e-8);
}

#[test]
fn cubic_evolution_grid_matches_polynomial() {
    let t = 0.2;
    let window = Window::new(0.0, 20.0).unwrap();
    let g = window.apply(&GridFunction::real_on_interval(-40.0, 40.0, 4000, |x| x * x).unwrap());
    let evolved = cubic_evolution(&g, t).unwrap();
    let exact_poly = cubic_evolution_poly(&PolyDense::monomial(2), &rational(1, 5));
    assert_eq!(exact_poly, PolyDense::monomial(2));
    let exact: Vec<Complex64> = g.xs().map(|x| c(exact_poly.eval(x))).collect();
    let err = interior_error(&g, evolved.values(), &exact, -2.0, 2.0);
    assert!(err < 1e-4, "{err:.3e}");
}

#[test]
fn cubic_evolution_of_cube_on_grid() {
    // exp(t∂³)x³ = x³ + 6t
    let t = 0.3;
    let window = Window::new(0.0, 20.0).unwrap();
    let g = window.apply(&GridFunction::real_on_interval(-40.0, 40.0, 4000, |x| x * x * x).unwrap());
    let evolved = cubic_evolution(&g, t).unwrap();
    let exact_poly = airy_polynomial(3, &rational(3, 10)).unwrap();
    let exact: Vec<Complex64> = g.xs().map(|x| c(exact_poly.eval(x))).collect();
    let err = interior_error(&g, evolved.values(), &exact, -2.0, 2.0);
    assert!(err < 1e-4, "{err:.3e}");
}

#[test]
fn cubic_evolution_preserves_constants() {
    let window = Window::new(0.0, 20.0).unwrap();
    let g = window.apply(&GridFunction::real_on_interval(-40.0, 40.0, 4000, |_| 1.0).unwrap());
    for t in [0.1, -0.4] {
        let evolved = cubic_evolution(&g, t).unwrap();
        let ones = vec![c(1.0); g.len()];
        let err = interior_error(&g, evolved.values(), &ones, -5.0, 5.0);
        // the window truncates the slowly decaying oscillatory tail of the kernel
        assert!(err < 1e-4, "t = {t}: {err:.3e}");
    }
}
