use airy_evolve::evolution::{
    airy_initial, airy_peak_position, centroid_trajectory, free_gaussian, gaussian_in_field, gleisher,
    second_difference, solve_heat_linear, solve_heat_linear_with, solve_schrodinger_airy,
    solve_schrodinger_linear, HeatMethod,
};
use airy_evolve::grid::{central_derivative, rel_l2, rel_l2_real, rel_linf};
use airy_evolve::quadrature::{adaptive, AdaptiveConfig};
use airy_evolve::special_fn::{AiryScale, AI_PEAK_X};
use airy_evolve::transforms::{
    airy_transform, gauss_weierstrass_quadrature, schrodinger_airy_scale, transformed_phase, translate, Support,
};
use airy_evolve::{GridFunction, GridSpec, Window, WindowSide};
use num_complex::Complex64;

fn gaussian(x_min: f64, x_max: f64, n: usize) -> GridFunction {
    GridFunction::real_on_interval(x_min, x_max, n, |x| (-x * x).exp()).unwrap()
}

#[test]
fn gleisher_rule_both_paths() {
    let f0 = gaussian(-40.0, 40.0, 2048);
    for beta in [0.0, 0.5] {
        for t in [0.1, 0.5, 1.0] {
            let exact: Vec<Complex64> = f0.xs().map(|x| Complex64::new(gleisher(x, t, beta), 0.0)).collect();
            for method in [HeatMethod::Spectral, HeatMethod::Quadrature] {
                let f = solve_heat_linear_with(&f0, beta, t, method).unwrap();
                let err = rel_linf(f.values(), &exact);
                assert!(err < 1e-6, "beta {beta}, t {t}, {method:?}: {err:.3e}");
            }
        }
    }
}

#[test]
fn zero_beta_is_plain_diffusion() {
    let f0 = gaussian(-30.0, 30.0, 1024);
    let a = solve_heat_linear(&f0, 0.0, 0.4).unwrap();
    let b = gauss_weierstrass_quadrature(&f0, 0.4, Support::Full).unwrap();
    assert!(rel_linf(a.values(), b.values()) < 1e-12);
}

#[test]
fn translation_commutes_with_diffusion() {
    let f = GridFunction::real_on_interval(-30.0, 30.0, 1200, |x| (-(x * x) / 3.0).exp() * (1.0 + x.sin())).unwrap();
    let (t, s) = (0.3, 0.73);
    let a = translate(&gauss_weierstrass_quadrature(&f, t, Support::Full).unwrap(), s).unwrap();
    let b = gauss_weierstrass_quadrature(&translate(&f, s).unwrap(), t, Support::Full).unwrap();
    assert!(rel_linf(a.values(), b.values()) < 1e-8);
}

#[test]
fn heat_solution_satisfies_the_pde() {
    let f0 = GridFunction::real_on_interval(-40.0, 40.0, 2048, |x| (-(x - 1.0) * (x - 1.0)).exp() * (2.0 + x.cos())).unwrap();
    let beta = 0.5;
    let dt = 1e-3;
    for t in [0.2, 0.6] {
        let fm = solve_heat_linear(&f0, beta, t - dt).unwrap();
        let f = solve_heat_linear(&f0, beta, t).unwrap();
        let fp = solve_heat_linear(&f0, beta, t + dt).unwrap();
        let fxx = central_derivative(f.values(), f.dx(), 2);
        let scale = f.max_abs();
        let (s, e) = f.index_range(-10.0, 10.0);
        for j in s..e {
            let ft = (fp.values()[j] - fm.values()[j]) / (2.0 * dt);
            let r = ft - fxx[j] - f.values()[j] * (beta * f.x(j));
            assert!(r.norm() < 1e-3 * scale, "t {t}, x {}: {:.3e}", f.x(j), r.norm());
        }
    }
}

#[test]
fn schrodinger_matches_gaussian_closed_form_and_is_unitary() {
    let f0 = gaussian(-60.0, 60.0, 4096);
    for (b, tau) in [(0.0, 0.5), (0.8, 1.0), (-0.5, 2.0)] {
        let psi = solve_schrodinger_linear(&f0, b, tau).unwrap();
        let exact: Vec<Complex64> = psi.xs().map(|x| gaussian_in_field(x, tau, b)).collect();
        assert!(rel_l2(psi.values(), &exact) < 1e-10, "b {b}, tau {tau}");
        let drift = (psi.l2_norm() - f0.l2_norm()).abs() / f0.l2_norm();
        assert!(drift < 1e-6);
    }
}

#[test]
fn schrodinger_phase_signs_match_direct_quadrature() {
    // Brute-force the propagator integral with the complex heat kernel.
    let (x, tau, b) = (0.7, 0.3, 0.8);
    let y = x + b * tau * tau;
    let kernel = |xi: f64| {
        let d = y - xi;
        (-(d * d) / Complex64::new(0.0, 4.0 * tau)).exp() * (-xi * xi).exp()
    };
    let cfg = AdaptiveConfig::default();
    let re = adaptive(&|xi| kernel(xi).re, -12.0, 12.0, &cfg).unwrap();
    let im = adaptive(&|xi| kernel(xi).im, -12.0, 12.0, &cfg).unwrap();
    let norm = 2.0 * (Complex64::new(0.0, std::f64::consts::PI * tau)).sqrt();
    let phi = b * b * tau.powi(3) / 3.0 + b * tau * x;
    let direct = Complex64::from_polar(1.0, -phi) * Complex64::new(re, im) / norm;
    assert!((direct - gaussian_in_field(x, tau, b)).norm() < 1e-9);
    assert!((free_gaussian(0.0, 0.0) - 1.0).norm() < 1e-15);
}

fn airy_setup() -> (GridSpec, Window) {
    let grid = GridSpec::new(-100.0, 60.0, 4096).unwrap();
    let window = Window::with_side(-30.0, 30.0, WindowSide::Left).unwrap();
    (grid, window)
}

#[test]
fn spectral_and_closed_form_airy_packets_agree_with_phase() {
    let (grid, window) = airy_setup();
    let scale = AiryScale::unit();
    let f0 = airy_initial(&grid, scale, Some(&window)).unwrap();
    for (b, tau) in [(0.5, 1.0), (1.0, 2.0), (0.0, 1.5)] {
        let psi = solve_schrodinger_linear(&f0, b, tau).unwrap();
        let exact = solve_schrodinger_airy(&grid, b, tau, scale).unwrap().field;
        let (s, e) = psi.index_range(-15.0, 10.0);
        let d_num: Vec<f64> = psi.abs2()[s..e].to_vec();
        let d_ref: Vec<f64> = exact.abs2()[s..e].to_vec();
        assert!(rel_l2_real(&d_num, &d_ref) < 1e-3, "b {b}, tau {tau}");

        // phase difference, weighted to where the packet is not near a node
        let cutoff = 1e-2 * d_ref.iter().cloned().fold(0.0, f64::max);
        let diffs: Vec<f64> = (s..e)
            .filter(|&j| exact.values()[j].norm_sqr() > cutoff)
            .map(|j| (psi.values()[j] / exact.values()[j]).arg())
            .collect();
        let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
        let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / diffs.len() as f64;
        assert!(var < 1e-3, "b {b}, tau {tau}: phase variance {var:.3e}");
    }
}

#[test]
fn closed_form_packet_does_not_spread() {
    let grid = GridSpec::new(-30.0, 30.0, 6000).unwrap();
    for (a, b) in [(1.0, 1.0), (1.0, 0.5), (1.4, 0.2)] {
        let scale = AiryScale::new(a).unwrap();
        let mut heights = Vec::new();
        for k in 0..=10 {
            let tau = 0.2 * k as f64;
            let p = solve_schrodinger_airy(&grid, b, tau, scale).unwrap();
            let peak = p.peak.unwrap();
            assert!((peak.x - airy_peak_position(b, tau, scale)).abs() < grid.dx(), "A {a}, b {b}, tau {tau}");
            heights.push(peak.value);
        }
        let max = heights.iter().cloned().fold(f64::MIN, f64::max);
        let min = heights.iter().cloned().fold(f64::MAX, f64::min);
        assert!((max - min) / max < 1e-2);
    }
    let frozen = solve_schrodinger_airy(&grid, 1.0, 2.0, AiryScale::unit()).unwrap();
    assert!((frozen.peak.unwrap().x - AI_PEAK_X).abs() < grid.dx());
}

#[test]
fn transformed_schrodinger_equation_is_a_pure_phase() {
    // With α³ = -1/b the transformed wave function only picks up exp(-ibητ).
    let b = 1.0;
    let alpha = schrodinger_airy_scale(b).unwrap();
    assert!((alpha + 1.0).abs() < 1e-15);
    let f0 = GridFunction::on_interval(-40.0, 40.0, 4096, |x| Complex64::new((-(x * x) / 2.0).exp(), 0.0)).unwrap();
    let phi0 = airy_transform(&f0, alpha).unwrap();
    for tau in [0.3, 0.8] {
        let psi = solve_schrodinger_linear(&f0, b, tau).unwrap();
        let phi = airy_transform(&psi, alpha).unwrap();
        let predicted: Vec<Complex64> = phi0
            .values()
            .iter()
            .enumerate()
            .map(|(j, v)| v * transformed_phase(b, phi0.x(j), tau))
            .collect();
        let (s, e) = phi.index_range(-5.0, 5.0);
        let err = rel_linf(&phi.values()[s..e], &predicted[s..e]);
        assert!(err < 1e-6, "tau {tau}: {err:.3e}");
    }
}

#[test]
fn centroid_acceleration_law() {
    let n = 2001;
    let t: Vec<f64> = (0..n).map(|i| i as f64 * 0.005).collect();
    let (big_b, m) = (1.0, 1.0);
    let cases: [(&str, Box<dyn Fn(f64) -> f64>); 3] =
        [("zero", Box::new(|_| 0.0)), ("const", Box::new(|_| 0.7)), ("sin", Box::new(f64::sin))];
    for (name, phi) in cases {
        let samples: Vec<f64> = t.iter().map(|&s| phi(s)).collect();
        let x = centroid_trajectory(&samples, big_b, m, &t).unwrap();
        let acc = second_difference(&x, &t);
        let want: Vec<f64> = t.iter().map(|&s| big_b.powi(3) / (2.0 * m * m) + phi(s) / m).collect();
        let err = acc
            .iter()
            .zip(&want)
            .filter_map(|(a, w)| a.map(|a| (a - w).abs()))
            .fold(0.0, f64::max);
        let scale = want.iter().fold(0.0_f64, |s, w| s.max(w.abs()));
        assert!(err < 1e-4 * scale, "{name}: {err:.3e}");
    }
    let x = centroid_trajectory(&vec![0.7; n], 1.0, 2.0, &t).unwrap();
    let last = t[n - 1];
    assert!((x[n - 1] - (last * last / 16.0 + 0.7 * last * last / 4.0)).abs() < 1e-10);
}
