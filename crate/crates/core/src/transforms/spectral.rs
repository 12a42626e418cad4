//! Fourier multipliers on periodic grids.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::Result;
use crate::grid::GridFunction;

/// Angular wavenumbers in FFT order for `n` samples with spacing `dx`.
pub fn wavenumbers(n: usize, dx: f64) -> Vec<f64> {
    let scale = 2.0 * PI / (n as f64 * dx);
    (0..n)
        .map(|j| {
            let signed = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            signed * scale
        })
        .collect()
}

/// Applies the operator `m(-i∂ₓ)`, i.e. multiplies the spectrum of `f` by `m(k)`.
///
/// For even `n` the Nyquist bin gets `(m(k) + m(-k))/2`, which keeps real
/// data real under odd multipliers such as translations.
pub fn apply_multiplier(f: &GridFunction, m: impl Fn(f64) -> Complex64) -> Result<GridFunction> {
    let n = f.len();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf = f.values().to_vec();
    forward.process(&mut buf);
    let ks = wavenumbers(n, f.dx());
    for (j, (v, &k)) in buf.iter_mut().zip(&ks).enumerate() {
        let factor = if n % 2 == 0 && j == n / 2 { 0.5 * (m(k) + m(-k)) } else { m(k) };
        *v *= factor;
    }
    inverse.process(&mut buf);
    let norm = 1.0 / n as f64;
    buf.iter_mut().for_each(|v| *v *= norm);
    f.with_values(buf)
}

/// Band-limited translation `f(x) -> f(x + a)`.
pub fn translate(f: &GridFunction, a: f64) -> Result<GridFunction> {
    if a == 0.0 {
        return Ok(f.clone());
    }
    apply_multiplier(f, |k| Complex64::from_polar(1.0, k * a))
}

/// Spectral derivative of the given order.
pub fn derivative(f: &GridFunction, order: u32) -> Result<GridFunction> {
    apply_multiplier(f, |k| Complex64::new(0.0, k).powu(order))
}

/// Direct linear convolution `out_i = dx · Σ_j kernel(x_i - x_j) f_j`, computed with a
/// zero-padded FFT so there is no periodic wrap-around.
pub fn convolve(f: &GridFunction, kernel: impl Fn(f64) -> f64) -> Result<GridFunction> {
    let n = f.len();
    let dx = f.dx();
    let size = (3 * n).next_power_of_two();
    // kernel at offsets d = -(n-1)..=(n-1), stored circularly
    let mut kbuf = vec![Complex64::new(0.0, 0.0); size];
    for d in -(n as i64 - 1)..=(n as i64 - 1) {
        let idx = d.rem_euclid(size as i64) as usize;
        kbuf[idx] = Complex64::new(kernel(d as f64 * dx) * dx, 0.0);
    }
    let mut fbuf = vec![Complex64::new(0.0, 0.0); size];
    fbuf[..n].copy_from_slice(f.values());

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(size);
    let inverse = planner.plan_fft_inverse(size);
    forward.process(&mut kbuf);
    forward.process(&mut fbuf);
    for (a, b) in fbuf.iter_mut().zip(&kbuf) {
        *a *= b;
    }
    inverse.process(&mut fbuf);
    let norm = 1.0 / size as f64;
    let out = fbuf[..n].iter().map(|v| v * norm).collect();
    f.with_values(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_of_periodic_data_is_exact() {
        let f = GridFunction::real_on_interval(0.0, 2.0 * PI, 64, |x| (3.0 * x).sin()).unwrap();
        let g = translate(&f, 0.37).unwrap();
        for (j, v) in g.values().iter().enumerate() {
            let want = (3.0 * (f.x(j) + 0.37)).sin();
            assert!((v.re - want).abs() < 1e-13 && v.im.abs() < 1e-13);
        }
    }

    #[test]
    fn convolution_matches_direct_sum() {
        let f = GridFunction::real_on_interval(-3.0, 3.0, 50, |x| (-x * x).exp()).unwrap();
        let kernel = |s: f64| (-(s - 0.2).powi(2)).exp() * (1.0 + s);
        let fast = convolve(&f, kernel).unwrap();
        for i in 0..f.len() {
            let direct: f64 = (0..f.len())
                .map(|j| kernel(f.x(i) - f.x(j)) * f.values()[j].re * f.dx())
                .sum();
            assert!((fast.values()[i].re - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn wavenumber_layout() {
        let k = wavenumbers(4, PI / 2.0);
        assert_eq!(k, vec![0.0, 1.0, 2.0, -1.0]);
    }
}
