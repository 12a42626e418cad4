//! Uniform one-dimensional grids carrying complex samples.
//!
//! [`GridFunction`] is the common currency of the crate: transforms, solvers and
//! oracles all consume and produce it. Sample `j` sits at `x0 + j * dx`.
//! Spectral operations treat the grid as one period of a periodic function,
//! so builders that take an interval exclude the right endpoint.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    x0: f64,
    dx: f64,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(x0: f64, dx: f64, values: Vec<Complex64>) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::grid(format!("left endpoint {x0} is not finite")));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::grid(format!("spacing must be positive, got {dx}")));
        }
        if values.len() < 2 {
            return Err(Error::grid("at least two samples are required"));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::grid(format!("sample {i} is not finite")));
        }
        Ok(Self { x0, dx, values })
    }

    /// Samples `f` at `x0 + j*dx` for `j < n`.
    pub fn from_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = (0..n).map(|j| f(x0 + j as f64 * dx)).collect();
        Self::new(x0, dx, values)
    }

    pub fn from_real_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(x0, dx, n, |x| Complex64::new(f(x), 0.0))
    }

    /// `n` samples on the half-open interval `[x_min, x_max)`.
    pub fn on_interval(
        x_min: f64,
        x_max: f64,
        n: usize,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        if !(x_max > x_min) || n < 2 {
            return Err(Error::grid(format!(
                "bad interval [{x_min}, {x_max}) with {n} samples"
            )));
        }
        Self::from_fn(x_min, (x_max - x_min) / n as f64, n, f)
    }

    pub fn real_on_interval(x_min: f64, x_max: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::on_interval(x_min, x_max, n, |x| Complex64::new(f(x), 0.0))
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn xs(&self) -> impl DoubleEndedIterator<Item = f64> + ExactSizeIterator + '_ {
        (0..self.len()).map(move |j| self.x(j))
    }

    /// Right end of the periodic cell, `x0 + n*dx`.
    pub fn period_end(&self) -> f64 {
        self.x0 + self.len() as f64 * self.dx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Same grid, new samples.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::grid(format!(
                "expected {} samples, got {}",
                self.len(),
                values.len()
            )));
        }
        Self::new(self.x0, self.dx, values)
    }

    /// Pointwise `v(x) -> g(x, v(x))` on the same grid.
    pub fn map(&self, g: impl Fn(f64, Complex64) -> Complex64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &v)| g(self.x(j), v))
            .collect();
        Self::new(self.x0, self.dx, values)
    }

    /// Contiguous sub-grid `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if start >= end || end > self.len() {
            return Err(Error::grid(format!("bad slice {start}..{end} of {}", self.len())));
        }
        Self::new(self.x(start), self.dx, self.values[start..end].to_vec())
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.len() == other.len()
            && (self.x0 - other.x0).abs() <= 1e-12 * (1.0 + self.x0.abs())
            && (self.dx - other.dx).abs() <= 1e-12 * self.dx
    }

    pub fn abs2(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Riemann-sum L2 norm, exact for band-limited periodic data.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.dx).sqrt()
    }

    /// Indices `[start, end)` of the samples with `lo <= x <= hi`.
    pub fn index_range(&self, lo: f64, hi: f64) -> (usize, usize) {
        let start = self.xs().position(|x| x >= lo).unwrap_or(self.len());
        let end = self
            .xs()
            .rposition(|x| x <= hi)
            .map(|i| i + 1)
            .unwrap_or(0)
            .max(start);
        (start, end)
    }

    /// Largest sample magnitude among the first and last `k` samples, relative
    /// to the global maximum.
    pub fn edge_fraction(&self, k: usize) -> f64 {
        let k = k.min(self.len() / 2).max(1);
        let max = self.max_abs();
        if max == 0.0 {
            return 0.0;
        }
        let n = self.len();
        let edge = self.values[..k]
            .iter()
            .chain(&self.values[n - k..])
            .fold(0.0_f64, |m, v| m.max(v.norm()));
        edge / max
    }
}

/// Half-open interval `[x_min, x_max)` with `n` samples, before any data is attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) || n < 2 {
            return Err(Error::grid(format!("bad interval [{x_min}, {x_max}) with {n} samples")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> Result<GridFunction> {
        GridFunction::on_interval(self.x_min, self.x_max, self.n, f)
    }

    pub fn sample_real(&self, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        GridFunction::real_on_interval(self.x_min, self.x_max, self.n, f)
    }
}

/// Which side(s) of the center the apodization window tapers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSide {
    Both,
    /// Taper only for `x < center`; used for Airy profiles whose tail oscillates to the left.
    Left,
    Right,
}

/// Smooth super-Gaussian window `exp(-((x - center)/width)^8)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub center: f64,
    pub width: f64,
    pub side: WindowSide,
}

impl Window {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        Self::with_side(center, width, WindowSide::Both)
    }

    pub fn with_side(center: f64, width: f64, side: WindowSide) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) || !center.is_finite() {
            return Err(Error::domain(format!("window width must be positive, got {width}")));
        }
        Ok(Self { center, width, side })
    }

    pub fn weight(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.width;
        let tapered = match self.side {
            WindowSide::Both => true,
            WindowSide::Left => s < 0.0,
            WindowSide::Right => s > 0.0,
        };
        if tapered {
            (-s.powi(8)).exp()
        } else {
            1.0
        }
    }

    pub fn apply(&self, f: &GridFunction) -> GridFunction {
        // Weights lie in [0, 1], so the result stays finite.
        f.map(|x, v| v * self.weight(x)).expect("window keeps samples finite")
    }

    /// The central 60% of the window's support; tolerance claims are made there.
    pub fn interior(&self) -> (f64, f64) {
        let half = 0.6 * self.width;
        match self.side {
            WindowSide::Both => (self.center - half, self.center + half),
            WindowSide::Left => (self.center - half, f64::INFINITY),
            WindowSide::Right => (f64::NEG_INFINITY, self.center + half),
        }
    }
}

/// Location and height of a maximum refined by a parabola through three samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub value: f64,
}

/// Maximum of `samples` (taken at `x0 + j*dx`) restricted to indices `[start, end)`.
pub fn find_peak(samples: &[f64], x0: f64, dx: f64, start: usize, end: usize) -> Option<Peak> {
    let end = end.min(samples.len());
    if start >= end {
        return None;
    }
    let (j, &ymax) = samples[start..end]
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, v)| (i + start, v))?;
    if j == 0 || j + 1 >= samples.len() {
        return Some(Peak { x: x0 + j as f64 * dx, value: ymax });
    }
    let (ym, y0, yp) = (samples[j - 1], samples[j], samples[j + 1]);
    let curvature = ym - 2.0 * y0 + yp;
    if curvature >= 0.0 {
        return Some(Peak { x: x0 + j as f64 * dx, value: y0 });
    }
    let offset = 0.5 * (ym - yp) / curvature;
    let value = y0 - 0.25 * (ym - yp) * offset;
    Some(Peak { x: x0 + (j as f64 + offset) * dx, value })
}

const D1: [f64; 3] = [3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];
const D2: [f64; 4] = [-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0];

/// Sixth-order central differences of order 1 or 2. The three samples
/// nearest each end fall back to second-order stencils and are less accurate.
pub fn central_derivative(values: &[Complex64], dx: f64, order: u8) -> Vec<Complex64> {
    let n = values.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    if n < 3 {
        return out;
    }
    for i in 0..n {
        let interior = i >= 3 && i + 3 < n;
        out[i] = match (order, interior) {
            (1, true) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, c) in D1.iter().enumerate() {
                    acc += *c * (values[i + k + 1] - values[i - k - 1]);
                }
                acc / dx
            }
            (2, true) => {
                let mut acc = D2[0] * values[i];
                for (k, c) in D2[1..].iter().enumerate() {
                    acc += *c * (values[i + k + 1] + values[i - k - 1]);
                }
                acc / (dx * dx)
            }
            (1, false) => {
                let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
                (values[b] - values[a]) / ((b - a) as f64 * dx)
            }
            (2, false) => {
                let c = i.clamp(1, n - 2);
                (values[c + 1] - 2.0 * values[c] + values[c - 1]) / (dx * dx)
            }
            _ => panic!("central_derivative supports order 1 or 2, got {order}"),
        };
    }
    out
}

/// `max|a - b| / max|b|`.
pub fn rel_linf(approx: &[Complex64], exact: &[Complex64]) -> f64 {
    let err = approx
        .iter()
        .zip(exact)
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).norm()));
    let scale = exact.iter().fold(0.0_f64, |m, b| m.max(b.norm()));
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

/// `||a - b||_2 / ||b||_2`.
pub fn rel_l2(approx: &[Complex64], exact: &[Complex64]) -> f64 {
    let err: f64 = approx.iter().zip(exact).map(|(a, b)| (a - b).norm_sqr()).sum();
    let scale: f64 = exact.iter().map(|b| b.norm_sqr()).sum();
    if scale == 0.0 {
        err.sqrt()
    } else {
        (err / scale).sqrt()
    }
}

/// Real-valued convenience for [`rel_l2`].
pub fn rel_l2_real(approx: &[f64], exact: &[f64]) -> f64 {
    let err: f64 = approx.iter().zip(exact).map(|(a, b)| (a - b).powi(2)).sum();
    let scale: f64 = exact.iter().map(|b| b * b).sum();
    if scale == 0.0 {
        err.sqrt()
    } else {
        (err / scale).sqrt()
    }
}
