//! Exact dense polynomials and the higher-order Hermite family
//! `H_n^(p)(x, λ) = exp(λ ∂ₓ^p) xⁿ`.
//!
//! `p = 2` gives the heat polynomials, `p = 3` the Airy polynomials.
//! Coefficients are arbitrary-precision rationals, so every identity in this
//! module is checked with exact equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::special_fn::ai;

/// Default ceiling on polynomial degree for the constructors below.
pub const MAX_DEGREE: usize = 30;

/// Dense polynomial with exact rational coefficients in ascending degree.
///
/// The trailing coefficient is always nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyDense {
    coeffs: Vec<BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact binary value of a finite float.
pub fn rational_from_f64(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::domain(format!("{v} is not a finite number")))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl PolyDense {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `xⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// `x · p(x)`.
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// `exp(λ ∂ₓ^p) self = Σ_k λ^k ∂^{pk} self / k!`; the series terminates.
    pub fn exp_derivative(&self, order: usize, lambda: &BigRational) -> Self {
        assert!(order >= 1, "derivative order must be positive");
        let mut total = self.clone();
        let mut term = self.clone();
        let mut k = 1usize;
        loop {
            term = term
                .nth_derivative(order)
                .scale(&(lambda / BigRational::from_integer(k.into())));
            if term.is_zero() {
                return total;
            }
            total = total.add(&term);
            k += 1;
        }
    }

    /// Horner evaluation in double precision.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Largest coefficient difference, as a float (exactly 0 for equal polynomials).
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let d = self.sub(other);
        d.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for PolyDense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `H_n^(p)(x, λ) = n! Σ_{r=0}^{⌊n/p⌋} x^{n-pr} λ^r / ((n-pr)! r!)`.
pub fn hermite_higher(n: usize, p: usize, lambda: &BigRational) -> Result<PolyDense> {
    if p < 2 {
        return Err(Error::domain(format!("Hermite order p must be >= 2, got {p}")));
    }
    if n > MAX_DEGREE {
        return Err(Error::domain(format!("degree {n} exceeds the maximum {MAX_DEGREE}")));
    }
    let n_fact = factorial(n);
    let mut coeffs = vec![BigRational::zero(); n + 1];
    let mut lambda_pow = BigRational::one();
    for r in 0..=n / p {
        let k = n - p * r;
        let denom = factorial(k) * factorial(r);
        coeffs[k] = &lambda_pow * BigRational::new(n_fact.clone(), denom);
        lambda_pow *= lambda;
    }
    Ok(PolyDense::from_coeffs(coeffs))
}

/// Signed-degree front door for callers that may pass negative `n`.
pub fn hermite_higher_checked(n: i64, p: i64, lambda: &BigRational) -> Result<PolyDense> {
    let n = usize::try_from(n).map_err(|_| Error::domain(format!("degree must be >= 0, got {n}")))?;
    let p = usize::try_from(p).map_err(|_| Error::domain(format!("order must be >= 2, got {p}")))?;
    hermite_higher(n, p, lambda)
}

/// Airy polynomial `ai_n(x, t) = H_n^(3)(x, t)`.
pub fn airy_polynomial(n: usize, t: &BigRational) -> Result<PolyDense> {
    hermite_higher(n, 3, t)
}

/// Evaluates `ai_n(x, t) = ∫ Ai(σ) (x + ∛(3t) σ)ⁿ dσ` by quadrature.
///
/// The moments of `Ai` only exist in the Abel sense, so the oscillatory
/// side is apodized with `exp(-(σ/width)^8)`; `width = 30` reproduces the
/// low exact moments to about 1e-7 relative.
pub fn airy_polynomial_quadrature(n: usize, t: f64, xs: &[f64], width: f64) -> Result<Vec<f64>> {
    if !(t.is_finite() && width > 0.0) {
        return Err(Error::domain("need finite t and a positive apodization width"));
    }
    let moments = apodized_airy_moments(n, width);
    let gamma = (3.0 * t).cbrt();
    Ok(xs
        .iter()
        .map(|&x| {
            // Σ_k C(n,k) x^{n-k} γ^k M_k
            let mut binom = 1.0;
            let mut acc = 0.0;
            for (k, m) in moments.iter().enumerate() {
                acc += binom * x.powi((n - k) as i32) * gamma.powi(k as i32) * m;
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            acc
        })
        .collect())
}

/// `M_k = ∫ Ai(σ) σ^k w(σ) dσ` for `k <= n`, with the left-sided window `w`.
pub fn apodized_airy_moments(n: usize, width: f64) -> Vec<f64> {
    let lo = -1.6 * width;
    let hi = 14.0;
    let panel = 0.25;
    let panels = ((hi - lo) / panel).ceil() as usize;
    let gl = GaussLegendre::new(20);
    let mut moments = vec![0.0; n + 1];
    for j in 0..panels {
        let a = lo + j as f64 * panel;
        let b = (a + panel).min(hi);
        for (k, m) in moments.iter_mut().enumerate() {
            *m += gl.integrate(a, b, |s: f64| {
                let w = if s < 0.0 { (-(s / width).powi(8)).exp() } else { 1.0 };
                ai(s) * w * s.powi(k as i32)
            });
        }
    }
    moments
}

/// Outcome of the raising/lowering checks at one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceEntry {
    pub n: usize,
    /// `H_{n+1} = (x + m t ∂^{m-1}) H_n`.
    pub raising: bool,
    /// `∂ H_n = n H_{n-1}`; vacuously true at `n = 0`.
    pub lowering: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub p: usize,
    /// Index used in the raising multiplier `m t ∂^{m-1}`.
    pub multiplier_index: usize,
    pub entries: Vec<RecurrenceEntry>,
}

impl RecurrenceReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.raising && e.lowering)
    }
}

/// Raising operator `x + m t ∂^{m-1}` applied to `poly`.
pub fn raise(poly: &PolyDense, m: usize, t: &BigRational) -> PolyDense {
    let diffusive = poly
        .nth_derivative(m - 1)
        .scale(&(t * BigRational::from_integer(m.into())));
    poly.mul_x().add(&diffusive)
}

/// Checks the raising and lowering relations of `H_n^(p)(x, t)` for `n <= n_max`.
pub fn verify_recurrences(n_max: usize, p: usize, t: &BigRational) -> Result<RecurrenceReport> {
    verify_recurrences_with_index(n_max, p, p, t)
}

/// As [`verify_recurrences`] but with an arbitrary index `m` in the raising multiplier.
/// Only `m = p` is expected to pass; other values let the report demonstrate that.
pub fn verify_recurrences_with_index(
    n_max: usize,
    p: usize,
    m: usize,
    t: &BigRational,
) -> Result<RecurrenceReport> {
    if m < 2 {
        return Err(Error::domain(format!("multiplier index must be >= 2, got {m}")));
    }
    if n_max + 1 > MAX_DEGREE {
        return Err(Error::domain(format!("n_max {n_max} exceeds the maximum degree")));
    }
    let family: Vec<PolyDense> = (0..=n_max + 1)
        .map(|n| hermite_higher(n, p, t))
        .collect::<Result<_>>()?;
    let entries = (0..=n_max)
        .map(|n| {
            let raising = raise(&family[n], m, t) == family[n + 1];
            let lowering = n == 0
                || family[n].derivative()
                    == family[n - 1].scale(&BigRational::from_integer(n.into()));
            RecurrenceEntry { n, raising, lowering }
        })
        .collect();
    Ok(RecurrenceReport { p, multiplier_index: m, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let t = rational(3, 7);
        assert_eq!(
            hermite_higher(2, 2, &t).unwrap(),
            PolyDense::from_coeffs(vec![rational(6, 7), rational(0, 1), rational(1, 1)])
        );
        assert_eq!(
            hermite_higher(3, 3, &t).unwrap(),
            PolyDense::from_coeffs(vec![rational(18, 7), rational(0, 1), rational(0, 1), rational(1, 1)])
        );
        for n in 0..4 {
            assert_eq!(hermite_higher(n, 4, &t).unwrap(), PolyDense::monomial(n));
        }
    }

    #[test]
    fn domain_errors() {
        let t = rational(1, 1);
        assert!(hermite_higher(2, 1, &t).is_err());
        assert!(hermite_higher(MAX_DEGREE + 1, 2, &t).is_err());
        assert!(hermite_higher_checked(-1, 2, &t).is_err());
        assert!(hermite_higher_checked(2, -3, &t).is_err());
    }

    #[test]
    fn airy_low_orders() {
        let t = rational(-5, 2);
        assert_eq!(airy_polynomial(0, &t).unwrap(), PolyDense::one());
        assert_eq!(airy_polynomial(1, &t).unwrap(), PolyDense::monomial(1));
        assert_eq!(airy_polynomial(3, &t).unwrap(), PolyDense::from_integers(&[-15, 0, 0, 1]));
    }

    #[test]
    fn lowest_lowering_relation() {
        let t = rational(1, 1);
        let ai1 = airy_polynomial(1, &t).unwrap();
        assert_eq!(ai1.derivative(), airy_polynomial(0, &t).unwrap());
    }

    #[test]
    fn display_is_readable() {
        let p = PolyDense::from_coeffs(vec![rational(-1, 2), rational(0, 1), rational(3, 1), rational(1, 1)]);
        assert_eq!(p.to_string(), "x^3 + 3*x^2 - 1/2");
        assert_eq!(PolyDense::zero().to_string(), "0");
    }

    #[test]
    fn mismatched_multiplier_index_fails() {
        let t = rational(1, 1);
        let report = verify_recurrences_with_index(6, 3, 2, &t).unwrap();
        assert!(!report.all_pass());
        assert!(report.entries.iter().all(|e| e.lowering));
    }

    #[test]
    fn apodized_moments_match_exact_values() {
        // ∫ Ai σ^k dσ = k!/(3^{k/3} (k/3)!) for k ≡ 0 (mod 3), else 0.
        let m = apodized_airy_moments(6, 30.0);
        let exact = [1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 40.0];
        for (k, (got, want)) in m.iter().zip(exact).enumerate() {
            assert!((got - want).abs() < 1e-5, "M_{k} = {got}, want {want}");
        }
    }
}
