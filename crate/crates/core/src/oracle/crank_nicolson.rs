//! Crank-Nicolson on `∂ₜu = D(t)∂ₓ²u + P(t)xu` with zero Dirichlet data.

use num_complex::Complex64;

use super::{edge_check, OracleConfig};
use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Heat equation `∂ₜF = α(t)∂ₓ²F + β(t)xF`; coefficients sampled at step midpoints.
pub fn crank_nicolson_heat(
    f0: &GridFunction,
    beta_of_t: &dyn Fn(f64) -> f64,
    alpha_of_t: &dyn Fn(f64) -> f64,
    t_final: f64,
    cfg: &OracleConfig,
) -> Result<GridFunction> {
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::domain(format!("t_final must be >= 0, got {t_final}")));
    }
    let coeffs = |t: f64| (Complex64::new(alpha_of_t(t), 0.0), Complex64::new(beta_of_t(t), 0.0));
    run(f0, &coeffs, t_final, cfg)
}

/// Schrödinger equation `i∂_τΨ = -∂ₓ²Ψ + b(τ)xΨ`, a non-periodic cross-check
/// for the split-step solver.
pub fn crank_nicolson_schrodinger(
    f0: &GridFunction,
    b_of_tau: &dyn Fn(f64) -> f64,
    tau_final: f64,
    cfg: &OracleConfig,
) -> Result<GridFunction> {
    if !tau_final.is_finite() {
        return Err(Error::domain("tau_final must be finite"));
    }
    let i = Complex64::new(0.0, 1.0);
    let coeffs = |t: f64| (i, -i * b_of_tau(t));
    run(f0, &coeffs, tau_final, cfg)
}

fn run(
    f0: &GridFunction,
    coeffs: &dyn Fn(f64) -> (Complex64, Complex64),
    t_final: f64,
    cfg: &OracleConfig,
) -> Result<GridFunction> {
    cfg.validate()?;
    cfg.check_grid(f0)?;
    if t_final == 0.0 {
        return Ok(f0.clone());
    }
    let n = f0.len();
    let dx = f0.dx();
    let xs: Vec<f64> = f0.xs().collect();
    let (steps, dt) = cfg.steps(t_final);
    let mut u = f0.values().to_vec();
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    let mut diag = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); n];
    let check_every = (steps / 20).max(1);

    for step in 0..steps {
        let t_mid = (step as f64 + 0.5) * dt;
        let (d, p) = coeffs(t_mid);
        let off = d / (dx * dx) * (0.5 * dt);
        for j in 0..n {
            let l_jj = -2.0 * d / (dx * dx) + p * xs[j];
            let left = if j > 0 { u[j - 1] } else { Complex64::new(0.0, 0.0) };
            let right = if j + 1 < n { u[j + 1] } else { Complex64::new(0.0, 0.0) };
            rhs[j] = u[j] * (1.0 + 0.5 * dt * l_jj) + off * (left + right);
            diag[j] = 1.0 - 0.5 * dt * l_jj;
        }
        thomas(-off, &diag, -off, &mut rhs, &mut scratch);
        std::mem::swap(&mut u, &mut rhs);
        if (step + 1) % check_every == 0 || step + 1 == steps {
            edge_check(&u, (step + 1) as f64 * dt)?;
        }
    }
    f0.with_values(u)
}

/// Solves a tridiagonal system with constant off-diagonals `lower`, `upper`.
/// The solution overwrites `rhs`.
fn thomas(lower: Complex64, diag: &[Complex64], upper: Complex64, rhs: &mut [Complex64], c_prime: &mut [Complex64]) {
    let n = diag.len();
    c_prime[0] = upper / diag[0];
    rhs[0] /= diag[0];
    for j in 1..n {
        let m = diag[j] - lower * c_prime[j - 1];
        c_prime[j] = upper / m;
        rhs[j] = (rhs[j] - lower * rhs[j - 1]) / m;
    }
    for j in (0..n - 1).rev() {
        let next = rhs[j + 1];
        rhs[j] -= c_prime[j] * next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomas_solves_a_small_system() {
        let c = |v: f64| Complex64::new(v, 0.0);
        // [2 1 0; 1 3 1; 0 1 4] x = [3, 5, 5] -> x = [1, 1, 1]
        let diag = [c(2.0), c(3.0), c(4.0)];
        let mut rhs = [c(3.0), c(5.0), c(5.0)];
        let mut scratch = [c(0.0); 3];
        thomas(c(1.0), &diag, c(1.0), &mut rhs, &mut scratch);
        for v in rhs {
            assert!((v - 1.0).norm() < 1e-15);
        }
    }
}
