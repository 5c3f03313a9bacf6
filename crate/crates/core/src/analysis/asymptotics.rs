//! Residuals of the classical oscillatory main terms.
//!
//! A raw residual sampled at one degree can sit near a zero of its own
//! oscillation, so each grid point reports the largest residual over a window
//! of degrees that covers at least one full period of that oscillation.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::orthopoly::{jacobi_asymptotic, jacobi_eval_all, laguerre_asymptotic, laguerre_eval_all};

/// Degrees past n examined for the Jacobi residual envelope.
const JACOBI_WINDOW: usize = 16;

/// max_{n ≤ m ≤ n+16} |P_m^{(α,β)}(cos θ) − main_m(θ)| for each n in the grid.
pub fn jacobi_residual_envelope(alpha: f64, beta: f64, theta: f64, n_grid: &[usize]) -> Result<Vec<f64>> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(domain("jacobi_residual_envelope", format!("θ must lie in (0, π), got {theta}")));
    }
    let Some(&top) = n_grid.iter().max() else {
        return Ok(Vec::new());
    };
    let p = jacobi_eval_all(alpha, beta, top + JACOBI_WINDOW, theta.cos())?;
    n_grid
        .par_iter()
        .map(|&n| {
            (n.max(1)..=n + JACOBI_WINDOW).try_fold(0.0_f64, |m, k| {
                let main = jacobi_asymptotic(alpha, beta, k, theta)?.value();
                Ok(m.max((p[k] - main).abs()))
            })
        })
        .collect()
}

/// Degree window long enough for cos(2√(mx)) to complete a period.
fn laguerre_window(n: usize, x: f64) -> usize {
    (2.0 * std::f64::consts::PI * (n as f64 / x).sqrt()).ceil() as usize + 2
}

/// max_m |L_m^{(α)}(x) − main_m(x)| / m^{α/2} over m ∈ [n, n + 2π√(n/x) + 2], per grid point.
pub fn laguerre_residual_envelope(alpha: f64, x: f64, n_grid: &[usize]) -> Result<Vec<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("laguerre_residual_envelope", format!("x must be positive, got {x}")));
    }
    let Some(&top) = n_grid.iter().max() else {
        return Ok(Vec::new());
    };
    let l = laguerre_eval_all(alpha, top + laguerre_window(top, x), x)?;
    n_grid
        .par_iter()
        .map(|&n| {
            (n.max(1)..=n + laguerre_window(n, x)).try_fold(0.0_f64, |m, k| {
                let main = laguerre_asymptotic(alpha, k, x)?.value();
                Ok(m.max((l[k] - main).abs() / (k as f64).powf(0.5 * alpha)))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::fit::{fit_growth_exponent, geometric_grid};

    #[test]
    fn jacobi_residual_is_lower_order() {
        let grid = geometric_grid(64, 512, 4);
        let env = jacobi_residual_envelope(0.5, 0.0, 1.1, &grid).unwrap();
        let fit = fit_growth_exponent(&grid, &env).unwrap();
        assert!(fit.slope < -1.2, "{}", fit.slope);
    }

    #[test]
    fn laguerre_residual_is_lower_order() {
        let grid = geometric_grid(64, 512, 4);
        let env = laguerre_residual_envelope(0.0, 1.0, &grid).unwrap();
        let fit = fit_growth_exponent(&grid, &env).unwrap();
        assert!(fit.slope < -0.5, "{}", fit.slope);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(jacobi_residual_envelope(0.0, 0.0, 0.0, &[10]).is_err());
        assert!(laguerre_residual_envelope(0.0, -1.0, &[10]).is_err());
        assert!(jacobi_residual_envelope(0.0, 0.0, 1.0, &[]).unwrap().is_empty());
    }
}
