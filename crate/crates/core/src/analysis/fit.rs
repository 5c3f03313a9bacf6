use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Least-squares line through (ln n, ln value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    /// Twice the standard error of the slope.
    pub ci: f64,
}

/// Fits ln v ≈ slope · ln n + intercept over the upper half of the grid.
pub fn fit_growth_exponent(n_grid: &[usize], values: &[f64]) -> Result<GrowthFit> {
    if n_grid.len() != values.len() {
        return Err(domain("fit_growth_exponent", "grid and values differ in length"));
    }
    if n_grid.len() < 8 {
        return Err(Error::Degenerate {
            op: "fit_growth_exponent",
            detail: format!("need at least 8 grid points, got {}", n_grid.len()),
        });
    }
    if n_grid.contains(&0) || n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain("fit_growth_exponent", "grid must be positive and strictly increasing"));
    }
    if !values.iter().all(|&v| v > 0.0 && v.is_finite()) {
        return Err(domain("fit_growth_exponent", "values must be positive and finite"));
    }
    let start = n_grid.len() / 2;
    let xs: Vec<f64> = n_grid[start..].iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values[start..].iter().map(|v| v.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let se = (ssr / (m - 2.0) / sxx).sqrt();
    Ok(GrowthFit {
        slope,
        intercept,
        ci: 2.0 * se,
    })
}

/// Geometric grid from n_min to n_max with `per_octave` points per doubling (deduplicated).
pub fn geometric_grid(n_min: usize, n_max: usize, per_octave: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if n_min == 0 || n_max < n_min || per_octave == 0 {
        return out;
    }
    let ratio = 2f64.powf(1.0 / per_octave as f64);
    let mut v = n_min as f64;
    while v.round() as usize <= n_max {
        let n = v.round() as usize;
        if out.last() != Some(&n) {
            out.push(n);
        }
        v *= ratio;
    }
    if out.last() != Some(&n_max) {
        out.push(n_max);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_powers() {
        let grid: Vec<usize> = (1..=16).map(|k| 10 * k).collect();
        let sq: Vec<f64> = grid.iter().map(|&n| (n * n) as f64).collect();
        let fit = fit_growth_exponent(&grid, &sq).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-10);
        assert!(fit.ci < 1e-10);
        let inv: Vec<f64> = grid.iter().map(|&n| 3.0 / (n as f64).sqrt()).collect();
        let fit = fit_growth_exponent(&grid, &inv).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-10);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn log_factor_biases_slope_upward() {
        let grid = geometric_grid(64, 4096, 4);
        let v: Vec<f64> = grid.iter().map(|&n| (n as f64).powf(-0.5) * (n as f64).ln().sqrt()).collect();
        let fit = fit_growth_exponent(&grid, &v).unwrap();
        assert!(fit.slope > -0.5 && fit.slope < -0.3, "{}", fit.slope);
    }

    #[test]
    fn rejects_degenerate_input() {
        let grid: Vec<usize> = (1..=7).collect();
        assert!(matches!(fit_growth_exponent(&grid, &[1.0; 7]), Err(Error::Degenerate { .. })));
        let grid: Vec<usize> = (1..=8).collect();
        assert!(fit_growth_exponent(&grid, &[1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(fit_growth_exponent(&[1, 2, 3, 3, 4, 5, 6, 7], &[1.0; 8]).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = geometric_grid(64, 2048, 2);
        assert_eq!(g.first(), Some(&64));
        assert_eq!(g.last(), Some(&2048));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.len(), 11);
    }
}
