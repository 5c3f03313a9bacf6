use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quadrature::{integrate_scalar, CompositeOptions, Segment};

/// Finite union of disjoint closed intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(domain("IntervalSet", "empty set"));
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        for &(a, b) in &intervals {
            if !(a < b) || !a.is_finite() || !b.is_finite() {
                return Err(domain("IntervalSet", format!("bad interval [{a}, {b}]")));
            }
        }
        for w in intervals.windows(2) {
            if w[1].0 <= w[0].1 {
                return Err(domain("IntervalSet", "intervals must be disjoint"));
            }
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Total length |E|.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

/// χ̂_E(ξ) = ∫_E e^{−iξθ} dθ in closed form.
///
/// Written per interval as e^{−iξm}·2 sin(ξL/2)/ξ (midpoint m, length L), which
/// stays accurate as ξ → 0.
pub fn chi_hat(e: &IntervalSet, xi: f64) -> Complex64 {
    e.intervals
        .iter()
        .map(|&(a, b)| {
            let (m, len) = (0.5 * (a + b), b - a);
            let half = 0.5 * xi * len;
            let amp = if half.abs() < 1e-8 { len } else { 2.0 * half.sin() / xi };
            Complex64::from_polar(amp, -xi * m)
        })
        .sum()
}

/// |ĉ_n| = √(2 I_n / |E|) with I_n = ∫_E F_n(θ)² dθ, for each n in the grid.
///
/// Each integral is adaptive, starting from pieces of width about 4/n.
pub fn cantor_lebesgue_estimate<F>(f: F, e: &IntervalSet, n_grid: &[usize]) -> Result<Vec<f64>>
where
    F: Fn(usize, f64) -> f64 + Sync,
{
    let opts = CompositeOptions {
        rel_tol: 1e-9,
        ..Default::default()
    };
    let measure = e.measure();
    n_grid
        .par_iter()
        .map(|&n| {
            let step = (4.0 / (n as f64 + 1.0)).min(0.25);
            let segs: Vec<Segment> = e
                .intervals
                .iter()
                .map(|&(a, b)| Segment::new(a, b, ((b - a) / step).ceil() as usize))
                .collect();
            let i_n = integrate_scalar(&segs, &opts, |_, t| {
                let v = f(n, t);
                v * v
            })?;
            Ok((2.0 * i_n / measure).sqrt())
        })
        .collect()
}
