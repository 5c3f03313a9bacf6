//! Fixtures shared by the criterion benchmarks.

use std::sync::Arc;

use summa_core::quadrature::{Panel, PanelFn};
use summa_core::{CoefficientSeries, CompositeOptions, FamilySpec, PanelFunction, Result};

/// Legendre and a skewed Jacobi pair, the two shapes the benches sweep.
pub fn jacobi_families() -> [(&'static str, FamilySpec); 2] {
    [
        ("legendre", FamilySpec::jacobi(0.0, 0.0).unwrap()),
        ("jacobi(0.5,-0.5)", FamilySpec::jacobi(0.5, -0.5).unwrap()),
    ]
}

/// |x| on [−1, 1], split at its kink.
pub fn abs_function() -> PanelFunction {
    let g: PanelFn = Arc::new(|x: f64| x.abs());
    PanelFunction::new(vec![Panel::new(-1.0, 0.0, g.clone()), Panel::new(0.0, 1.0, g)]).unwrap()
}

/// e^{−x} on the half line.
pub fn decaying_exp() -> PanelFunction {
    PanelFunction::single(0.0, f64::INFINITY, |x| (-x).exp()).unwrap()
}

pub fn opts() -> CompositeOptions {
    CompositeOptions {
        rel_tol: 1e-10,
        ..Default::default()
    }
}

/// Expansion of |x| in Legendre polynomials up to `n_max`.
pub fn abs_series(n_max: usize) -> Result<CoefficientSeries> {
    CoefficientSeries::from_function(&abs_function(), FamilySpec::jacobi(0.0, 0.0)?, n_max, &opts())
}
