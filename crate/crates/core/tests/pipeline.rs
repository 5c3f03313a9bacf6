//! End-to-end runs through the public API: function → coefficients → means.

use std::sync::Arc;

use summa_core::quadrature::{Panel, PanelFn};
use summa_core::summability::{cesaro_mean, riesz_mean};
use summa_core::witness::{build_witness, WitnessOptions};
use summa_core::{CoefficientSeries, CompositeOptions, FamilySpec, PanelFunction, Witness};

fn opts() -> CompositeOptions {
    CompositeOptions {
        rel_tol: 1e-11,
        ..Default::default()
    }
}

#[test]
fn legendre_means_of_abs_converge() {
    let g: PanelFn = Arc::new(|x: f64| x.abs());
    let f = PanelFunction::new(vec![Panel::new(-1.0, 0.0, g.clone()), Panel::new(0.0, 1.0, g)]).unwrap();
    let s = CoefficientSeries::from_function(&f, FamilySpec::jacobi(0.0, 0.0).unwrap(), 256, &opts()).unwrap();
    let x = 0.4;
    let err = |n: usize| (cesaro_mean(&s, n, 1.0, x).unwrap() - x).abs();
    assert!(err(256) < err(32), "{} vs {}", err(256), err(32));
    assert!(err(256) < 1e-2);
    let r = riesz_mean(&s, 256.0, 1.0, x).unwrap();
    assert!((r - x).abs() < 1e-2);
}

#[test]
fn laguerre_coefficients_of_exponential() {
    // ∫ e^{−x} · e^{−x/2} L_n(x) dx is the Laplace transform of L_n at 3/2, i.e. (2/3)(1/3)^n
    let f = PanelFunction::single(0.0, f64::INFINITY, |x| (-x).exp()).unwrap();
    let s = CoefficientSeries::from_function(&f, FamilySpec::laguerre(0.0).unwrap(), 80, &opts()).unwrap();
    for (n, &c) in s.coefficients().iter().take(21).enumerate() {
        let want = 2.0 / 3.0 * 3f64.powi(-(n as i32));
        assert!((c - want).abs() < 1e-10, "n = {n}: {c} vs {want}");
    }
    let target = (-1f64).exp();
    assert!((cesaro_mean(&s, 30, 0.0, 1.0).unwrap() - target).abs() < 1e-10);
    // the order-½ mean carries an O(1/N) bias from the damped low-order terms
    let err = |n: usize| (cesaro_mean(&s, n, 0.5, 1.0).unwrap() - target).abs();
    assert!(err(80) < err(20) / 2.0, "{} vs {}", err(80), err(20));
}

#[test]
fn stored_witness_reproduces_its_series() {
    let opts = WitnessOptions::default();
    let w = build_witness(FamilySpec::jacobi(0.5, 0.0).unwrap(), 1.2, 0.4, 2, 8, &opts).unwrap();
    let back = Witness::from_json(&w.to_json()).unwrap();
    assert_eq!(back.degrees(), w.degrees());
    let (a, b) = (w.series(40).unwrap(), back.series(40).unwrap());
    for (x, y) in a.coefficients().iter().zip(b.coefficients()) {
        assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
    }
}
