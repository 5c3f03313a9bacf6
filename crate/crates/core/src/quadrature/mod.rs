//! Gauss rules, composite integration and expansion coefficients.

mod coefficients;
mod composite;
mod gauss;
mod panel;

pub use coefficients::{
    coefficients, jacobi_coefficient, jacobi_coefficients, laguerre_cutoff, laguerre_fn_coefficient,
    laguerre_fn_coefficients,
};
pub(crate) use coefficients::{pieces_for, segment_panels, sqrt_segments, sqrt_step, theta_segments, theta_step, theta_weight};
pub use composite::{integrate_scalar, integrate_segments, CompositeOptions, CompositeResult, Segment};
pub use gauss::{
    gauss_jacobi, gauss_legendre, gauss_rule, jacobi_zeros, laguerre_zeros, tridiagonal_eigen, MeasureTag,
    QuadratureRule,
};
pub use panel::{Panel, PanelFn, PanelFunction};

use crate::error::{domain, Error, Result};

/// ∫ f dμ with a fixed Gauss rule of the same size as `rule`.
///
/// A panel covering the whole support is integrated with `rule` itself. Other
/// panels get a K-point sub-rule mapped affinely onto the panel; the measure's
/// weight is folded into the integrand, except at a support endpoint where
/// its power (plus the panel's own exponent) moves into the sub-rule.
pub fn integrate(f: &PanelFunction, rule: &QuadratureRule) -> Result<f64> {
    let k = rule.len();
    let (lo, hi) = rule.measure.support();
    let (sa, sb) = f.support();
    if sa < lo || sb > hi {
        return Err(domain(
            "integrate",
            format!("support [{sa}, {sb}] is not inside [{lo}, {hi}]"),
        ));
    }
    let mut total = 0.0;
    for p in f.panels() {
        let v = match rule.measure {
            MeasureTag::JacobiMeasure { alpha, beta } => jacobi_panel(p, alpha, beta, rule, k)?,
            MeasureTag::LaguerreMeasure { alpha } => half_line_panel(p, Some(alpha), k)?,
            MeasureTag::HalfLineLebesgue => half_line_panel(p, None, k)?,
        };
        if !v.is_finite() {
            return Err(Error::Panel {
                a: p.a,
                b: p.b,
                source: Box::new(domain("integrate", "integrand is not finite")),
            });
        }
        total += v;
    }
    Ok(total)
}

fn jacobi_panel(p: &Panel, alpha: f64, beta: f64, rule: &QuadratureRule, k: usize) -> Result<f64> {
    let full = p.a == -1.0 && p.b == 1.0 && p.left_exp == 0.0 && p.right_exp == 0.0;
    if full {
        return Ok(rule.apply(|x| (p.f)(x)));
    }
    let half = 0.5 * (p.b - p.a);
    let right = p.right_exp + if p.b == 1.0 { alpha } else { 0.0 };
    let left = p.left_exp + if p.a == -1.0 { beta } else { 0.0 };
    let sub = gauss_jacobi(k, right, left)?;
    Ok(sub.apply(|u| {
        let x = p.a + (u + 1.0) * half;
        let mut v = (p.f)(x) * half;
        if p.right_exp != 0.0 {
            v /= (1.0 - u).powf(p.right_exp);
        }
        if p.left_exp != 0.0 {
            v /= (1.0 + u).powf(p.left_exp);
        }
        v *= if p.b == 1.0 { half.powf(alpha) } else { (1.0 - x).powf(alpha) };
        v *= if p.a == -1.0 { half.powf(beta) } else { (1.0 + x).powf(beta) };
        v
    }))
}

/// Panel on [0, ∞) against e^{−x} x^α dx (`Some(α)`) or dx (`None`).
fn half_line_panel(p: &Panel, alpha: Option<f64>, k: usize) -> Result<f64> {
    let weight = |x: f64| match alpha {
        Some(a) => (-x).exp() * if a == 0.0 { 1.0 } else { x.powf(a) },
        None => 1.0,
    };
    let at_zero = p.a == 0.0;
    let a_pow = if at_zero { alpha.unwrap_or(0.0) } else { 0.0 };
    if p.b.is_infinite() {
        // y = x − a, rule for e^{−y} y^{s}
        let s = p.left_exp + a_pow;
        let sub = gauss_rule(MeasureTag::LaguerreMeasure { alpha: s }, k)?;
        return Ok(sub.apply(|y| {
            let x = p.a + y;
            let mut v = (p.f)(x) * y.exp();
            if p.left_exp != 0.0 {
                v /= y.powf(p.left_exp);
            }
            if at_zero {
                v * alpha.map_or(1.0, |_| (-x).exp())
            } else {
                v * weight(x)
            }
        }));
    }
    let half = 0.5 * (p.b - p.a);
    let sub = gauss_jacobi(k, p.right_exp, p.left_exp + a_pow)?;
    Ok(sub.apply(|u| {
        let x = p.a + (u + 1.0) * half;
        let mut v = (p.f)(x) * half;
        if p.right_exp != 0.0 {
            v /= (1.0 - u).powf(p.right_exp);
        }
        if p.left_exp != 0.0 {
            v /= (1.0 + u).powf(p.left_exp);
        }
        if at_zero {
            if let Some(a) = alpha {
                v *= (-x).exp() * half.powf(a);
            }
            v
        } else {
            v * weight(x)
        }
    }))
}
