//! Expansion coefficients c_n(f) = ∫ f φ_n dμ for panel functions.
//!
//! Jacobi integrals run in θ with x = cos θ. The weight becomes
//! (2 sin²(θ/2))^α (2 cos²(θ/2))^β sin θ, the endpoint singularities turn into
//! powers of θ and π − θ, and P_n(cos θ) oscillates at a uniform rate.
//! Laguerre integrals run in t = √x for the same reason: ℒ_n(t²) oscillates
//! like cos(2√n t) and x^{α/2} becomes t^α.

use crate::error::{domain, Error, Result};
use crate::orthopoly::{laguerre_fn_fill, FamilySpec, JacobiTable};

use super::composite::{integrate_segments, CompositeOptions, Segment};
use super::panel::PanelFunction;

/// Right end of the compact window used for Laguerre functions up to degree n.
pub fn laguerre_cutoff(alpha: f64, n: usize) -> f64 {
    8.0 * n as f64 + 8.0 * alpha + 16.0
}

/// Largest θ-width of a piece for integrands oscillating up to degree n.
pub(crate) fn theta_step(n: usize) -> f64 {
    (4.0 / (n as f64 + 1.0)).min(0.25)
}

/// Largest t-width of a piece for ℒ_n(t²).
pub(crate) fn sqrt_step(n: usize) -> f64 {
    (2.0 / (n as f64 + 1.0).sqrt()).min(0.5)
}

pub(crate) fn pieces_for(len: f64, step: f64) -> usize {
    ((len / step).ceil() as usize).max(1)
}

/// (2 sin²(θ/2))^α (2 cos²(θ/2))^β sin θ, i.e. (1−x)^α (1+x)^β dx/dθ.
#[inline]
pub(crate) fn theta_weight(alpha: f64, beta: f64, theta: f64) -> f64 {
    let (s, c) = (0.5 * theta).sin_cos();
    let mut w = theta.sin();
    if alpha != 0.0 {
        w *= (2.0 * s * s).powf(alpha);
    }
    if beta != 0.0 {
        w *= (2.0 * c * c).powf(beta);
    }
    w
}

/// θ-segments for the x-panels of `f`, with endpoint exponents in θ.
///
/// `exp_scale` multiplies the panel exponents (use p when integrating |f|^p),
/// and `(wa, wb)` are the powers of (1−x) and (1+x) in the integrand's weight.
pub(crate) fn theta_segments(f: &PanelFunction, exp_scale: f64, wa: f64, wb: f64, step: f64) -> Result<Vec<Segment>> {
    f.panels()
        .iter()
        .map(|p| {
            if p.a < -1.0 || p.b > 1.0 {
                return Err(domain("jacobi_coefficient", format!("panel [{}, {}] leaves [−1, 1]", p.a, p.b)));
            }
            let (lo, hi) = (p.b.acos(), p.a.acos());
            let left = if p.b == 1.0 {
                2.0 * exp_scale * p.right_exp + 2.0 * wa + 1.0
            } else {
                exp_scale * p.right_exp
            };
            let right = if p.a == -1.0 {
                2.0 * exp_scale * p.left_exp + 2.0 * wb + 1.0
            } else {
                exp_scale * p.left_exp
            };
            Ok(Segment::new(lo, hi, pieces_for(hi - lo, step)).with_exponents(left, right))
        })
        .collect()
}

/// t-segments (t = √x) for the finite x-panels of `f`; infinite panels are cut at `x_end`.
///
/// `x_pow` is the power of x carried by the integrand's weight near 0 beyond
/// what the panel exponent says (α/2 per Laguerre function factor).
pub(crate) fn sqrt_segments(f: &PanelFunction, exp_scale: f64, x_pow: f64, x_end: f64, step: f64) -> Result<Vec<Segment>> {
    let mut out = Vec::new();
    for p in f.panels() {
        if p.a < 0.0 {
            return Err(domain("laguerre_fn_coefficient", format!("panel [{}, {}] leaves [0, ∞)", p.a, p.b)));
        }
        let b = p.b.min(x_end);
        if b <= p.a {
            continue;
        }
        let (lo, hi) = (p.a.sqrt(), b.sqrt());
        let left = if p.a == 0.0 {
            2.0 * exp_scale * p.left_exp + 2.0 * x_pow + 1.0
        } else {
            exp_scale * p.left_exp
        };
        let right = if b == p.b { exp_scale * p.right_exp } else { 0.0 };
        out.push(Segment::new(lo, hi, pieces_for(hi - lo, step)).with_exponents(left, right));
    }
    Ok(out)
}

/// Maps segment indices back to panel indices (segments skip empty panels).
pub(crate) fn segment_panels(f: &PanelFunction, x_end: f64) -> Vec<usize> {
    f.panels()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.b.min(x_end) > p.a)
        .map(|(i, _)| i)
        .collect()
}

fn attach_panel(err: Error, f: &PanelFunction) -> Error {
    match err {
        Error::Convergence { .. } => {
            let (a, b) = f.support();
            Error::Panel {
                a,
                b,
                source: Box::new(err),
            }
        }
        other => other,
    }
}

/// c_0(f), …, c_{n_max}(f) against P_n^{(α,β)} and dμ = (1−x)^α(1+x)^β dx.
pub fn jacobi_coefficients(
    f: &PanelFunction,
    alpha: f64,
    beta: f64,
    n_max: usize,
    opts: &CompositeOptions,
) -> Result<Vec<f64>> {
    FamilySpec::jacobi(alpha, beta)?;
    let segs = theta_segments(f, 1.0, alpha, beta, theta_step(n_max))?;
    let table = JacobiTable::new(alpha, beta, n_max)?;
    let panels = f.panels();
    let r = integrate_segments(&segs, n_max + 1, opts, |s, theta, out| {
        let x = theta.cos();
        let fx = (panels[s].f)(x);
        if fx == 0.0 {
            out.iter_mut().for_each(|v| *v = 0.0);
            return;
        }
        table.fill(x, out);
        let scale = fx * theta_weight(alpha, beta, theta);
        out.iter_mut().for_each(|v| *v *= scale);
    })
    .map_err(|e| attach_panel(e, f))?;
    Ok(r.values)
}

/// c_n(f) = ∫ f P_n^{(α,β)} dμ for a Jacobi family.
pub fn jacobi_coefficient(f: &PanelFunction, family: FamilySpec, n: usize, rel_tol: f64) -> Result<f64> {
    let FamilySpec::Jacobi { alpha, beta } = family else {
        return Err(domain("jacobi_coefficient", "family must be Jacobi"));
    };
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    let segs = theta_segments(f, 1.0, alpha, beta, theta_step(n))?;
    let panels = f.panels();
    let r = integrate_segments(&segs, 1, &opts, |s, theta, out| {
        let x = theta.cos();
        let p = crate::orthopoly::jacobi_eval(alpha, beta, n, x).unwrap_or(f64::NAN);
        out[0] = (panels[s].f)(x) * p * theta_weight(alpha, beta, theta);
    })
    .map_err(|e| attach_panel(e, f))?;
    Ok(r.values[0])
}

/// c_0(f), …, c_{n_max}(f) against the orthonormal Laguerre functions ℒ_n^α on [0, ∞).
///
/// Panels extending to ∞ are integrated up to the Laguerre cutoff and then in
/// doubling chunks until a chunk contributes less than the tolerance.
pub fn laguerre_fn_coefficients(f: &PanelFunction, alpha: f64, n_max: usize, opts: &CompositeOptions) -> Result<Vec<f64>> {
    FamilySpec::laguerre(alpha)?;
    let (_, sup_hi) = f.support();
    let x_end = if sup_hi.is_finite() {
        sup_hi
    } else {
        let last_finite = f.panels().iter().map(|p| if p.b.is_finite() { p.b } else { p.a }).fold(0.0, f64::max);
        laguerre_cutoff(alpha, n_max).max(2.0 * last_finite)
    };
    let mut total = laguerre_window(f, alpha, n_max, 0.0, x_end, opts)?;
    if sup_hi.is_finite() {
        return Ok(total);
    }
    let mut lo = x_end;
    for _ in 0..40 {
        let chunk = laguerre_window(f, alpha, n_max, lo, 2.0 * lo, opts)?;
        let mut small = true;
        for (t, c) in total.iter_mut().zip(&chunk) {
            *t += c;
            if c.abs() > opts.rel_tol * t.abs() + opts.abs_floor {
                small = false;
            }
        }
        if small {
            return Ok(total);
        }
        lo *= 2.0;
    }
    Err(Error::Convergence {
        doublings: 40,
        previous: lo,
        last: 2.0 * lo,
    })
}

/// Coefficients restricted to the x-window [x_lo, x_hi].
fn laguerre_window(f: &PanelFunction, alpha: f64, n_max: usize, x_lo: f64, x_hi: f64, opts: &CompositeOptions) -> Result<Vec<f64>> {
    let clipped: Vec<_> = f
        .panels()
        .iter()
        .filter(|p| p.b > x_lo && p.a < x_hi)
        .map(|p| {
            let mut q = p.clone();
            if q.a < x_lo {
                q.a = x_lo;
                q.left_exp = 0.0;
            }
            if q.b > x_hi {
                q.b = x_hi;
                q.right_exp = 0.0;
            }
            q
        })
        .collect();
    if clipped.is_empty() {
        return Ok(vec![0.0; n_max + 1]);
    }
    let g = PanelFunction::new(clipped)?;
    let segs = sqrt_segments(&g, 1.0, 0.5 * alpha, x_hi, sqrt_step(n_max))?;
    let map = segment_panels(&g, x_hi);
    let panels = g.panels();
    let r = integrate_segments(&segs, n_max + 1, opts, |s, t, out| {
        let x = t * t;
        let fx = (panels[map[s]].f)(x);
        if fx == 0.0 {
            out.iter_mut().for_each(|v| *v = 0.0);
            return;
        }
        laguerre_fn_fill(alpha, x, out);
        let scale = 2.0 * t * fx;
        out.iter_mut().for_each(|v| *v *= scale);
    })
    .map_err(|e| attach_panel(e, &g))?;
    Ok(r.values)
}

/// c_n(f) = ∫_0^∞ f ℒ_n^α dx.
pub fn laguerre_fn_coefficient(f: &PanelFunction, alpha: f64, n: usize, rel_tol: f64) -> Result<f64> {
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    Ok(laguerre_fn_coefficients(f, alpha, n, &opts)?[n])
}

/// All coefficients up to n_max for either family.
pub fn coefficients(f: &PanelFunction, family: FamilySpec, n_max: usize, opts: &CompositeOptions) -> Result<Vec<f64>> {
    match family {
        FamilySpec::Jacobi { alpha, beta } => jacobi_coefficients(f, alpha, beta, n_max, opts),
        FamilySpec::Laguerre { alpha } => laguerre_fn_coefficients(f, alpha, n_max, opts),
    }
}
