//! Weighted L^q norms of Jacobi polynomials and Laguerre functions, the
//! regimes they fall into, and the critical indices built from them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::orthopoly::{laguerre_fn_value, FamilySpec, JacobiTable};
use crate::quadrature::{
    integrate_scalar, jacobi_zeros, laguerre_cutoff, laguerre_zeros, pieces_for, sqrt_step, theta_step,
    CompositeOptions, Segment,
};

use super::fit::fit_growth_exponent;

/// Breakpoints closer than this to a window end are merged into it.
const MERGE: f64 = 1e-12;

fn check_q(op: &'static str, q: f64) -> Result<()> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(domain(op, format!("need 1 ≤ q < ∞, got {q}")));
    }
    Ok(())
}

/// Splits [lo, hi] at `zeros`, giving each zero exponent `zexp`; returns segments
/// with the ends' own exponents `lo_exp` / `hi_exp` unless a zero sits on them.
fn split_at_zeros(lo: f64, hi: f64, zeros: &[f64], zexp: f64, lo_exp: f64, hi_exp: f64, step: f64) -> Vec<Segment> {
    let mut lo_e = lo_exp;
    let mut hi_e = hi_exp;
    let mut inner = Vec::new();
    for &z in zeros {
        if (z - lo).abs() <= MERGE {
            lo_e += zexp;
        } else if (z - hi).abs() <= MERGE {
            hi_e += zexp;
        } else if z > lo && z < hi {
            inner.push(z);
        }
    }
    inner.sort_by(f64::total_cmp);
    let mut pts = vec![lo];
    pts.extend(inner);
    pts.push(hi);
    let last = pts.len() - 2;
    pts.windows(2)
        .enumerate()
        .map(|(i, w)| {
            let l = if i == 0 { lo_e } else { zexp };
            let r = if i == last { hi_e } else { zexp };
            Segment::new(w[0], w[1], pieces_for(w[1] - w[0], step)).with_exponents(l, r)
        })
        .collect()
}

/// ∫_{x_lo}^{x_hi} |P_n^{(α,β)}(x)|^q (1−x)^{wa} (1+x)^{wb} dx.
pub fn jacobi_abs_power(
    alpha: f64,
    beta: f64,
    n: usize,
    q: f64,
    (wa, wb): (f64, f64),
    (x_lo, x_hi): (f64, f64),
    rel_tol: f64,
) -> Result<f64> {
    FamilySpec::jacobi(alpha, beta)?;
    if !(-1.0 <= x_lo && x_lo < x_hi && x_hi <= 1.0) {
        return Err(domain("jacobi_abs_power", format!("bad window [{x_lo}, {x_hi}]")));
    }
    let (t_lo, t_hi) = (x_hi.acos(), x_lo.acos());
    let zeros: Vec<f64> = jacobi_zeros(alpha, beta, n)?.iter().map(|z| z.acos()).collect();
    let lo_exp = if x_hi == 1.0 { 2.0 * wa + 1.0 } else { 0.0 };
    let hi_exp = if x_lo == -1.0 { 2.0 * wb + 1.0 } else { 0.0 };
    let segs = split_at_zeros(t_lo, t_hi, &zeros, q, lo_exp, hi_exp, theta_step(n));
    let table = JacobiTable::new(alpha, beta, n.max(1))?;
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    integrate_scalar(&segs, &opts, |_, theta| {
        let (s, c) = (0.5 * theta).sin_cos();
        let mut w = theta.sin();
        if wa != 0.0 {
            w *= (2.0 * s * s).powf(wa);
        }
        if wb != 0.0 {
            w *= (2.0 * c * c).powf(wb);
        }
        table.eval(n, theta.cos()).abs().powf(q) * w
    })
}

/// (∫_0^1 |P_n^{(α,β)}(x) (1−x)^r|^q dx)^{1/q}.
pub fn jacobi_weighted_norm(family: FamilySpec, n: usize, q: f64, r: f64) -> Result<f64> {
    let FamilySpec::Jacobi { alpha, beta } = family else {
        return Err(domain("jacobi_weighted_norm", "family must be Jacobi"));
    };
    family.check_theorem_range()?;
    check_q("jacobi_weighted_norm", q)?;
    if !(r > -1.0 / q) {
        return Err(domain("jacobi_weighted_norm", format!("need r > −1/q, got r = {r}")));
    }
    let v = jacobi_abs_power(alpha, beta, n, q, (r * q, 0.0), (0.0, 1.0), 1e-8)?;
    Ok(v.powf(1.0 / q))
}

/// Norm of P_n in L^q(S, μ) for a window S = [x_lo, x_hi] ⊆ [−1, 1].
pub fn jacobi_restricted_norm(alpha: f64, beta: f64, n: usize, q: f64, window: (f64, f64), rel_tol: f64) -> Result<f64> {
    check_q("jacobi_restricted_norm", q)?;
    let v = jacobi_abs_power(alpha, beta, n, q, (alpha, beta), window, rel_tol)?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Degenerate {
            op: "jacobi_restricted_norm",
            detail: format!("‖P_{n}‖_q^q = {v}"),
        });
    }
    Ok(v.powf(1.0 / q))
}

/// ∫_0^{x_end} |ℒ_n^α(x)|^q dx in t = √x, with zeros as panel breaks.
fn laguerre_window(alpha: f64, n: usize, q: f64, x_lo: f64, x_end: f64, zeros: &[f64], opts: &CompositeOptions) -> Result<f64> {
    let (t_lo, t_hi) = (x_lo.sqrt(), x_end.sqrt());
    let zt: Vec<f64> = zeros.iter().map(|z| z.sqrt()).collect();
    let lo_exp = if x_lo == 0.0 { q * alpha + 1.0 } else { 0.0 };
    let segs = split_at_zeros(t_lo, t_hi, &zt, q, lo_exp, 0.0, sqrt_step(n));
    integrate_scalar(&segs, opts, |_, t| 2.0 * t * laguerre_fn_value(alpha, n, t * t).abs().powf(q))
}

/// ∫ |ℒ_n^α|^q over [0, x_end], or over [0, ∞) when `x_end` is None.
///
/// The infinite case integrates to the Laguerre cutoff and then over doubling
/// chunks until one contributes less than the tolerance.
pub fn laguerre_abs_power(alpha: f64, n: usize, q: f64, x_end: Option<f64>, rel_tol: f64) -> Result<f64> {
    FamilySpec::laguerre(alpha)?;
    let zeros = laguerre_zeros(alpha, n)?;
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    if let Some(end) = x_end {
        if !(end > 0.0) {
            return Err(domain("laguerre_abs_power", format!("window end must be positive, got {end}")));
        }
        return laguerre_window(alpha, n, q, 0.0, end, &zeros, &opts);
    }
    let mut lo = laguerre_cutoff(alpha, n);
    let mut total = laguerre_window(alpha, n, q, 0.0, lo, &zeros, &opts)?;
    for _ in 0..40 {
        let chunk = laguerre_window(alpha, n, q, lo, 2.0 * lo, &[], &opts)?;
        total += chunk;
        if chunk <= rel_tol * total {
            return Ok(total);
        }
        lo *= 2.0;
    }
    Err(Error::Convergence {
        doublings: 40,
        previous: total,
        last: lo,
    })
}

/// Norm of ℒ_n^α in L^q(S) for a finite window S = [x_lo, x_hi] ⊆ [0, ∞).
pub fn laguerre_restricted_norm(alpha: f64, n: usize, q: f64, (x_lo, x_hi): (f64, f64), rel_tol: f64) -> Result<f64> {
    FamilySpec::laguerre(alpha)?;
    check_q("laguerre_restricted_norm", q)?;
    if !(0.0 <= x_lo && x_lo < x_hi && x_hi.is_finite()) {
        return Err(domain("laguerre_restricted_norm", format!("bad window [{x_lo}, {x_hi}]")));
    }
    let zeros = laguerre_zeros(alpha, n)?;
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    let v = laguerre_window(alpha, n, q, x_lo, x_hi, &zeros, &opts)?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Degenerate {
            op: "laguerre_restricted_norm",
            detail: format!("‖ℒ_{n}‖_q^q = {v}"),
        });
    }
    Ok(v.powf(1.0 / q))
}

/// ‖ℒ_n^α‖_{L^q[0,∞)}; q = ∞ gives the maximum over a fine grid.
pub fn laguerre_fn_norm(alpha: f64, n: usize, q: f64) -> Result<f64> {
    if !(alpha > -0.5) {
        return Err(domain("laguerre_fn_norm", format!("need α > −1/2, got {alpha}")));
    }
    if q == f64::INFINITY {
        return Ok(laguerre_sup(alpha, n));
    }
    check_q("laguerre_fn_norm", q)?;
    Ok(laguerre_abs_power(alpha, n, q, None, 1e-9)?.powf(1.0 / q))
}

fn laguerre_sup(alpha: f64, n: usize) -> f64 {
    let t_end = laguerre_cutoff(alpha, n).sqrt();
    let h = sqrt_step(n) / 64.0;
    let steps = (t_end / h).ceil() as usize;
    (1..=steps).fold(0.0, |m, i| {
        let t = i as f64 * h;
        m.max(laguerre_fn_value(alpha, n, t * t).abs())
    })
}

/// Growth class of the weighted Jacobi norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiRegime {
    /// n^{−1/2}
    Flat,
    /// n^{−1/2} (log n)^{1/q}
    FlatLog,
    /// n^{α−2r−2/q}
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimePrediction<R> {
    pub regime: R,
    pub exponent: f64,
}

/// Regime of (∫_0^1 |P_n (1−x)^r|^q)^{1/q} from the threshold α/2 + 1/4 − 1/q.
pub fn predicted_jacobi_regime(alpha: f64, q: f64, r: f64) -> Result<RegimePrediction<JacobiRegime>> {
    if !(alpha > -0.5) {
        return Err(domain("predicted_jacobi_regime", format!("need α > −1/2, got {alpha}")));
    }
    check_q("predicted_jacobi_regime", q)?;
    if !(r > -1.0 / q) {
        return Err(domain("predicted_jacobi_regime", format!("need r > −1/q, got {r}")));
    }
    let threshold = 0.5 * alpha + 0.25 - 1.0 / q;
    let tol = 1e-12 * (1.0 + threshold.abs());
    Ok(if (r - threshold).abs() <= tol {
        RegimePrediction {
            regime: JacobiRegime::FlatLog,
            exponent: -0.5,
        }
    } else if r > threshold {
        RegimePrediction {
            regime: JacobiRegime::Flat,
            exponent: -0.5,
        }
    } else {
        RegimePrediction {
            regime: JacobiRegime::Growth,
            exponent: alpha - 2.0 * r - 2.0 / q,
        }
    })
}

/// Growth class of ‖ℒ_n^α‖_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LaguerreRegime {
    /// 1 ≤ q < 2: n^{1/q − 1/2}
    Low,
    /// q = 4: n^{−1/4} (log n)^{1/4}
    Critical,
    /// q > 4: n^{−1/q}
    High,
    /// 2 ≤ q < 4: no stated asymptotics.
    Unstated,
}

pub fn predicted_laguerre_regime(q: f64) -> Result<RegimePrediction<LaguerreRegime>> {
    if !(q >= 1.0) {
        return Err(domain("predicted_laguerre_regime", format!("need q ≥ 1, got {q}")));
    }
    Ok(if q < 2.0 {
        RegimePrediction {
            regime: LaguerreRegime::Low,
            exponent: 1.0 / q - 0.5,
        }
    } else if q == 4.0 {
        RegimePrediction {
            regime: LaguerreRegime::Critical,
            exponent: -0.25,
        }
    } else if q > 4.0 {
        RegimePrediction {
            regime: LaguerreRegime::High,
            exponent: -1.0 / q,
        }
    } else {
        RegimePrediction {
            regime: LaguerreRegime::Unstated,
            exponent: f64::NAN,
        }
    })
}

/// (p_c, p_c') = (4(α+1)/(2α+3), 4(α+1)/(2α+1)).
pub fn critical_indices(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > -0.5) {
        return Err(domain("critical_indices", format!("need α > −1/2, got {alpha}")));
    }
    let num = 4.0 * (alpha + 1.0);
    Ok((num / (2.0 * alpha + 3.0), num / (2.0 * alpha + 1.0)))
}

/// (2α+2)/p − (2α+3)/2 without range checks; positive exactly when p < p_c.
pub fn jacobi_delta_exponent(alpha: f64, p: f64) -> f64 {
    (2.0 * alpha + 2.0) / p - (2.0 * alpha + 3.0) / 2.0
}

/// Upper end of the divergent δ-range for Jacobi expansions in L^p, 1 ≤ p < p_c.
pub fn jacobi_delta_bound(alpha: f64, p: f64) -> Result<f64> {
    let (pc, _) = critical_indices(alpha)?;
    if !(p >= 1.0 && p < pc) {
        return Err(domain("jacobi_delta_bound", format!("need 1 ≤ p < p_c = {pc}, got {p}")));
    }
    Ok(jacobi_delta_exponent(alpha, p))
}

/// 1/4 − 1/p without range checks.
pub fn laguerre_delta_exponent(p: f64) -> f64 {
    0.25 - 1.0 / p
}

/// Upper end of the divergent δ-range for Laguerre expansions in L^p, p > 4.
pub fn laguerre_delta_bound(p: f64) -> Result<f64> {
    if !(p > 4.0) {
        return Err(domain("laguerre_delta_bound", format!("need p > 4, got {p}")));
    }
    Ok(laguerre_delta_exponent(p))
}

/// Norms over a degree grid with the fitted log–log slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormScan {
    pub family: FamilySpec,
    pub q: f64,
    /// Weight exponent (Jacobi only).
    pub r: Option<f64>,
    pub n_grid: Vec<usize>,
    pub values: Vec<f64>,
    pub fitted_slope: f64,
    pub slope_ci: f64,
}

fn check_grid(n_grid: &[usize]) -> Result<()> {
    if n_grid.windows(2).any(|w| w[1] <= w[0]) || n_grid.first() == Some(&0) {
        return Err(domain("norm scan", "grid must be positive and strictly increasing"));
    }
    Ok(())
}

/// Scans (∫_0^1 |P_n (1−x)^r|^q)^{1/q} over the grid.
pub fn jacobi_norm_scan(family: FamilySpec, q: f64, r: f64, n_grid: &[usize]) -> Result<NormScan> {
    check_grid(n_grid)?;
    let values = n_grid
        .par_iter()
        .map(|&n| jacobi_weighted_norm(family, n, q, r))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_growth_exponent(n_grid, &values)?;
    Ok(NormScan {
        family,
        q,
        r: Some(r),
        n_grid: n_grid.to_vec(),
        values,
        fitted_slope: fit.slope,
        slope_ci: fit.ci,
    })
}

/// Scans ‖ℒ_n^α‖_q over the grid.
pub fn laguerre_norm_scan(alpha: f64, q: f64, n_grid: &[usize]) -> Result<NormScan> {
    check_grid(n_grid)?;
    let family = FamilySpec::laguerre(alpha)?;
    let values = n_grid
        .par_iter()
        .map(|&n| laguerre_fn_norm(alpha, n, q))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_growth_exponent(n_grid, &values)?;
    Ok(NormScan {
        family,
        q,
        r: None,
        n_grid: n_grid.to_vec(),
        values,
        fitted_slope: fit.slope,
        slope_ci: fit.ci,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fam(a: f64, b: f64) -> FamilySpec {
        FamilySpec::jacobi(a, b).unwrap()
    }

    #[test]
    fn jacobi_norm_examples() {
        for &(r, q) in &[(0.0, 1.0), (0.5, 2.0), (-0.3, 2.0), (1.0, 3.5)] {
            let v = jacobi_weighted_norm(fam(0.5, 0.0), 0, q, r).unwrap();
            assert_relative_eq!(v, (1.0 / (r * q + 1.0)).powf(1.0 / q), max_relative = 1e-9);
        }
        let v = jacobi_weighted_norm(fam(0.0, 0.0), 1, 2.0, 0.0).unwrap();
        assert_relative_eq!(v, 1.0 / 3f64.sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn jacobi_norm_matches_fine_oracle() {
        // oracle: midpoint rule in θ on a very fine grid, smooth integrand for q = 2
        let (a, b, n, r) = (1.5, 0.5, 37, 0.25);
        let v = jacobi_weighted_norm(fam(a, b), n, 2.0, r).unwrap();
        let m = 400_000;
        let h = std::f64::consts::FRAC_PI_2 / m as f64;
        let s: f64 = (0..m)
            .map(|i| {
                let t = (i as f64 + 0.5) * h;
                let x = t.cos();
                let p = crate::orthopoly::jacobi_eval(a, b, n, x).unwrap();
                (p * (1.0 - x).powf(r)).powi(2) * t.sin()
            })
            .sum::<f64>()
            * h;
        assert_relative_eq!(v, s.sqrt(), max_relative = 1e-7);
    }

    #[test]
    fn jacobi_norm_rejects_out_of_range() {
        assert!(jacobi_weighted_norm(fam(0.0, 0.5), 4, 2.0, 0.0).is_err());
        assert!(jacobi_weighted_norm(fam(0.5, 0.0), 4, 0.5, 0.0).is_err());
        assert!(jacobi_weighted_norm(fam(0.5, 0.0), 4, 2.0, -0.6).is_err());
        assert!(jacobi_weighted_norm(FamilySpec::laguerre(0.0).unwrap(), 4, 2.0, 0.0).is_err());
    }

    #[test]
    fn laguerre_norm_examples() {
        assert_relative_eq!(laguerre_fn_norm(0.0, 0, 2.0).unwrap(), 1.0, max_relative = 1e-8);
        assert_relative_eq!(laguerre_fn_norm(0.0, 0, 1.0).unwrap(), 2.0, max_relative = 1e-8);
        for n in [1, 7, 40] {
            assert_relative_eq!(laguerre_fn_norm(0.5, n, 2.0).unwrap(), 1.0, max_relative = 1e-7);
        }
        // ℒ_0^0 = e^{−x/2} peaks at 1
        assert!((laguerre_fn_norm(0.0, 0, f64::INFINITY).unwrap() - 1.0).abs() < 1e-3);
        assert!(laguerre_fn_norm(-0.6, 3, 2.0).is_err());
    }

    #[test]
    fn regime_examples() {
        let p = predicted_jacobi_regime(0.5, 2.0, 0.5).unwrap();
        assert_eq!(p.regime, JacobiRegime::Flat);
        assert_eq!(p.exponent, -0.5);
        assert_eq!(predicted_jacobi_regime(0.5, 2.0, 0.0).unwrap().regime, JacobiRegime::FlatLog);
        let p = predicted_jacobi_regime(1.0, 4.0, 0.0).unwrap();
        assert_eq!(p.regime, JacobiRegime::Growth);
        assert!((p.exponent - 0.5).abs() < 1e-15);

        assert_eq!(predicted_laguerre_regime(1.5).unwrap().regime, LaguerreRegime::Low);
        assert_eq!(predicted_laguerre_regime(3.0).unwrap().regime, LaguerreRegime::Unstated);
        assert_eq!(predicted_laguerre_regime(4.0).unwrap().regime, LaguerreRegime::Critical);
        assert!((predicted_laguerre_regime(6.0).unwrap().exponent + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn critical_index_examples() {
        let (pc, pcc) = critical_indices(0.5).unwrap();
        assert_eq!((pc, pcc), (1.5, 3.0));
        let (pc, pcc) = critical_indices(0.0).unwrap();
        assert!((pc - 4.0 / 3.0).abs() < 1e-15 && pcc == 4.0);
        assert!(critical_indices(-0.5).is_err());
        for k in 0..100 {
            let a = -0.49 + 0.05 * k as f64;
            let (pc, pcc) = critical_indices(a).unwrap();
            assert!((1.0 / pc + 1.0 / pcc - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn delta_bound_examples() {
        assert_eq!(jacobi_delta_bound(0.5, 1.0).unwrap(), 1.0);
        let (pc, _) = critical_indices(0.5).unwrap();
        assert!(jacobi_delta_exponent(0.5, pc).abs() < 1e-15);
        assert!(jacobi_delta_bound(0.5, pc).is_err());
        assert_eq!(laguerre_delta_bound(8.0).unwrap(), 0.125);
        assert_eq!(laguerre_delta_exponent(4.0), 0.0);
        assert!(laguerre_delta_bound(4.0).is_err());
        assert!((laguerre_delta_exponent(1e12) - 0.25).abs() < 1e-11);
    }

    #[test]
    fn delta_bound_matches_conjugate_form() {
        for i in 0..20 {
            let alpha = -0.4 + 0.2 * i as f64;
            let (pc, _) = critical_indices(alpha).unwrap();
            for j in 0..10 {
                let p = 1.0 + (pc - 1.0) * j as f64 / 10.0;
                let q = p / (p - 1.0);
                let conj = alpha + 0.5 - (2.0 * alpha + 2.0) / q;
                let b = jacobi_delta_bound(alpha, p).unwrap();
                if p > 1.0 {
                    assert!((b - conj).abs() < 1e-12);
                }
                assert!(b > 0.0);
            }
            assert!(jacobi_delta_exponent(alpha, pc + 0.01) < 0.0);
        }
    }
}
