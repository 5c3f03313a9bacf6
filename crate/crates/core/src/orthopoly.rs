//! Jacobi and Laguerre polynomials, normalised Laguerre functions, their L²
//! normalisers and the classical oscillatory main terms.
//!
//! Evaluation is by forward three-term recurrence, which is stable on the
//! oscillatory regions (x ∈ [−1, 1] for Jacobi, the Fejér range for Laguerre).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{ln_gamma_ratio_unchecked, log_gamma_unchecked};

/// Which orthogonal family an expansion uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    /// P_n^{(α,β)} on [−1, 1] with dμ = (1−x)^α (1+x)^β dx.
    Jacobi { alpha: f64, beta: f64 },
    /// Normalised Laguerre functions ℒ_n^α on [0, ∞) with Lebesgue measure.
    Laguerre { alpha: f64 },
}

impl FamilySpec {
    /// Jacobi family; evaluation only requires α, β > −1.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(domain("FamilySpec", format!("Jacobi needs α, β > −1, got ({alpha}, {beta})")));
        }
        Ok(FamilySpec::Jacobi { alpha, beta })
    }

    /// Laguerre family; α > −1.
    pub fn laguerre(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(domain("FamilySpec", format!("Laguerre needs α > −1, got {alpha}")));
        }
        Ok(FamilySpec::Laguerre { alpha })
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            FamilySpec::Jacobi { alpha, .. } | FamilySpec::Laguerre { alpha } => alpha,
        }
    }

    /// Checks the parameter range under which the divergence results hold:
    /// α ≥ β ≥ −1/2 with α > −1/2 (Jacobi), α > −1/2 (Laguerre).
    pub fn check_theorem_range(&self) -> Result<()> {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => {
                if alpha >= beta && beta >= -0.5 && alpha > -0.5 {
                    Ok(())
                } else {
                    Err(domain(
                        "theorem range",
                        format!("need α ≥ β ≥ −1/2 and α > −1/2, got ({alpha}, {beta})"),
                    ))
                }
            }
            FamilySpec::Laguerre { alpha } => {
                if alpha > -0.5 {
                    Ok(())
                } else {
                    Err(domain("theorem range", format!("need α > −1/2, got {alpha}")))
                }
            }
        }
    }

    /// Squared L² norm of the n-th basis function (1 for the orthonormal Laguerre functions).
    pub fn normalizer(&self, n: usize) -> f64 {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => jacobi_h_unchecked(alpha, beta, n),
            FamilySpec::Laguerre { .. } => 1.0,
        }
    }

    /// φ_0(x), …, φ_{n_max}(x) for this family's expansion basis.
    pub fn eval_all(&self, n_max: usize, x: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; n_max + 1];
        self.eval_into(x, &mut out)?;
        Ok(out)
    }

    /// Fills `out[n] = φ_n(x)` for n < out.len().
    pub fn eval_into(&self, x: f64, out: &mut [f64]) -> Result<()> {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => {
                check_jacobi_x(x)?;
                jacobi_fill(alpha, beta, x, out);
            }
            FamilySpec::Laguerre { alpha } => {
                check_laguerre_fn_x(alpha, x)?;
                laguerre_fn_fill(alpha, x, out);
            }
        }
        Ok(())
    }
}

/// Oscillatory main term `amplitude · cos(frequency · variable + phase_offset)`
/// with remainder of order n^{error_order}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticMainTerm {
    pub amplitude: f64,
    pub frequency: f64,
    pub variable: f64,
    pub phase_offset: f64,
    pub error_order: f64,
}

impl AsymptoticMainTerm {
    pub fn value(&self) -> f64 {
        self.amplitude * (self.frequency * self.variable + self.phase_offset).cos()
    }
}

fn check_jacobi_x(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain("jacobi_eval", format!("x must lie in [−1, 1], got {x}")))
    }
}

fn check_ab(op: &'static str, alpha: f64, beta: f64) -> Result<()> {
    if alpha > -1.0 && beta > -1.0 {
        Ok(())
    } else {
        Err(domain(op, format!("need α, β > −1, got ({alpha}, {beta})")))
    }
}

/// Recurrence coefficients for P_{n+1} = (a_n x + b_n) P_n − c_n P_{n−1}, n ≥ 1.
#[inline]
fn jacobi_step(alpha: f64, beta: f64, n: usize) -> (f64, f64, f64) {
    let n = n as f64;
    let s = 2.0 * n + alpha + beta;
    let denom = 2.0 * (n + 1.0) * (n + alpha + beta + 1.0) * s;
    let a = (s + 1.0) * (s + 2.0) * s / denom;
    let b = (s + 1.0) * (alpha * alpha - beta * beta) / denom;
    let c = 2.0 * (n + alpha) * (n + beta) * (s + 2.0) / denom;
    (a, b, c)
}

#[inline]
fn jacobi_p1(alpha: f64, beta: f64, x: f64) -> f64 {
    (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0
}

pub(crate) fn jacobi_fill(alpha: f64, beta: f64, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = jacobi_p1(alpha, beta, x);
    for n in 1..out.len() - 1 {
        let (a, b, c) = jacobi_step(alpha, beta, n);
        out[n + 1] = (a * x + b) * out[n] - c * out[n - 1];
    }
}

/// P_n^{(α,β)}(x) in Szegő's normalisation.
pub fn jacobi_eval(alpha: f64, beta: f64, n: usize, x: f64) -> Result<f64> {
    check_ab("jacobi_eval", alpha, beta)?;
    check_jacobi_x(x)?;
    if n == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, jacobi_p1(alpha, beta, x));
    for k in 1..n {
        let (a, b, c) = jacobi_step(alpha, beta, k);
        let next = (a * x + b) * cur - c * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// [P_0(x), …, P_{n_max}(x)] in one recurrence pass.
pub fn jacobi_eval_all(alpha: f64, beta: f64, n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_ab("jacobi_eval_all", alpha, beta)?;
    check_jacobi_x(x)?;
    let mut out = vec![0.0; n_max + 1];
    jacobi_fill(alpha, beta, x, &mut out);
    Ok(out)
}

/// Cached recurrence coefficients for repeated batch evaluation at many nodes.
#[derive(Debug, Clone)]
pub struct JacobiTable {
    alpha: f64,
    beta: f64,
    steps: Vec<(f64, f64, f64)>,
}

impl JacobiTable {
    pub fn new(alpha: f64, beta: f64, n_max: usize) -> Result<Self> {
        check_ab("JacobiTable", alpha, beta)?;
        let steps = (1..n_max.max(1)).map(|n| jacobi_step(alpha, beta, n)).collect();
        Ok(Self { alpha, beta, steps })
    }

    pub fn n_max(&self) -> usize {
        self.steps.len() + 1
    }

    /// P_n(x) for n ≤ n_max.
    pub fn eval(&self, n: usize, x: f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let (mut prev, mut cur) = (1.0, jacobi_p1(self.alpha, self.beta, x));
        for &(a, b, c) in &self.steps[..n - 1] {
            let next = (a * x + b) * cur - c * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Fills out[0..len] with P_n(x); `out.len()` must not exceed n_max + 1.
    pub fn fill(&self, x: f64, out: &mut [f64]) {
        debug_assert!(out.len() <= self.n_max() + 1);
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = jacobi_p1(self.alpha, self.beta, x);
        for n in 1..out.len() - 1 {
            let (a, b, c) = self.steps[n - 1];
            out[n + 1] = (a * x + b) * out[n] - c * out[n - 1];
        }
    }
}

pub(crate) fn jacobi_h_unchecked(alpha: f64, beta: f64, n: usize) -> f64 {
    let ab1 = alpha + beta + 1.0;
    if n == 0 {
        let ln = ab1 * std::f64::consts::LN_2 + log_gamma_unchecked(alpha + 1.0)
            + log_gamma_unchecked(beta + 1.0)
            - log_gamma_unchecked(alpha + beta + 2.0);
        return ln.exp();
    }
    let z = n as f64 + 1.0;
    // Γ(n+α+1)Γ(n+β+1) / (Γ(n+1)Γ(n+α+β+1))
    let ln_ratio = ln_gamma_ratio_unchecked(z, alpha) + ln_gamma_ratio_unchecked(z, beta)
        - ln_gamma_ratio_unchecked(z, alpha + beta);
    (ab1 * std::f64::consts::LN_2 + ln_ratio).exp() / (2.0 * n as f64 + ab1)
}

/// Exact squared norm h_n^{(α,β)} = ∫ P_n² dμ.
pub fn jacobi_h(alpha: f64, beta: f64, n: usize) -> Result<f64> {
    check_ab("jacobi_h", alpha, beta)?;
    Ok(jacobi_h_unchecked(alpha, beta, n))
}

/// Darboux main term n^{−1/2} k(θ) cos(M_n θ + γ) for P_n^{(α,β)}(cos θ).
pub fn jacobi_asymptotic(alpha: f64, beta: f64, n: usize, theta: f64) -> Result<AsymptoticMainTerm> {
    check_ab("jacobi_asymptotic", alpha, beta)?;
    if n == 0 {
        return Err(domain("jacobi_asymptotic", "degree must be at least 1"));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(domain("jacobi_asymptotic", format!("θ must lie in (0, π), got {theta}")));
    }
    let k = PI.powf(-0.5) * (theta / 2.0).sin().powf(-alpha - 0.5) * (theta / 2.0).cos().powf(-beta - 0.5);
    Ok(AsymptoticMainTerm {
        amplitude: (n as f64).powf(-0.5) * k,
        frequency: n as f64 + (alpha + beta + 1.0) / 2.0,
        variable: theta,
        phase_offset: -(alpha + 0.5) * PI / 2.0,
        error_order: -1.5,
    })
}

fn check_laguerre(op: &'static str, alpha: f64, x: f64) -> Result<()> {
    if !(alpha > -1.0) {
        return Err(domain(op, format!("need α > −1, got {alpha}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(op, format!("x must be finite and non-negative, got {x}")));
    }
    Ok(())
}

/// L_n^{(α)}(x) by forward recurrence.
pub fn laguerre_eval(alpha: f64, n: usize, x: f64) -> Result<f64> {
    check_laguerre("laguerre_eval", alpha, x)?;
    if n == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, 1.0 + alpha - x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// [L_0(x), …, L_{n_max}(x)].
pub fn laguerre_eval_all(alpha: f64, n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_laguerre("laguerre_eval_all", alpha, x)?;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max >= 1 {
        out.push(1.0 + alpha - x);
    }
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    Ok(out)
}

/// h_n^{(α)} = Γ(α+1) binom(n+α, n) = Γ(n+α+1)/Γ(n+1).
pub fn laguerre_h(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(domain("laguerre_h", format!("need α > −1, got {alpha}")));
    }
    if n == 0 {
        return Ok(log_gamma_unchecked(alpha + 1.0).exp());
    }
    Ok(ln_gamma_ratio_unchecked(n as f64 + 1.0, alpha).exp())
}

fn check_laguerre_fn_x(alpha: f64, x: f64) -> Result<()> {
    check_laguerre("laguerre_fn_eval", alpha, x)?;
    if x == 0.0 && alpha < 0.0 {
        return Err(domain("laguerre_fn_eval", "x = 0 is singular when α < 0"));
    }
    Ok(())
}

const RESCALE_AT: f64 = 1e150;

/// Fills out[n] = ℒ_n^α(x).
///
/// The recurrence runs on ℓ_n = √(n!/Γ(n+α+1)) L_n^{(α)}(x):
/// √((n+1)(n+α+1)) ℓ_{n+1} = (2n+1+α−x) ℓ_n − √(n(n+α)) ℓ_{n−1}.
/// The prefactor e^{−x/2} x^{α/2} Γ(α+1)^{−1/2} is kept as a log and the
/// running values carry their own exponent, so nothing overflows for large x.
pub(crate) fn laguerre_fn_fill(alpha: f64, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    if x == 0.0 && alpha > 0.0 {
        out.iter_mut().for_each(|v| *v = 0.0);
        return;
    }
    let log_pref = -0.5 * x + if alpha == 0.0 { 0.0 } else { 0.5 * alpha * x.ln() }
        - 0.5 * log_gamma_unchecked(alpha + 1.0);
    let mut scale = log_pref;
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    out[0] = scale.exp();
    for n in 0..out.len() - 1 {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + alpha - x) * cur - (nf * (nf + alpha)).sqrt() * prev)
            / ((nf + 1.0) * (nf + alpha + 1.0)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            scale += RESCALE_AT.ln();
        }
        out[n + 1] = if cur == 0.0 { 0.0 } else { cur * scale.exp() };
    }
}

/// ℒ_n^α(x) by the same scaled recurrence as [`laguerre_fn_fill`], without a buffer.
pub(crate) fn laguerre_fn_value(alpha: f64, n: usize, x: f64) -> f64 {
    if x == 0.0 && alpha > 0.0 {
        return 0.0;
    }
    let mut scale = -0.5 * x + if alpha == 0.0 { 0.0 } else { 0.5 * alpha * x.ln() }
        - 0.5 * log_gamma_unchecked(alpha + 1.0);
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf * (kf + alpha)).sqrt() * prev)
            / ((kf + 1.0) * (kf + alpha + 1.0)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            scale += RESCALE_AT.ln();
        }
    }
    if cur == 0.0 {
        0.0
    } else {
        cur * scale.exp()
    }
}

/// ℒ_n^α(x) = √(Γ(n+1)/Γ(n+α+1)) e^{−x/2} x^{α/2} L_n^{(α)}(x).
pub fn laguerre_fn_eval(alpha: f64, n: usize, x: f64) -> Result<f64> {
    check_laguerre_fn_x(alpha, x)?;
    let mut out = vec![0.0; n + 1];
    laguerre_fn_fill(alpha, x, &mut out);
    Ok(out[n])
}

/// [ℒ_0^α(x), …, ℒ_{n_max}^α(x)].
pub fn laguerre_fn_eval_all(alpha: f64, n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_laguerre_fn_x(alpha, x)?;
    let mut out = vec![0.0; n_max + 1];
    laguerre_fn_fill(alpha, x, &mut out);
    Ok(out)
}

/// Fejér main term for L_n^{(α)}(x):
/// π^{−1/2} e^{x/2} x^{−α/2−1/4} n^{α/2−1/4} cos(2√(nx) − απ/2 − π/4).
pub fn laguerre_asymptotic(alpha: f64, n: usize, x: f64) -> Result<AsymptoticMainTerm> {
    if !(alpha > -1.0) {
        return Err(domain("laguerre_asymptotic", format!("need α > −1, got {alpha}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("laguerre_asymptotic", format!("x must be positive, got {x}")));
    }
    if n == 0 {
        return Err(domain("laguerre_asymptotic", "degree must be at least 1"));
    }
    let nf = n as f64;
    let amplitude = (0.5 * x).exp() * PI.powf(-0.5) * x.powf(-0.5 * alpha - 0.25) * nf.powf(0.5 * alpha - 0.25);
    Ok(AsymptoticMainTerm {
        amplitude,
        frequency: 2.0 * nf.sqrt(),
        variable: x.sqrt(),
        phase_offset: -alpha * PI / 2.0 - PI / 4.0,
        error_order: 0.5 * alpha - 0.75,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Explicit sum P_n^{(α,β)}(x) = Σ_s binom(n+α, n−s) binom(n+β, s) ((x−1)/2)^s ((x+1)/2)^{n−s}.
    fn jacobi_explicit(alpha: f64, beta: f64, n: usize, x: f64) -> f64 {
        let binom = |top: f64, k: usize| -> f64 {
            (0..k).fold(1.0, |acc, j| acc * (top - j as f64) / (j as f64 + 1.0))
        };
        (0..=n)
            .map(|s| {
                binom(n as f64 + alpha, n - s)
                    * binom(n as f64 + beta, s)
                    * ((x - 1.0) / 2.0).powi(s as i32)
                    * ((x + 1.0) / 2.0).powi((n - s) as i32)
            })
            .sum()
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_eval(0.3, -0.2, 0, 0.77).unwrap(), 1.0);
        assert_relative_eq!(jacobi_eval(0.0, 0.0, 2, 0.5).unwrap(), -0.125, max_relative = 1e-14);
        assert_relative_eq!(jacobi_eval(1.0, 0.0, 1, 0.0).unwrap(), 0.5, max_relative = 1e-14);
        assert!(jacobi_eval(0.0, 0.0, 3, 1.5).is_err());
    }

    #[test]
    fn jacobi_matches_explicit_sum() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 0.0), (1.5, 0.5), (-0.5, -0.5), (2.0, -0.3)] {
            for n in 0..12 {
                for &x in &[-0.9, -0.3, 0.1, 0.6, 1.0] {
                    let v = jacobi_eval(a, b, n, x).unwrap();
                    let e = jacobi_explicit(a, b, n, x);
                    assert!((v - e).abs() <= 1e-12 * (1.0 + e.abs()), "{a} {b} {n} {x}: {v} vs {e}");
                }
            }
        }
    }

    #[test]
    fn jacobi_eval_all_examples() {
        assert_eq!(jacobi_eval_all(0.4, 0.1, 0, 0.3).unwrap(), vec![1.0]);
        let v = jacobi_eval_all(0.0, 0.0, 2, 0.5).unwrap();
        assert_relative_eq!(v[1], 0.5);
        assert_relative_eq!(v[2], -0.125, max_relative = 1e-14);
        let ones = jacobi_eval_all(0.0, 0.0, 3, 1.0).unwrap();
        for v in ones {
            assert_relative_eq!(v, 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn batch_agrees_with_single() {
        let all = jacobi_eval_all(0.7, 0.2, 200, -0.37).unwrap();
        let table = JacobiTable::new(0.7, 0.2, 200).unwrap();
        let mut buf = vec![0.0; 201];
        table.fill(-0.37, &mut buf);
        for n in [0, 1, 2, 50, 199, 200] {
            let single = jacobi_eval(0.7, 0.2, n, -0.37).unwrap();
            assert!((all[n] - single).abs() <= 1e-13 * single.abs().max(1e-3));
            assert_eq!(all[n], buf[n]);
        }
    }

    #[test]
    fn jacobi_symmetry() {
        for &(a, b) in &[(0.5, 0.0), (1.5, 0.5), (0.3, 0.1)] {
            for n in [1, 4, 17, 60] {
                for &x in &[0.13, 0.5, 0.92] {
                    let lhs = jacobi_eval(a, b, n, -x).unwrap();
                    let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi_eval(b, a, n, x).unwrap();
                    assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs().max(1e-2), "{a} {b} {n} {x}");
                }
            }
        }
    }

    #[test]
    fn jacobi_h_values() {
        assert_relative_eq!(jacobi_h(0.0, 0.0, 0).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(jacobi_h(0.0, 0.0, 5).unwrap(), 2.0 / 11.0, max_relative = 1e-13);
        // Chebyshev first kind: h_0 = π, h_n = π/2 · (Γ(n+1/2)/n!)²
        assert_relative_eq!(jacobi_h(-0.5, -0.5, 0).unwrap(), PI, max_relative = 1e-13);
        let r = jacobi_h(0.0, 0.0, 1000).unwrap() * 1000.0 / (jacobi_h(0.0, 0.0, 2000).unwrap() * 2000.0);
        assert!((r - 1.0).abs() < 1e-2);
    }

    #[test]
    fn jacobi_asymptotic_legendre_at_half_pi() {
        for n in [5, 40, 333] {
            let m = jacobi_asymptotic(0.0, 0.0, n, PI / 2.0).unwrap();
            let nf = n as f64;
            let expect = nf.powf(-0.5) * (2.0 / PI).sqrt() * ((nf + 0.5) * PI / 2.0 - PI / 4.0).cos();
            assert!((m.value() - expect).abs() < 1e-14);
        }
        assert!(jacobi_asymptotic(0.0, 0.0, 4, 0.0).is_err());
        assert!(jacobi_asymptotic(0.0, 0.0, 4, PI).is_err());
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre_eval(0.7, 0, 3.3).unwrap(), 1.0);
        for n in 0..20 {
            assert_relative_eq!(laguerre_eval(0.0, n, 0.0).unwrap(), 1.0, max_relative = 1e-13);
        }
        assert_relative_eq!(laguerre_eval(0.0, 2, 1.0).unwrap(), -0.5, max_relative = 1e-14);
        assert!(laguerre_eval(0.0, 2, -1.0).is_err());
        // L_n^{(α)}(0) = binom(n+α, n)
        let binom = laguerre_h(1.5, 6).unwrap() / log_gamma_unchecked(2.5).exp();
        assert_relative_eq!(laguerre_eval(1.5, 6, 0.0).unwrap(), binom, max_relative = 1e-12);
    }

    #[test]
    fn laguerre_h_values() {
        for n in [0, 3, 50] {
            assert_relative_eq!(laguerre_h(0.0, n).unwrap(), 1.0, max_relative = 1e-13);
        }
        assert_relative_eq!(laguerre_h(1.0, 2).unwrap(), 3.0, max_relative = 1e-13);
        assert_relative_eq!(laguerre_h(0.5, 0).unwrap(), 0.886_226_925_452_758, max_relative = 1e-13);
        for alpha in [0.5, 2.0] {
            let r1 = laguerre_h(alpha, 1000).unwrap() / 1000f64.powf(alpha);
            let r2 = laguerre_h(alpha, 2000).unwrap() / 2000f64.powf(alpha);
            assert!((r2 / r1 - 1.0).abs() < 2e-2);
        }
    }

    #[test]
    fn laguerre_fn_examples() {
        for &x in &[0.0, 0.4, 3.0, 40.0] {
            assert_relative_eq!(laguerre_fn_eval(0.0, 0, x).unwrap(), (-x / 2.0).exp(), max_relative = 1e-14);
        }
        assert_relative_eq!(laguerre_fn_eval(0.0, 1, 2.0).unwrap(), -(-1.0f64).exp(), max_relative = 1e-14);
        assert!(laguerre_fn_eval(-0.5, 3, 0.0).is_err());
        assert_eq!(laguerre_fn_eval(0.5, 3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn laguerre_fn_matches_unnormalised_polynomial() {
        for &(alpha, n, x) in &[(0.0, 7, 2.5), (0.5, 12, 9.0), (2.0, 30, 40.0), (1.3, 3, 0.2)] {
            let l = laguerre_eval(alpha, n, x).unwrap();
            let scale = (-0.5 * ln_gamma_ratio_unchecked(n as f64 + 1.0, alpha)).exp();
            let direct = scale * (-x / 2.0f64).exp() * x.powf(alpha / 2.0) * l;
            let f = laguerre_fn_eval(alpha, n, x).unwrap();
            assert!((f - direct).abs() < 1e-12 * (1.0 + direct.abs()), "{alpha} {n} {x}: {f} vs {direct}");
        }
    }

    #[test]
    fn laguerre_fn_large_arguments_stay_finite() {
        let v = laguerre_fn_eval_all(0.5, 100_000, 1000.0).unwrap();
        assert!(v.iter().all(|y| y.is_finite()));
        // deep in the decaying region of every degree ≤ 100 the value underflows
        let w = laguerre_fn_eval_all(0.0, 100, 5000.0).unwrap();
        assert!(w.iter().all(|y| y.abs() < 1e-300));
        // on the oscillatory region the values are O(n^{-1/4})
        let z = laguerre_fn_eval_all(0.0, 4096, 8000.0).unwrap();
        assert!(z[4096].abs() < 1.0 && z[4096] != 0.0);
    }

    #[test]
    fn laguerre_asymptotic_values() {
        let m = laguerre_asymptotic(0.0, 400, 1.0).unwrap();
        assert!((m.amplitude - 0.2080).abs() < 5e-5);
        assert_relative_eq!(m.amplitude, PI.powf(-0.5) * 0.5f64.exp() * 400f64.powf(-0.25), max_relative = 1e-14);
        // zeros of the cosine: 2√(n x) − π/4 = π/2 + kπ
        let n = 100;
        for k in 0..4 {
            let x = ((3.0 * PI / 4.0 + k as f64 * PI) / 2.0).powi(2) / n as f64;
            let z = laguerre_asymptotic(0.0, n, x).unwrap();
            assert!(z.value().abs() < 1e-14 * z.amplitude);
        }
        assert!(laguerre_asymptotic(0.0, 5, 0.0).is_err());
    }
}
