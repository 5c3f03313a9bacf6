//! Gauss rules by the Golub–Welsch construction.
//!
//! The Jacobi matrix of the measure's monic recurrence is diagonalised with an
//! implicit-shift QL iteration; only the first row of the eigenvector matrix is
//! carried, so a K-point rule costs O(K²).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::log_gamma_unchecked;

/// Measures for which Gauss rules can be built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeasureTag {
    /// (1−x)^α (1+x)^β dx on [−1, 1].
    JacobiMeasure { alpha: f64, beta: f64 },
    /// e^{−x} x^α dx on [0, ∞).
    LaguerreMeasure { alpha: f64 },
    /// dx on [0, ∞); the rule is Gauss–Laguerre with weights multiplied by e^{x_i},
    /// exact for e^{−x} times a polynomial of degree ≤ 2K − 1.
    HalfLineLebesgue,
}

impl MeasureTag {
    fn validate(&self) -> Result<()> {
        match *self {
            MeasureTag::JacobiMeasure { alpha, beta } if alpha > -1.0 && beta > -1.0 => Ok(()),
            MeasureTag::LaguerreMeasure { alpha } if alpha > -1.0 => Ok(()),
            MeasureTag::HalfLineLebesgue => Ok(()),
            other => Err(domain("gauss_rule", format!("invalid measure parameters {other:?}"))),
        }
    }

    /// Support of the measure as (lower, upper).
    pub fn support(&self) -> (f64, f64) {
        match self {
            MeasureTag::JacobiMeasure { .. } => (-1.0, 1.0),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Total mass ∫ dμ (infinite for Lebesgue measure on the half line).
    pub fn mass(&self) -> f64 {
        match *self {
            MeasureTag::JacobiMeasure { alpha, beta } => {
                crate::orthopoly::jacobi_h_unchecked(alpha, beta, 0)
            }
            MeasureTag::LaguerreMeasure { alpha } => log_gamma_unchecked(alpha + 1.0).exp(),
            MeasureTag::HalfLineLebesgue => f64::INFINITY,
        }
    }
}

/// Nodes and positive weights of a Gauss rule for one of the supported measures.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub measure: MeasureTag,
    /// Polynomials of degree ≤ this are integrated exactly.
    pub exactness_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i).
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Symmetric tridiagonal eigenproblem, returning eigenvalues and the first
/// component of each normalised eigenvector (unsorted).
///
/// `diag` has length K, `off[i]` couples rows i and i+1 (length K−1).
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert!(off.len() + 1 == n || (n == 0 && off.is_empty()), "off-diagonal length mismatch");
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    if n == 0 {
        return Ok((d, z));
    }
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Eigen { index: l, size: n });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// Diagonal and off-diagonal of the Jacobi matrix for the first K monic polynomials.
fn jacobi_matrix(measure: &MeasureTag, k: usize) -> (Vec<f64>, Vec<f64>) {
    match *measure {
        MeasureTag::JacobiMeasure { alpha, beta } => {
            let ab = alpha + beta;
            let diag = (0..k)
                .map(|n| {
                    if n == 0 {
                        (beta - alpha) / (ab + 2.0)
                    } else {
                        let s = 2.0 * n as f64 + ab;
                        (beta * beta - alpha * alpha) / (s * (s + 2.0))
                    }
                })
                .collect();
            let off = (1..k)
                .map(|n| {
                    let nf = n as f64;
                    let b2 = if n == 1 {
                        4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))
                    } else {
                        let s = 2.0 * nf + ab;
                        4.0 * nf * (nf + alpha) * (nf + beta) * (nf + ab) / (s * s * (s + 1.0) * (s - 1.0))
                    };
                    b2.sqrt()
                })
                .collect();
            (diag, off)
        }
        MeasureTag::LaguerreMeasure { alpha } => laguerre_matrix(alpha, k),
        MeasureTag::HalfLineLebesgue => laguerre_matrix(0.0, k),
    }
}

fn laguerre_matrix(alpha: f64, k: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..k).map(|n| 2.0 * n as f64 + alpha + 1.0).collect();
    let off = (1..k).map(|n| (n as f64 * (n as f64 + alpha)).sqrt()).collect();
    (diag, off)
}

/// K-point Gauss rule for `measure` (Golub–Welsch).
pub fn gauss_rule(measure: MeasureTag, k: usize) -> Result<QuadratureRule> {
    measure.validate()?;
    if k == 0 {
        return Err(domain("gauss_rule", "node count must be at least 1"));
    }
    let (diag, off) = jacobi_matrix(&measure, k);
    let (nodes, first) = tridiagonal_eigen(&diag, &off)?;
    let mass = match measure {
        MeasureTag::HalfLineLebesgue => 1.0,
        _ => measure.mass(),
    };
    let mut pairs: Vec<(f64, f64)> = nodes
        .into_iter()
        .zip(first)
        .map(|(x, v)| {
            let w = mass * v * v;
            match measure {
                MeasureTag::HalfLineLebesgue => (x, w * x.exp()),
                _ => (x, w),
            }
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule {
        nodes,
        weights,
        measure,
        exactness_degree: 2 * k - 1,
    })
}

/// Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(k: usize) -> Result<QuadratureRule> {
    gauss_rule(MeasureTag::JacobiMeasure { alpha: 0.0, beta: 0.0 }, k)
}

/// Gauss–Jacobi rule on [−1, 1] for (1−u)^a (1+u)^b.
pub fn gauss_jacobi(k: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    gauss_rule(MeasureTag::JacobiMeasure { alpha: a, beta: b }, k)
}

/// Zeros of P_n^{(α,β)} in increasing order.
pub fn jacobi_zeros(alpha: f64, beta: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(gauss_jacobi(n, alpha, beta)?.nodes)
}

/// Zeros of L_n^{(α)} (equivalently of ℒ_n^α on (0, ∞)) in increasing order.
pub fn laguerre_zeros(alpha: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(gauss_rule(MeasureTag::LaguerreMeasure { alpha }, n)?.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{jacobi_eval, laguerre_eval};
    use approx::assert_relative_eq;

    #[test]
    fn legendre_small_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert!(r1.nodes[0].abs() < 1e-15);
        assert_relative_eq!(r1.weights[0], 2.0, max_relative = 1e-14);

        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r2.nodes[0], -s, max_relative = 1e-14);
        assert_relative_eq!(r2.nodes[1], s, max_relative = 1e-14);
        assert_relative_eq!(r2.weights[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(r2.weights[1], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn laguerre_two_point_rule() {
        let r = gauss_rule(MeasureTag::LaguerreMeasure { alpha: 0.0 }, 2).unwrap();
        let s2 = 2f64.sqrt();
        assert_relative_eq!(r.nodes[0], 2.0 - s2, max_relative = 1e-14);
        assert_relative_eq!(r.nodes[1], 2.0 + s2, max_relative = 1e-14);
        assert_relative_eq!(r.weights[0], (2.0 + s2) / 4.0, max_relative = 1e-14);
        assert_relative_eq!(r.weights[1], (2.0 - s2) / 4.0, max_relative = 1e-14);
        // exact through degree 3: ∫ x^j e^{-x} = j!
        for (j, fact) in [1.0, 1.0, 2.0, 6.0].iter().enumerate() {
            assert_relative_eq!(r.apply(|x| x.powi(j as i32)), *fact, max_relative = 1e-13);
        }
    }

    #[test]
    fn nodes_are_zeros() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 0.0), (1.5, 0.5), (-0.4, 2.0)] {
            let z = jacobi_zeros(a, b, 17).unwrap();
            for &x in &z {
                assert!(jacobi_eval(a, b, 17, x).unwrap().abs() < 1e-10);
            }
            assert!(z.windows(2).all(|w| w[0] < w[1]));
            assert!(z[0] > -1.0 && z[16] < 1.0);
        }
        for &x in &laguerre_zeros(0.5, 20).unwrap() {
            let scale = laguerre_eval(0.5, 19, x).unwrap().abs().max(1.0);
            assert!(laguerre_eval(0.5, 20, x).unwrap().abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn weights_sum_to_mass() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 0.0), (1.5, 0.5), (-0.5, -0.5), (-0.7, 0.3)] {
            let r = gauss_jacobi(40, a, b).unwrap();
            let mass: f64 = r.weights.iter().sum();
            assert_relative_eq!(mass, crate::orthopoly::jacobi_h(a, b, 0).unwrap(), max_relative = 1e-12);
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn large_rule_converges() {
        let r = gauss_rule(MeasureTag::LaguerreMeasure { alpha: 0.5 }, 2048).unwrap();
        assert_eq!(r.len(), 2048);
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        let r = gauss_legendre(1500).unwrap();
        let mass: f64 = r.weights.iter().sum();
        assert_relative_eq!(mass, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn half_line_lebesgue_integrates_exponentials() {
        let r = gauss_rule(MeasureTag::HalfLineLebesgue, 20).unwrap();
        // ∫_0^∞ x^3 e^{-x} dx = 6, ∫_0^∞ e^{-x/2}... not of the exact class, but close
        assert_relative_eq!(r.apply(|x| x.powi(3) * (-x).exp()), 6.0, max_relative = 1e-11);
        assert_relative_eq!(r.apply(|x| (-2.0 * x).exp()), 0.5, max_relative = 1e-6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_rule(MeasureTag::JacobiMeasure { alpha: -1.0, beta: 0.0 }, 4).is_err());
        assert!(gauss_legendre(0).is_err());
    }
}
