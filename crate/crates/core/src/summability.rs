//! Cesàro and Riesz means of an expansion Σ c_n h_n^{−1} φ_n, and the growth
//! checks that tie bounded means to bounded terms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, index, Result};
use crate::orthopoly::FamilySpec;
use crate::quadrature::{coefficients, CompositeOptions, PanelFunction};
use crate::specfun::{cesaro_weights, CesaroOrder};

/// Coefficients c_0..c_{N_max} together with the normalisers h_n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    family: FamilySpec,
    c: Vec<f64>,
    h: Vec<f64>,
}

impl CoefficientSeries {
    pub fn new(family: FamilySpec, c: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        if c.is_empty() || c.len() != h.len() {
            return Err(domain(
                "CoefficientSeries",
                format!("need equal nonempty lengths, got {} and {}", c.len(), h.len()),
            ));
        }
        if !h.iter().all(|&v| v > 0.0 && v.is_finite()) {
            return Err(domain("CoefficientSeries", "normalisers must be positive"));
        }
        Ok(Self { family, c, h })
    }

    /// Series with the family's own normalisers.
    pub fn with_family_normalizers(family: FamilySpec, c: Vec<f64>) -> Result<Self> {
        let h = (0..c.len()).map(|n| family.normalizer(n)).collect();
        Self::new(family, c, h)
    }

    /// Coefficients of f computed by quadrature up to degree n_max.
    pub fn from_function(f: &PanelFunction, family: FamilySpec, n_max: usize, opts: &CompositeOptions) -> Result<Self> {
        Self::with_family_normalizers(family, coefficients(f, family, n_max, opts)?)
    }

    /// The expansion of φ_k itself: c_k = h_k, every other coefficient zero.
    pub fn basis(family: FamilySpec, k: usize, n_max: usize) -> Result<Self> {
        if k > n_max {
            return Err(index("CoefficientSeries::basis", format!("k = {k} exceeds N_max = {n_max}")));
        }
        let mut c = vec![0.0; n_max + 1];
        c[k] = family.normalizer(k);
        Self::with_family_normalizers(family, c)
    }

    pub fn family(&self) -> FamilySpec {
        self.family
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    pub fn normalizers(&self) -> &[f64] {
        &self.h
    }

    pub fn n_max(&self) -> usize {
        self.c.len() - 1
    }

    /// Series with coefficients λ·c + μ·d (same family and normalisers).
    pub fn combine(&self, lambda: f64, other: &Self, mu: f64) -> Result<Self> {
        if self.family != other.family || self.c.len() != other.c.len() {
            return Err(domain("CoefficientSeries::combine", "series differ in family or length"));
        }
        let c = self.c.iter().zip(&other.c).map(|(a, b)| lambda * a + mu * b).collect();
        Self::new(self.family, c, self.h.clone())
    }

    /// u_n(x) = c_n h_n^{−1} φ_n(x) for n = 0..=n_top.
    pub fn terms(&self, n_top: usize, x: f64) -> Result<Vec<f64>> {
        if n_top > self.n_max() {
            return Err(index("series terms", format!("degree {n_top} exceeds N_max = {}", self.n_max())));
        }
        let mut phi = vec![0.0; n_top + 1];
        self.family.eval_into(x, &mut phi)?;
        Ok(phi
            .iter()
            .zip(&self.c)
            .zip(&self.h)
            .map(|((p, c), h)| c / h * p)
            .collect())
    }
}

/// Which mean to take.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SummationMethod {
    Cesaro { n: usize },
    Riesz { r: f64 },
    PartialSum { r: f64 },
}

/// A summation method with its order δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummationSpec {
    pub method: SummationMethod,
    pub delta: f64,
}

impl SummationSpec {
    pub fn cesaro(n: usize, delta: f64) -> Result<Self> {
        CesaroOrder::new(delta)?;
        Ok(Self {
            method: SummationMethod::Cesaro { n },
            delta,
        })
    }

    pub fn riesz(r: f64, delta: f64) -> Result<Self> {
        check_riesz(r, delta)?;
        Ok(Self {
            method: SummationMethod::Riesz { r },
            delta,
        })
    }

    pub fn partial_sum(r: f64) -> Result<Self> {
        check_riesz(r, 0.0)?;
        Ok(Self {
            method: SummationMethod::PartialSum { r },
            delta: 0.0,
        })
    }

    pub fn evaluate(&self, series: &CoefficientSeries, x: f64) -> Result<f64> {
        match self.method {
            SummationMethod::Cesaro { n } => cesaro_mean(series, n, self.delta, x),
            SummationMethod::Riesz { r } => riesz_mean(series, r, self.delta, x),
            SummationMethod::PartialSum { r } => partial_sum(series, r, x),
        }
    }
}

fn check_riesz(r: f64, delta: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain("riesz_mean", format!("r must be positive, got {r}")));
    }
    if !(delta >= 0.0) {
        return Err(domain("riesz_mean", format!("Riesz order must be ≥ 0, got {delta}")));
    }
    Ok(())
}

/// σ_N^δ f(x) = Σ_{n≤N} (A_{N−n}^δ / A_N^δ) u_n(x).
pub fn cesaro_mean(series: &CoefficientSeries, big_n: usize, delta: f64, x: f64) -> Result<f64> {
    CesaroOrder::new(delta)?;
    let u = series.terms(big_n, x)?;
    let w = cesaro_weights(big_n, delta)?;
    Ok(u.iter().zip(&w).map(|(u, w)| u * w).sum())
}

/// Largest n with n < r.
fn last_index_below(r: f64) -> Option<usize> {
    let top = r.ceil() - 1.0;
    (top >= 0.0).then_some(top as usize)
}

/// S_r^δ f(x) = Σ_{0≤n<r} (1 − n/r)^δ u_n(x).
pub fn riesz_mean(series: &CoefficientSeries, r: f64, delta: f64, x: f64) -> Result<f64> {
    check_riesz(r, delta)?;
    let Some(top) = last_index_below(r) else {
        return Ok(0.0);
    };
    let u = series.terms(top, x)?;
    Ok(riesz_from_terms(&u, r, delta))
}

/// S_r^0 f(x): the plain partial sum over n < r.
pub fn partial_sum(series: &CoefficientSeries, r: f64, x: f64) -> Result<f64> {
    riesz_mean(series, r, 0.0, x)
}

fn riesz_from_terms(u: &[f64], r: f64, delta: f64) -> f64 {
    let Some(top) = last_index_below(r) else {
        return 0.0;
    };
    let top = top.min(u.len() - 1);
    if delta == 0.0 {
        return u[..=top].iter().sum();
    }
    u[..=top]
        .iter()
        .enumerate()
        .map(|(n, un)| (1.0 - n as f64 / r).powf(delta) * un)
        .sum()
}

/// All Cesàro means σ_0..σ_{n_top} from precomputed terms, O(n_top²).
fn cesaro_means_from_terms(u: &[f64], n_top: usize, delta: f64) -> Result<Vec<f64>> {
    let table = crate::specfun::log_cesaro_table(n_top, delta)?;
    Ok((0..=n_top)
        .into_par_iter()
        .map(|big_n| {
            if delta == 0.0 {
                return u[..=big_n].iter().sum();
            }
            let top = table[big_n];
            (0..=big_n).map(|n| (table[big_n - n] - top).exp() * u[n]).sum()
        })
        .collect())
}

/// Running maxima of |σ_m^δ f(x)| for m = 0..=n_top.
pub fn cesaro_running_max(series: &CoefficientSeries, delta: f64, x: f64, n_top: usize) -> Result<Vec<f64>> {
    CesaroOrder::new(delta)?;
    let u = series.terms(n_top, x)?;
    let means = cesaro_means_from_terms(&u, n_top, delta)?;
    Ok(running_max(means.iter().map(|v| v.abs())))
}

fn running_max(it: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut m = 0.0_f64;
    it.map(|v| {
        m = m.max(v);
        m
    })
    .collect()
}

/// Empirical constant in the bound |u_n(x)| ≤ C n^δ max_{m≤n} |σ_m^δ f(x)|.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermGrowthReport {
    pub max_ratio: f64,
    pub argmax_n: usize,
    /// ratio_n for n = 1..=N_max (index 0 ↔ n = 1); NaN where the running maximum is zero.
    pub ratios: Vec<f64>,
    /// Every mean σ_m vanished, so no ratio is defined.
    pub degenerate: bool,
}

impl TermGrowthReport {
    /// Maximum ratio over n in [lo, hi] (1-based degrees, inclusive).
    pub fn max_over(&self, lo: usize, hi: usize) -> f64 {
        self.ratios[lo.max(1) - 1..hi.min(self.ratios.len())]
            .iter()
            .copied()
            .filter(|v| !v.is_nan())
            .fold(0.0, f64::max)
    }
}

/// ratio_n = |u_n(x)| / (n^δ max_{m≤n} |σ_m^δ f(x)|) for 1 ≤ n ≤ N_max.
pub fn term_growth_check(series: &CoefficientSeries, delta: f64, x: f64, n_max: usize) -> Result<TermGrowthReport> {
    CesaroOrder::new(delta)?;
    if n_max < 1 {
        return Err(domain("term_growth_check", "N_max must be at least 1"));
    }
    let u = series.terms(n_max, x)?;
    let means = cesaro_means_from_terms(&u, n_max, delta)?;
    let run = running_max(means.iter().map(|v| v.abs()));
    let ratios: Vec<f64> = (1..=n_max)
        .map(|n| {
            let num = u[n].abs();
            let den = (n as f64).powf(delta) * run[n];
            if den > 0.0 {
                num / den
            } else if num == 0.0 {
                0.0
            } else {
                f64::NAN
            }
        })
        .collect();
    let degenerate = run[n_max] == 0.0;
    let (argmax_n, max_ratio) = ratios
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_nan())
        .fold((1, 0.0), |acc, (i, &v)| if v > acc.1 { (i + 1, v) } else { acc });
    Ok(TermGrowthReport {
        max_ratio,
        argmax_n,
        ratios,
        degenerate,
    })
}

/// Empirical constant in |S_r^0 f(x) − c| ≤ A r^δ sup_{0<t≤r+1} |S_t^δ f(x) − c|.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSumReport {
    pub max_ratio: f64,
    /// Half-integer grid of r values used.
    pub r_grid: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Proxy for the limit: S_{r_max}^δ f(x).
    pub limit_proxy: f64,
    pub degenerate: bool,
}

/// Samples per unit of t when approximating sup_{0<t≤r+1}.
const SUP_SAMPLES: usize = 8;

/// Control of partial sums by Riesz means, centred at the proxy limit.
pub fn partial_sum_control_check(series: &CoefficientSeries, delta: f64, x: f64, r_max: f64) -> Result<PartialSumReport> {
    if !(delta > 0.0) {
        return Err(domain("partial_sum_control_check", format!("δ must be positive, got {delta}")));
    }
    if !(r_max >= 2.5) {
        return Err(domain("partial_sum_control_check", format!("r_max must be at least 2.5, got {r_max}")));
    }
    let top = last_index_below(r_max).unwrap();
    let u = series.terms(top, x)?;
    let c = riesz_from_terms(&u, r_max, delta);

    // sup_{0<t≤T} |S_t^δ − c| sampled on a fine grid, as a running maximum
    let steps = ((r_max) * SUP_SAMPLES as f64).floor() as usize;
    let t_grid: Vec<f64> = (1..=steps).map(|i| i as f64 / SUP_SAMPLES as f64).collect();
    let dev: Vec<f64> = t_grid
        .par_iter()
        .map(|&t| (riesz_from_terms(&u, t, delta) - c).abs())
        .collect();
    let sup_dev = running_max(dev.into_iter());

    let mut r_grid = Vec::new();
    let mut r = 0.5;
    while r + 1.0 <= r_max {
        r_grid.push(r);
        r += 1.0;
    }
    let mut partial = 0.0;
    let mut next = 0;
    let ratios: Vec<f64> = r_grid
        .iter()
        .map(|&r| {
            while (next as f64) < r {
                partial += u[next];
                next += 1;
            }
            let num = (partial - c).abs();
            let idx = (((r + 1.0) * SUP_SAMPLES as f64).floor() as usize).min(sup_dev.len()) - 1;
            let den = r.powf(delta) * sup_dev[idx];
            if den > 0.0 {
                num / den
            } else if num == 0.0 {
                0.0
            } else {
                f64::NAN
            }
        })
        .collect();
    let degenerate = sup_dev.last().copied().unwrap_or(0.0) == 0.0;
    let max_ratio = ratios.iter().copied().filter(|v| !v.is_nan()).fold(0.0, f64::max);
    Ok(PartialSumReport {
        max_ratio,
        r_grid,
        ratios,
        limit_proxy: c,
        degenerate,
    })
}

/// Gaps |σ_N^δ f(x) − S_{N+1}^δ f(x)| on a grid of N.
pub fn equivalence_probe(series: &CoefficientSeries, delta: f64, x: f64, n_grid: &[usize]) -> Result<Vec<f64>> {
    if !(delta >= 0.0) {
        return Err(domain("equivalence_probe", format!("δ must be ≥ 0, got {delta}")));
    }
    let Some(&top) = n_grid.iter().max() else {
        return Ok(Vec::new());
    };
    let u = series.terms(top, x)?;
    n_grid
        .par_iter()
        .map(|&big_n| {
            let w = cesaro_weights(big_n, delta)?;
            let sigma: f64 = u[..=big_n].iter().zip(&w).map(|(u, w)| u * w).sum();
            let riesz = riesz_from_terms(&u[..=big_n], big_n as f64 + 1.0, delta);
            Ok((sigma - riesz).abs())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::jacobi_eval;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn legendre() -> FamilySpec {
        FamilySpec::jacobi(0.0, 0.0).unwrap()
    }

    /// Legendre coefficients of a polynomial given in monomial form, by exact Gauss quadrature.
    fn legendre_series(monomials: &[f64], n_max: usize) -> CoefficientSeries {
        let rule = crate::quadrature::gauss_legendre(64.max(n_max / 2 + 8)).unwrap();
        let c = (0..=n_max)
            .map(|n| {
                rule.apply(|x| {
                    let f: f64 = monomials.iter().enumerate().map(|(k, a)| a * x.powi(k as i32)).sum();
                    f * jacobi_eval(0.0, 0.0, n, x).unwrap()
                })
            })
            .collect();
        CoefficientSeries::with_family_normalizers(legendre(), c).unwrap()
    }

    #[test]
    fn series_validation() {
        assert!(CoefficientSeries::new(legendre(), vec![1.0], vec![]).is_err());
        assert!(CoefficientSeries::new(legendre(), vec![1.0], vec![0.0]).is_err());
        assert!(CoefficientSeries::basis(legendre(), 3, 2).is_err());
    }

    #[test]
    fn constant_function_means() {
        let s = CoefficientSeries::basis(legendre(), 0, 30).unwrap();
        for delta in [-0.5, 0.0, 0.7, 2.0] {
            for n in [0, 5, 30] {
                assert_relative_eq!(cesaro_mean(&s, n, delta, 0.37).unwrap(), 1.0, max_relative = 1e-14);
            }
        }
        assert!(cesaro_mean(&s, 31, 1.0, 0.0).is_err());
    }

    #[test]
    fn cesaro_of_identity_converges() {
        // σ_N^1 of f(x) = x is exactly N/(N+1) · x
        let s = legendre_series(&[0.0, 1.0], 1200);
        let v = cesaro_mean(&s, 50, 1.0, 0.3).unwrap();
        assert!((v - 0.3 * 50.0 / 51.0).abs() < 1e-14, "{v}");
        let v = cesaro_mean(&s, 1200, 1.0, 0.3).unwrap();
        assert!((v - 0.3).abs() < 1e-3, "{v}");
    }

    #[test]
    fn riesz_examples() {
        let fam = legendre();
        let s = CoefficientSeries::basis(fam, 1, 10).unwrap();
        let x = 0.4;
        for (r, delta) in [(1.5f64, 0.5), (3.0, 1.0), (7.2, 2.5)] {
            let expect = (1.0 - 1.0 / r).powf(delta) * x;
            assert_relative_eq!(riesz_mean(&s, r, delta, x).unwrap(), expect, max_relative = 1e-14);
        }
        assert_eq!(riesz_mean(&s, 1.0, 1.0, x).unwrap(), 0.0);
        assert_eq!(riesz_mean(&s, 0.3, 0.0, x).unwrap(), 0.0);
        assert!(riesz_mean(&s, 12.5, 0.0, x).is_err());
        assert!(riesz_mean(&s, 2.0, -0.1, x).is_err());

        let p = legendre_series(&[0.3, -1.0, 0.0, 2.0, 0.5], 10);
        let direct: f64 = p.terms(5, x).unwrap().iter().sum();
        assert_eq!(partial_sum(&p, 5.5, x).unwrap(), direct);
    }

    #[test]
    fn delta_zero_consistency() {
        let p = legendre_series(&[0.3, -1.0, 0.0, 2.0], 12);
        for n in 0..=12 {
            assert_eq!(
                cesaro_mean(&p, n, 0.0, -0.6).unwrap(),
                riesz_mean(&p, n as f64 + 0.5, 0.0, -0.6).unwrap()
            );
        }
    }

    #[test]
    fn polynomial_reproduction() {
        let mono = [0.3, -1.0, 0.7, 2.0, 0.0, -0.25];
        let p = legendre_series(&mono, 20);
        for &x in &[-0.9, -0.2, 0.0, 0.45, 1.0] {
            let f: f64 = mono.iter().enumerate().map(|(k, a)| a * f64::powi(x, k as i32)).sum();
            for r in [5.5, 6.0, 13.7, 20.5] {
                assert!((partial_sum(&p, r, x).unwrap() - f).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn term_recovery_identity() {
        let p = legendre_series(&[0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7], 10);
        let x = 0.33;
        let u = p.terms(10, x).unwrap();
        for n in 1..=10 {
            let diff = partial_sum(&p, n as f64 + 0.5, x).unwrap() - partial_sum(&p, n as f64 - 0.5, x).unwrap();
            assert!((diff - u[n]).abs() <= 1e-15 * (1.0 + u.iter().map(|v| v.abs()).sum::<f64>()));
        }
    }

    #[test]
    fn term_growth_examples() {
        let one = CoefficientSeries::basis(legendre(), 0, 40).unwrap();
        let rep = term_growth_check(&one, 1.0, 0.2, 40).unwrap();
        assert_eq!(rep.max_ratio, 0.0);
        assert!(!rep.degenerate);

        let phi5 = CoefficientSeries::basis(legendre(), 5, 40).unwrap();
        let rep = term_growth_check(&phi5, 1.0, 0.3, 40).unwrap();
        assert_eq!(rep.argmax_n, 5);
        assert!(rep.max_ratio.is_finite() && rep.max_ratio > 0.0);

        let sq = legendre_series(&[0.0, 0.0, 1.0], 200);
        let rep = term_growth_check(&sq, 1.0, 0.4, 200).unwrap();
        assert!(rep.max_over(50, 200) <= rep.max_over(1, 50));

        let zero = CoefficientSeries::with_family_normalizers(legendre(), vec![0.0; 5]).unwrap();
        assert!(term_growth_check(&zero, 1.0, 0.4, 4).unwrap().degenerate);
    }

    #[test]
    fn partial_sum_control_examples() {
        let phi0 = CoefficientSeries::basis(legendre(), 0, 60).unwrap();
        let rep = partial_sum_control_check(&phi0, 1.0, 0.3, 50.0).unwrap();
        assert_eq!(rep.max_ratio, 0.0);

        let phi3 = CoefficientSeries::basis(legendre(), 3, 60).unwrap();
        let rep = partial_sum_control_check(&phi3, 1.0, 0.3, 50.0).unwrap();
        assert!(rep.max_ratio.is_finite() && rep.max_ratio < 10.0, "{}", rep.max_ratio);
        assert!(partial_sum_control_check(&phi3, 0.0, 0.3, 50.0).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let one = CoefficientSeries::basis(legendre(), 0, 50).unwrap();
        let grid: Vec<usize> = (10..=50).step_by(5).collect();
        assert!(equivalence_probe(&one, 1.3, 0.1, &grid).unwrap().iter().all(|&g| g < 1e-15));
        let p = legendre_series(&[0.2, 0.0, 1.0, -1.0], 50);
        assert!(equivalence_probe(&p, 0.0, 0.1, &grid).unwrap().iter().all(|&g| g == 0.0));
    }

    #[test]
    fn riesz_factors_in_unit_interval() {
        for delta in [0.0, 0.3, 1.0, 4.0] {
            let r = 17.5;
            let f: Vec<f64> = (0..17).map(|n| (1.0 - n as f64 / r).powf(delta)).collect();
            assert!(f.iter().all(|&v| (0.0..=1.0).contains(&v)));
            assert!(f.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    proptest! {
        #[test]
        fn means_are_linear(
            a in prop::collection::vec(-1.0f64..1.0, 16),
            b in prop::collection::vec(-1.0f64..1.0, 16),
            lambda in -3.0f64..3.0,
            mu in -3.0f64..3.0,
            x in -1.0f64..1.0,
            delta in 0.0f64..2.0,
            n in 0usize..16,
        ) {
            let fam = FamilySpec::jacobi(0.5, 0.0).unwrap();
            let sa = CoefficientSeries::with_family_normalizers(fam, a).unwrap();
            let sb = CoefficientSeries::with_family_normalizers(fam, b).unwrap();
            let sc = sa.combine(lambda, &sb, mu).unwrap();
            let lhs = cesaro_mean(&sc, n, delta, x).unwrap();
            let rhs = lambda * cesaro_mean(&sa, n, delta, x).unwrap() + mu * cesaro_mean(&sb, n, delta, x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            let r = n as f64 + 0.5;
            let lhs = riesz_mean(&sc, r, delta, x).unwrap();
            let rhs = lambda * riesz_mean(&sa, r, delta, x).unwrap() + mu * riesz_mean(&sb, r, delta, x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
