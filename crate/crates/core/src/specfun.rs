//! Scalar special functions: log-gamma, gamma ratios and Cesàro coefficients.
//!
//! Everything that involves factorial-sized quantities is carried in the log
//! domain. `A_n^δ` overflows a double long before the degrees used by the
//! growth scans.

use crate::error::{domain, index, Result};

const LANCZOS_G: f64 = 7.0;
// published digits, kept verbatim
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln(√(2π))
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Order δ of a Cesàro mean. Valid orders satisfy δ > −1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CesaroOrder(f64);

impl CesaroOrder {
    pub fn new(delta: f64) -> Result<Self> {
        if delta.is_finite() && delta > -1.0 {
            Ok(Self(delta))
        } else {
            Err(domain("CesaroOrder", format!("order must exceed -1, got {delta}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Natural logarithm of Γ(x) for x > 0 (Lanczos, g = 7, nine terms).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("log_gamma", format!("argument must be positive and finite, got {x}")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Stirling correction ln Γ(z) − [(z − ½) ln z − z + ln √(2π)], valid for z ≥ 30.
fn stirling_tail(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0)))))
}

/// ln Γ(z + d) − ln Γ(z), accurate even when both terms are large.
///
/// Requires z > 0 and z + d > 0.
pub fn ln_gamma_ratio(z: f64, d: f64) -> Result<f64> {
    if !(z > 0.0) || !(z + d > 0.0) {
        return Err(domain("ln_gamma_ratio", format!("need z > 0 and z + d > 0, got z={z}, d={d}")));
    }
    Ok(ln_gamma_ratio_unchecked(z, d))
}

pub(crate) fn ln_gamma_ratio_unchecked(z: f64, d: f64) -> f64 {
    if d == 0.0 {
        return 0.0;
    }
    const SHIFT: f64 = 30.0;
    let mut z = z;
    let mut acc = 0.0;
    // Γ(z+d)/Γ(z) = Γ(z+1+d)/Γ(z+1) · z/(z+d)
    while z < SHIFT || z + d < SHIFT {
        acc -= (d / z).ln_1p();
        z += 1.0;
    }
    let w = z + d;
    acc + (z - 0.5) * (d / z).ln_1p() + d * w.ln() - d + stirling_tail(w) - stirling_tail(z)
}

/// ln A_n^δ where A_n^δ = binom(n + δ, n).
pub fn log_cesaro_a(n: usize, delta: f64) -> Result<f64> {
    if !(delta > -1.0) {
        return Err(domain("cesaro_A", format!("order must exceed -1, got {delta}")));
    }
    if delta == 0.0 || n == 0 {
        return Ok(0.0);
    }
    let z = n as f64 + 1.0;
    Ok(ln_gamma_ratio_unchecked(z, delta) - log_gamma_unchecked(delta + 1.0))
}

/// A_n^δ = binom(n + δ, n) = Γ(n + δ + 1) / (Γ(δ + 1) Γ(n + 1)).
pub fn cesaro_a(n: usize, delta: f64) -> Result<f64> {
    log_cesaro_a(n, delta).map(f64::exp)
}

/// The Cesàro weight A_{N−n}^δ / A_N^δ.
pub fn cesaro_weight(big_n: usize, n: usize, delta: f64) -> Result<f64> {
    if n > big_n {
        return Err(index("cesaro_weight", format!("n = {n} exceeds N = {big_n}")));
    }
    if delta == 0.0 {
        return Ok(1.0);
    }
    Ok((log_cesaro_a(big_n - n, delta)? - log_cesaro_a(big_n, delta)?).exp())
}

/// Table of ln A_m^δ for m = 0..=n_max, built by cumulative `ln_1p` sums.
///
/// ln A_m^δ = Σ_{j=1}^m ln(1 + δ/j), so the table costs O(n_max) and is exact
/// term by term.
pub fn log_cesaro_table(n_max: usize, delta: f64) -> Result<Vec<f64>> {
    if !(delta > -1.0) {
        return Err(domain("cesaro_A", format!("order must exceed -1, got {delta}")));
    }
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for j in 1..=n_max {
        if delta != 0.0 {
            acc += (delta / j as f64).ln_1p();
        }
        out.push(acc);
    }
    Ok(out)
}

/// All Cesàro weights A_{N−n}^δ / A_N^δ for n = 0..=N.
pub fn cesaro_weights(big_n: usize, delta: f64) -> Result<Vec<f64>> {
    if delta == 0.0 {
        CesaroOrder::new(delta)?;
        return Ok(vec![1.0; big_n + 1]);
    }
    let table = log_cesaro_table(big_n, delta)?;
    let top = table[big_n];
    Ok((0..=big_n).map(|n| (table[big_n - n] - top).exp()).collect())
}
