//! Gliding-hump witnesses: explicit L^p functions whose expansion coefficients
//! outgrow the bound that convergent δ-means would force.
//!
//! A witness is f = Σ a_k g_{n_k}, where g_n is the unit-L^p function that
//! extracts the largest possible n-th coefficient from functions supported on
//! a fixed set (its dual extremal). The construction is this crate's own; the
//! growth it achieves is measured, never assumed.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    jacobi_delta_bound, jacobi_delta_exponent, jacobi_restricted_norm, laguerre_delta_bound, laguerre_delta_exponent,
    laguerre_restricted_norm,
};
use crate::error::{domain, Error, Result};
use crate::orthopoly::{laguerre_fn_value, FamilySpec, JacobiTable};
use crate::quadrature::{
    coefficients, integrate_scalar, jacobi_zeros, laguerre_cutoff, laguerre_zeros, segment_panels, sqrt_segments,
    sqrt_step, theta_segments, theta_step, theta_weight, CompositeOptions, Panel, PanelFn, PanelFunction,
};
use crate::summability::{cesaro_mean, riesz_mean, CoefficientSeries};

/// Zeros this close (relative) to a support end are merged into it.
const MERGE: f64 = 1e-12;

/// Contamination ratio above which a level's own coefficient is considered swamped.
const CONTAMINATION_LIMIT: f64 = 0.5;

/// How the level amplitudes a_k are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeSchedule {
    /// a_k = k^{−2}.
    #[default]
    InverseSquare,
    /// a_k = (n_k/n_1)^{−γ/2}, where γ is the predicted growth exponent of
    /// ρ_k for a single block: half the margin pays for summability, half is
    /// left for growth. Falls back to k^{−2} when γ ≤ 0.
    MarginSplit,
}

impl AmplitudeSchedule {
    pub fn amplitude(self, k: usize, n_k: usize, n_1: usize, margin: f64) -> f64 {
        match self {
            Self::MarginSplit if margin > 0.0 => (n_k as f64 / n_1 as f64).powf(-0.5 * margin),
            _ => (k as f64).powi(-2),
        }
    }
}

/// What a level's building block is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// The dual extremal of φ_{n_k} on the witness support.
    DualExtremal,
    /// φ_{n_k} itself restricted to the support.
    Basis,
}

/// One level of a witness: f gets a_k times the block for degree n_k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub k: usize,
    pub n_k: usize,
    pub a_k: f64,
    pub block: BlockKind,
}

/// Everything needed to regenerate a witness deterministically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub family: FamilySpec,
    pub p: f64,
    pub delta: f64,
    pub support: (f64, f64),
    pub lacunarity: usize,
    pub schedule: AmplitudeSchedule,
    pub levels: Vec<Level>,
}

/// Builder settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessOptions {
    /// Initial ratio n_{k+1}/n_k; doubled on every retry.
    pub lacunarity: usize,
    pub max_retries: usize,
    /// Attempts whose top degree would exceed this fail instead of running.
    pub max_degree: usize,
    pub schedule: AmplitudeSchedule,
    /// Reject (p, δ) outside the divergence range before building.
    pub enforce_theorem_range: bool,
    pub rel_tol: f64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            lacunarity: 2,
            max_retries: 4,
            max_degree: 4096,
            schedule: AmplitudeSchedule::InverseSquare,
            enforce_theorem_range: true,
            rel_tol: 1e-10,
        }
    }
}

/// Own and cross contributions to c_{n_k}(f).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContaminationRow {
    pub k: usize,
    pub n_k: usize,
    /// |a_k c_{n_k}(g_k)|
    pub own: f64,
    /// |Σ_{j≠k} a_j c_{n_k}(g_j)|
    pub cross: f64,
    pub ratio: f64,
}

/// One pass of the builder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub lacunarity: usize,
    pub degrees: Vec<usize>,
    pub rho: Vec<f64>,
    pub contamination: Vec<ContaminationRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    /// The next lacunarity would need degrees past the cap.
    DegreeCap { needed: usize, cap: usize },
    /// ρ_k is not increasing although no level is contaminated.
    NoGrowth,
    /// Every allowed lacunarity left some level contaminated.
    RetriesExhausted,
}

/// Why the builder gave up, with every attempt's diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessFailure {
    pub reason: FailureReason,
    pub attempts: Vec<Attempt>,
    /// Metadata of the last witness actually built, if any.
    pub last: Option<WitnessSpec>,
}

impl WitnessFailure {
    /// Largest contamination ratio of the last attempt, with its level.
    pub fn worst_contamination(&self) -> Option<ContaminationRow> {
        self.attempts
            .last()?
            .contamination
            .iter()
            .copied()
            .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
    }
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            FailureReason::DegreeCap { needed, cap } => write!(f, "top degree {needed} exceeds cap {cap}")?,
            FailureReason::NoGrowth => write!(f, "ρ_k not increasing")?,
            FailureReason::RetriesExhausted => write!(f, "lacunarity retries exhausted")?,
        }
        write!(f, " after {} attempt(s)", self.attempts.len())?;
        if let Some(w) = self.worst_contamination() {
            write!(f, "; worst contamination {:.3} at level {} (n = {})", w.ratio, w.k, w.n_k)?;
        }
        Ok(())
    }
}

/// A dual-extremal block with the dual norm it realises.
#[derive(Debug, Clone)]
pub struct DualExtremal {
    pub block: PanelFunction,
    /// ‖φ_n‖_{L^q(S)}, which equals c_n(block).
    pub dual_norm: f64,
}

fn conjugate(p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(domain("dual_extremal", format!("need 1 < p < ∞, got {p}")));
    }
    Ok(p / (p - 1.0))
}

fn check_support(family: FamilySpec, (a, b): (f64, f64)) -> Result<()> {
    let ok = match family {
        FamilySpec::Jacobi { .. } => -1.0 <= a && a < b && b <= 1.0,
        FamilySpec::Laguerre { .. } => 0.0 <= a && a < b && b.is_finite(),
    };
    if !ok {
        return Err(domain("witness support", format!("[{a}, {b}] is not a valid support for {family:?}")));
    }
    Ok(())
}

/// Panels on [a, b] split at `zeros` (exponent `zexp` on both sides); a zero
/// on an end adds `zexp` to that end's exponent.
fn zero_split(a: f64, b: f64, zeros: &[f64], zexp: f64, (a_exp, b_exp): (f64, f64), f: PanelFn) -> Result<PanelFunction> {
    let (mut ea, mut eb) = (a_exp, b_exp);
    let mut pts = vec![a];
    for &z in zeros {
        let tol = MERGE * z.abs().max(1.0);
        if (z - a).abs() <= tol {
            ea += zexp;
        } else if (z - b).abs() <= tol {
            eb += zexp;
        } else if z > a && z < b {
            pts.push(z);
        }
    }
    pts.push(b);
    pts[1..].sort_by(f64::total_cmp);
    let last = pts.len() - 2;
    let panels = pts
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let l = if i == 0 { ea } else { zexp };
            let r = if i == last { eb } else { zexp };
            Panel::new(w[0], w[1], f.clone()).with_exponents(l, r)
        })
        .collect();
    PanelFunction::new(panels)
}

/// φ_n as a shared evaluator plus its zeros and its power of x at 0.
fn phi(family: FamilySpec, n: usize) -> Result<(PanelFn, Vec<f64>, f64)> {
    Ok(match family {
        FamilySpec::Jacobi { alpha, beta } => {
            let table = Arc::new(JacobiTable::new(alpha, beta, n.max(1))?);
            let f: PanelFn = Arc::new(move |x| table.eval(n, x));
            (f, jacobi_zeros(alpha, beta, n)?, 0.0)
        }
        FamilySpec::Laguerre { alpha } => {
            let f: PanelFn = Arc::new(move |x| laguerre_fn_value(alpha, n, x));
            (f, laguerre_zeros(alpha, n)?, 0.5 * alpha)
        }
    })
}

fn restricted_norm(family: FamilySpec, n: usize, q: f64, support: (f64, f64), rel_tol: f64) -> Result<f64> {
    match family {
        FamilySpec::Jacobi { alpha, beta } => jacobi_restricted_norm(alpha, beta, n, q, support, rel_tol),
        FamilySpec::Laguerre { alpha } => laguerre_restricted_norm(alpha, n, q, support, rel_tol),
    }
}

/// g_n = sign(φ_n) |φ_n|^{q−1} / ‖φ_n‖_{L^q(S)}^{q−1} on S, zero elsewhere.
///
/// Norms are taken against the family's measure: (1−x)^α(1+x)^β dx for Jacobi,
/// Lebesgue measure on [0, ∞) for Laguerre functions. Then ‖g_n‖_p = 1 and
/// c_n(g_n) = ‖φ_n‖_{L^q(S)}.
pub fn dual_extremal(family: FamilySpec, n: usize, p: f64, support: (f64, f64)) -> Result<DualExtremal> {
    dual_extremal_tol(family, n, p, support, 1e-11)
}

fn dual_extremal_tol(family: FamilySpec, n: usize, p: f64, support: (f64, f64), rel_tol: f64) -> Result<DualExtremal> {
    let q = conjugate(p)?;
    check_support(family, support)?;
    let norm = restricted_norm(family, n, q, support, rel_tol)?;
    let scale = norm.powf(q - 1.0);
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Degenerate {
            op: "dual_extremal",
            detail: format!("‖φ_{n}‖_q^(q−1) = {scale}"),
        });
    }
    let (phi, zeros, x_pow) = phi(family, n)?;
    let g: PanelFn = Arc::new(move |x| {
        let v = phi(x);
        v.signum() * v.abs().powf(q - 1.0) / scale
    });
    let a_exp = if support.0 == 0.0 { x_pow * (q - 1.0) } else { 0.0 };
    let block = zero_split(support.0, support.1, &zeros, q - 1.0, (a_exp, 0.0), g)?;
    Ok(DualExtremal { block, dual_norm: norm })
}

fn basis_block(family: FamilySpec, n: usize, support: (f64, f64)) -> Result<PanelFunction> {
    check_support(family, support)?;
    let (phi, _, x_pow) = phi(family, n)?;
    let a_exp = if support.0 == 0.0 { x_pow } else { 0.0 };
    PanelFunction::new(vec![Panel::new(support.0, support.1, phi).with_exponents(a_exp, 0.0)])
}

/// ‖f‖_p against the family's measure, for f with finite support.
///
/// `degree_hint` sets the initial piece width (the highest degree f oscillates like).
pub fn panel_lp_norm(f: &PanelFunction, family: FamilySpec, p: f64, degree_hint: usize, rel_tol: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(domain("panel_lp_norm", format!("need 1 ≤ p < ∞, got {p}")));
    }
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    let panels = f.panels();
    let v = match family {
        FamilySpec::Jacobi { alpha, beta } => {
            let segs = theta_segments(f, p, alpha, beta, theta_step(degree_hint))?;
            integrate_scalar(&segs, &opts, |s, t| {
                (panels[s].f)(t.cos()).abs().powf(p) * theta_weight(alpha, beta, t)
            })?
        }
        FamilySpec::Laguerre { .. } => {
            let (_, hi) = f.support();
            if !hi.is_finite() {
                return Err(domain("panel_lp_norm", "Laguerre-side norms need finite support"));
            }
            let segs = sqrt_segments(f, p, 0.0, hi, sqrt_step(degree_hint))?;
            let map = segment_panels(f, hi);
            integrate_scalar(&segs, &opts, |s, t| 2.0 * t * (panels[map[s]].f)(t * t).abs().powf(p))?
        }
    };
    Ok(v.powf(1.0 / p))
}

/// Growth exponent of ρ_k predicted for a single block; positive inside the divergence range.
pub fn predicted_rho_exponent(family: FamilySpec, p: f64, delta: f64) -> f64 {
    match family {
        FamilySpec::Jacobi { alpha, .. } => jacobi_delta_exponent(alpha, p) - delta,
        FamilySpec::Laguerre { .. } => laguerre_delta_exponent(p) - delta,
    }
}

/// Checks the divergence range: Jacobi 1 < p < p_c, 0 ≤ δ < bound; Laguerre p > 4, 0 < δ < bound.
pub fn check_witness_range(family: FamilySpec, p: f64, delta: f64) -> Result<()> {
    match family {
        FamilySpec::Jacobi { alpha, .. } => {
            family.check_theorem_range()?;
            if !(p > 1.0) {
                return Err(domain("build_witness", format!("need p > 1, got {p}")));
            }
            let bound = jacobi_delta_bound(alpha, p)?;
            if !(0.0 <= delta && delta < bound) {
                return Err(domain("build_witness", format!("need 0 ≤ δ < {bound}, got {delta}")));
            }
        }
        FamilySpec::Laguerre { .. } => {
            let bound = laguerre_delta_bound(p)?;
            if !(0.0 < delta && delta < bound) {
                return Err(domain("build_witness", format!("need 0 < δ < {bound}, got {delta}")));
            }
        }
    }
    Ok(())
}

/// A built witness: metadata, blocks, and per-block coefficients up to n_K.
#[derive(Debug, Clone)]
pub struct Witness {
    spec: WitnessSpec,
    blocks: Vec<PanelFunction>,
    /// c_0..c_{n_top} of each block.
    block_coeffs: Vec<Vec<f64>>,
    rel_tol: f64,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec.serialize(s)
    }
}

impl Witness {
    /// Rebuilds blocks and coefficients from metadata.
    pub fn regenerate(spec: WitnessSpec, rel_tol: f64) -> Result<Self> {
        conjugate(spec.p)?;
        check_support(spec.family, spec.support)?;
        if !(spec.delta >= 0.0) {
            return Err(domain("Witness", format!("δ must be ≥ 0, got {}", spec.delta)));
        }
        if spec.levels.is_empty() {
            return Err(domain("Witness", "no levels"));
        }
        for w in spec.levels.windows(2) {
            if w[1].n_k < 2 * w[0].n_k {
                return Err(domain("Witness", format!("degrees {} → {} are not lacunary", w[0].n_k, w[1].n_k)));
            }
        }
        if spec.levels.iter().any(|l| !l.a_k.is_finite()) {
            return Err(domain("Witness", "amplitudes must be finite"));
        }
        let n_top = spec.levels.last().map(|l| l.n_k).unwrap_or(0);
        let blocks = spec
            .levels
            .par_iter()
            .map(|l| match l.block {
                BlockKind::DualExtremal => dual_extremal_tol(spec.family, l.n_k, spec.p, spec.support, rel_tol.min(1e-11))
                    .map(|d| d.block),
                BlockKind::Basis => basis_block(spec.family, l.n_k, spec.support),
            })
            .collect::<Result<Vec<_>>>()?;
        let block_coeffs = block_coefficients(&blocks, spec.family, n_top, rel_tol)?;
        Ok(Self {
            spec,
            blocks,
            block_coeffs,
            rel_tol,
        })
    }

    /// f ≡ φ_n on `support`, packaged as a one-level witness with a_1 = 1.
    pub fn basis(family: FamilySpec, n: usize, p: f64, delta: f64, support: (f64, f64)) -> Result<Self> {
        let spec = WitnessSpec {
            family,
            p,
            delta,
            support,
            lacunarity: 2,
            schedule: AmplitudeSchedule::InverseSquare,
            levels: vec![Level {
                k: 1,
                n_k: n,
                a_k: 1.0,
                block: BlockKind::Basis,
            }],
        };
        Self::regenerate(spec, WitnessOptions::default().rel_tol)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: WitnessSpec = serde_json::from_str(s).map_err(|e| domain("Witness::from_json", e.to_string()))?;
        Self::regenerate(spec, WitnessOptions::default().rel_tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("witness metadata is plain data")
    }

    pub fn spec(&self) -> &WitnessSpec {
        &self.spec
    }

    pub fn family(&self) -> FamilySpec {
        self.spec.family
    }

    pub fn levels(&self) -> &[Level] {
        &self.spec.levels
    }

    pub fn blocks(&self) -> &[PanelFunction] {
        &self.blocks
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.spec.levels.iter().map(|l| l.n_k).collect()
    }

    /// f itself as one panel function.
    pub fn function(&self) -> Result<PanelFunction> {
        let terms: Vec<(f64, &PanelFunction)> = self.spec.levels.iter().map(|l| l.a_k).zip(&self.blocks).collect();
        PanelFunction::linear_combination(&terms)
    }

    fn combine(&self, per_block: &[Vec<f64>]) -> Vec<f64> {
        let len = per_block.first().map_or(0, Vec::len);
        let mut c = vec![0.0; len];
        for (l, b) in self.spec.levels.iter().zip(per_block) {
            c.iter_mut().zip(b).for_each(|(c, v)| *c += l.a_k * v);
        }
        c
    }

    /// c_0(f)..c_{n_K}(f), assembled from the block coefficients by linearity.
    pub fn coefficients(&self) -> Vec<f64> {
        self.combine(&self.block_coeffs)
    }

    /// The expansion of f up to degree n_max (quadrature is rerun past n_K).
    pub fn series(&self, n_max: usize) -> Result<CoefficientSeries> {
        let mut c = if n_max < self.block_coeffs[0].len() {
            self.coefficients()
        } else {
            self.combine(&block_coefficients(&self.blocks, self.spec.family, n_max, self.rel_tol)?)
        };
        c.truncate(n_max + 1);
        CoefficientSeries::with_family_normalizers(self.spec.family, c)
    }

    /// Exponent e in ρ_k = |c_{n_k}(f)| / n_k^e.
    pub fn rho_exponent(&self) -> f64 {
        match self.spec.family {
            FamilySpec::Jacobi { .. } => self.spec.delta - 0.5,
            FamilySpec::Laguerre { .. } => self.spec.delta + 0.25,
        }
    }

    /// ρ_k for every level.
    pub fn rho(&self) -> Vec<f64> {
        let c = self.coefficients();
        let e = self.rho_exponent();
        self.spec
            .levels
            .iter()
            .map(|l| c[l.n_k].abs() / (l.n_k as f64).powf(e))
            .collect()
    }

    pub fn contamination(&self) -> Vec<ContaminationRow> {
        let levels = &self.spec.levels;
        levels
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let own = (l.a_k * self.block_coeffs[k][l.n_k]).abs();
                let cross = levels
                    .iter()
                    .zip(&self.block_coeffs)
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, (m, b))| m.a_k * b[l.n_k])
                    .sum::<f64>()
                    .abs();
                ContaminationRow {
                    k: l.k,
                    n_k: l.n_k,
                    own,
                    cross,
                    ratio: cross / own,
                }
            })
            .collect()
    }

    /// True iff there are at least two ratios from k = 2 on and they strictly increase.
    pub fn bound_violation(&self) -> bool {
        let rho = self.rho();
        rho.len() >= 3 && strictly_increasing_from_second(&rho)
    }

    /// λ f, sharing blocks and coefficients.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda == 0.0 {
            return Err(domain("Witness::scaled", format!("need finite nonzero λ, got {lambda}")));
        }
        let mut w = self.clone();
        w.spec.levels.iter_mut().for_each(|l| l.a_k *= lambda);
        Ok(w)
    }
}

fn strictly_increasing_from_second(rho: &[f64]) -> bool {
    rho.get(1..).is_some_and(|r| r.windows(2).all(|w| w[1] > w[0]))
}

fn block_coefficients(blocks: &[PanelFunction], family: FamilySpec, n_top: usize, rel_tol: f64) -> Result<Vec<Vec<f64>>> {
    let opts = CompositeOptions {
        rel_tol,
        ..Default::default()
    };
    blocks.par_iter().map(|b| coefficients(b, family, n_top, &opts)).collect()
}

/// Builds f = Σ_{k=1}^K a_k g_{n_k} with n_k = n_1 L^{k−1}.
///
/// If ρ_k fails to increase from k = 2 on while some level's cross terms exceed
/// half its own coefficient, the lacunarity L is doubled and the build rerun,
/// at most `max_retries` times. Failures carry every attempt's ρ_k and
/// contamination table.
pub fn build_witness(family: FamilySpec, p: f64, delta: f64, levels: usize, n_1: usize, opts: &WitnessOptions) -> Result<Witness> {
    conjugate(p)?;
    if !(delta >= 0.0) {
        return Err(domain("build_witness", format!("δ must be ≥ 0, got {delta}")));
    }
    if levels == 0 || n_1 == 0 || opts.lacunarity < 2 {
        return Err(domain("build_witness", "need K ≥ 1, n_1 ≥ 1 and lacunarity ≥ 2"));
    }
    if opts.enforce_theorem_range {
        check_witness_range(family, p, delta)?;
    }
    let margin = predicted_rho_exponent(family, p, delta);
    let mut attempts: Vec<Attempt> = Vec::new();
    let mut last = None;
    let mut lac = opts.lacunarity;
    for _ in 0..=opts.max_retries {
        let top = lac
            .checked_pow(levels as u32 - 1)
            .and_then(|m| m.checked_mul(n_1))
            .filter(|&t| t <= opts.max_degree);
        let Some(n_top) = top else {
            let needed = (n_1 as f64 * (lac as f64).powi(levels as i32 - 1)).min(usize::MAX as f64) as usize;
            return Err(failure(FailureReason::DegreeCap { needed, cap: opts.max_degree }, attempts, last));
        };
        let support = match family {
            FamilySpec::Jacobi { .. } => (0.0, 1.0),
            FamilySpec::Laguerre { alpha } => (0.0, laguerre_cutoff(alpha, n_top)),
        };
        let spec = WitnessSpec {
            family,
            p,
            delta,
            support,
            lacunarity: lac,
            schedule: opts.schedule,
            levels: (1..=levels)
                .map(|k| {
                    let n_k = n_1 * lac.pow(k as u32 - 1);
                    Level {
                        k,
                        n_k,
                        a_k: opts.schedule.amplitude(k, n_k, n_1, margin),
                        block: BlockKind::DualExtremal,
                    }
                })
                .collect(),
        };
        let w = Witness::regenerate(spec, opts.rel_tol)?;
        let rho = w.rho();
        let contamination = w.contamination();
        let worst = contamination.iter().map(|c| c.ratio).fold(0.0, f64::max);
        attempts.push(Attempt {
            lacunarity: lac,
            degrees: w.degrees(),
            rho: rho.clone(),
            contamination,
        });
        if strictly_increasing_from_second(&rho) || levels <= 2 {
            return Ok(w);
        }
        last = Some(w.spec);
        if worst <= CONTAMINATION_LIMIT {
            return Err(failure(FailureReason::NoGrowth, attempts, last));
        }
        lac *= 2;
    }
    Err(failure(FailureReason::RetriesExhausted, attempts, last))
}

fn failure(reason: FailureReason, attempts: Vec<Attempt>, last: Option<WitnessSpec>) -> Error {
    Error::Witness(Box::new(WitnessFailure { reason, attempts, last }))
}

/// ρ_k, contamination, and the magnitudes of the δ-means of a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub degrees: Vec<usize>,
    pub rho: Vec<f64>,
    pub contamination: Vec<ContaminationRow>,
    pub x_samples: Vec<f64>,
    pub n_grid: Vec<usize>,
    /// |σ_N^δ f(x)|: one row per sample x, one column per N.
    pub cesaro: Vec<Vec<f64>>,
    /// |S_N^δ f(x)| (Riesz mean with r = N), same layout.
    pub riesz: Vec<Vec<f64>>,
    /// max over the N-grid of each row of `cesaro`.
    pub cesaro_max: Vec<f64>,
    pub riesz_max: Vec<f64>,
    pub bound_violation: bool,
}

/// Evaluates the means of `w` on the (x, N) grid and collects its diagnostics.
pub fn witness_report(w: &Witness, x_samples: &[f64], n_grid: &[usize]) -> Result<WitnessReport> {
    let top = n_grid.iter().copied().max().unwrap_or(0);
    let series = w.series(top.max(1))?;
    let delta = w.spec.delta;
    let rows = x_samples
        .par_iter()
        .map(|&x| {
            n_grid
                .iter()
                .map(|&n| Ok((cesaro_mean(&series, n, delta, x)?.abs(), riesz_mean(&series, n as f64, delta, x)?.abs())))
                .collect::<Result<Vec<(f64, f64)>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cesaro: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v.0).collect()).collect();
    let riesz: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v.1).collect()).collect();
    let row_max = |m: &Vec<Vec<f64>>| m.iter().map(|r| r.iter().copied().fold(0.0, f64::max)).collect();
    Ok(WitnessReport {
        degrees: w.degrees(),
        rho: w.rho(),
        contamination: w.contamination(),
        x_samples: x_samples.to_vec(),
        n_grid: n_grid.to_vec(),
        cesaro_max: row_max(&cesaro),
        riesz_max: row_max(&riesz),
        cesaro,
        riesz,
        bound_violation: w.bound_violation(),
    })
}
