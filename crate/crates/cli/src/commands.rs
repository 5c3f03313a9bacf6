use std::sync::Arc;

use serde_json::{json, Value};

use summa_core::analysis::{
    cantor_lebesgue_estimate, critical_indices, geometric_grid, jacobi_delta_bound, jacobi_norm_scan,
    laguerre_delta_bound, laguerre_norm_scan, predicted_jacobi_regime, predicted_laguerre_regime, IntervalSet,
};
use summa_core::orthopoly::{jacobi_asymptotic, jacobi_eval, laguerre_asymptotic, laguerre_eval};
use summa_core::quadrature::{integrate_scalar, Panel, Segment};
use summa_core::summability::{cesaro_mean, riesz_mean};
use summa_core::witness::{build_witness, check_witness_range, witness_report, AmplitudeSchedule, Witness, WitnessOptions};
use summa_core::{CoefficientSeries, CompositeOptions, Error, FamilySpec, PanelFunction};

use crate::args::{
    CantorArgs, CriticalArgs, EvalArgs, Format, NGridArgs, NormscanArgs, Schedule, SumArgs, TestFunction,
    WitnessArgs, XGridArgs,
};
use crate::error::CliError;
use crate::output::{num, Document};

fn progress(msg: impl AsRef<str>) {
    eprintln!("summa: {}", msg.as_ref());
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("--tol must be positive, got {tol}")))
    }
}

pub fn eval(a: &EvalArgs) -> Result<(Document, Format), CliError> {
    let fam = a.family.spec()?;
    let ns = a.n.resolve(None)?;
    let xs = a.x.resolve(None)?;
    for &x in &xs {
        let ok = match fam {
            FamilySpec::Jacobi { .. } => (-1.0..=1.0).contains(&x),
            FamilySpec::Laguerre { .. } => x >= 0.0,
        };
        if !ok {
            return Err(CliError::Invalid(format!("x = {x} lies outside the family's domain")));
        }
    }
    let mut params = a.family.echo();
    params.push(NGridArgs::echo(&ns));
    params.push(XGridArgs::echo(&xs));
    let mut doc = Document::new("eval", params);
    doc.columns = vec!["n", "x", "value", "asymptotic_main_term", "residual"];
    for &n in &ns {
        for &x in &xs {
            let (value, main) = match fam {
                FamilySpec::Jacobi { alpha, beta } => {
                    let v = jacobi_eval(alpha, beta, n, x)?;
                    let interior = n >= 1 && x > -1.0 && x < 1.0;
                    let m = interior.then(|| jacobi_asymptotic(alpha, beta, n, x.acos())).transpose()?;
                    (v, m)
                }
                FamilySpec::Laguerre { alpha } => {
                    let v = laguerre_eval(alpha, n, x)?;
                    let m = (n >= 1 && x > 0.0).then(|| laguerre_asymptotic(alpha, n, x)).transpose()?;
                    (v, m)
                }
            };
            let main = main.map(|m| m.value());
            doc.rows.push(vec![
                json!(n),
                num(x),
                num(value),
                main.map_or(Value::Null, num),
                main.map_or(Value::Null, |m| num(value - m)),
            ]);
        }
    }
    Ok((doc, Format::Csv))
}

pub fn normscan(a: &NormscanArgs) -> Result<(Document, Format), CliError> {
    let fam = a.family.spec()?;
    check_tol(a.tol)?;
    let ns = a.n.resolve(Some(geometric_grid(64, 2048, 3)))?;
    if ns.len() < 8 {
        return Err(CliError::Invalid(format!("normscan fits a slope and needs at least 8 degrees, got {}", ns.len())));
    }
    if !(a.q >= 1.0) || !a.q.is_finite() {
        return Err(CliError::Invalid(format!("--q must satisfy 1 ≤ q < ∞, got {}", a.q)));
    }
    let (prediction, scan) = match fam {
        FamilySpec::Jacobi { alpha, .. } => {
            fam.check_theorem_range()?;
            if !(a.r > -1.0 / a.q) {
                return Err(CliError::Invalid(format!("--r must exceed −1/q, got {}", a.r)));
            }
            let p = predicted_jacobi_regime(alpha, a.q, a.r)?;
            progress(format!("normscan: {} degrees up to {}", ns.len(), ns.last().unwrap()));
            ((format!("{:?}", p.regime), p.exponent), jacobi_norm_scan(fam, a.q, a.r, &ns)?)
        }
        FamilySpec::Laguerre { alpha } => {
            let p = predicted_laguerre_regime(a.q)?;
            progress(format!("normscan: {} degrees up to {}", ns.len(), ns.last().unwrap()));
            ((format!("{:?}", p.regime), p.exponent), laguerre_norm_scan(alpha, a.q, &ns)?)
        }
    };
    let mut params = a.family.echo();
    params.push(("q".into(), a.q.to_string()));
    if matches!(fam, FamilySpec::Jacobi { .. }) {
        params.push(("r".into(), a.r.to_string()));
    }
    params.push(("tol".into(), a.tol.to_string()));
    params.push(NGridArgs::echo(&ns));
    let mut doc = Document::new("normscan", params);
    doc.columns = vec!["n", "norm"];
    doc.rows = scan.n_grid.iter().zip(&scan.values).map(|(&n, &v)| vec![json!(n), num(v)]).collect();
    let (regime, exponent) = prediction;
    let verdict = if exponent.is_finite() {
        if (scan.fitted_slope - exponent).abs() <= a.tol {
            "pass"
        } else {
            "fail"
        }
    } else {
        "no prediction"
    };
    doc.summary = vec![
        ("fitted_slope".into(), num(scan.fitted_slope)),
        ("slope_ci".into(), num(scan.slope_ci)),
        ("predicted_regime".into(), json!(regime)),
        ("predicted_exponent".into(), num(exponent)),
        ("verdict".into(), json!(verdict)),
    ];
    Ok((doc, Format::Csv))
}

fn test_function(f: TestFunction, fam: FamilySpec) -> Result<PanelFunction, Error> {
    let laguerre = matches!(fam, FamilySpec::Laguerre { .. });
    let (lo, hi) = if laguerre { (0.0, f64::INFINITY) } else { (-1.0, 1.0) };
    match f {
        TestFunction::One => PanelFunction::single(lo, hi, |_| 1.0),
        TestFunction::X => PanelFunction::single(lo, hi, |x| x),
        TestFunction::Cube => PanelFunction::single(lo, hi, |x| x * x * x),
        TestFunction::Exp if laguerre => PanelFunction::single(lo, hi, |x| (-x).exp()),
        TestFunction::Exp => PanelFunction::single(lo, hi, f64::exp),
        TestFunction::Abs => {
            let c = if laguerre { 1.0 } else { 0.0 };
            let g: summa_core::quadrature::PanelFn = Arc::new(move |x: f64| (x - c).abs());
            PanelFunction::new(vec![Panel::new(lo, c, g.clone()), Panel::new(c, hi, g)])
        }
        TestFunction::Step => PanelFunction::single(0.0, 1.0, |_| 1.0),
    }
}

pub fn sum(a: &SumArgs) -> Result<(Document, Format), CliError> {
    check_tol(a.tol)?;
    if !(a.delta >= 0.0) {
        return Err(CliError::Invalid(format!("--delta must be ≥ 0, got {}", a.delta)));
    }
    let ns = a.n.resolve(None)?;
    let xs = a.x.resolve(None)?;
    let top = *ns.iter().max().unwrap();
    let mut params = Vec::new();
    let series = if let Some(path) = &a.witness {
        let text = std::fs::read_to_string(path)?;
        let w = Witness::from_json(&witness_json(&text)?)?;
        params.push(("witness".into(), path.display().to_string()));
        params.push(("family".into(), format!("{:?}", w.family())));
        progress(format!("sum: witness coefficients up to {top}"));
        w.series(top)?
    } else {
        let fam = a.family.spec()?;
        params.extend(a.family.echo());
        params.push(("function".into(), format!("{:?}", a.function).to_lowercase()));
        let f = test_function(a.function, fam)?;
        let opts = CompositeOptions {
            rel_tol: a.tol,
            ..Default::default()
        };
        progress(format!("sum: coefficients up to {top}"));
        CoefficientSeries::from_function(&f, fam, top, &opts)?
    };
    params.push(("delta".into(), a.delta.to_string()));
    params.push(("tol".into(), a.tol.to_string()));
    params.push(NGridArgs::echo(&ns));
    params.push(XGridArgs::echo(&xs));
    let mut doc = Document::new("sum", params);
    doc.columns = vec!["x", "N", "cesaro", "riesz"];
    for &x in &xs {
        for &n in &ns {
            let c = cesaro_mean(&series, n, a.delta, x)?;
            // r = N has no Riesz mean at N = 0
            let r = if n == 0 { Value::Null } else { num(riesz_mean(&series, n as f64, a.delta, x)?) };
            doc.rows.push(vec![num(x), json!(n), num(c), r]);
        }
    }
    Ok((doc, Format::Csv))
}

/// Accepts either bare witness metadata or a full `witness` command document.
fn witness_json(text: &str) -> Result<String, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("witness file: {e}")))?;
    if v.get("failure").is_some_and(|f| !f.is_null()) {
        return Err(CliError::Invalid("witness file records a failed build and holds no witness".into()));
    }
    Ok(match v.get("witness") {
        Some(w) => w.to_string(),
        None => text.to_string(),
    })
}

fn default_samples(fam: FamilySpec) -> Vec<f64> {
    match fam {
        FamilySpec::Jacobi { .. } => (1..=11).map(|i| (std::f64::consts::PI * i as f64 / 12.0).cos()).collect(),
        FamilySpec::Laguerre { .. } => (1..=11).map(|i| i as f64).collect(),
    }
}

pub fn witness(a: &WitnessArgs) -> Result<(Document, Format), CliError> {
    let fam = a.family.spec()?;
    check_tol(a.tol)?;
    if a.levels == 0 || a.n1 == 0 || a.n_step == 0 || a.lacunarity < 2 {
        return Err(CliError::Invalid("--levels, --n1 and --n-step must be positive, --lacunarity ≥ 2".into()));
    }
    if !a.no_enforce {
        check_witness_range(fam, a.p, a.delta)?;
    }
    let xs = a.x.resolve(Some(default_samples(fam)))?;
    let opts = WitnessOptions {
        lacunarity: a.lacunarity,
        max_degree: a.max_degree,
        schedule: match a.schedule {
            Schedule::InverseSquare => AmplitudeSchedule::InverseSquare,
            Schedule::MarginSplit => AmplitudeSchedule::MarginSplit,
        },
        enforce_theorem_range: !a.no_enforce,
        rel_tol: a.tol,
        ..Default::default()
    };
    let mut params = a.family.echo();
    params.extend([
        ("p".into(), a.p.to_string()),
        ("delta".into(), a.delta.to_string()),
        ("levels".into(), a.levels.to_string()),
        ("n1".into(), a.n1.to_string()),
        ("lacunarity".into(), a.lacunarity.to_string()),
        ("max_degree".into(), a.max_degree.to_string()),
        ("schedule".into(), format!("{:?}", a.schedule).to_lowercase()),
        ("enforce_theorem_range".into(), (!a.no_enforce).to_string()),
        ("tol".into(), a.tol.to_string()),
        ("n_step".into(), a.n_step.to_string()),
    ]);
    params.push(XGridArgs::echo(&xs));
    let mut doc = Document::new("witness", params);
    progress(format!("witness: building {} levels from n_1 = {}", a.levels, a.n1));
    let w = match build_witness(fam, a.p, a.delta, a.levels, a.n1, &opts) {
        Ok(w) => w,
        Err(Error::Witness(f)) => {
            doc.sections.push(("failure".into(), serde_json::to_value(&*f).expect("plain data")));
            if let Some(spec) = &f.last {
                doc.summary.push(("last_degrees".into(), json!(spec.levels.iter().map(|l| l.n_k).collect::<Vec<_>>())));
            }
            if let Some(att) = f.attempts.last() {
                doc.summary.push(("last_rho".into(), json!(att.rho.iter().map(|&v| num(v)).collect::<Vec<_>>())));
            }
            doc.failure = Some(f.to_string());
            return Ok((doc, Format::Json));
        }
        Err(e) => return Err(e.into()),
    };
    let n_top = *w.degrees().last().unwrap();
    let grid: Vec<usize> = (a.n_step..=n_top).step_by(a.n_step).collect();
    progress(format!("witness: means on {} samples × {} orders", xs.len(), grid.len()));
    let report = witness_report(&w, &xs, &grid)?;
    doc.columns = vec!["x", "N", "cesaro_abs", "riesz_abs"];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &n) in grid.iter().enumerate() {
            doc.rows.push(vec![num(x), json!(n), num(report.cesaro[i][j]), num(report.riesz[i][j])]);
        }
    }
    doc.summary = vec![
        ("degrees".into(), json!(report.degrees)),
        ("rho".into(), json!(report.rho.iter().map(|&v| num(v)).collect::<Vec<_>>())),
        ("bound_violation".into(), json!(report.bound_violation)),
    ];
    doc.sections.push(("witness".into(), serde_json::to_value(w.spec()).expect("plain data")));
    let mut rep = serde_json::to_value(&report).expect("plain data");
    if let Value::Object(m) = &mut rep {
        // the table already carries the full matrices
        m.remove("cesaro");
        m.remove("riesz");
    }
    doc.sections.push(("report".into(), rep));
    Ok((doc, Format::Json))
}

fn parse_intervals(s: &str) -> Result<IntervalSet, CliError> {
    let bad = || CliError::Invalid(format!("--intervals expects a:b pairs, got {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let (a, b) = part.split_once(':').ok_or_else(bad)?;
        out.push((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
    }
    let e = IntervalSet::new(out)?;
    if e.intervals().iter().any(|&(a, b)| a <= 0.0 || b >= std::f64::consts::PI) {
        return Err(CliError::Invalid("θ-intervals must lie inside (0, π)".into()));
    }
    Ok(e)
}

pub fn cantor(a: &CantorArgs) -> Result<(Document, Format), CliError> {
    let FamilySpec::Jacobi { alpha, beta } = a.family.spec()? else {
        return Err(CliError::Invalid("cantor-lebesgue works in θ and needs --family jacobi".into()));
    };
    let e = parse_intervals(&a.intervals)?;
    let ns = a.n.resolve(None)?;
    if ns.contains(&0) {
        return Err(CliError::Invalid("degrees must be positive".into()));
    }
    let est = cantor_lebesgue_estimate(|n, t| (n as f64).sqrt() * jacobi_eval(alpha, beta, n, t.cos()).unwrap_or(f64::NAN), &e, &ns)?;
    let segs: Vec<Segment> = e.intervals().iter().map(|&(a, b)| Segment::new(a, b, 64)).collect();
    let opts = CompositeOptions::default();
    let mut params = a.family.echo();
    params.push(("intervals".into(), a.intervals.clone()));
    params.push(NGridArgs::echo(&ns));
    let mut doc = Document::new("cantor-lebesgue", params);
    doc.columns = vec!["n", "estimate", "quadratic_mean_amplitude", "relative_error"];
    for (&n, &v) in ns.iter().zip(&est) {
        let k2 = integrate_scalar(&segs, &opts, |_, t| {
            let amp = jacobi_asymptotic(alpha, beta, n, t).map_or(f64::NAN, |m| m.amplitude);
            n as f64 * amp * amp
        })?;
        let target = (k2 / e.measure()).sqrt();
        doc.rows.push(vec![json!(n), num(v), num(target), num((v - target).abs() / target)]);
    }
    Ok((doc, Format::Csv))
}

pub fn critical(a: &CriticalArgs) -> Result<(Document, Format), CliError> {
    if a.alpha.is_empty() {
        return Err(CliError::Invalid("--alpha is empty".into()));
    }
    let mut rows = Vec::new();
    for &alpha in &a.alpha {
        let (pc, pcd) = critical_indices(alpha)?;
        if a.p.is_empty() {
            rows.push(vec![num(alpha), num(pc), num(pcd), Value::Null, Value::Null, Value::Null]);
        }
        for &p in &a.p {
            let jb = jacobi_delta_bound(alpha, p).ok();
            let lb = laguerre_delta_bound(p).ok();
            rows.push(vec![num(alpha), num(pc), num(pcd), num(p), jb.map_or(Value::Null, num), lb.map_or(Value::Null, num)]);
        }
    }
    let fmt = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
    let mut doc = Document::new("critical", vec![("alpha".into(), fmt(&a.alpha)), ("p".into(), fmt(&a.p))]);
    doc.columns = vec!["alpha", "p_c", "p_c_conjugate", "p", "jacobi_delta_bound", "laguerre_delta_bound"];
    doc.rows = rows;
    Ok((doc, Format::Csv))
}

