//! Composite Gauss integration of vector-valued integrands over segments with
//! algebraic endpoint behaviour.
//!
//! Each segment is cut into equal pieces. Interior pieces use Gauss–Legendre;
//! a piece touching a segment end with exponent s ≠ 0 uses a Gauss–Jacobi rule
//! whose weight carries (1 ± u)^s, so integrands like |t − t₀|^s · smooth are
//! integrated at full order. The piece count doubles until two consecutive
//! estimates agree.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::gauss::{gauss_jacobi, gauss_legendre, QuadratureRule};

/// Integration segment [a, b] in the integration variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
    /// Integrand ~ (t − a)^left_exp near a.
    pub left_exp: f64,
    /// Integrand ~ (b − t)^right_exp near b.
    pub right_exp: f64,
    /// Initial number of equal pieces.
    pub pieces: usize,
}

impl Segment {
    pub fn new(a: f64, b: f64, pieces: usize) -> Self {
        Self {
            a,
            b,
            left_exp: 0.0,
            right_exp: 0.0,
            pieces: pieces.max(1),
        }
    }

    pub fn with_exponents(mut self, left: f64, right: f64) -> Self {
        self.left_exp = left;
        self.right_exp = right;
        self
    }
}

/// Accuracy controls for adaptive composite integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeOptions {
    /// Points per piece.
    pub order: usize,
    pub rel_tol: f64,
    /// Absolute floor on the accepted difference between refinements.
    pub abs_floor: f64,
    pub max_doublings: usize,
}

impl Default for CompositeOptions {
    fn default() -> Self {
        Self {
            order: 16,
            rel_tol: 1e-10,
            abs_floor: 1e-14,
            max_doublings: 20,
        }
    }
}

/// Converged integrals with the last refinement difference per component.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeResult {
    pub values: Vec<f64>,
    pub abs_mass: Vec<f64>,
    pub error_estimate: Vec<f64>,
    pub pieces: usize,
}

fn exp_key(s: f64) -> u64 {
    s.to_bits()
}

struct RuleBook {
    legendre: QuadratureRule,
    // keyed by (right exponent, left exponent) in u-variable terms
    jacobi: HashMap<(u64, u64), QuadratureRule>,
}

impl RuleBook {
    fn build(segments: &[Segment], order: usize) -> Result<Self> {
        let legendre = gauss_legendre(order)?;
        let mut jacobi = HashMap::new();
        for s in segments {
            for key in [(0.0, s.left_exp), (s.right_exp, 0.0), (s.right_exp, s.left_exp)] {
                if key == (0.0, 0.0) {
                    continue;
                }
                let k = (exp_key(key.0), exp_key(key.1));
                if let std::collections::hash_map::Entry::Vacant(e) = jacobi.entry(k) {
                    e.insert(gauss_jacobi(order, key.0, key.1)?);
                }
            }
        }
        Ok(Self { legendre, jacobi })
    }

    /// Rule and endpoint exponents (right, left) for piece i of `pieces`.
    fn pick(&self, seg: &Segment, i: usize, pieces: usize) -> (&QuadratureRule, f64, f64) {
        let sl = if i == 0 { seg.left_exp } else { 0.0 };
        let sr = if i + 1 == pieces { seg.right_exp } else { 0.0 };
        if sl == 0.0 && sr == 0.0 {
            (&self.legendre, 0.0, 0.0)
        } else {
            (&self.jacobi[&(exp_key(sr), exp_key(sl))], sr, sl)
        }
    }
}

/// Integrates `dim` components of F over all segments.
///
/// `f(segment_index, t, out)` must overwrite `out` (length `dim`) with F(t).
pub fn integrate_segments<F>(
    segments: &[Segment],
    dim: usize,
    opts: &CompositeOptions,
    f: F,
) -> Result<CompositeResult>
where
    F: Fn(usize, f64, &mut [f64]) + Sync,
{
    let book = RuleBook::build(segments, opts.order)?;
    let mut prev = evaluate(segments, 1, dim, &book, &f);
    let mut mult = 1;
    let mut worst = (0.0, 0.0);
    for doubling in 1..=opts.max_doublings {
        mult *= 2;
        let cur = evaluate(segments, mult, dim, &book, &f);
        let mut ok = true;
        let mut worst_ratio = 0.0;
        let mut err = vec![0.0; dim];
        for (c, e) in err.iter_mut().enumerate() {
            let diff = (cur.0[c] - prev.0[c]).abs();
            *e = diff;
            let allowed = (opts.rel_tol * cur.0[c].abs())
                .max(opts.abs_floor)
                .max(64.0 * f64::EPSILON * cur.1[c]);
            if !(diff <= allowed) {
                ok = false;
                let ratio = diff / allowed;
                if !(ratio <= worst_ratio) {
                    worst_ratio = ratio;
                    worst = (prev.0[c], cur.0[c]);
                }
            }
        }
        if ok {
            let pieces = segments.iter().map(|s| s.pieces * mult).sum();
            return Ok(CompositeResult {
                values: cur.0,
                abs_mass: cur.1,
                error_estimate: err,
                pieces,
            });
        }
        if doubling == opts.max_doublings {
            break;
        }
        prev = cur;
    }
    Err(Error::Convergence {
        doublings: opts.max_doublings,
        previous: worst.0,
        last: worst.1,
    })
}

/// One pass at a fixed refinement level: (Σ w F, Σ w |F|) per component.
fn evaluate<F>(segments: &[Segment], mult: usize, dim: usize, book: &RuleBook, f: &F) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(usize, f64, &mut [f64]) + Sync,
{
    let jobs: Vec<(usize, usize, usize)> = segments
        .iter()
        .enumerate()
        .flat_map(|(s, seg)| {
            let p = seg.pieces * mult;
            (0..p).map(move |i| (s, i, p))
        })
        .collect();
    // fixed chunking keeps the summation order independent of the thread count
    const CHUNK: usize = 64;
    let partials: Vec<(Vec<f64>, Vec<f64>)> = jobs
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut sum = vec![0.0; dim];
            let mut abs = vec![0.0; dim];
            let mut buf = vec![0.0; dim];
            for &(s, i, p) in chunk {
                let seg = &segments[s];
                let h = (seg.b - seg.a) / p as f64;
                let lo = seg.a + i as f64 * h;
                let (rule, sr, sl) = book.pick(seg, i, p);
                for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let t = lo + 0.5 * (u + 1.0) * h;
                    f(s, t, &mut buf);
                    let mut scale = 0.5 * h * w;
                    if sl != 0.0 {
                        scale /= (1.0 + u).powf(sl);
                    }
                    if sr != 0.0 {
                        scale /= (1.0 - u).powf(sr);
                    }
                    for c in 0..dim {
                        let v = scale * buf[c];
                        sum[c] += v;
                        abs[c] += v.abs();
                    }
                }
            }
            (sum, abs)
        })
        .collect();
    let mut sum = vec![0.0; dim];
    let mut abs = vec![0.0; dim];
    for (s, a) in partials {
        for c in 0..dim {
            sum[c] += s[c];
            abs[c] += a[c];
        }
    }
    (sum, abs)
}

/// Scalar convenience wrapper around [`integrate_segments`].
pub fn integrate_scalar<F>(segments: &[Segment], opts: &CompositeOptions, f: F) -> Result<f64>
where
    F: Fn(usize, f64) -> f64 + Sync,
{
    integrate_segments(segments, 1, opts, |s, t, out| out[0] = f(s, t)).map(|r| r.values[0])
}
