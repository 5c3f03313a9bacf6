use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};

/// Shared evaluator used by a panel.
pub type PanelFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// One smooth piece of a piecewise-defined function.
///
/// `left_exp` / `right_exp` describe the endpoint behaviour: the function
/// behaves like (x − a)^left_exp · smooth near a, and like (b − x)^right_exp ·
/// smooth near b. Zero means smooth up to the endpoint.
#[derive(Clone)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub left_exp: f64,
    pub right_exp: f64,
    pub f: PanelFn,
}

impl fmt::Debug for Panel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Panel")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("left_exp", &self.left_exp)
            .field("right_exp", &self.right_exp)
            .finish_non_exhaustive()
    }
}

impl Panel {
    pub fn new(a: f64, b: f64, f: PanelFn) -> Self {
        Self {
            a,
            b,
            left_exp: 0.0,
            right_exp: 0.0,
            f,
        }
    }

    pub fn with_exponents(mut self, left: f64, right: f64) -> Self {
        self.left_exp = left;
        self.right_exp = right;
        self
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// A function given as an ordered list of panels with disjoint interiors.
///
/// Gaps between panels are treated as zero.
#[derive(Clone, Debug)]
pub struct PanelFunction {
    panels: Vec<Panel>,
}

impl PanelFunction {
    pub fn new(panels: Vec<Panel>) -> Result<Self> {
        if panels.is_empty() {
            return Err(domain("PanelFunction", "at least one panel is required"));
        }
        for p in &panels {
            if !(p.a < p.b) || p.a.is_nan() || p.a == f64::INFINITY {
                return Err(domain("PanelFunction", format!("bad panel [{}, {}]", p.a, p.b)));
            }
            if !(p.left_exp > -1.0 && p.right_exp > -1.0) {
                return Err(domain("PanelFunction", "endpoint exponents must exceed -1"));
            }
        }
        for w in panels.windows(2) {
            if w[1].a < w[0].b {
                return Err(domain(
                    "PanelFunction",
                    format!("panels [{}, {}] and [{}, {}] overlap", w[0].a, w[0].b, w[1].a, w[1].b),
                ));
            }
        }
        Ok(Self { panels })
    }

    /// A single smooth panel.
    pub fn single(a: f64, b: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        Self::new(vec![Panel::new(a, b, Arc::new(f))])
    }

    pub fn constant(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::single(a, b, move |_| c)
    }

    /// One evaluator split at `breaks` (which must lie strictly inside (a, b)),
    /// with the same exponent on both sides of every break.
    pub fn split(
        a: f64,
        b: f64,
        breaks: &[f64],
        break_exp: f64,
        f: PanelFn,
    ) -> Result<Self> {
        let mut pts = vec![a];
        pts.extend(breaks.iter().copied().filter(|&t| t > a && t < b));
        pts.push(b);
        let last = pts.len() - 2;
        let panels = pts
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let l = if i == 0 { 0.0 } else { break_exp };
                let r = if i == last { 0.0 } else { break_exp };
                Panel::new(w[0], w[1], f.clone()).with_exponents(l, r)
            })
            .collect();
        Self::new(panels)
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    /// Convex hull of the panels.
    pub fn support(&self) -> (f64, f64) {
        (self.panels[0].a, self.panels[self.panels.len() - 1].b)
    }

    /// Value at x; zero outside every panel. At a shared endpoint the left panel wins.
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.panels.partition_point(|p| p.b < x);
        match self.panels.get(i) {
            Some(p) if p.contains(x) => (p.f)(x),
            _ => 0.0,
        }
    }

    /// λ·f on the same panels.
    pub fn scaled(&self, lambda: f64) -> Self {
        let panels = self
            .panels
            .iter()
            .map(|p| {
                let g = p.f.clone();
                Panel {
                    f: Arc::new(move |x| lambda * g(x)),
                    ..p.clone()
                }
            })
            .collect();
        Self { panels }
    }

    /// Σ λ_k f_k on the common refinement of all breakpoints.
    ///
    /// A breakpoint keeps its exponent only when every term that is non-smooth there
    /// agrees on it and no other term is defined across it; otherwise it is marked smooth,
    /// and the adaptive integrator has to resolve it by subdivision.
    pub fn linear_combination(terms: &[(f64, &PanelFunction)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(domain("PanelFunction::linear_combination", "no terms"));
        }
        let mut pts: Vec<f64> = terms
            .iter()
            .flat_map(|(_, f)| f.panels.iter().flat_map(|p| [p.a, p.b]))
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let owned: Vec<(f64, PanelFunction)> = terms.iter().map(|(l, f)| (*l, (*f).clone())).collect();
        let owned = Arc::new(owned);
        let mut panels = Vec::new();
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = if b.is_finite() { 0.5 * (a + b) } else { a + 1.0 };
            let active: Vec<usize> = owned
                .iter()
                .enumerate()
                .filter(|(_, (_, f))| f.locate(mid).is_some())
                .map(|(i, _)| i)
                .collect();
            if active.is_empty() {
                continue;
            }
            let left_exp = Self::combined_exp(&owned, &active, a, true);
            let right_exp = Self::combined_exp(&owned, &active, b, false);
            let src = owned.clone();
            let idx: Vec<(usize, usize)> = active
                .iter()
                .map(|&i| (i, src[i].1.locate(mid).unwrap()))
                .collect();
            let f: PanelFn = Arc::new(move |x| {
                idx.iter()
                    .map(|&(i, j)| src[i].0 * (src[i].1.panels[j].f)(x))
                    .sum()
            });
            panels.push(Panel::new(a, b, f).with_exponents(left_exp, right_exp));
        }
        Self::new(panels)
    }

    fn locate(&self, x: f64) -> Option<usize> {
        self.panels.iter().position(|p| p.a < x && x < p.b)
    }

    fn combined_exp(terms: &[(f64, PanelFunction)], active: &[usize], at: f64, left: bool) -> f64 {
        let mut exp: Option<f64> = None;
        for &i in active {
            let f = &terms[i].1;
            let e = f
                .panels
                .iter()
                .find(|p| if left { p.a == at } else { p.b == at })
                .map(|p| if left { p.left_exp } else { p.right_exp })
                .unwrap_or(0.0);
            match exp {
                None => exp = Some(e),
                Some(prev) if prev == e => {}
                Some(_) => return 0.0,
            }
        }
        exp.unwrap_or(0.0)
    }
}
