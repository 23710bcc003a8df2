//! Adaptive Gauss–Legendre quadrature.
//!
//! Every subinterval is integrated with a `p`-point and a `2p+1`-point
//! Gauss–Legendre rule; the difference of the two is the local error
//! estimate and the higher-order value is kept. Subintervals with the
//! largest normalized error are bisected until the global tolerance
//! `max(abs_tol, rel_tol * |I|)` is met for every component.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1e-300) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug)]
struct RulePair {
    low: GaussLegendre,
    high: GaussLegendre,
}

/// Tolerances and rule order for the adaptive integrators.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
    points_per_panel: usize,
    rules: Arc<RulePair>,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize, points_per_panel: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if !(abs_tol >= 0.0) || !abs_tol.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "abs_tol must be non-negative, got {abs_tol}"
            )));
        }
        if points_per_panel < 2 {
            return Err(Error::ParameterDomain(format!(
                "points_per_panel must be at least 2, got {points_per_panel}"
            )));
        }
        if max_subdivisions < 1 {
            return Err(Error::ParameterDomain("max_subdivisions must be at least 1".into()));
        }
        let rules = Arc::new(RulePair {
            low: GaussLegendre::new(points_per_panel),
            high: GaussLegendre::new(2 * points_per_panel + 1),
        });
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            points_per_panel,
            rules,
        })
    }

    /// Defaults used for eigenvalue-grade work: `rel_tol = 1e-10`, `abs_tol = 1e-14`.
    pub fn precise() -> Self {
        Self::new(1e-10, 1e-14, 2000, 15).expect("valid defaults")
    }

    /// Defaults used for the information-measure integrals.
    pub fn measures() -> Self {
        Self::new(1e-8, 1e-14, 2000, 15).expect("valid defaults")
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }

    pub fn points_per_panel(&self) -> usize {
        self.points_per_panel
    }

    pub fn with_rel_tol(&self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.abs_tol, self.max_subdivisions, self.points_per_panel)
    }

    pub fn with_abs_tol(&self, abs_tol: f64) -> Result<Self> {
        Self::new(self.rel_tol, abs_tol, self.max_subdivisions, self.points_per_panel)
    }

    /// The `p`-point rule used as the low-order half of the error estimate.
    pub fn low_rule(&self) -> &GaussLegendre {
        &self.rules.low
    }

    /// The `2p+1`-point rule whose values are accepted.
    pub fn high_rule(&self) -> &GaussLegendre {
        &self.rules.high
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::precise()
    }
}

impl PartialEq for QuadratureSpec {
    fn eq(&self, other: &Self) -> bool {
        self.rel_tol == other.rel_tol
            && self.abs_tol == other.abs_tol
            && self.max_subdivisions == other.max_subdivisions
            && self.points_per_panel == other.points_per_panel
    }
}

impl Serialize for QuadratureSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadratureSpec", 4)?;
        st.serialize_field("rel_tol", &self.rel_tol)?;
        st.serialize_field("abs_tol", &self.abs_tol)?;
        st.serialize_field("max_subdivisions", &self.max_subdivisions)?;
        st.serialize_field("points_per_panel", &self.points_per_panel)?;
        st.end()
    }
}

struct Segment<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    magnitude: [f64; N],
    priority: f64,
}

impl<const N: usize> PartialEq for Segment<N> {
    fn eq(&self, other: &Self) -> bool {
        self.priority.total_cmp(&other.priority) == Ordering::Equal
    }
}
impl<const N: usize> Eq for Segment<N> {}
impl<const N: usize> PartialOrd for Segment<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Segment<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

fn apply_rule<const N: usize, F: Fn(f64) -> [f64; N]>(
    f: &F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    magnitude: &mut [f64; N],
) -> [f64; N] {
    let mut acc = [CompensatedSum::new(); N];
    for (x, w) in rule.mapped(a, b) {
        let v = f(x);
        for c in 0..N {
            acc[c].add(w * v[c]);
            magnitude[c] += (w * v[c]).abs();
        }
    }
    acc.map(|s| s.value())
}

fn make_segment<const N: usize, F: Fn(f64) -> [f64; N]>(
    f: &F,
    spec: &QuadratureSpec,
    a: f64,
    b: f64,
    scale: &[f64; N],
) -> Segment<N> {
    let mut mag_low = [0.0; N];
    let mut magnitude = [0.0; N];
    let low = apply_rule(f, spec.low_rule(), a, b, &mut mag_low);
    let value = apply_rule(f, spec.high_rule(), a, b, &mut magnitude);
    let mut error = [0.0; N];
    let mut priority = 0.0f64;
    for c in 0..N {
        error[c] = (value[c] - low[c]).abs();
        if !error[c].is_finite() {
            error[c] = f64::INFINITY;
        }
        priority = priority.max(error[c] / scale[c]);
    }
    // segments that can no longer be split are never refined again
    let mid = 0.5 * (a + b);
    if !(mid > a && mid < b) {
        priority = 0.0;
    }
    Segment {
        a,
        b,
        value,
        error,
        magnitude,
        priority,
    }
}

/// Adaptive integration of a vector-valued integrand; each component must
/// meet the tolerance independently.
pub fn integrate_adaptive_n<const N: usize, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    if !(a.is_finite() && b.is_finite()) || !(a < b) {
        return Err(Error::ParameterDomain(format!(
            "integration limits must satisfy a < b, got [{a}, {b}]"
        )));
    }
    adaptive_panels(&f, &[a, b], spec)
}

/// Global bisection over all panels at once: the segment with the largest
/// scaled error is split until the summed error meets the tolerance.
fn adaptive_panels<const N: usize, F>(f: &F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    let (a, b) = (breakpoints[0], breakpoints[breakpoints.len() - 1]);
    let unit = [1.0; N];
    let first: Vec<Segment<N>> = breakpoints
        .windows(2)
        .map(|w| make_segment(f, spec, w[0], w[1], &unit))
        .collect();
    let scale: [f64; N] = std::array::from_fn(|c| {
        let v: f64 = first.iter().map(|s| s.value[c]).sum();
        spec.abs_tol.max(spec.rel_tol * v.abs()).max(f64::MIN_POSITIVE)
    });
    let mut heap = BinaryHeap::new();
    for mut seg in first {
        seg.priority = (0..N).map(|c| seg.error[c] / scale[c]).fold(0.0, f64::max);
        heap.push(seg);
    }
    let mut splits = 0usize;
    let max_splits = spec.max_subdivisions.max(breakpoints.len() * 8);
    loop {
        let mut total = [CompensatedSum::new(); N];
        let mut err = [0.0; N];
        let mut mag = [0.0; N];
        for s in heap.iter() {
            for c in 0..N {
                total[c].add(s.value[c]);
                err[c] += s.error[c];
                mag[c] += s.magnitude[c];
            }
        }
        let total = total.map(|s| s.value());
        let mut converged = true;
        let mut worst = 0.0f64;
        for c in 0..N {
            if !total[c].is_finite() {
                return Err(Error::NonConvergence {
                    a,
                    b,
                    estimate: f64::NAN,
                });
            }
            let tol = spec
                .abs_tol
                .max(spec.rel_tol * total[c].abs())
                .max(64.0 * f64::EPSILON * mag[c]);
            if err[c] > tol {
                converged = false;
                worst = worst.max(err[c]);
            }
        }
        if converged {
            return Ok(total);
        }
        if splits >= max_splits {
            return Err(Error::NonConvergence { a, b, estimate: worst });
        }
        let seg = heap.pop().expect("heap is never empty");
        if seg.priority == 0.0 {
            return Err(Error::NonConvergence { a, b, estimate: worst });
        }
        let mid = 0.5 * (seg.a + seg.b);
        heap.push(make_segment(f, spec, seg.a, mid, &scale));
        heap.push(make_segment(f, spec, mid, seg.b, &scale));
        splits += 1;
    }
}

/// Adaptive integration of a scalar integrand over `[a, b]`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_adaptive_n(|x| [f(x)], a, b, spec).map(|v| v[0])
}

/// Adaptive integral over `[bp[0], bp[last]]` seeded with the given panels.
/// The tolerance applies to the whole range, not to each panel.
pub fn integrate_paneled_n<const N: usize, F>(f: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N],
{
    check_breakpoints(breakpoints)?;
    adaptive_panels(&f, breakpoints, spec)
}

/// Scalar [`integrate_paneled_n`].
pub fn integrate_paneled<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    integrate_paneled_n(|x| [f(x)], breakpoints, spec).map(|v| v[0])
}

fn check_breakpoints(bp: &[f64]) -> Result<()> {
    if bp.len() < 2 {
        return Err(Error::ParameterDomain("at least two breakpoints are required".into()));
    }
    if bp.iter().any(|x| !x.is_finite()) || bp.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::ParameterDomain(
            "breakpoints must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Breakpoints `a, a+h, ..., b` (the last panel may be shorter).
pub fn uniform_breakpoints(a: f64, b: f64, h: f64) -> Vec<f64> {
    let mut out = vec![a];
    let n = ((b - a) / h).ceil().max(1.0) as usize;
    for i in 1..n {
        let x = a + i as f64 * h;
        if x < b {
            out.push(x);
        }
    }
    out.push(b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_weights_sum_to_two() {
        for n in [2, 5, 15, 31, 64] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n={n}: {s}");
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn constant_and_linear() {
        let q = QuadratureSpec::precise();
        assert!((integrate_adaptive(|_| 1.0, 0.0, 1.0, &q).unwrap() - 1.0).abs() < 1e-15);
        assert!((integrate_adaptive(|x| x, 0.0, 1.0, &q).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sine_over_half_period() {
        // antiderivative -cos x
        let q = QuadratureSpec::precise();
        let v = integrate_adaptive(f64::sin, 0.0, PI, &q).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn polynomial_exactness_on_single_panel() {
        for p in [2usize, 4, 7, 15] {
            let rule = GaussLegendre::new(p);
            let deg = 2 * p - 1;
            let exact = (2.0f64.powi(deg as i32 + 1) - 1.0) / (deg as f64 + 1.0);
            let approx: f64 = rule.mapped(1.0, 2.0).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!(((approx - exact) / exact).abs() < 1e-14, "p={p}");
        }
    }

    #[test]
    fn paneled_full_periods_cancel() {
        let q = QuadratureSpec::precise();
        let bp: Vec<f64> = (0..=4).map(|i| i as f64 * PI).collect();
        assert!(integrate_paneled(f64::sin, &bp, &q).unwrap().abs() < 1e-13);
        assert!((integrate_paneled(|_| 1.0, &[0.0, 0.5, 1.0], &q).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn peaked_gaussian() {
        let q = QuadratureSpec::precise();
        let v = integrate_adaptive(|x| (-(x * x) / 1e-4).exp(), -1.0, 1.0, &q).unwrap();
        assert!((v - 1e-2 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let q = QuadratureSpec::new(1e-14, 0.0, 3, 2).unwrap();
        let r = integrate_adaptive(|x| (1.0 / x).sin(), 1e-3, 1.0, &q);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(QuadratureSpec::new(0.0, 0.0, 10, 5).is_err());
        assert!(QuadratureSpec::new(1e-8, -1.0, 10, 5).is_err());
        assert!(QuadratureSpec::new(1e-8, 0.0, 10, 1).is_err());
        assert!(QuadratureSpec::new(1e-8, 0.0, 0, 5).is_err());
        let q = QuadratureSpec::precise();
        assert!(integrate_paneled(|x| x, &[0.0], &q).is_err());
        assert!(integrate_paneled(|x| x, &[0.0, 1.0, 1.0], &q).is_err());
    }
}
