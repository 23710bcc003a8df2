//! Radial density functionals shared by the position and momentum sides.
//!
//! For a radial amplitude `F(t)` normalized as `int F^2 t dt = 1` the
//! two-dimensional density is `F^2 / (2 pi)`, and all measures reduce to
//! one-dimensional integrals over `t`.

use std::f64::consts::{LN_2, PI};
use std::ops::Add;

use crate::error::Result;
use crate::numerics::{integrate_paneled_n, refine_root, uniform_breakpoints, Bracket, QuadratureSpec};
use crate::wavefn::{RadialFunction, RadialState, TailModel};

/// Densities below this are treated as exact zeros in `p ln p`.
const TINY_DENSITY: f64 = 1e-300;

/// Raw radial integrals of one amplitude.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RadialMoments {
    /// `int F^2 t dt`
    pub norm: f64,
    /// `-int F^2 ln(F^2 / 2pi) t dt`
    pub shannon: f64,
    /// `4 int F'^2 t dt`
    pub fisher: f64,
    /// `(1/2pi) int F^4 t dt`
    pub disequilibrium: f64,
    /// `int t^2 F^2 t dt`
    pub second: f64,
    /// `int (F'^2 + m^2 F^2 / t^2) t dt`, the Laplacian expectation.
    pub kinetic: f64,
}

impl Add for RadialMoments {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            norm: self.norm + o.norm,
            shannon: self.shannon + o.shannon,
            fisher: self.fisher + o.fisher,
            disequilibrium: self.disequilibrium + o.disequilibrium,
            second: self.second + o.second,
            kinetic: self.kinetic + o.kinetic,
        }
    }
}

fn integrand(f: f64, df: f64, t: f64, m2: f64) -> [f64; 6] {
    let f2 = f * f;
    let p = f2 / (2.0 * PI);
    let plogp = if p < TINY_DENSITY { 0.0 } else { -f2 * p.ln() };
    let centrifugal = if t > 0.0 { m2 * f2 / (t * t) } else { 0.0 };
    [
        f2 * t,
        plogp * t,
        4.0 * df * df * t,
        f2 * f2 * t / (2.0 * PI),
        t * t * f2 * t,
        (df * df + centrifugal) * t,
    ]
}

/// Integrals of `f` over `[bp[0], bp[last]]`.
pub fn radial_moments<F: RadialFunction + ?Sized>(
    f: &F,
    abs_m: u32,
    breakpoints: &[f64],
    quad: &QuadratureSpec,
) -> Result<RadialMoments> {
    let m2 = (abs_m as f64).powi(2);
    let v = integrate_paneled_n(
        |t| {
            let (y, dy) = f.eval(t);
            integrand(y, dy, t, m2)
        },
        breakpoints,
        quad,
    )?;
    Ok(RadialMoments {
        norm: v[0],
        shannon: v[1],
        fisher: v[2],
        disequilibrium: v[3],
        second: v[4],
        kinetic: v[5],
    })
}

/// `int_k^inf t^{-q} dt`
fn power_tail(k: f64, q: f64) -> f64 {
    if q <= 1.0 {
        f64::INFINITY
    } else {
        k.powf(1.0 - q) / (q - 1.0)
    }
}

/// `int_k^inf ln t * t^{-q} dt`
fn log_power_tail(k: f64, q: f64) -> f64 {
    let s = q - 1.0;
    k.powf(-s) * (k.ln() / s + 1.0 / (s * s))
}

/// Far momentum tail from the leading term `K ~ C J_nu(k) / k^p`, with the
/// oscillation averaged: `K^2 k -> (C^2/pi) / k^{2p}`.
pub fn far_tail_moments(model: &TailModel, from: f64) -> RadialMoments {
    let c = model.leading();
    let p = model.order() as f64;
    let a = 2.0 * c * c / PI;
    if a == 0.0 {
        return RadialMoments::default();
    }
    let i2p = power_tail(from, 2.0 * p);
    // <cos^2 ln cos^2> over a period is 1/2 - ln 2
    let shannon = -a
        * (0.5 * ((c * c / (PI * PI)).ln() * i2p - (2.0 * p + 1.0) * log_power_tail(from, 2.0 * p))
            + (0.5 - LN_2) * i2p);
    RadialMoments {
        norm: 0.5 * a * i2p,
        shannon,
        fisher: 2.0 * a * i2p,
        disequilibrium: a * a * 3.0 / 8.0 * power_tail(from, 4.0 * p + 1.0) / (2.0 * PI),
        second: 0.5 * a * power_tail(from, 2.0 * p - 2.0),
        kinetic: 0.0,
    }
}

/// Upper end of the numerically integrated momentum range.
pub(crate) fn far_cutoff(k_support: f64) -> f64 {
    (20.0 * k_support).max(4000.0)
}

/// Breakpoints every `pi` from `a` to `b`, the period of the Bessel kernel.
pub(crate) fn period_breakpoints(a: f64, b: f64) -> Vec<f64> {
    uniform_breakpoints(a, b, PI)
}

/// Panels of the rim expansion split at its zeros, where `K^2 ln K^2` is
/// not smooth. Zeros are bracketed between the extrema of the leading
/// Bessel term; a bracket without a sign change is simply merged.
pub(crate) fn tail_breakpoints(model: &TailModel, a: f64, b: f64) -> Vec<f64> {
    let nu = (model.abs_m() + model.order()) as f64;
    // McMahon estimate of the s-th zero of J_nu, offset by half a period
    let extremum = |s: f64| {
        let beta = (s + 0.5 * nu - 0.25) * PI;
        beta - (4.0 * nu * nu - 1.0) / (8.0 * beta) + 0.5 * PI
    };
    let mut s = ((a / PI) - 0.5 * nu - 1.0).floor().max(1.0);
    while extremum(s) <= a {
        s += 1.0;
    }
    let mut out = vec![a];
    let mut x0 = extremum(s);
    let mut f0 = model.eval(x0).0;
    while x0 < b {
        s += 1.0;
        let x1 = extremum(s);
        let f1 = model.eval(x1).0;
        if (f0 < 0.0) != (f1 < 0.0) {
            if let Ok(z) = refine_root(
                |k| model.eval(k).0,
                Bracket {
                    lo: x0,
                    hi: x1,
                    f_lo: f0,
                    f_hi: f1,
                },
                1e-12,
            ) {
                if z > a && z < b && z > out[out.len() - 1] {
                    out.push(z);
                }
            }
        }
        x0 = x1;
        f0 = f1;
    }
    out.push(b);
    out
}

/// Tolerances for pieces of integrals whose total is of order one: the
/// relative tolerance then also bounds the absolute error.
fn unit_scaled(quad: &QuadratureSpec) -> Result<QuadratureSpec> {
    quad.with_abs_tol(quad.abs_tol().max(1e-2 * quad.rel_tol()))
}

/// Position-space integrals of a dot state over `[0, 1]`.
pub fn position_moments(state: &RadialState, quad: &QuadratureSpec) -> Result<RadialMoments> {
    radial_moments(state, state.abs_m(), &state.position_breakpoints(), quad)
}

/// Momentum-space integrals over `[0, inf)`: node sums up to `k_support`,
/// the rim expansion up to a far cutoff, then the averaged leading term.
pub fn momentum_moments(state: &RadialState, quad: &QuadratureSpec) -> Result<RadialMoments> {
    let mom = state.require_momentum()?;
    let kc = mom.k_support();
    let far = far_cutoff(kc);
    let m = state.abs_m();
    let near = radial_moments(mom, m, &period_breakpoints(0.0, kc), quad)?;
    let middle = radial_moments(
        mom.tail(),
        m,
        &tail_breakpoints(mom.tail(), kc, far),
        &unit_scaled(quad)?,
    )?;
    Ok(near + middle + far_tail_moments(mom.tail(), far))
}

/// `int R_1 R_2 r dr` over the dot.
pub fn position_overlap(a: &RadialState, b: &RadialState, quad: &QuadratureSpec) -> Result<f64> {
    let bp = if a.b_bar() >= b.b_bar() {
        a.position_breakpoints()
    } else {
        b.position_breakpoints()
    };
    let v = integrate_paneled_n(|r| [a.position(r) * b.position(r) * r], &bp, quad)?;
    Ok(v[0])
}

/// `int K_1 K_2 k dk` over `[0, inf)` for two states of the same `|m|` and
/// wall condition.
pub fn momentum_overlap(a: &RadialState, b: &RadialState, quad: &QuadratureSpec) -> Result<f64> {
    if a.abs_m() != b.abs_m() || a.bc() != b.bc() {
        return Err(crate::Error::ParameterDomain(
            "momentum overlaps need equal |m| and wall condition".into(),
        ));
    }
    let (ma, mb) = (a.require_momentum()?, b.require_momentum()?);
    let quad = &unit_scaled(quad)?;
    let kc = ma.k_support().max(mb.k_support());
    let far = far_cutoff(kc);
    let near = integrate_paneled_n(
        |k| [ma.eval(k).0 * mb.eval(k).0 * k],
        &period_breakpoints(0.0, kc),
        quad,
    )?;
    let (ta, tb) = (ma.tail(), mb.tail());
    let middle = integrate_paneled_n(
        |k| [ta.eval(k).0 * tb.eval(k).0 * k],
        &tail_breakpoints(ta, kc, far),
        quad,
    )?;
    let tail = ta.leading() * tb.leading() / PI * power_tail(far, 2.0 * ta.order() as f64);
    Ok(near[0] + middle[0] + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_integrals() {
        assert!((power_tail(2.0, 3.0) - 0.125).abs() < 1e-15);
        assert!(power_tail(2.0, 1.0).is_infinite());
        // int_2^inf ln t / t^2 dt = (ln 2 + 1) / 2
        assert!((log_power_tail(2.0, 2.0) - 0.5 * (LN_2 + 1.0)).abs() < 1e-15);
    }
}
