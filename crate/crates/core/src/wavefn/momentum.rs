//! Momentum radial functions `K(k) = int_0^1 r R(r) J_|m|(k r) dr`.
//!
//! Up to a cutoff `k_support` the transform is evaluated by a fixed
//! composite Gauss–Legendre sum whose nodes carry `r R(r)` precomputed.
//! Beyond it, repeated integration by parts at the rim gives
//! `K(k) = sum_j (-1)^j g_j(1) J_{|m|+1+j}(k) / k^{j+1}` with
//! `g_0 = R r^{-|m|}` and `g_{j+1} = g_j' / r`; the expansion is truncated
//! after [`TAIL_TERMS`] terms. For the Kummer form `g_j` follows from
//! derivatives of `M` in closed form, so no numerical differentiation is
//! involved. The cutoff is the smallest doubling of a start value at
//! which the two representations agree.

use std::f64::consts::PI;

use super::position::{unit_shape, RadialState, Shape};
use super::RadialFunction;
use crate::error::{Error, Result};
use crate::numerics::{integrate_paneled, GaussLegendre, QuadratureSpec};
use crate::specialfn::{bessel_j_array, bessel_zero, kummer_m, KummerParams};
use crate::spectrum::BoundarySpec;

/// Number of terms of the rim expansion.
pub const TAIL_TERMS: usize = 10;
const NODES_PER_PANEL: usize = 20;
const AGREEMENT_REL: f64 = 1e-5;
const AGREEMENT_ABS: f64 = 1e-12;
const MAX_DOUBLINGS: usize = 10;

/// Large-`k` expansion of a momentum function.
#[derive(Debug, Clone, PartialEq)]
pub struct TailModel {
    abs_m: u32,
    coeffs: [f64; TAIL_TERMS],
    /// Power `p` of the leading term `C J(k) / k^p`.
    order: u32,
}

impl TailModel {
    pub(crate) fn new(abs_m: u32, coeffs: [f64; TAIL_TERMS], bc: BoundarySpec) -> Self {
        let order = match bc {
            BoundarySpec::Dirichlet => 2,
            BoundarySpec::Neumann => 1,
        };
        Self { abs_m, coeffs, order }
    }

    pub fn abs_m(&self) -> u32 {
        self.abs_m
    }

    pub fn coefficients(&self) -> &[f64; TAIL_TERMS] {
        &self.coeffs
    }

    /// `p` in `K ~ C J_nu(k) / k^p`: 1 for Neumann, 2 for Dirichlet walls.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient `C` of the leading term.
    pub fn leading(&self) -> f64 {
        self.coeffs[self.order as usize - 1]
    }

    /// `(K(k), K'(k))` from the expansion.
    pub fn eval(&self, k: f64) -> (f64, f64) {
        let m = self.abs_m as usize;
        let js = bessel_j_array((m + TAIL_TERMS + 1) as u32, k);
        let inv = 1.0 / k;
        let mut value = 0.0;
        let mut deriv = 0.0;
        let mut pow = inv;
        for (j, &g) in self.coeffs.iter().enumerate() {
            if g != 0.0 {
                let nu = m + 1 + j;
                let s = if j % 2 == 0 { g } else { -g };
                let jp = 0.5 * (js[nu - 1] - js[nu + 1]);
                value += s * js[nu] * pow;
                deriv += s * (jp * pow - (j + 1) as f64 * js[nu] * pow * inv);
            }
            pow *= inv;
        }
        (value, deriv)
    }

    /// Size of the leading term, `|C| sqrt(2/(pi k)) / k^p`.
    pub fn envelope(&self, k: f64) -> f64 {
        self.leading().abs() * (2.0 / (PI * k)).sqrt() / k.powi(self.order as i32)
    }
}

impl RadialFunction for TailModel {
    fn eval(&self, k: f64) -> (f64, f64) {
        TailModel::eval(self, k)
    }
}

/// Momentum transform of one state.
#[derive(Debug, Clone)]
pub struct Momentum {
    abs_m: u32,
    nodes: Vec<f64>,
    /// `w_i r_i R(r_i)`
    weights: Vec<f64>,
    k_support: f64,
    tail: TailModel,
}

impl Momentum {
    pub fn k_support(&self) -> f64 {
        self.k_support
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `(K(k), K'(k))` by the node sum, regardless of `k_support`.
    pub fn direct(&self, k: f64) -> (f64, f64) {
        let m = self.abs_m as usize;
        let mut value = 0.0;
        let mut deriv = 0.0;
        for (&r, &w) in self.nodes.iter().zip(&self.weights) {
            let js = bessel_j_array(self.abs_m + 1, k * r);
            let jp = if m == 0 { -js[1] } else { 0.5 * (js[m - 1] - js[m + 1]) };
            value += w * js[m];
            deriv += w * r * jp;
        }
        (value, deriv)
    }

    /// `(K(k), K'(k))`: node sum up to `k_support`, rim expansion beyond.
    pub fn eval(&self, k: f64) -> (f64, f64) {
        if k <= self.k_support {
            self.direct(k)
        } else {
            self.tail.eval(k)
        }
    }
}

impl RadialFunction for Momentum {
    fn eval(&self, k: f64) -> (f64, f64) {
        Momentum::eval(self, k)
    }
}

fn node_set(state: &RadialState, k_max: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let b = state.b_bar();
    let h = (8.0 / k_max).min(0.5 / (b + 1.0).sqrt()).min(0.125);
    let panels = (1.0 / h).ceil() as usize;
    let rule = GaussLegendre::new(NODES_PER_PANEL);
    let mut nodes = Vec::with_capacity(panels * NODES_PER_PANEL);
    let mut weights = Vec::with_capacity(panels * NODES_PER_PANEL);
    for p in 0..panels {
        let a = p as f64 / panels as f64;
        let c = (p + 1) as f64 / panels as f64;
        for (r, w) in rule.mapped(a, c) {
            let (u, _) = unit_shape(state.shape, state.abs_m, r)?;
            nodes.push(r);
            weights.push(w * r * state.scale * u);
        }
    }
    Ok((nodes, weights))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `g_j(1)` for `j < TAIL_TERMS`.
fn rim_coefficients(state: &RadialState) -> Result<[f64; TAIL_TERMS]> {
    let m = state.abs_m;
    let mut g = [0.0; TAIL_TERMS];
    match state.shape {
        Shape::Constant => g[0] = state.scale,
        Shape::Bessel { j } => {
            // (d/(r dr))^k [z^{-m} J_m(z)] = (-1)^k z^{-m-k} J_{m+k}(z) with z = j r
            let js = bessel_j_array(m + TAIL_TERMS as u32, j);
            let mut jp = 1.0;
            for (k, gk) in g.iter_mut().enumerate() {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                *gk = state.scale * sign * jp * js[m as usize + k];
                jp *= j;
            }
        }
        Shape::Kummer { a, b_bar } => {
            // g = scale e^{-x/2} M(a, b, x), d/(r dr) = B d/dx
            let b = m as f64 + 1.0;
            let x = 0.5 * b_bar;
            let mut derivs = [0.0; TAIL_TERMS];
            let mut poch = 1.0;
            for (i, d) in derivs.iter_mut().enumerate() {
                *d = poch * kummer_m(KummerParams::new(a + i as f64, b + i as f64, x))?;
                poch *= (a + i as f64) / (b + i as f64);
            }
            let e = (-0.5 * x).exp();
            let mut bj = 1.0;
            for (j, gj) in g.iter_mut().enumerate() {
                let mut s = 0.0;
                for (i, d) in derivs.iter().enumerate().take(j + 1) {
                    s += binomial(j, i) * (-0.5f64).powi((j - i) as i32) * d;
                }
                *gj = state.scale * bj * e * s;
                bj *= b_bar;
            }
        }
    }
    // impose the wall condition exactly
    match state.bc() {
        BoundarySpec::Dirichlet => g[0] = 0.0,
        BoundarySpec::Neumann => g[1] = -(m as f64) * g[0],
    }
    Ok(g)
}

/// Attach the momentum transform to a position state.
pub fn build_momentum(mut state: RadialState, _quad: &QuadratureSpec) -> Result<RadialState> {
    let level = state.energy.level;
    let b = state.b_bar();
    let at = |e: Error| e.at(level.n, level.m, b);
    let tail = TailModel::new(state.abs_m, rim_coefficients(&state).map_err(at)?, state.bc());
    let j0 = bessel_zero(state.abs_m, level.n + 1);
    let mut kc = (4.0 * b.sqrt()).max(4.0 * (j0 + level.n as f64 + 5.0));
    for _ in 0..MAX_DOUBLINGS {
        let (nodes, weights) = node_set(&state, 1.25 * kc).map_err(at)?;
        let trial = Momentum {
            abs_m: state.abs_m,
            nodes,
            weights,
            k_support: kc,
            tail: tail.clone(),
        };
        let agrees = (0..=8).all(|i| {
            let k = kc * (1.0 + 0.25 * i as f64 / 8.0);
            let direct = trial.direct(k).0;
            let model = tail.eval(k).0;
            (direct - model).abs() <= AGREEMENT_REL * tail.envelope(k) + AGREEMENT_ABS
        });
        if agrees {
            state.momentum = Some(trial);
            return Ok(state);
        }
        kc *= 2.0;
    }
    Err(at(Error::NonConvergence {
        a: 0.0,
        b: kc,
        estimate: f64::NAN,
    }))
}

/// `K(k)` by adaptive quadrature with panel breaks at the kernel zeros
/// `j_{|m|,l} / k`. Slow; meant for checking the node sums.
pub fn momentum_direct(state: &RadialState, k: f64, quad: &QuadratureSpec) -> Result<f64> {
    let m = state.abs_m;
    let mut bp = vec![0.0];
    let mut l = 1;
    loop {
        let r = bessel_zero(m, l) / k;
        if r >= 1.0 {
            break;
        }
        bp.push(r);
        l += 1;
    }
    bp.push(1.0);
    integrate_paneled(
        |r| r * state.position(r) * crate::specialfn::bessel_j(m, k * r),
        &bp,
        quad,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::{bessel_j, bessel_j_prime};
    use crate::spectrum::{eigenvalue_default, FieldStrength, LevelId};
    use crate::wavefn::build_state;

    fn state(bc: BoundarySpec, n: u32, m: i32, b: f64) -> RadialState {
        let e = eigenvalue_default(bc, LevelId::new(n, m), FieldStrength::new(b).unwrap()).unwrap();
        build_state(&e, &QuadratureSpec::precise()).unwrap()
    }

    #[test]
    fn zero_field_dirichlet_matches_lommel() {
        for &(n, m) in &[(0u32, 0i32), (1, 2), (2, -1)] {
            let s = state(BoundarySpec::Dirichlet, n, m, 0.0);
            let am = m.unsigned_abs();
            let j = bessel_zero(am, n + 1);
            let norm = s.norm_const;
            for k in [0.5, 3.0, 17.0, 60.0, 400.0, 5000.0] {
                let exact = norm * j * bessel_j(am, k) * bessel_j_prime(am, j) / (k * k - j * j);
                let got = s.momentum(k).unwrap();
                assert!(
                    (got - exact).abs() < 1e-11 * (1.0 + exact.abs()),
                    "n={n} m={m} k={k}: {got} {exact}"
                );
            }
        }
    }

    #[test]
    fn neumann_ground_state_is_airy_like() {
        // K = sqrt(2) J_1(k) / k
        let s = state(BoundarySpec::Neumann, 0, 0, 0.0);
        for k in [0.1, 2.0, 40.0, 900.0] {
            let exact = 2f64.sqrt() * bessel_j(1, k) / k;
            assert!((s.momentum(k).unwrap() - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn node_sum_and_tail_match_adaptive_quadrature() {
        let q = QuadratureSpec::precise();
        for bc in BoundarySpec::ALL {
            for &(n, m, b) in &[(0u32, 0i32, 1.0), (1, -2, 15.0), (2, 1, 60.0), (0, 3, 150.0)] {
                let s = state(bc, n, m, b);
                let kc = s.k_support().unwrap();
                for k in [0.3, 4.0, 0.5 * kc, 0.999 * kc, 1.1 * kc, 3.0 * kc] {
                    let exact = momentum_direct(&s, k, &q).unwrap();
                    let got = s.momentum(k).unwrap();
                    let tol = 1e-9 * s.momentum(0.3).unwrap().abs().max(1e-3)
                        + 1e-5 * s.require_momentum().unwrap().tail().envelope(k);
                    assert!(
                        (got - exact).abs() < tol.max(1e-12),
                        "{bc} ({n},{m}) b={b} k={k}: {got} {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let s = state(BoundarySpec::Neumann, 1, 1, 8.0);
        let kc = s.k_support().unwrap();
        for k in [1.0, 9.0, 2.0 * kc] {
            let h = 1e-5;
            let d = (s.momentum(k + h).unwrap() - s.momentum(k - h).unwrap()) / (2.0 * h);
            let (_, dk) = s.momentum_with_derivative(k).unwrap();
            assert!((d - dk).abs() < 1e-7, "k={k}: {d} {dk}");
        }
    }

    #[test]
    fn wall_condition_in_coefficients() {
        let s = state(BoundarySpec::Neumann, 0, 2, 5.0);
        let g = s.require_momentum().unwrap().tail().coefficients();
        assert!((g[1] + 2.0 * g[0]).abs() < 1e-15);
        let d = state(BoundarySpec::Dirichlet, 0, 2, 5.0);
        let g = d.require_momentum().unwrap().tail().coefficients();
        assert_eq!(g[0], 0.0);
        // g_1 = R'(1) for a Dirichlet state
        assert!((g[1] - d.position_derivative(1.0)).abs() < 1e-10);
    }
}
