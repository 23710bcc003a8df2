//! Normalized position radial functions of the dot.

use std::f64::consts::SQRT_2;

use super::momentum::Momentum;
use super::RadialFunction;
use crate::error::{Error, Result};
use crate::numerics::{integrate_paneled, uniform_breakpoints, QuadratureSpec};
use crate::specialfn::{bessel_j_array, kummer_m, kummer_m_prime, KummerParams};
use crate::spectrum::{zero_field_energy, BoundarySpec, EnergyLevel};

/// How `R(r)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Shape {
    /// `R = N exp(-x/2) r^|m| M(a, |m|+1, x)`, `x = B r^2 / 2`.
    Kummer { a: f64, b_bar: f64 },
    /// `R = N J_|m|(j r)` at zero field.
    Bessel { j: f64 },
    /// The constant Neumann ground state at zero field.
    Constant,
}

/// A normalized radial eigenfunction with its (optional) momentum transform.
#[derive(Debug, Clone)]
pub struct RadialState {
    pub energy: EnergyLevel,
    /// Normalization constant in the `(B r^2/2)^{|m|/2}` convention at
    /// nonzero field, or the coefficient of `J_|m|(j r)` at zero field.
    pub norm_const: f64,
    pub(crate) shape: Shape,
    /// Multiplies the shape function (`r^|m|` convention at nonzero field).
    pub(crate) scale: f64,
    pub(crate) abs_m: u32,
    pub(crate) momentum: Option<Momentum>,
}

impl RadialState {
    pub fn bc(&self) -> BoundarySpec {
        self.energy.bc
    }

    pub fn abs_m(&self) -> u32 {
        self.abs_m
    }

    pub fn b_bar(&self) -> f64 {
        self.energy.field.b_bar()
    }

    /// `R(r)` on `[0, 1]`.
    pub fn position(&self, r: f64) -> f64 {
        self.position_with_derivative(r).0
    }

    /// `R'(r)` on `[0, 1]`.
    pub fn position_derivative(&self, r: f64) -> f64 {
        self.position_with_derivative(r).1
    }

    /// `(R(r), R'(r))`; NaN if the Kummer evaluation fails.
    pub fn position_with_derivative(&self, r: f64) -> (f64, f64) {
        unit_shape(self.shape, self.abs_m, r)
            .map(|(u, du)| (self.scale * u, self.scale * du))
            .unwrap_or((f64::NAN, f64::NAN))
    }

    /// Momentum transform attached by [`super::build_momentum`].
    pub fn momentum_data(&self) -> Option<&Momentum> {
        self.momentum.as_ref()
    }

    pub fn has_momentum(&self) -> bool {
        self.momentum.is_some()
    }

    /// `K(k)`; requires the momentum part.
    pub fn momentum(&self, k: f64) -> Result<f64> {
        Ok(self.require_momentum()?.eval(k).0)
    }

    /// `(K(k), K'(k))`; requires the momentum part.
    pub fn momentum_with_derivative(&self, k: f64) -> Result<(f64, f64)> {
        Ok(self.require_momentum()?.eval(k))
    }

    /// Momentum cutoff beyond which the analytic tail model is used.
    pub fn k_support(&self) -> Option<f64> {
        self.momentum.as_ref().map(|m| m.k_support())
    }

    pub(crate) fn require_momentum(&self) -> Result<&Momentum> {
        self.momentum
            .as_ref()
            .ok_or_else(|| Error::ParameterDomain("momentum part of the state has not been built".into()))
    }

    /// Position panels suited to the Gaussian width of the state.
    pub fn position_breakpoints(&self) -> Vec<f64> {
        let h = (0.5 / (self.b_bar() + 1.0).sqrt()).min(0.125);
        uniform_breakpoints(0.0, 1.0, h)
    }
}

impl RadialFunction for RadialState {
    fn eval(&self, r: f64) -> (f64, f64) {
        self.position_with_derivative(r)
    }
}

/// Unnormalized shape and its derivative.
pub(crate) fn unit_shape(shape: Shape, abs_m: u32, r: f64) -> Result<(f64, f64)> {
    let mf = abs_m as f64;
    match shape {
        Shape::Constant => Ok((1.0, 0.0)),
        Shape::Bessel { j } => {
            let js = bessel_j_array(abs_m + 1, j * r);
            let jm = js[abs_m as usize];
            let dj = if abs_m == 0 {
                -js[1]
            } else {
                0.5 * (js[abs_m as usize - 1] - js[abs_m as usize + 1])
            };
            Ok((jm, j * dj))
        }
        Shape::Kummer { a, b_bar } => {
            let x = 0.5 * b_bar * r * r;
            let p = KummerParams::new(a, mf + 1.0, x);
            let m = kummer_m(p)?;
            let mp = kummer_m_prime(p)?;
            let g = (-0.5 * x).exp();
            if r == 0.0 {
                let d = if abs_m == 1 { g * m } else { 0.0 };
                let v = if abs_m == 0 { g * m } else { 0.0 };
                return Ok((v, d));
            }
            let rm = r.powi(abs_m as i32);
            let value = g * rm * m;
            // d/dr [e^{-x/2} r^|m| M] = e^{-x/2} [ |m| r^{|m|-1} M + B r^{|m|+1} (M' - M/2) ]
            let deriv = g * (mf * rm / r * m + b_bar * rm * r * (mp - 0.5 * m));
            Ok((value, deriv))
        }
    }
}

/// Build the normalized position function for an eigenvalue.
pub fn build_position(energy: &EnergyLevel, quad: &QuadratureSpec) -> Result<RadialState> {
    let level = energy.level;
    let abs_m = level.abs_m();
    let b_bar = energy.field.b_bar();
    let at = |e: Error| e.at(level.n, level.m, b_bar);

    if b_bar == 0.0 {
        let j = crate::spectrum::zero_field_root(energy.bc, level);
        if j == 0.0 {
            return Ok(RadialState {
                energy: *energy,
                norm_const: SQRT_2,
                shape: Shape::Constant,
                scale: SQRT_2,
                abs_m,
                momentum: None,
            });
        }
        // int_0^1 J_m(j r)^2 r dr in closed form
        let js = bessel_j_array(abs_m + 1, j);
        let mf = abs_m as f64;
        let norm2 = match energy.bc {
            BoundarySpec::Dirichlet => 0.5 * js[abs_m as usize + 1].powi(2),
            BoundarySpec::Neumann => 0.5 * (1.0 - mf * mf / (j * j)) * js[abs_m as usize].powi(2),
        };
        let n = norm2.sqrt().recip();
        debug_assert!((energy.e_bar - zero_field_energy(energy.bc, level)).abs() < 1e-12);
        return Ok(RadialState {
            energy: *energy,
            norm_const: n,
            shape: Shape::Bessel { j },
            scale: n,
            abs_m,
            momentum: None,
        });
    }

    let a = energy
        .kummer_a
        .unwrap_or_else(|| level.kummer_offset() - energy.e_bbar.unwrap_or(0.0));
    let shape = Shape::Kummer { a, b_bar };
    let state = RadialState {
        energy: *energy,
        norm_const: 1.0,
        shape,
        scale: 1.0,
        abs_m,
        momentum: None,
    };
    // surface errors here rather than as NaN inside the quadrature
    unit_shape(shape, abs_m, 1.0).map_err(at)?;
    let bp = state.position_breakpoints();
    let norm_quad = quad.with_rel_tol(quad.rel_tol().min(1e-12))?;
    let norm2 = integrate_paneled(
        |r| {
            let (u, _) = unit_shape(shape, abs_m, r).unwrap_or((f64::NAN, f64::NAN));
            u * u * r
        },
        &bp,
        &norm_quad,
    )
    .map_err(|e| Error::NormalizationFailure(e.to_string()))
    .map_err(at)?;
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(at(Error::NormalizationFailure(format!("norm integral {norm2}"))));
    }
    let scale = norm2.sqrt().recip();
    let norm_const = scale / (0.5 * b_bar).powf(0.5 * abs_m as f64);
    let state = RadialState {
        scale,
        norm_const,
        ..state
    };
    check_boundary(&state).map_err(at)?;
    Ok(state)
}

fn check_boundary(state: &RadialState) -> Result<()> {
    let samples: Vec<(f64, f64)> = (1..=200)
        .map(|i| state.position_with_derivative(i as f64 / 200.0))
        .collect();
    let (r1, dr1) = state.position_with_derivative(1.0);
    match state.bc() {
        BoundarySpec::Dirichlet => {
            let max = samples.iter().map(|s| s.0.abs()).fold(0.0, f64::max);
            if r1.abs() > 1e-7 * max {
                return Err(Error::NormalizationFailure(format!(
                    "Dirichlet residual R(1) = {r1:e}, max |R| = {max:e}"
                )));
            }
        }
        BoundarySpec::Neumann => {
            let max = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
            if dr1.abs() > 1e-6 * max.max(f64::MIN_POSITIVE) && dr1.abs() > 1e-12 {
                return Err(Error::NormalizationFailure(format!(
                    "Neumann residual R'(1) = {dr1:e}, max |R'| = {max:e}"
                )));
            }
        }
    }
    Ok(())
}
