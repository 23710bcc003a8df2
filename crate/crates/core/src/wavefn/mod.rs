//! Radial wavefunctions in position and momentum space.

mod analytic;
mod momentum;
mod position;

pub use analytic::{ho_momentum, ho_position, landau_momentum, landau_position, GaussLaguerre, HOParams};
pub use momentum::{build_momentum, momentum_direct, Momentum, TailModel, TAIL_TERMS};
pub use position::{build_position, RadialState};

use crate::error::Result;
use crate::numerics::QuadratureSpec;
use crate::spectrum::EnergyLevel;

/// A real radial profile `t -> (f(t), f'(t))` on the half line.
pub trait RadialFunction {
    fn eval(&self, t: f64) -> (f64, f64);
}

/// Position function with its momentum transform attached.
pub fn build_state(energy: &EnergyLevel, quad: &QuadratureSpec) -> Result<RadialState> {
    build_momentum(build_position(energy, quad)?, quad)
}
