//! Shannon entropies, Fisher informations, disequilibria and rms sizes of
//! the position and momentum densities.
//!
//! Everything is computed once in electric units (lengths in units of the
//! dot radius) and converted to magnetic units (lengths in units of `l_B`):
//! `S_bbar = S_bar +- ln B`, `I_bbar = I_bar / B^{+-1}`, same for `O`, with
//! the upper sign for position.

use serde::Serialize;

use crate::error::Result;
use crate::numerics::QuadratureSpec;
use crate::spectrum::BoundarySpec;
use crate::wavefn::{GaussLaguerre, RadialState};

mod analytic;
mod functionals;
mod sweep;

pub use analytic::{gl_disequilibrium, gl_fisher, gl_rms, gl_shannon, ho_measures, HoKind};
pub use functionals::{
    far_tail_moments, momentum_moments, momentum_overlap, position_moments, position_overlap, radial_moments,
    RadialMoments,
};
pub use sweep::{locate_maximum, locate_sign_change, measure_sweep, state_measures, MeasurePoint};

/// Information measures of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSet {
    pub s_rho_bar: f64,
    pub s_gamma_bar: f64,
    pub s_rho_bbar: Option<f64>,
    pub s_gamma_bbar: Option<f64>,
    pub s_total: f64,
    pub i_rho_bar: f64,
    pub i_gamma_bar: f64,
    pub i_rho_bbar: Option<f64>,
    pub i_gamma_bbar: Option<f64>,
    pub i_product: f64,
    pub o_rho_bar: f64,
    pub o_gamma_bar: f64,
    pub o_rho_bbar: Option<f64>,
    pub o_gamma_bbar: Option<f64>,
    pub o_product: f64,
    pub rms_r_bar: f64,
    /// `None` where `<k^2>` diverges (Neumann walls).
    pub rms_k_bar: Option<f64>,
}

impl MeasureSet {
    /// Assemble from `(position, momentum)` pairs in electric units; the
    /// magnetic-unit fields are filled when `b_bar > 0`.
    pub fn from_electric(
        shannon: (f64, f64),
        fisher: (f64, f64),
        disequilibrium: (f64, f64),
        rms: (f64, Option<f64>),
        b_bar: f64,
    ) -> Self {
        let field = (b_bar > 0.0).then_some(b_bar);
        let lb = field.map(f64::ln);
        Self {
            s_rho_bar: shannon.0,
            s_gamma_bar: shannon.1,
            s_rho_bbar: lb.map(|l| shannon.0 + l),
            s_gamma_bbar: lb.map(|l| shannon.1 - l),
            s_total: shannon.0 + shannon.1,
            i_rho_bar: fisher.0,
            i_gamma_bar: fisher.1,
            i_rho_bbar: field.map(|b| fisher.0 / b),
            i_gamma_bbar: field.map(|b| fisher.1 * b),
            i_product: fisher.0 * fisher.1,
            o_rho_bar: disequilibrium.0,
            o_gamma_bar: disequilibrium.1,
            o_rho_bbar: field.map(|b| disequilibrium.0 / b),
            o_gamma_bbar: field.map(|b| disequilibrium.1 * b),
            o_product: disequilibrium.0 * disequilibrium.1,
            rms_r_bar: rms.0,
            rms_k_bar: rms.1,
        }
    }

    fn from_moments(pos: &RadialMoments, mom: &RadialMoments, rms_k2: Option<f64>, b_bar: f64) -> Self {
        Self::from_electric(
            (pos.shannon, mom.shannon),
            (pos.fisher, mom.fisher),
            (pos.disequilibrium, mom.disequilibrium),
            (pos.second.sqrt(), rms_k2.map(f64::sqrt)),
            b_bar,
        )
    }
}

/// `<k^2>`: finite only when the state vanishes on the rim, and then equal
/// to the Laplacian expectation in position space.
fn momentum_second(state: &RadialState, pos: &RadialMoments) -> Option<f64> {
    match state.bc() {
        BoundarySpec::Dirichlet => Some(pos.kinetic),
        BoundarySpec::Neumann => None,
    }
}

/// All measures of a state with its momentum part built.
pub fn measures(state: &RadialState, quad: &QuadratureSpec) -> Result<MeasureSet> {
    let pos = position_moments(state, quad)?;
    let mom = momentum_moments(state, quad)?;
    Ok(MeasureSet::from_moments(
        &pos,
        &mom,
        momentum_second(state, &pos),
        state.b_bar(),
    ))
}

/// `(S_rho, S_gamma)` in electric units.
pub fn shannon(state: &RadialState, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    Ok((
        position_moments(state, quad)?.shannon,
        momentum_moments(state, quad)?.shannon,
    ))
}

/// `(I_rho, I_gamma)` in electric units.
pub fn fisher(state: &RadialState, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    Ok((
        position_moments(state, quad)?.fisher,
        momentum_moments(state, quad)?.fisher,
    ))
}

/// `(O_rho, O_gamma)` in electric units.
pub fn disequilibrium(state: &RadialState, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    Ok((
        position_moments(state, quad)?.disequilibrium,
        momentum_moments(state, quad)?.disequilibrium,
    ))
}

/// `(sqrt<r^2>, sqrt<k^2>)`; the latter is `None` for Neumann states.
pub fn rms(state: &RadialState, quad: &QuadratureSpec) -> Result<(f64, Option<f64>)> {
    let pos = position_moments(state, quad)?;
    Ok((pos.second.sqrt(), momentum_second(state, &pos).map(f64::sqrt)))
}

/// The numerical pipeline applied to a closed-form position/momentum pair.
/// `b_bar` selects the magnetic-unit conversion (0 for none).
pub fn gauss_laguerre_measures(
    position: &GaussLaguerre,
    momentum: &GaussLaguerre,
    b_bar: f64,
    quad: &QuadratureSpec,
) -> Result<MeasureSet> {
    let pos = radial_moments(position, position.alpha(), &position.breakpoints(), quad)?;
    let mom = radial_moments(momentum, momentum.alpha(), &momentum.breakpoints(), quad)?;
    Ok(MeasureSet::from_moments(&pos, &mom, Some(mom.second), b_bar))
}
