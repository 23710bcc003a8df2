use std::cell::Cell;

use rayon::prelude::*;
use serde::Serialize;

use super::{measures, MeasureSet};
use crate::error::{Error, Result};
use crate::numerics::{refine_root, Bracket, QuadratureSpec};
use crate::spectrum::{eigenvalue_default, BoundarySpec, FieldStrength, LevelId};
use crate::wavefn::build_state;

/// Measures of one level at one field strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurePoint {
    pub bc: BoundarySpec,
    pub n: u32,
    pub m: i32,
    pub b_bar: f64,
    pub e_bar: f64,
    pub e_bbar: Option<f64>,
    #[serde(flatten)]
    pub measures: MeasureSet,
}

/// Solve, build and measure one state.
pub fn state_measures(bc: BoundarySpec, level: LevelId, b_bar: f64, quad: &QuadratureSpec) -> Result<MeasurePoint> {
    let run = || -> Result<MeasurePoint> {
        let energy = eigenvalue_default(bc, level, FieldStrength::new(b_bar)?)?;
        let state = build_state(&energy, quad)?;
        Ok(MeasurePoint {
            bc,
            n: level.n,
            m: level.m,
            b_bar,
            e_bar: energy.e_bar,
            e_bbar: energy.e_bbar,
            measures: measures(&state, quad)?,
        })
    };
    run().map_err(|e| e.at(level.n, level.m, b_bar))
}

/// Measures along a field grid, computed in parallel.
pub fn measure_sweep(
    bc: BoundarySpec,
    level: LevelId,
    b_grid: &[f64],
    quad: &QuadratureSpec,
) -> Result<Vec<MeasurePoint>> {
    if b_grid.iter().any(|b| !(*b >= 0.0)) {
        return Err(Error::ParameterDomain("field grid values must be non-negative".into()));
    }
    b_grid.par_iter().map(|&b| state_measures(bc, level, b, quad)).collect()
}

/// Root of `f` in `[lo, hi]`, first bracketed by a scan with `step`.
pub fn locate_sign_change<F>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let steps = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut x0 = lo;
    let mut f0 = f(x0)?;
    for i in 1..=steps {
        let x1 = (lo + i as f64 * step).min(hi);
        let f1 = f(x1)?;
        if (f0 < 0.0) != (f1 < 0.0) {
            let err: Cell<Option<Error>> = Cell::new(None);
            let g = |x: f64| {
                f(x).unwrap_or_else(|e| {
                    err.set(Some(e));
                    f64::NAN
                })
            };
            let root = refine_root(
                g,
                Bracket {
                    lo: x0,
                    hi: x1,
                    f_lo: f0,
                    f_hi: f1,
                },
                tol,
            );
            if let Some(e) = err.take() {
                return Err(e);
            }
            return root.map(Some);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(None)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn locate_maximum<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc > fd { (c, fc) } else { (d, fd) })
}
