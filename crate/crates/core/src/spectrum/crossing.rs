use std::cell::Cell;

use serde::Serialize;

use super::solver::{eigenvalue, eigenvalue_default};
use super::{e_bar_to_bbar, BoundarySpec, FieldStrength, LevelId};
use crate::error::{Error, Result};
use crate::numerics::{refine_root, Bracket};

const CROSSING_WINDOW: (f64, f64) = (0.1, 50.0);
const CROSSING_STEP: f64 = 0.25;

/// Field at which two levels of adjacent angular index are degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub n: u32,
    pub m: i32,
    pub b_star: f64,
    pub e_bar: f64,
    pub e_bbar: f64,
}

/// Neumann crossing of `(n, m)` and `(n, m-1)` for `m <= 0`.
pub fn find_crossing(n: u32, m: i32, tol: f64) -> Result<Crossing> {
    find_crossing_bc(BoundarySpec::Neumann, n, m, tol)
}

/// Crossing of `(n, m)` and `(n, m-1)` searched on `b_bar` in `[0.1, 50]`.
/// Dirichlet levels never cross, so that search ends in `NoCrossing`.
pub fn find_crossing_bc(bc: BoundarySpec, n: u32, m: i32, tol: f64) -> Result<Crossing> {
    if m > 0 {
        return Err(Error::ParameterDomain(format!(
            "crossings are searched for m <= 0, got m = {m}"
        )));
    }
    let upper = LevelId::new(n, m);
    let lower = LevelId::new(n, m - 1);
    let diff = |b: f64| -> Result<f64> {
        let f = FieldStrength::new(b)?;
        let e1 = eigenvalue(bc, upper, f, 1e-14)?;
        let e2 = eigenvalue(bc, lower, f, 1e-14)?;
        Ok(e1.e_bbar.unwrap_or(e1.e_bar) - e2.e_bbar.unwrap_or(e2.e_bar))
    };
    let (lo, hi) = CROSSING_WINDOW;
    let steps = ((hi - lo) / CROSSING_STEP).round() as usize;
    let mut b0 = lo;
    let mut d0 = diff(b0)?;
    let mut bracket = None;
    for i in 1..=steps {
        let b1 = lo + i as f64 * CROSSING_STEP;
        let d1 = diff(b1)?;
        if (d0 < 0.0) != (d1 < 0.0) {
            bracket = Some(Bracket {
                lo: b0,
                hi: b1,
                f_lo: d0,
                f_hi: d1,
            });
            break;
        }
        b0 = b1;
        d0 = d1;
    }
    let Some(bracket) = bracket else {
        return Err(Error::NoCrossing { n, m, lo, hi });
    };
    let err: Cell<Option<Error>> = Cell::new(None);
    let g = |b: f64| match diff(b) {
        Ok(v) => v,
        Err(e) => {
            err.set(Some(e));
            f64::NAN
        }
    };
    let root = refine_root(g, bracket, tol.max(1e-14));
    if let Some(e) = err.take() {
        return Err(e);
    }
    let b_star = root?;
    let e = eigenvalue(bc, upper, FieldStrength::new(b_star)?, 1e-14)?;
    Ok(Crossing {
        n,
        m,
        b_star,
        e_bar: e.e_bar,
        e_bbar: e_bar_to_bbar(e.e_bar, b_star),
    })
}

/// Magnetic moment `-dE/dB` in electric units by a central difference with
/// step `max(1e-4, 1e-3 b_bar)`. Fields below the step use
/// `E_{n,m}(-B) = E_{n,-m}(B)`.
pub fn magnetic_moment(bc: BoundarySpec, level: LevelId, field: FieldStrength) -> Result<f64> {
    let b = field.b_bar();
    let h = (1e-3 * b).max(1e-4);
    let energy = |x: f64| -> Result<f64> {
        let (lvl, x) = if x < 0.0 { (level.conjugate(), -x) } else { (level, x) };
        Ok(eigenvalue_default(bc, lvl, FieldStrength::new(x)?)?.e_bar)
    };
    let up = energy(b + h)?;
    let down = energy(b - h)?;
    Ok(-(up - down) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_band_crossing() {
        let c = find_crossing(0, 0, 1e-10).unwrap();
        assert!((c.b_star - 3.848).abs() < 0.01, "{c:?}");
        assert!((c.e_bar - 0.180).abs() < 0.002);
        assert!((c.e_bbar - 0.231).abs() < 0.002);
    }

    #[test]
    fn dirichlet_has_none() {
        assert!(matches!(
            find_crossing_bc(BoundarySpec::Dirichlet, 0, 0, 1e-8),
            Err(Error::NoCrossing { .. })
        ));
    }

    #[test]
    fn moment_signs() {
        let f = FieldStrength::new(0.05).unwrap();
        for bc in BoundarySpec::ALL {
            assert!(magnetic_moment(bc, LevelId::new(0, 1), f).unwrap() < 0.0);
            assert!(magnetic_moment(bc, LevelId::new(0, -1), f).unwrap() > 0.0);
        }
    }

    #[test]
    fn moment_linear_for_m_zero() {
        for bc in BoundarySpec::ALL {
            let l = LevelId::new(0, 0);
            let m1 = magnetic_moment(bc, l, FieldStrength::new(0.01).unwrap()).unwrap();
            let m2 = magnetic_moment(bc, l, FieldStrength::new(0.02).unwrap()).unwrap();
            assert!(m1 < 0.0 && m2 < 0.0);
            assert!((m2 / m1 - 2.0).abs() < 1e-3, "{bc}: {m1} {m2}");
        }
    }
}
