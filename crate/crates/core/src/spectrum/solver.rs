//! Eigenvalues from the boundary condition on the regular Kummer solution.
//!
//! With `a = (m+|m|+1)/2 - pi^2 E / (2B)`, `b = |m| + 1` and `x = B/2` the
//! rim conditions read `M(a, b, x) = 0` (Dirichlet) and
//! `(|m|/B - 1/2) M(a, b, x) + M'(a, b, x) = 0` (Neumann). Both depend on
//! the energy only through `a`, so roots are counted by a scan in energy
//! and refined in `a`; the energy then follows from `a` exactly, which
//! makes the `m` / `-m` splitting independent of the root tolerance.

use std::cell::Cell;

use super::reference::zero_field_energy;
use super::{e_bbar_to_bar, BoundarySpec, EnergyLevel, FieldStrength, LevelId, HALF_PI2};
use crate::error::{Error, Result};
use crate::numerics::{refine_root_scaled, Bracket};
use crate::specialfn::{kummer_m, kummer_m_prime, KummerParams};

/// Default enclosure width of eigenvalues in electric units.
pub const DEFAULT_ENERGY_TOL: f64 = 1e-12;

/// Energy step of the root-counting scan. Consecutive roots at fixed `m`
/// are at least about 1.4 apart in electric units at any field, so this
/// cannot step over a pair.
const SCAN_STEP: f64 = 0.05;
const WINDOW_DOUBLINGS: usize = 4;

/// Rim condition as a function of the first Kummer parameter `a`.
pub fn characteristic(bc: BoundarySpec, abs_m: u32, b_bar: f64, a: f64) -> Result<f64> {
    let b = abs_m as f64 + 1.0;
    let p = KummerParams::new(a, b, 0.5 * b_bar);
    let m = kummer_m(p)?;
    match bc {
        BoundarySpec::Dirichlet => Ok(m),
        BoundarySpec::Neumann => {
            let mp = kummer_m_prime(p)?;
            Ok((abs_m as f64 / b_bar - 0.5) * m + mp)
        }
    }
}

fn zero_field_level(bc: BoundarySpec, level: LevelId) -> EnergyLevel {
    EnergyLevel {
        bc,
        level,
        field: FieldStrength::ZERO,
        e_bar: zero_field_energy(bc, level),
        e_bbar: None,
        kummer_a: None,
    }
}

/// The `(n+1)`-th root, ascending in energy, of the rim condition at `field`.
///
/// The enclosure is at most `tol` wide in electric units and resolves the
/// Kummer parameter `a` to relative precision. At zero field the
/// Bessel-zero energy is returned.
pub fn eigenvalue(bc: BoundarySpec, level: LevelId, field: FieldStrength, tol: f64) -> Result<EnergyLevel> {
    if field.is_zero() {
        return Ok(zero_field_level(bc, level));
    }
    if !(tol > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "eigenvalue tolerance must be positive, got {tol}"
        )));
    }
    let b_bar = field.b_bar();
    let c = level.kummer_offset();
    let abs_m = level.abs_m();
    let fail = |reason: String| Error::RootNotFound {
        n: level.n,
        m: level.m,
        b_bar,
        reason,
    };

    // scan in energy; a = c - e_bar * pi^2 / (2 b)
    let a_of = |e: f64| c - HALF_PI2 * e / b_bar;
    let f = |a: f64| characteristic(bc, abs_m, b_bar, a);

    let mut window =
        zero_field_energy(bc, level) + 2.0 * (2 * level.n + abs_m + 2) as f64 * b_bar / (2.0 * HALF_PI2) + 10.0;
    let mut e_prev = 0.0;
    let mut a_prev = c;
    let mut f_prev = f(a_prev)?;
    let mut found = 0u32;
    let mut k = 0usize;
    let bracket = 'scan: {
        for _ in 0..=WINDOW_DOUBLINGS {
            loop {
                k += 1;
                let e = k as f64 * SCAN_STEP;
                if e > window {
                    k -= 1;
                    break;
                }
                let a = a_of(e);
                let fa = f(a)?;
                if (f_prev < 0.0) != (fa < 0.0) {
                    if found == level.n {
                        // a decreases with energy
                        break 'scan Bracket {
                            lo: a,
                            hi: a_prev,
                            f_lo: fa,
                            f_hi: f_prev,
                        };
                    }
                    found += 1;
                }
                e_prev = e;
                a_prev = a;
                f_prev = fa;
            }
            window *= 2.0;
        }
        return Err(fail(format!("only {found} roots below e_bar = {e_prev}")));
    };

    // The energy needs `a` to `tol`, but near a Landau level `a` is tiny and
    // the eigenfunction needs it to relative precision.
    let a_tol = (tol / e_bbar_to_bar(1.0, b_bar)).min(4.0 * f64::EPSILON);
    let err: Cell<Option<Error>> = Cell::new(None);
    let g = |a: f64| match f(a) {
        Ok(v) => v,
        Err(e) => {
            err.set(Some(e));
            f64::NAN
        }
    };
    let root = refine_root_scaled(g, bracket, a_tol, 1e-300);
    if let Some(e) = err.take() {
        return Err(e.at(level.n, level.m, b_bar));
    }
    let a = root.map_err(|e| fail(e.to_string()))?;
    let e_bbar = c - a;
    Ok(EnergyLevel {
        bc,
        level,
        field,
        e_bar: e_bbar_to_bar(e_bbar, b_bar),
        e_bbar: Some(e_bbar),
        kummer_a: Some(a),
    })
}

/// [`eigenvalue`] with [`DEFAULT_ENERGY_TOL`].
pub fn eigenvalue_default(bc: BoundarySpec, level: LevelId, field: FieldStrength) -> Result<EnergyLevel> {
    eigenvalue(bc, level, field, DEFAULT_ENERGY_TOL)
}

/// `E_{n,m} - E_{n,-m}` in electric units; equals `2 m b_bar / pi^2`.
pub fn energy_difference_check(level: LevelId, field: FieldStrength, bc: BoundarySpec) -> Result<f64> {
    if level.m == 0 {
        return Ok(0.0);
    }
    let plus = eigenvalue_default(bc, level, field)?;
    let minus = eigenvalue_default(bc, level.conjugate(), field)?;
    match (plus.e_bbar, minus.e_bbar) {
        (Some(p), Some(q)) => Ok(e_bbar_to_bar(p - q, field.b_bar())),
        _ => Ok(plus.e_bar - minus.e_bar),
    }
}
