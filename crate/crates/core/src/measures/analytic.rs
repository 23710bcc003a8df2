//! Closed-form measures of Gaussian–Laguerre states, used as oracles.
//!
//! Every formula takes the profile length `l` of [`GaussLaguerre`]; the
//! oscillator uses `l_eff`, the pure field `l_B`, and the field-free
//! oscillator `l_0 / sqrt(2)`. Momentum values follow by duality with
//! length `1/(2l)`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use super::MeasureSet;
use crate::error::{Error, Result};
use crate::specialfn::{digamma, ln_factorial};
use crate::spectrum::LevelId;
use crate::wavefn::HOParams;

/// Which analytic configuration [`ho_measures`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HoKind {
    /// Oscillator without field.
    HO,
    /// Oscillator in a field.
    HOB,
    /// Field without oscillator (Landau states).
    PureB,
}

impl HoKind {
    /// Profile length in units of `l_0`.
    pub fn length(self, p: HOParams) -> Result<f64> {
        match self {
            HoKind::HO => Ok(HOParams { omega_ratio: 0.0 }.l_eff()),
            HoKind::HOB => Ok(p.l_eff()),
            HoKind::PureB => p
                .l_b()
                .ok_or_else(|| Error::ParameterDomain("the pure-field configuration needs omega_ratio > 0".into())),
        }
    }
}

fn ln_fact(n: u32) -> f64 {
    ln_factorial(n as u64)
}

/// `ln |m|! + |m| (1 - psi(|m|+1))`
fn shannon_shape(abs_m: u32) -> f64 {
    let m = abs_m as f64;
    ln_fact(abs_m) + m * (1.0 - digamma(m + 1.0).expect("positive argument"))
}

/// Position and momentum Shannon entropies; lowest band only.
pub fn gl_shannon(level: LevelId, l: f64) -> Result<(f64, f64)> {
    if level.n != 0 {
        return Err(Error::UnsupportedLevel {
            measure: "shannon",
            n: level.n,
        });
    }
    let common = 1.0 + PI.ln() + shannon_shape(level.abs_m());
    Ok((2.0 * l.ln() + LN_2 + common, -2.0 * l.ln() - LN_2 + common))
}

/// Position and momentum Fisher informations; any level.
pub fn gl_fisher(level: LevelId, l: f64) -> (f64, f64) {
    let c = 4.0 * level.n as f64 + 2.0;
    (c / (l * l), 4.0 * c * l * l)
}

/// `int rho^2` of a profile of unit length (then scaled by `1/l^2`).
fn unit_disequilibrium(n: u32, abs_m: u32) -> Result<f64> {
    let m = abs_m as f64;
    // (2|m|)! / (|m|!)^2 / 4^|m| through logarithms
    let central = (ln_fact(2 * abs_m) - 2.0 * ln_fact(abs_m) - 2.0 * m * LN_2).exp();
    match n {
        0 => Ok(central / 2.0 / (2.0 * PI)),
        1 => Ok(central * (3.0 * m * m + 5.0 * m + 2.0) / ((m + 1.0) * (m + 1.0)) / 8.0 / (2.0 * PI)),
        _ => Err(Error::UnsupportedLevel {
            measure: "disequilibrium",
            n,
        }),
    }
}

/// Position and momentum disequilibria; bands `n = 0` and `n = 1`.
pub fn gl_disequilibrium(level: LevelId, l: f64) -> Result<(f64, f64)> {
    let u = unit_disequilibrium(level.n, level.abs_m())?;
    Ok((u / (l * l), u * 4.0 * l * l))
}

/// Root-mean-square radius and momentum.
pub fn gl_rms(level: LevelId, l: f64) -> (f64, f64) {
    let q = (2 * level.n + level.abs_m() + 1) as f64;
    (l * (2.0 * q).sqrt(), (0.5 * q).sqrt() / l)
}

/// Analytic measures of an oscillator or Landau state in units of `l_0`
/// (`*_bar`) and of `l_B` (`*_bbar`, when a field is present).
pub fn ho_measures(level: LevelId, p: HOParams, which: HoKind) -> Result<MeasureSet> {
    let l = which.length(p)?;
    let (s_rho, s_gamma) = gl_shannon(level, l)?;
    let (i_rho, i_gamma) = gl_fisher(level, l);
    let (o_rho, o_gamma) = gl_disequilibrium(level, l)?;
    let (r, k) = gl_rms(level, l);
    let field = match which {
        HoKind::HO => 0.0,
        _ => p.omega_ratio,
    };
    Ok(MeasureSet::from_electric(
        (s_rho, s_gamma),
        (i_rho, i_gamma),
        (o_rho, o_gamma),
        (r, Some(k)),
        field,
    ))
}
