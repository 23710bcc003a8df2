//! Energy spectrum of a charged particle in a circular dot of unit radius
//! threaded by a uniform perpendicular field.
//!
//! Energies are measured in electric units `E / (pi^2 hbar^2 / (2 M a^2))`
//! (`e_bar`) and, for nonzero field, in units of the cyclotron energy
//! (`e_bbar`). The field `b_bar` is `B a^2 |e| / hbar`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod crossing;
mod reference;
mod solver;

pub use crossing::{find_crossing, find_crossing_bc, magnetic_moment, Crossing};
pub(crate) use reference::zero_field_root;
pub use reference::{landau_correction, landau_energy, perturbative_energy, zero_field_energy};
pub use solver::{characteristic, eigenvalue, eigenvalue_default, energy_difference_check, DEFAULT_ENERGY_TOL};

/// Wall condition on the rim of the dot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundarySpec {
    /// The wavefunction vanishes on the rim.
    Dirichlet,
    /// Its normal derivative vanishes on the rim.
    Neumann,
}

impl BoundarySpec {
    pub const ALL: [BoundarySpec; 2] = [BoundarySpec::Dirichlet, BoundarySpec::Neumann];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundarySpec::Dirichlet => "dirichlet",
            BoundarySpec::Neumann => "neumann",
        }
    }
}

impl fmt::Display for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundarySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dirichlet" | "d" => Ok(BoundarySpec::Dirichlet),
            "neumann" | "n" => Ok(BoundarySpec::Neumann),
            other => Err(Error::Config(format!("unknown boundary condition '{other}'"))),
        }
    }
}

/// Radial (`n >= 0`) and angular (`m`) quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelId {
    pub n: u32,
    pub m: i32,
}

impl LevelId {
    pub const fn new(n: u32, m: i32) -> Self {
        Self { n, m }
    }

    pub fn abs_m(self) -> u32 {
        self.m.unsigned_abs()
    }

    /// The state with the opposite angular index.
    pub fn conjugate(self) -> Self {
        Self { n: self.n, m: -self.m }
    }

    /// `(m + |m| + 1) / 2`, the constant part of the first Kummer parameter.
    pub fn kummer_offset(self) -> f64 {
        (self.m as f64 + self.abs_m() as f64 + 1.0) * 0.5
    }
}

impl fmt::Display for LevelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.m)
    }
}

/// Dimensionless field strength `b_bar >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldStrength(f64);

impl FieldStrength {
    pub const ZERO: FieldStrength = FieldStrength(0.0);

    pub fn new(b_bar: f64) -> Result<Self> {
        if b_bar.is_finite() && b_bar >= 0.0 {
            Ok(Self(b_bar))
        } else {
            Err(Error::ParameterDomain(format!(
                "field strength must be finite and non-negative, got {b_bar}"
            )))
        }
    }

    pub fn b_bar(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// Magnetic length in units of the dot radius, `B^{-1/2}`.
    pub fn magnetic_length(self) -> Option<f64> {
        (self.0 > 0.0).then(|| self.0.sqrt().recip())
    }
}

/// One eigenvalue at one field strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub bc: BoundarySpec,
    pub level: LevelId,
    pub field: FieldStrength,
    /// Energy in electric units.
    pub e_bar: f64,
    /// Energy in cyclotron units; `None` at zero field.
    pub e_bbar: Option<f64>,
    /// First Kummer parameter at the eigenvalue; `None` at zero field.
    pub kummer_a: Option<f64>,
}

impl EnergyLevel {
    pub fn b_bar(&self) -> f64 {
        self.field.b_bar()
    }
}

/// `pi^2 / 2`, the factor between `e_bar / b_bar` and `e_bbar`.
pub(crate) const HALF_PI2: f64 = std::f64::consts::PI * std::f64::consts::PI * 0.5;

pub(crate) fn e_bar_to_bbar(e_bar: f64, b_bar: f64) -> f64 {
    HALF_PI2 * e_bar / b_bar
}

pub(crate) fn e_bbar_to_bar(e_bbar: f64, b_bar: f64) -> f64 {
    e_bbar * b_bar / HALF_PI2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_boundary() {
        assert_eq!("Neumann".parse::<BoundarySpec>().unwrap(), BoundarySpec::Neumann);
        assert_eq!("dirichlet".parse::<BoundarySpec>().unwrap(), BoundarySpec::Dirichlet);
        assert!("robin".parse::<BoundarySpec>().is_err());
    }

    #[test]
    fn field_domain() {
        assert!(FieldStrength::new(-1.0).is_err());
        assert!(FieldStrength::new(f64::NAN).is_err());
        assert!(FieldStrength::new(0.0).unwrap().is_zero());
        assert_eq!(FieldStrength::new(4.0).unwrap().magnetic_length(), Some(0.5));
    }

    #[test]
    fn kummer_offset() {
        assert_eq!(LevelId::new(0, -3).kummer_offset(), 0.5);
        assert_eq!(LevelId::new(0, 2).kummer_offset(), 2.5);
    }
}
