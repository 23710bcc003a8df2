//! Closed-form reference energies: zero field, weak field, Landau limit.

use std::f64::consts::PI;

use super::{BoundarySpec, FieldStrength, LevelId};
use crate::specialfn::{bessel_prime_zero, bessel_zero};
use crate::wavefn::GaussLaguerre;

/// Zero-field root `j` with `e_bar = j^2 / pi^2`; zero for the Neumann
/// constant state.
pub(crate) fn zero_field_root(bc: BoundarySpec, level: LevelId) -> f64 {
    let nu = level.abs_m();
    match bc {
        BoundarySpec::Dirichlet => bessel_zero(nu, level.n + 1),
        BoundarySpec::Neumann if nu == 0 => {
            if level.n == 0 {
                0.0
            } else {
                // the root at the origin is the constant state n = 0
                bessel_prime_zero(0, level.n)
            }
        }
        BoundarySpec::Neumann => bessel_prime_zero(nu, level.n + 1),
    }
}

/// Field-free energy `j^2 / pi^2`.
pub fn zero_field_energy(bc: BoundarySpec, level: LevelId) -> f64 {
    let j = zero_field_root(bc, level);
    j * j / (PI * PI)
}

/// Weak-field energy: zero-field value plus the leading field correction
/// (linear for `m != 0`, quadratic for `m = 0`).
pub fn perturbative_energy(bc: BoundarySpec, level: LevelId, field: FieldStrength) -> f64 {
    let b = field.b_bar();
    let pi2 = PI * PI;
    let e0 = zero_field_energy(bc, level);
    if level.m != 0 {
        return e0 + level.m as f64 * b / pi2;
    }
    match bc {
        BoundarySpec::Dirichlet => {
            let j = zero_field_root(bc, level);
            e0 + (1.0 - 2.0 / (j * j)) * b * b / (12.0 * pi2)
        }
        BoundarySpec::Neumann if level.n == 0 => b * b / (8.0 * pi2),
        BoundarySpec::Neumann => e0 + b * b / (12.0 * pi2),
    }
}

/// Landau level `n + (m + |m| + 1)/2` in cyclotron units.
pub fn landau_energy(level: LevelId) -> f64 {
    level.n as f64 + level.kummer_offset()
}

/// First-order wall correction to the Landau level, in cyclotron units:
/// `-/+ R(1) R'(1) / b_bar` with `R` the unbounded Landau orbital (upper
/// sign Dirichlet). Returns 0 at zero field.
///
/// The wall mixes the decaying orbital with the growing solution, which
/// doubles `R'(1)` (Dirichlet) or `R(1)` (Neumann) at the rim relative to
/// the unperturbed orbital; hence the factor 2 over the naive estimate
/// `-/+ R R' / (2 b_bar)`.
pub fn landau_correction(bc: BoundarySpec, level: LevelId, field: FieldStrength) -> f64 {
    let b = field.b_bar();
    if b == 0.0 {
        return 0.0;
    }
    let profile = GaussLaguerre::landau_position(level, b);
    let (r, dr) = profile.value_and_derivative(1.0);
    let sign = match bc {
        BoundarySpec::Dirichlet => -1.0,
        BoundarySpec::Neumann => 1.0,
    };
    sign * r * dr / b
}
