//! Closed-form radial functions of the unbounded Landau problem and of the
//! (magnetized) two-dimensional harmonic oscillator.
//!
//! All of them share one shape,
//! `R(t) = s / l * c * exp(-y/2) * y^(alpha/2) * L_n^alpha(y)` with
//! `y = t^2 / (2 l^2)` and `c = sqrt(n! / (n+alpha)!)`, normalized so that
//! `int_0^inf R^2 t dt = 1`. Momentum functions are the same shape with
//! length `1/(2l)`.

use serde::{Deserialize, Serialize};

use super::RadialFunction;
use crate::error::{Error, Result};
use crate::specialfn::{laguerre, laguerre_prime, ln_factorial};
use crate::spectrum::LevelId;

/// Gaussian–Laguerre radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussLaguerre {
    length: f64,
    n: u32,
    alpha: u32,
    sign: f64,
    prefactor: f64,
}

impl GaussLaguerre {
    pub fn new(length: f64, n: u32, alpha: u32, sign: f64) -> Self {
        let c = (0.5 * (ln_factorial(n as u64) - ln_factorial((n + alpha) as u64))).exp();
        Self {
            length,
            n,
            alpha,
            sign: sign.signum(),
            prefactor: sign.signum() * c / length,
        }
    }

    /// Landau position function for field `b_bar` (length `b_bar^{-1/2}`).
    pub fn landau_position(level: LevelId, b_bar: f64) -> Self {
        Self::new(b_bar.sqrt().recip(), level.n, level.abs_m(), 1.0)
    }

    /// Landau momentum function for field `b_bar`.
    pub fn landau_momentum(level: LevelId, b_bar: f64) -> Self {
        Self::new(0.5 * b_bar.sqrt(), level.n, level.abs_m(), 1.0)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// The momentum counterpart (Hankel transform of order `alpha`),
    /// carrying the `(-1)^n` phase of the transform.
    pub fn transform(&self) -> Self {
        let phase = if self.n % 2 == 1 { -1.0 } else { 1.0 };
        Self::new(0.5 / self.length, self.n, self.alpha, self.sign * phase)
    }

    pub fn value(&self, t: f64) -> f64 {
        self.value_and_derivative(t).0
    }

    pub fn value_and_derivative(&self, t: f64) -> (f64, f64) {
        let l2 = self.length * self.length;
        let y = t * t / (2.0 * l2);
        let a = self.alpha as f64;
        let lag = laguerre(self.n, self.alpha, y);
        let dlag = laguerre_prime(self.n, self.alpha, y);
        let gauss = (-0.5 * y).exp();
        // y^(alpha/2) and its y-derivative times y
        let (pow, value) = if self.alpha == 0 {
            (1.0, self.prefactor * gauss * lag)
        } else if y == 0.0 {
            (0.0, 0.0)
        } else {
            let p = y.powf(0.5 * a);
            (p, self.prefactor * gauss * p * lag)
        };
        // dR/dy = pref * e^{-y/2} y^{a/2} [ (a/(2y) - 1/2) L + L' ], dy/dt = t / l^2
        let dy_dt = t / l2;
        let deriv = if self.alpha == 0 {
            self.prefactor * gauss * (dlag - 0.5 * lag) * dy_dt
        } else if y == 0.0 {
            if self.alpha == 1 {
                // limit of y^{-1/2} * t / l^2 as t -> 0
                self.prefactor * 0.5 * (2.0f64).sqrt() / self.length * lag
            } else {
                0.0
            }
        } else {
            let bracket = (0.5 * a / y - 0.5) * lag + dlag;
            self.prefactor * gauss * pow * bracket * dy_dt
        };
        (value, deriv)
    }

    /// Radius beyond which the profile is below `1e-30` of its scale.
    pub fn effective_support(&self) -> f64 {
        let y_max = 140.0 + 6.0 * (self.n + self.alpha) as f64;
        self.length * (2.0 * y_max).sqrt()
    }

    /// Panel breakpoints for quadrature on `[0, effective_support]`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let top = self.effective_support();
        let panels = 24 + 4 * (self.n + self.alpha) as usize;
        (0..=panels).map(|i| top * i as f64 / panels as f64).collect()
    }
}

impl RadialFunction for GaussLaguerre {
    fn eval(&self, t: f64) -> (f64, f64) {
        self.value_and_derivative(t)
    }
}

/// Landau radial function (position) at field `b_bar`.
pub fn landau_position(level: LevelId, b_bar: f64) -> Result<GaussLaguerre> {
    if !(b_bar > 0.0) || !b_bar.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "Landau functions need b_bar > 0, got {b_bar}"
        )));
    }
    Ok(GaussLaguerre::landau_position(level, b_bar))
}

/// Landau momentum function at field `b_bar`, without the `(-1)^n` phase.
pub fn landau_momentum(level: LevelId, b_bar: f64) -> Result<GaussLaguerre> {
    if !(b_bar > 0.0) || !b_bar.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "Landau functions need b_bar > 0, got {b_bar}"
        )));
    }
    Ok(GaussLaguerre::landau_momentum(level, b_bar))
}

/// Harmonic confinement with frequency `omega_0` in a field of cyclotron
/// frequency `omega_ratio * omega_0`. Lengths are in units of
/// `l_0 = sqrt(hbar / (M omega_0))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HOParams {
    pub omega_ratio: f64,
}

impl HOParams {
    pub fn new(omega_ratio: f64) -> Result<Self> {
        if omega_ratio.is_finite() && omega_ratio >= 0.0 {
            Ok(Self { omega_ratio })
        } else {
            Err(Error::ParameterDomain(format!(
                "omega_ratio must be finite and non-negative, got {omega_ratio}"
            )))
        }
    }

    /// `omega_eff / omega_0 = sqrt(1 + omega_ratio^2 / 4)`.
    pub fn omega_eff(&self) -> f64 {
        (1.0 + 0.25 * self.omega_ratio * self.omega_ratio).sqrt()
    }

    /// `l_eff / l_0 = sqrt(hbar / (2 M omega_eff)) / l_0`.
    pub fn l_eff(&self) -> f64 {
        (2.0 * self.omega_eff()).sqrt().recip()
    }

    /// Magnetic length `l_B / l_0`, or `None` without field.
    pub fn l_b(&self) -> Option<f64> {
        (self.omega_ratio > 0.0).then(|| self.omega_ratio.sqrt().recip())
    }
}

/// Oscillator position function, length `l_eff`.
pub fn ho_position(level: LevelId, p: HOParams) -> GaussLaguerre {
    GaussLaguerre::new(p.l_eff(), level.n, level.abs_m(), 1.0)
}

/// Oscillator momentum function, length `1/(2 l_eff)`, phase `(-1)^n`.
pub fn ho_momentum(level: LevelId, p: HOParams) -> GaussLaguerre {
    ho_position(level, p).transform()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_paneled, QuadratureSpec};
    use crate::specialfn::bessel_j;

    fn q() -> QuadratureSpec {
        QuadratureSpec::new(1e-12, 1e-15, 4000, 15).unwrap()
    }

    fn inner(f: &GaussLaguerre, g: &GaussLaguerre) -> f64 {
        let bp = f.breakpoints();
        integrate_paneled(|t| f.value(t) * g.value(t) * t, &bp, &q()).unwrap()
    }

    #[test]
    fn landau_ground_state_shape() {
        let b = 7.0;
        let f = GaussLaguerre::landau_position(LevelId::new(0, 0), b);
        for r in [0.0, 0.3, 1.1] {
            assert!((f.value(r) - b.sqrt() * (-b * r * r / 4.0).exp()).abs() < 1e-14);
        }
        let k = GaussLaguerre::landau_momentum(LevelId::new(0, 0), b);
        assert!((k.value(0.0) - 2.0 / b.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn orthonormal() {
        for alpha in 0..4 {
            for n in 0..3 {
                let f = GaussLaguerre::new(0.37, n, alpha, 1.0);
                assert!((inner(&f, &f) - 1.0).abs() < 1e-10, "n={n} alpha={alpha}");
                let g = GaussLaguerre::new(0.37, n + 1, alpha, 1.0);
                assert!(inner(&f, &g).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn momentum_is_hankel_transform() {
        let q = q();
        for &(n, alpha) in &[(0u32, 0u32), (1, 0), (0, 2), (1, 3)] {
            let f = GaussLaguerre::new(0.6, n, alpha, 1.0);
            let t = f.transform();
            for k in [0.4, 1.3, 3.0] {
                let bp = f.breakpoints();
                let direct = integrate_paneled(|r| r * f.value(r) * bessel_j(alpha, k * r), &bp, &q).unwrap();
                assert!((direct - t.value(k)).abs() < 1e-11, "n={n} a={alpha} k={k}");
            }
        }
    }

    #[test]
    fn derivative_matches_difference() {
        for &(n, alpha) in &[(0u32, 0u32), (1, 1), (2, 2), (1, 3)] {
            let f = GaussLaguerre::new(0.8, n, alpha, 1.0);
            for t in [0.05, 0.7, 2.0] {
                let h = 1e-6;
                let d = (f.value(t + h) - f.value(t - h)) / (2.0 * h);
                assert!((d - f.value_and_derivative(t).1).abs() < 1e-7);
            }
        }
        // alpha = 1 slope at the origin
        let f = GaussLaguerre::new(0.8, 0, 1, 1.0);
        let d0 = f.value_and_derivative(0.0).1;
        assert!((d0 - f.value(1e-7) / 1e-7).abs() < 1e-5);
    }

    #[test]
    fn oscillator_lengths() {
        let p0 = HOParams::new(0.0).unwrap();
        assert!((p0.l_eff() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(p0.l_b(), None);
        let p = HOParams::new(1e6).unwrap();
        assert!((p.l_eff() / p.l_b().unwrap() - 1.0).abs() < 1e-10);
        // field-free oscillator ground state: R = sqrt(2) exp(-r^2/2)
        let f = ho_position(LevelId::new(0, 0), p0);
        assert!((f.value(0.9) - 2f64.sqrt() * (-0.405f64).exp()).abs() < 1e-14);
        let k = ho_momentum(LevelId::new(1, 0), p0);
        assert!(k.value(0.0) < 0.0);
    }
}
