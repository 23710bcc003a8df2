//! Bracketed root finding.

use crate::error::{Error, Result};

/// An interval `[lo, hi]` on which `f` changes sign (or touches zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluate `f` at both ends and check the sign condition.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let b = Bracket { lo, hi, f_lo, f_hi };
        if b.is_valid() {
            Ok(b)
        } else {
            Err(Error::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    pub fn is_valid(&self) -> bool {
        self.lo.is_finite()
            && self.hi.is_finite()
            && self.lo < self.hi
            && !self.f_lo.is_nan()
            && !self.f_hi.is_nan()
            && self.f_lo * self.f_hi <= 0.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Brent–Dekker root refinement.
///
/// The returned point lies inside a final enclosure of width at most
/// `tol * max(1, |x|)` and is whichever end of that enclosure has the
/// smaller residual.
pub fn refine_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    refine_root_scaled(f, bracket, tol, 1.0)
}

/// [`refine_root`] with the stopping width `tol * max(|x|, floor)`. A small
/// `floor` resolves roots near zero to relative precision.
pub fn refine_root_scaled<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64, floor: f64) -> Result<f64> {
    if !bracket.is_valid() {
        return Err(Error::InvalidBracket {
            lo: bracket.lo,
            hi: bracket.hi,
            f_lo: bracket.f_lo,
            f_hi: bracket.f_hi,
        });
    }
    if !(tol > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "root tolerance must be positive, got {tol}"
        )));
    }
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(bracket.hi);
    }

    // b is the best estimate, c the contrapoint, a the previous b
    let (mut a, mut fa) = (bracket.lo, bracket.f_lo);
    let (mut b, mut fb) = (bracket.hi, bracket.f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..500 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let scale = tol * b.abs().max(floor);
        let width = (c - b).abs();
        if fb == 0.0 {
            return Ok(b);
        }
        if width <= scale {
            return Ok(if fb.abs() <= fc.abs() { b } else { c });
        }
        let tol1 = 0.25 * scale.min(width) + 2.0 * f64::EPSILON * b.abs();
        let xm = 0.5 * (c - b);

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::ParameterDomain(format!("function returned NaN at {b}")));
        }
    }
    Ok(b)
}

/// All sign-change intervals of width at most `step` on `[a, b]`,
/// ascending. A zero value counts as positive, so an exact zero on a grid
/// point produces exactly one bracket.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, step: f64) -> Vec<Bracket> {
    let mut out = Vec::new();
    if !(step > 0.0) || !(a < b) {
        return out;
    }
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=n {
        let x1 = if i == n { b } else { a + i as f64 * step };
        let f1 = f(x1);
        if f0.is_finite() && f1.is_finite() && (f0 < 0.0) != (f1 < 0.0) {
            out.push(Bracket {
                lo: x0,
                hi: x1,
                f_lo: f0,
                f_hi: f1,
            });
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn linear_root() {
        let r = refine_root(|x| x - 1.0, Bracket::new(|x| x - 1.0, 0.0, 2.0).unwrap(), 1e-14).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cosine_root() {
        let br = Bracket::new(f64::cos, 1.0, 2.0).unwrap();
        let r = refine_root(f64::cos, br, 1e-15).unwrap();
        assert!((r - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_bracket_rejected() {
        let br = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: 1.0,
            f_hi: 2.0,
        };
        assert!(matches!(
            refine_root(|x| x + 1.0, br, 1e-10),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(Bracket::new(|x| x * x + 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn steep_root_converges() {
        let f = |x: f64| (50.0 * (x - 0.3)).tanh();
        let r = refine_root(f, Bracket::new(f, 0.0, 1.0).unwrap(), 1e-13).unwrap();
        assert!((r - 0.3).abs() < 1e-12);
    }

    #[test]
    fn scan_no_roots() {
        assert!(scan_brackets(|x| x * x + 1.0, 0.0, 10.0, 0.1).is_empty());
    }

    #[test]
    fn scan_sine() {
        let br = scan_brackets(f64::sin, 1.0, 7.0, 0.5);
        assert_eq!(br.len(), 2);
        assert!(br[0].lo < PI && PI < br[0].hi);
        assert!(br[1].lo < 2.0 * PI && 2.0 * PI < br[1].hi);
        assert!(br.iter().all(|b| b.width() <= 0.5 + 1e-12));
    }

    #[test]
    fn scan_exact_zero_on_grid() {
        let br = scan_brackets(|x| x - 1.0, 0.0, 2.0, 0.5);
        assert_eq!(br.len(), 1);
    }
}
