//! Kummer's confluent hypergeometric function `M(a, b, x)` for real
//! parameters and `x >= 0`.
//!
//! The Taylor series is summed in double precision while tracking the
//! largest term. When that term dwarfs the result (large negative `a`
//! with a sizeable argument), the series is summed again in double-double
//! arithmetic, which leaves roughly 16 more digits to absorb the
//! cancellation.

use crate::error::{Error, Result};
use crate::numerics::{CompensatedSum, DoubleDouble};

const MAX_TERMS: usize = 100_000;
/// Ratio of largest term to result above which the f64 sum is not trusted.
const CANCELLATION_LIMIT: f64 = 1e3;
/// Error budget of the double-double fallback, relative to `max(|M|, 1)`.
const DD_BUDGET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl KummerParams {
    pub fn new(a: f64, b: f64, x: f64) -> Self {
        Self { a, b, x }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.x.is_finite()) {
            return Err(Error::ParameterDomain(format!("non-finite Kummer parameters {self:?}")));
        }
        if self.b <= 0.0 && self.b == self.b.round() {
            return Err(Error::ParameterDomain(format!(
                "Kummer b must not be a non-positive integer, got {}",
                self.b
            )));
        }
        if self.x < 0.0 {
            return Err(Error::ParameterDomain(format!(
                "Kummer argument must be non-negative, got {}",
                self.x
            )));
        }
        Ok(())
    }
}

/// True once every later term is guaranteed to shrink: the term ratio
/// `(a+k) x / ((b+k)(k+1))` is below one now and cannot climb back above
/// one after `a + k` changes sign.
fn tail_is_decaying(a: f64, b: f64, x: f64, k: f64) -> bool {
    let ratio = ((a + k) * x / ((b + k) * (k + 1.0))).abs();
    ratio < 1.0 && (k + 1.0 >= x || (a + k < 0.0 && x <= 1.0 - a))
}

struct F64Sum {
    value: f64,
    max_term: f64,
}

fn series_f64(a: f64, b: f64, x: f64) -> Result<F64Sum> {
    let mut sum = CompensatedSum::new();
    let mut term = 1.0f64;
    let mut max_term = 1.0f64;
    let mut small = 0;
    sum.add(1.0);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            return Ok(F64Sum {
                value: sum.value(),
                max_term,
            });
        }
        sum.add(term);
        let at = term.abs();
        if !at.is_finite() {
            return Err(Error::AccuracyLoss(format!(
                "Kummer series overflow at a={a}, b={b}, x={x}"
            )));
        }
        max_term = max_term.max(at);
        let s = sum.value().abs();
        if at <= 1e-17 * s || at <= 1e-22 * max_term {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && tail_is_decaying(a, b, x, kf + 1.0) {
            return Ok(F64Sum {
                value: sum.value(),
                max_term,
            });
        }
    }
    Err(Error::AccuracyLoss(format!(
        "Kummer series did not converge in {MAX_TERMS} terms at a={a}, b={b}, x={x}"
    )))
}

fn series_dd(a: f64, b: f64, x: f64) -> Result<(f64, f64)> {
    let mut sum = DoubleDouble::ONE;
    let mut term = DoubleDouble::ONE;
    let mut max_term = 1.0f64;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num = DoubleDouble::sum_of(a, kf).mul_f64(x);
        let den = DoubleDouble::sum_of(b, kf).mul_f64(kf + 1.0);
        term = term * num / den;
        if term.hi == 0.0 {
            let n = (k + 1) as f64;
            return Ok((sum.to_f64(), max_term * 4.0 * n * 1.3e-32));
        }
        sum = sum + term;
        let at = term.hi.abs();
        if !at.is_finite() {
            return Err(Error::AccuracyLoss(format!(
                "Kummer series overflow at a={a}, b={b}, x={x}"
            )));
        }
        max_term = max_term.max(at);
        if at <= 1e-33 * sum.hi.abs() || at <= 1e-36 * max_term {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && tail_is_decaying(a, b, x, kf + 1.0) {
            let n = (k + 1) as f64;
            let err = max_term * 4.0 * n * 1.3e-32;
            return Ok((sum.to_f64(), err));
        }
    }
    Err(Error::AccuracyLoss(format!(
        "Kummer series did not converge in {MAX_TERMS} terms at a={a}, b={b}, x={x}"
    )))
}

/// `M(a, b, x)`.
///
/// Accuracy is about 1e-11 relative to `max(|M|, 1)`: relative where
/// `|M| >= 1`, absolute near the zeros of `M` in `a`, where no relative
/// bound is meaningful.
pub fn kummer_m(p: KummerParams) -> Result<f64> {
    p.validate()?;
    let KummerParams { a, b, x } = p;
    if a == 0.0 || x == 0.0 {
        return Ok(1.0);
    }
    let fast = series_f64(a, b, x)?;
    if fast.max_term <= CANCELLATION_LIMIT * fast.value.abs().max(1e-300) {
        return Ok(fast.value);
    }
    let (value, err) = series_dd(a, b, x)?;
    if err > DD_BUDGET * value.abs().max(1.0) {
        return Err(Error::AccuracyLoss(format!(
            "Kummer series cancellation too severe at a={a}, b={b}, x={x} (error estimate {err:e})"
        )));
    }
    Ok(value)
}

/// `dM/dx = (a/b) M(a+1, b+1, x)`.
pub fn kummer_m_prime(p: KummerParams) -> Result<f64> {
    p.validate()?;
    if p.a == 0.0 {
        return Ok(0.0);
    }
    let m = kummer_m(KummerParams::new(p.a + 1.0, p.b + 1.0, p.x))?;
    Ok(p.a / p.b * m)
}

#[cfg(test)]
mod tests {
    // reference values are quoted at full printed precision
    #![allow(clippy::excessive_precision)]

    use super::*;
    use crate::specialfn::laguerre;

    fn m(a: f64, b: f64, x: f64) -> f64 {
        kummer_m(KummerParams::new(a, b, x)).unwrap()
    }

    fn mp(a: f64, b: f64, x: f64) -> f64 {
        kummer_m_prime(KummerParams::new(a, b, x)).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn trivial_values() {
        for &(b, x) in &[(1.0, 0.3), (3.0, 17.0), (0.5, 40.0)] {
            assert_eq!(m(0.0, b, x), 1.0);
            assert_eq!(mp(0.0, b, x), 0.0);
        }
        assert_eq!(m(-3.7, 2.0, 0.0), 1.0);
    }

    #[test]
    fn linear_laguerre_case() {
        for x in [0.0, 0.5, 3.0, 25.0] {
            assert!(close(m(-1.0, 1.0, x), 1.0 - x, 1e-15));
            assert!(close(mp(-1.0, 1.0, x), -1.0, 1e-15));
        }
    }

    #[test]
    fn exponential_identity() {
        // M(b, b, x) = e^x
        for &(b, x) in &[(1.0, 1.0), (2.5, 10.0), (4.0, 30.0), (1.0, 200.0)] {
            assert!(close(m(b, b, x), x.exp(), 1e-13), "b={b} x={x}");
            assert!(close(mp(b, b, x), x.exp(), 1e-13));
        }
    }

    #[test]
    fn closed_form_one_two() {
        // M(1, 2, x) = (e^x - 1)/x
        for x in [1e-3f64, 0.7, 9.0, 60.0] {
            let exact = x.exp_m1() / x;
            assert!(close(m(1.0, 2.0, x), exact, 1e-14));
        }
    }

    #[test]
    fn terminating_series_matches_laguerre() {
        // M(-n, alpha+1, x) = n! L_n^alpha(x) / (alpha+1)_n
        for n in 0..8u32 {
            for alpha in 0..4u32 {
                for &x in &[0.3, 2.0, 7.5, 20.0] {
                    let mut poch = 1.0;
                    let mut fact = 1.0;
                    for k in 0..n {
                        poch *= (alpha + 1 + k) as f64;
                        fact *= (k + 1) as f64;
                    }
                    let expect = fact * laguerre(n, alpha, x) / poch;
                    let got = m(-(n as f64), (alpha + 1) as f64, x);
                    assert!(
                        close(got, expect, 1e-11),
                        "n={n} alpha={alpha} x={x}: {got} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn cancelling_regime_against_reference() {
        // references from a 50-digit evaluation
        let cases = [
            (-5000.0, 1.0, 0.005, -0.246_573_124_456_463_302_2),
            (-2500.5, 3.0, 0.02, -0.005_154_519_148_696_342_938_5),
            (-12.25, 1.0, 50.0, -2_408_129_682.871_411_243),
            (-3.3, 4.0, 400.0, 7.826_222_810_335_405_963e155),
        ];
        for (a, b, x, expect) in cases {
            let got = m(a, b, x);
            assert!(close(got, expect, 1e-10), "a={a} b={b} x={x}: {got} vs {expect}");
        }
    }

    #[test]
    fn hopeless_cancellation_is_reported() {
        // |a| x so large that even 32 digits cannot absorb the cancellation
        let r = kummer_m(KummerParams::new(-40.7, 2.0, 50.0));
        assert!(matches!(r, Err(Error::AccuracyLoss(_))));
    }

    #[test]
    fn contiguous_relation() {
        // (a-b+1) M(a,b,x) = a M(a+1,b,x) - (b-1) M(a,b-1,x)
        for &(a, b, x) in &[(-2.3, 2.0, 3.0), (0.7, 3.5, 10.0), (-7.9, 4.0, 12.0)] {
            let lhs = (a - b + 1.0) * m(a, b, x);
            let rhs = a * m(a + 1.0, b, x) - (b - 1.0) * m(a, b - 1.0, x);
            assert!(close(lhs, rhs, 1e-9));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            kummer_m(KummerParams::new(1.0, 0.0, 1.0)),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            kummer_m(KummerParams::new(1.0, -2.0, 1.0)),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            kummer_m(KummerParams::new(1.0, 1.0, -1.0)),
            Err(Error::ParameterDomain(_))
        ));
        assert!(kummer_m(KummerParams::new(1.0, -0.5, 1.0)).is_ok());
    }
}
