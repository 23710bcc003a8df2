use crate::error::{Error, Result};

/// Digamma function `psi(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "digamma requires a finite x > 0, got {x}"
        )));
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 8.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let r = 1.0 / (y * y);
    // Bernoulli asymptotic tail
    let tail = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0 - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
    Ok(shift + y.ln() - 0.5 / y - tail)
}

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 170 {
        let mut p = 1.0f64;
        for k in 2..=n {
            p *= k as f64;
        }
        return p.ln();
    }
    let z = n as f64 + 1.0;
    let z2 = z * z;
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2)
        + 1.0 / (1260.0 * z * z2 * z2)
        - 1.0 / (1680.0 * z * z2 * z2 * z2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_adaptive, QuadratureSpec};

    const EULER: f64 = 0.577_215_664_901_532_9;

    /// Binet-type integral `psi(x) = ln x - 1/(2x) - 2 int_0^inf t / ((t^2+x^2)(e^{2 pi t}-1)) dt`.
    fn binet(x: f64) -> f64 {
        let q = QuadratureSpec::new(1e-14, 1e-17, 2000, 15).unwrap();
        let f = |t: f64| {
            if t == 0.0 {
                1.0 / (2.0 * std::f64::consts::PI * x * x)
            } else {
                t / ((t * t + x * x) * (2.0 * std::f64::consts::PI * t).exp_m1())
            }
        };
        x.ln() - 0.5 / x - 2.0 * integrate_adaptive(f, 0.0, 12.0, &q).unwrap()
    }

    #[test]
    fn special_values() {
        assert!((digamma(1.0).unwrap() + EULER).abs() < 1e-13);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER)).abs() < 1e-13);
        let half = -EULER - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(0.5).unwrap() - half).abs() < 1e-13);
    }

    #[test]
    fn against_integral() {
        for &x in &[0.05, 0.3, 1.7, 4.2, 7.99, 8.0, 31.0, 1e4] {
            assert!((digamma(x).unwrap() - binet(x)).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn recurrence() {
        for &x in &[0.2, 1.5, 9.3] {
            let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
            assert!(d.abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.5).is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-15);
        for n in [20u64, 170, 171, 500, 10_000] {
            let direct: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
            assert!(((ln_factorial(n) - direct) / direct).abs() < 1e-13, "n={n}");
        }
    }
}
