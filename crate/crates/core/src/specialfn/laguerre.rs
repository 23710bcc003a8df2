/// Generalized Laguerre polynomial `L_n^alpha(x)` by the three-term recurrence.
pub fn laguerre(n: u32, alpha: u32, x: f64) -> f64 {
    laguerre_real(n, alpha as f64, x)
}

/// As [`laguerre`] with a real `alpha > -1`.
pub fn laguerre_real(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx L_n^alpha(x) = -L_{n-1}^{alpha+1}(x)`.
pub fn laguerre_prime(n: u32, alpha: u32, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Explicit sum `sum_k (-1)^k C(n+alpha, n-k) x^k / k!`.
    fn explicit(n: u32, alpha: u32, x: f64) -> f64 {
        let binom = |a: u32, b: u32| -> f64 { (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64) };
        (0..=n)
            .map(|k| {
                let fact: f64 = (1..=k).map(|i| i as f64).product();
                (-1f64).powi(k as i32) * binom(n + alpha, n - k) * x.powi(k as i32) / fact
            })
            .sum()
    }

    #[test]
    fn base_cases() {
        assert_eq!(laguerre(0, 3, 1.7), 1.0);
        assert_eq!(laguerre(1, 2, 0.5), 2.5);
        assert_eq!(laguerre(2, 0, 2.0), -1.0);
    }

    #[test]
    fn against_explicit_sum() {
        for n in 0..9 {
            for alpha in 0..5 {
                for &x in &[0.0, 0.4, 1.9, 6.0] {
                    let a = laguerre(n, alpha, x);
                    let b = explicit(n, alpha, x);
                    assert!((a - b).abs() < 1e-11 * b.abs().max(1.0), "n={n} a={alpha} x={x}");
                }
            }
        }
    }

    #[test]
    fn derivative_by_difference() {
        let h = 1e-6;
        for n in 1..6 {
            let d = (laguerre(n, 1, 1.3 + h) - laguerre(n, 1, 1.3 - h)) / (2.0 * h);
            assert!((d - laguerre_prime(n, 1, 1.3)).abs() < 1e-7);
        }
    }
}
