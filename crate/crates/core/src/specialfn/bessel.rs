//! Bessel functions of the first kind, integer order, and their zeros.
//!
//! Small arguments (or orders at least as large as the argument) use
//! Miller's backward recurrence normalized by `J_0 + 2 sum J_2k = 1`.
//! Large arguments use the Hankel asymptotic expansion for `J_0` and `J_1`
//! followed by forward recurrence, which is stable while `n < x`.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::numerics::{refine_root, scan_brackets, Bracket};

const ASYMPTOTIC_FROM: f64 = 25.0;

/// `J_nu(x)` for `x >= 0`. Negative `x` is folded with `J_nu(-x) = (-1)^nu J_nu(x)`.
pub fn bessel_j(nu: u32, x: f64) -> f64 {
    if x < 0.0 {
        let v = bessel_j(nu, -x);
        return if nu % 2 == 1 { -v } else { v };
    }
    if x == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    if x < ASYMPTOTIC_FROM || nu as f64 >= x {
        miller(nu as usize, x)[nu as usize]
    } else {
        upward(nu as usize, x)[nu as usize]
    }
}

/// `J_0(x), ..., J_nmax(x)`.
pub fn bessel_j_array(nmax: u32, x: f64) -> Vec<f64> {
    let n = nmax as usize;
    if x < 0.0 {
        let mut v = bessel_j_array(nmax, -x);
        for (k, vk) in v.iter_mut().enumerate() {
            if k % 2 == 1 {
                *vk = -*vk;
            }
        }
        return v;
    }
    if x == 0.0 {
        let mut v = vec![0.0; n + 1];
        v[0] = 1.0;
        return v;
    }
    if x < ASYMPTOTIC_FROM || nmax as f64 >= x {
        let mut v = miller(n, x);
        v.truncate(n + 1);
        v
    } else {
        upward(n, x)
    }
}

/// `J_nu'(x) = (J_{nu-1} - J_{nu+1}) / 2`, with `J_0' = -J_1`.
pub fn bessel_j_prime(nu: u32, x: f64) -> f64 {
    let v = bessel_j_array(nu + 1, x);
    if nu == 0 {
        -v[1]
    } else {
        0.5 * (v[nu as usize - 1] - v[nu as usize + 1])
    }
}

fn miller(nmax: usize, x: f64) -> Vec<f64> {
    let start = nmax.max(x.ceil() as usize) + 30 + (x / 2.0).ceil() as usize;
    let start = start + start % 2;
    let mut vals = vec![0.0f64; start + 2];
    let mut next = 0.0f64;
    let mut cur = 1e-300f64;
    let mut norm = 0.0f64;
    for k in (1..=start).rev() {
        // J_{k-1} = (2k/x) J_k - J_{k+1}
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        vals[k - 1] = cur;
        vals[k] = next;
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            let s = 1e-250;
            for v in vals.iter_mut().skip(k - 1) {
                *v *= s;
            }
            cur *= s;
            next *= s;
            norm *= s;
        }
    }
    norm += vals[0];
    let inv = 1.0 / norm;
    vals.truncate(nmax + 1);
    for v in vals.iter_mut() {
        *v *= inv;
    }
    vals
}

/// Hankel asymptotic `P` and `Q` for order `nu`.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    let z = 8.0 * x;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * z);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // odd k feed Q, even k feed P, signs alternate in pairs
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn hankel_j(nu: u32, x: f64) -> f64 {
    let (p, q) = hankel_pq(nu as f64, x);
    // chi = x - (nu/2 + 1/4) pi, expanded so that only x carries rounding
    let phase = (nu as f64 * 0.5) * PI + FRAC_PI_4;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn upward(nmax: usize, x: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(nmax + 1);
    v.push(hankel_j(0, x));
    if nmax >= 1 {
        v.push(hankel_j(1, x));
    }
    for k in 1..nmax {
        let next = 2.0 * k as f64 / x * v[k] - v[k - 1];
        v.push(next);
    }
    v
}

const ZERO_SCAN_STEP: f64 = 0.25;

fn nth_positive_zero<F: Fn(f64) -> f64>(f: F, start: f64, l: u32, guess: f64) -> f64 {
    let mut hi = guess.max(start) + 4.0;
    loop {
        let brackets = scan_brackets(&f, start, hi, ZERO_SCAN_STEP);
        if brackets.len() >= l as usize {
            let b: Bracket = brackets[l as usize - 1];
            return refine_root(&f, b, 1e-15).expect("scan produced a valid bracket");
        }
        hi += 8.0 + 0.5 * hi;
    }
}

/// McMahon's large-zero expansion for `j_{nu,l}`.
fn mcmahon_j(nu: u32, l: u32) -> f64 {
    let mu = 4.0 * (nu as f64).powi(2);
    let beta = (l as f64 + 0.5 * nu as f64 - 0.25) * PI;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// McMahon's large-zero expansion for `j'_{nu,l}`.
fn mcmahon_jp(nu: u32, l: u32) -> f64 {
    let mu = 4.0 * (nu as f64).powi(2);
    let beta = (l as f64 + 0.5 * nu as f64 - 0.75) * PI;
    let e = 8.0 * beta;
    beta - (mu + 3.0) / e - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * e.powi(3))
}

/// `l`-th positive zero of `J_nu` (`l >= 1`).
///
/// The zero is located by a sign scan up to just past the McMahon estimate
/// and refined with Brent's method, so the count is exact even where the
/// asymptotic estimate is poor (small `l`, large `nu`).
pub fn bessel_zero(nu: u32, l: u32) -> f64 {
    assert!(l >= 1, "zero index starts at 1");
    let start = (nu as f64 * 0.5).max(1e-3);
    nth_positive_zero(|x| bessel_j(nu, x), start, l, mcmahon_j(nu, l))
}

/// `l`-th positive zero of `J_nu'` (`l >= 1`); the root at the origin is not counted.
pub fn bessel_prime_zero(nu: u32, l: u32) -> f64 {
    assert!(l >= 1, "zero index starts at 1");
    let start = (nu as f64 * 0.5).max(1e-3);
    nth_positive_zero(|x| bessel_j_prime(nu, x), start, l, mcmahon_jp(nu, l))
}

#[cfg(test)]
mod tests {
    // reference values are quoted at full printed precision
    #![allow(clippy::excessive_precision)]

    use super::*;
    use crate::numerics::{integrate_paneled, uniform_breakpoints, QuadratureSpec};

    /// Power series, accurate for moderate x.
    fn series(n: u32, x: f64) -> f64 {
        let h = 0.5 * x;
        let mut term = h.powi(n as i32);
        for k in 1..=n {
            term /= k as f64;
        }
        let mut sum = term;
        for k in 1..200 {
            term *= -h * h / (k as f64 * (k + n) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    }

    /// `J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt`.
    fn integral(n: u32, x: f64) -> f64 {
        let q = QuadratureSpec::new(1e-13, 1e-15, 4000, 15).unwrap();
        let bp = uniform_breakpoints(0.0, PI, PI / (4.0 + x / 2.0).ceil());
        integrate_paneled(|t| (n as f64 * t - x * t.sin()).cos(), &bp, &q).unwrap() / PI
    }

    #[test]
    fn origin() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        for nu in 1..6 {
            assert_eq!(bessel_j(nu, 0.0), 0.0);
        }
    }

    #[test]
    fn against_series_small_x() {
        for n in 0..8 {
            for &x in &[1e-4, 0.1, 1.0, 2.5, 5.0, 8.0] {
                let d = (bessel_j(n, x) - series(n, x)).abs();
                assert!(d < 1e-13, "n={n} x={x}: {d:e}");
            }
        }
    }

    #[test]
    fn against_integral_representation() {
        for n in 0..8 {
            for &x in &[3.0, 11.9, 12.1, 24.9, 25.1, 40.0, 97.3, 310.0] {
                let d = (bessel_j(n, x) - integral(n, x)).abs();
                assert!(d < 1e-12, "n={n} x={x}: {d:e}");
            }
        }
    }

    #[test]
    fn against_reference_values() {
        let refs = [
            (0, 30.0, -0.086_367_983_581_040_211),
            (1, 100.0, -0.077_145_352_014_112_158),
            (3, 25.5, 0.038_687_170_306_616_198),
            (2, 1000.0, -0.024_777_229_528_605_996),
            (5, 9999.5, 0.006_597_892_704_540_846_9),
            (0, 12.0, 0.047_689_310_796_833_537),
            (7, 3.0, 0.002_547_294_451_804_693_8),
            (10, 24.0, -0.167_713_345_680_919_89),
            (4, 40.0, -0.017_856_747_643_515_081),
        ];
        for (n, x, v) in refs {
            assert!((bessel_j(n, x) - v).abs() < 1e-12, "n={n} x={x}");
        }
    }

    #[test]
    fn array_matches_scalar() {
        for &x in &[0.5, 7.0, 26.0, 150.0] {
            let a = bessel_j_array(9, x);
            for (n, v) in a.iter().enumerate() {
                assert!((v - bessel_j(n as u32, x)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn recurrence() {
        for &x in &[0.1, 1.7, 13.0, 33.3, 99.0] {
            for nu in 1..8 {
                let lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
                let rhs = 2.0 * nu as f64 / x * bessel_j(nu, x);
                assert!((lhs - rhs).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn zeros_known() {
        assert!((bessel_zero(0, 1) - 2.404_825_557_695_773).abs() < 1e-12);
        assert!((bessel_zero(0, 2) - 5.520_078_110_286_311).abs() < 1e-12);
        assert!((bessel_zero(1, 1) - 3.831_705_970_207_512).abs() < 1e-12);
        assert!((bessel_prime_zero(1, 1) - 1.841_183_781_340_659).abs() < 1e-12);
        assert!((bessel_prime_zero(0, 1) - 3.831_705_970_207_512).abs() < 1e-12);
        assert!((bessel_prime_zero(2, 1) - 3.054_236_928_227_140).abs() < 1e-12);
        assert!(bessel_j(0, bessel_zero(0, 1)).abs() < 1e-15);
    }

    #[test]
    fn zeros_interlace() {
        for nu in 0..6 {
            for l in 1..6 {
                let a = bessel_zero(nu, l);
                let b = bessel_zero(nu + 1, l);
                let c = bessel_zero(nu, l + 1);
                assert!(a < b && b < c, "nu={nu} l={l}");
                let p = bessel_prime_zero(nu, l);
                assert!(bessel_j_prime(nu, p).abs() < 1e-13);
            }
        }
    }
}
