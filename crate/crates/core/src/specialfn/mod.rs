//! Special functions: Kummer `M`, Bessel `J` and its zeros, Laguerre
//! polynomials, digamma and log-factorial.

mod bessel;
mod gamma;
mod kummer;
mod laguerre;

pub use bessel::{bessel_j, bessel_j_array, bessel_j_prime, bessel_prime_zero, bessel_zero};
pub use gamma::{digamma, ln_factorial};
pub use kummer::{kummer_m, kummer_m_prime, KummerParams};
pub use laguerre::{laguerre, laguerre_prime, laguerre_real};
