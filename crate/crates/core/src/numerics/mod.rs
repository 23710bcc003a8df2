//! Physics-free numerical building blocks.

pub mod ddouble;
pub mod quadrature;
pub mod roots;
pub mod summation;

pub use ddouble::DoubleDouble;
pub use quadrature::{
    integrate_adaptive, integrate_adaptive_n, integrate_paneled, integrate_paneled_n, uniform_breakpoints,
    GaussLegendre, QuadratureSpec,
};
pub use roots::{refine_root, refine_root_scaled, scan_brackets, Bracket};
pub use summation::{compensated_sum, CompensatedSum};
