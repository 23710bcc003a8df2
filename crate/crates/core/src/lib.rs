// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod measures;
pub mod numerics;
pub mod specialfn;
pub mod spectrum;
pub mod validation;
pub mod wavefn;

pub use error::{Error, Result};
