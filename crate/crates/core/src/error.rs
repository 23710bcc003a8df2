use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge on [{a}, {b}] (error estimate {estimate:e})")]
    NonConvergence { a: f64, b: f64, estimate: f64 },

    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("accuracy loss: {0}")]
    AccuracyLoss(String),

    #[error("eigenvalue not found for n={n}, m={m} at B={b_bar}: {reason}")]
    RootNotFound { n: u32, m: i32, b_bar: f64, reason: String },

    #[error("no level crossing found for n={n}, m={m} in B window [{lo}, {hi}]")]
    NoCrossing { n: u32, m: i32, lo: f64, hi: f64 },

    #[error("normalization failed: {0}")]
    NormalizationFailure(String),

    #[error("no analytic expression for {measure} at n={n}")]
    UnsupportedLevel { measure: &'static str, n: u32 },

    #[error("at n={n}, m={m}, B={b_bar}: {source}")]
    AtPoint {
        n: u32,
        m: i32,
        b_bar: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Attach the offending level and field strength to a numerical failure.
    pub fn at(self, n: u32, m: i32, b_bar: f64) -> Self {
        match self {
            e @ Error::AtPoint { .. } => e,
            e => Error::AtPoint {
                n,
                m,
                b_bar,
                source: Box::new(e),
            },
        }
    }

    /// True for errors caused by bad input rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
