use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Variants carry enough context to tell a range problem apart from a
/// convergence problem; the CLI maps the former to exit status 3.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    GammaPole(f64),

    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("{what}: argument {value} outside the supported range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("parameter pole: {0}")]
    ParameterPole(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "subdivision limit {limit} reached: error estimate {estimate:e} exceeds tolerance {tolerance:e} (value {value})"
    )]
    SubdivisionLimit {
        limit: usize,
        value: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("integrand is not finite at {at}")]
    NonFinite { at: f64 },

    #[error("integrand is not even: f({at}) = {left}, f(-{at}) = {right}")]
    SymmetryViolation { at: f64, left: f64, right: f64 },

    #[error("contour truncation error {estimate:e} exceeds tolerance {tolerance:e}")]
    Truncation { estimate: f64, tolerance: f64 },

    #[error("imaginary residual {residual:e} of a real-valued contour integral exceeds {limit:e}")]
    ImaginaryResidual { residual: f64, limit: f64 },

    #[error("bracket cancellation at tau = {tau}: {digits:.1} digits lost, error contribution {contribution:e}")]
    Cancellation {
        tau: f64,
        digits: f64,
        contribution: f64,
    },

    #[error("envelope violation: {0}")]
    Envelope(String),

    #[error("Re s = {re} lies outside the convergence strip ({lo}, {hi})")]
    StripViolation { re: f64, lo: f64, hi: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("interpolation abscissa {value} outside [{lo}, {hi}]")]
    InterpolationRange { value: f64, lo: f64, hi: f64 },
}

impl Error {
    /// True for errors caused by arguments outside a supported numeric range,
    /// as opposed to convergence or usage problems.
    pub fn is_range_error(&self) -> bool {
        matches!(
            self,
            Error::GammaPole(_)
                | Error::Overflow(_)
                | Error::OutOfRange { .. }
                | Error::ParameterPole(_)
                | Error::StripViolation { .. }
                | Error::InterpolationRange { .. }
                | Error::Envelope(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
