//! Special functions: complex gamma, modified Bessel and Macdonald
//! functions of imaginary order, Kummer ₁F₁ and two ₂F₂ instances.

mod bessel;
mod gamma;
mod hyper;
pub(crate) mod sum;

pub use bessel::{
    bessel_i_imag_order, bessel_i_imag_order_scaled, macdonald_k_cosh_integral,
    macdonald_k_imag_order, macdonald_k_series,
};
pub(crate) use bessel::i_series;
pub use gamma::{gamma_complex, gamma_real, ln_abs_gamma_sq, log_gamma_complex, rgamma_complex};
pub(crate) use gamma::{ln_cosh, ln_sin_pi, ln_sinhc};
pub use hyper::{dawson, hyp2f2_inv_f, hyp2f2_inv_g, kummer_1f1, kummer_dawson};

use crate::error::{Error, Result};

/// Truncation controls for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Largest admissible term magnitude.
    pub overflow_guard: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 4e-15,
            max_terms: 500,
            overflow_guard: 1e300,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, max_terms: usize, overflow_guard: f64) -> Result<Self> {
        if !(rel_tol >= 10.0 * f64::EPSILON) {
            return Err(Error::InvalidParameter(format!(
                "series rel_tol {rel_tol} below 10 machine epsilons"
            )));
        }
        if max_terms < 30 {
            return Err(Error::InvalidParameter(format!(
                "series max_terms {max_terms} below 30"
            )));
        }
        if !(overflow_guard > 1.0) {
            return Err(Error::InvalidParameter("overflow_guard must exceed 1".into()));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            overflow_guard,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validation() {
        assert!(SeriesPolicy::new(1e-16, 100, 1e300).is_err());
        assert!(SeriesPolicy::new(1e-12, 10, 1e300).is_err());
        assert!(SeriesPolicy::new(1e-12, 100, 1e300).is_ok());
    }
}
