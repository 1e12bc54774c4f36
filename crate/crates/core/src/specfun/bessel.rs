//! Modified Bessel functions of purely imaginary order.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{ln_sinhc, log_gamma_complex};
use super::sum::CompensatedSum;
use super::SeriesPolicy;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_interval, EvalResult, Method};
use crate::tolerances::{I_SERIES_MAX_ARG, K_SERIES_MAX_ARG, K_TAU_SWITCH};

/// Partial sums of the power series of I_{iτ}(z), scaled by e^{-log_scale}.
///
/// `values[0]` is the series itself, `values[1]` is z·d/dz of it and
/// `values[2]` is z²·d²/dz².
#[derive(Debug, Clone, Copy)]
pub(crate) struct ISeries {
    pub values: [Complex64; 3],
    pub max_term: f64,
    pub terms: usize,
}

impl ISeries {
    /// Rounding-level absolute error bound on `values[0]`.
    pub fn rounding_error(&self) -> f64 {
        8.0 * f64::EPSILON * self.max_term * (1.0 + self.terms as f64).sqrt()
    }
}

pub(crate) fn i_series(
    tau: f64,
    z: f64,
    log_scale: f64,
    policy: &SeriesPolicy,
    derivatives: bool,
) -> Result<ISeries> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::OutOfRange {
            what: "Bessel series argument",
            value: z,
            min: f64::MIN_POSITIVE,
            max: I_SERIES_MAX_ARG,
        });
    }
    let nu = Complex64::new(0.0, tau);
    let half = z / 2.0;
    let ln_t0 = nu * half.ln() - log_gamma_complex(1.0 + nu)? - log_scale;
    if ln_t0.re > policy.overflow_guard.ln() {
        return Err(Error::Overflow("modified Bessel series"));
    }
    let mut term = ln_t0.exp();
    let q = half * half;
    let mut sums = [CompensatedSum::new(); 3];
    for k in 0..policy.max_terms {
        let m = nu + 2.0 * k as f64;
        sums[0].add(term);
        if derivatives {
            sums[1].add(term * m);
            sums[2].add(term * m * (m - 1.0));
        }
        let kp = (k + 1) as f64;
        let next = term * q / (kp * (nu + kp));
        if next.norm() > policy.overflow_guard {
            return Err(Error::Overflow("modified Bessel series"));
        }
        // every later ratio is bounded by the ratio following `next`
        let r = q / ((kp + 1.0) * Complex64::new(kp + 1.0, tau).norm());
        if r < 1.0 {
            let weight = if derivatives {
                let mn = (nu + 2.0 * kp).norm() + 2.0;
                mn * mn
            } else {
                1.0
            };
            let scale = sums
                .iter()
                .take(if derivatives { 3 } else { 1 })
                .map(|s| s.value().norm())
                .fold(0.0, f64::max)
                .max(sums[0].max_term());
            let tail = next.norm() * weight / (1.0 - r);
            if tail <= policy.rel_tol * scale || next.norm() == 0.0 {
                sums[0].add(next);
                if derivatives {
                    let m = nu + 2.0 * kp;
                    sums[1].add(next * m);
                    sums[2].add(next * m * (m - 1.0));
                }
                return Ok(ISeries {
                    values: [sums[0].value(), sums[1].value(), sums[2].value()],
                    max_term: sums[0].max_term(),
                    terms: k + 2,
                });
            }
        }
        term = next;
    }
    Err(Error::NonConvergence {
        what: "modified Bessel series",
        terms: policy.max_terms,
    })
}

fn check_series_range(x: f64) -> Result<()> {
    if !(x > 0.0 && x <= I_SERIES_MAX_ARG) {
        return Err(Error::OutOfRange {
            what: "bessel_i_imag_order",
            value: x,
            min: 0.0,
            max: I_SERIES_MAX_ARG,
        });
    }
    Ok(())
}

/// I_{iτ}(x) from its power series.
///
/// Valid for 0 < x ≤ 60; larger arguments are rejected rather than summed
/// with degraded accuracy.
pub fn bessel_i_imag_order(tau: f64, x: f64, policy: &SeriesPolicy) -> Result<Complex64> {
    check_series_range(x)?;
    Ok(i_series(tau, x, 0.0, policy, false)?.values[0])
}

/// e^{-log_scale}·I_{iτ}(x), for callers that divide by a large factor
/// such as cosh(πτ) or e^x.
pub fn bessel_i_imag_order_scaled(
    tau: f64,
    x: f64,
    log_scale: f64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    check_series_range(x)?;
    Ok(i_series(tau, x, log_scale, policy, false)?.values[0])
}

/// K_{iτ}(x) for real τ and x > 0.
///
/// Uses K_{iτ}(x) = -π Im I_{iτ}(x)/sinh(πτ) for |τ| ≥ 1e-3 and x ≤ 6,
/// and the integral ∫₀^∞ e^{-x cosh t} cos(τt) dt otherwise. The series
/// route loses about 2x/ln 10 digits to cancellation, hence the cap on x.
pub fn macdonald_k_imag_order(tau: f64, x: f64) -> Result<f64> {
    let t = tau.abs();
    if t >= K_TAU_SWITCH && x <= K_SERIES_MAX_ARG {
        macdonald_k_series(t, x)
    } else {
        Ok(macdonald_k_cosh_integral(t, x)?.value)
    }
}

/// K_{iτ}(x) through the Bessel-I series; requires τ ≠ 0.
pub fn macdonald_k_series(tau: f64, x: f64) -> Result<f64> {
    check_series_range(x)?;
    let t = tau.abs();
    if t == 0.0 {
        return Err(Error::InvalidParameter(
            "series route for K needs tau != 0".into(),
        ));
    }
    let a = PI * t;
    let log_scale = ln_sinhc(a) + a.ln();
    let s = i_series(t, x, log_scale, &SeriesPolicy::default(), false)?;
    Ok(-PI * s.values[0].im)
}

/// K_{iτ}(x) = ∫₀^∞ e^{-x cosh t} cos(τt) dt by adaptive quadrature.
pub fn macdonald_k_cosh_integral(tau: f64, x: f64) -> Result<EvalResult<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::OutOfRange {
            what: "macdonald_k_imag_order",
            value: x,
            min: f64::MIN_POSITIVE,
            max: f64::MAX,
        });
    }
    // e^{-x(cosh t - 1)} < 1e-18 beyond the cut
    let cut = (1.0 + 42.0 / x).acosh();
    let n = ((cut * tau.abs().max(1.0)) / 2.0).ceil().clamp(4.0, 400.0) as usize;
    let points: Vec<f64> = (0..=n).map(|k| cut * k as f64 / n as f64).collect();
    let r = integrate_interval(
        |t: f64| {
            let s = (t / 2.0).sinh();
            Ok((-2.0 * x * s * s).exp() * (tau * t).cos())
        },
        &points,
        1e-300,
        1e-14,
        2000,
    )?;
    let scale = (-x).exp();
    Ok(EvalResult {
        value: r.value * scale,
        abs_error_estimate: r.abs_error_estimate * scale,
        evaluations: r.evaluations,
        method: Method::CoshIntegral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn order_zero_matches_reference() {
        let v = bessel_i_imag_order(0.0, 1.0, &SeriesPolicy::default()).unwrap();
        assert_relative_eq!(v.re, 1.266_065_877_752_008_3, max_relative = 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn imaginary_order_reference() {
        let v = bessel_i_imag_order(1.5, 2.0, &SeriesPolicy::default()).unwrap();
        assert_relative_eq!(v.re, 4.717_936_511_033_381, max_relative = 1e-13);
        assert_relative_eq!(v.im, -1.252_386_616_292_376, max_relative = 1e-13);
    }

    #[test]
    fn small_argument_modulus() {
        let v = bessel_i_imag_order(1.0, 1e-12, &SeriesPolicy::default()).unwrap();
        assert_relative_eq!(v.norm(), (PI.sinh() / PI).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn range_is_enforced() {
        assert!(bessel_i_imag_order(1.0, 61.0, &SeriesPolicy::default()).is_err());
        assert!(bessel_i_imag_order(1.0, 0.0, &SeriesPolicy::default()).is_err());
    }

    #[test]
    fn non_convergence_is_reported() {
        let p = SeriesPolicy::new(1e-14, 30, 1e300).unwrap();
        assert!(matches!(
            bessel_i_imag_order(0.5, 60.0, &p),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn k_references() {
        assert_relative_eq!(
            macdonald_k_imag_order(0.0, 1.0).unwrap(),
            0.421_024_438_240_708_33,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            macdonald_k_imag_order(1.0, 1.0).unwrap(),
            0.289_428_037_025_992_13,
            max_relative = 1e-12
        );
    }

    #[test]
    fn k_routes_agree() {
        let a = macdonald_k_series(2.0, 3.0).unwrap();
        let b = macdonald_k_cosh_integral(2.0, 3.0).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-11);
    }
}
