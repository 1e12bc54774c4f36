//! The kernel Ψ_τ(x) = √π e^{-x/2} Re I_{iτ}(x/2) / cosh(πτ).
//!
//! Three independent evaluation routes are provided: the Bessel power
//! series, the Mellin–Barnes integral
//!
//! ```text
//! Ψ_τ(x) = (1/2πi) ∫_{γ-i∞}^{γ+i∞} Γ(s+iτ)Γ(s-iτ)Γ(1/2-s) / (Γ(s)Γ(1-s)) x^{-s} ds,  0 < γ < 1/2,
//! ```
//!
//! and the cosine representation
//!
//! ```text
//! Ψ_τ(x) = (2√x/π) ∫₀^∞ cos(τy) cosh(y/2) ₁F₁(1; 3/2; -x cosh²(y/2)) dy.
//! ```
//!
//! The module also checks the identities attached to the kernel: its
//! second-order differential equation, the Fourier-cosine index integral of
//! Re I_{iτ}/cosh(πτ), and the cosine-transform pair for |Γ(s+iτ)|².

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_contour, integrate_contour_real, integrate_interval, integrate_semiinfinite,
    ContourSpec, Envelope, Method, QuadratureSpec,
};
use crate::specfun::{
    gamma_real, i_series, kummer_dawson, ln_abs_gamma_sq, ln_cosh, ln_sin_pi, log_gamma_complex,
    SeriesPolicy,
};
use crate::tolerances::{IMAGINARY_RESIDUAL_LIMIT, PSI_SERIES_MAX_X};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// One evaluation of Ψ_τ(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub tau: f64,
    pub x: f64,
    pub value: f64,
    pub method: Method,
    pub abs_error_estimate: f64,
}

/// Result of checking an identity numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityGap {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    /// Error estimate of the quadrature side(s).
    pub abs_error_estimate: f64,
}

impl IdentityGap {
    pub(crate) fn new(lhs: f64, rhs: f64, abs_error_estimate: f64) -> Self {
        Self {
            lhs,
            rhs,
            gap: (lhs - rhs).abs(),
            abs_error_estimate,
        }
    }
}

fn check_x(x: f64, max: f64) -> Result<()> {
    if !(x > 0.0 && x <= max) {
        return Err(Error::OutOfRange {
            what: "kernel abscissa",
            value: x,
            min: 0.0,
            max,
        });
    }
    Ok(())
}

/// Ψ_τ(x) from the Bessel series, for 0 < x ≤ 120.
pub fn psi_series(tau: f64, x: f64) -> Result<KernelSample> {
    check_x(x, PSI_SERIES_MAX_X)?;
    let t = tau.abs();
    let policy = SeriesPolicy::default();
    let s = i_series(t, x / 2.0, ln_cosh(PI * t) + x / 2.0, &policy, false)?;
    let value = SQRT_PI * s.values[0].re;
    Ok(KernelSample {
        tau,
        x,
        value,
        method: Method::Series,
        abs_error_estimate: SQRT_PI * s.rounding_error() + policy.rel_tol * value.abs(),
    })
}

/// (Ψ, xΨ', x²Ψ'') by termwise differentiation of the series.
pub fn psi_series_derivatives(tau: f64, x: f64) -> Result<[f64; 3]> {
    check_x(x, PSI_SERIES_MAX_X)?;
    let t = tau.abs();
    let s = i_series(t, x / 2.0, ln_cosh(PI * t) + x / 2.0, &SeriesPolicy::default(), true)?;
    let [a, b, c] = s.values.map(|v| v.re);
    Ok([
        SQRT_PI * a,
        SQRT_PI * (b - 0.5 * x * a),
        SQRT_PI * (c - x * b + 0.25 * x * x * a),
    ])
}

/// Integrand of the Mellin–Barnes representation at s.
pub fn kernel_mb_integrand(tau: f64, x: f64, s: Complex64) -> Result<Complex64> {
    let it = Complex64::new(0.0, tau);
    let l = log_gamma_complex(s + it)? + log_gamma_complex(s - it)? + log_gamma_complex(0.5 - s)?
        - s * x.ln()
        + ln_sin_pi(s);
    Ok(l.exp() / PI)
}

/// Ψ_τ(x) by the Mellin–Barnes integral along Re s = contour.gamma.
///
/// The truncation radius is contour.t_max + |τ| and the absolute tolerance
/// is scaled by e^{-π|τ|/2}, the size of the integrand at its peak.
pub fn psi_mellin_barnes(tau: f64, x: f64, contour: &ContourSpec) -> Result<KernelSample> {
    if !(contour.gamma > 0.0 && contour.gamma < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "kernel contour abscissa {} outside (0, 1/2)",
            contour.gamma
        )));
    }
    check_x(x, f64::MAX)?;
    let t = tau.abs();
    let scale = (-PI * t / 2.0).exp();
    let local = ContourSpec {
        t_max: contour.t_max + t,
        abs_tol: contour.abs_tol * scale,
        ..*contour
    };
    let r = integrate_contour(|s| kernel_mb_integrand(t, x, s), &local)?;
    if r.value.im.abs() > IMAGINARY_RESIDUAL_LIMIT {
        return Err(Error::ImaginaryResidual {
            residual: r.value.im.abs(),
            limit: IMAGINARY_RESIDUAL_LIMIT,
        });
    }
    Ok(KernelSample {
        tau,
        x,
        value: r.value.re,
        method: Method::MellinBarnes,
        abs_error_estimate: r.abs_error_estimate,
    })
}

/// Ψ_τ(x) for large x: the leading term x^{-1/2}/cosh(πτ) from the pole at
/// s = 1/2 plus the Mellin–Barnes integral along Re s = 1.
pub fn psi_large_x(tau: f64, x: f64) -> Result<KernelSample> {
    check_x(x, f64::MAX)?;
    let t = tau.abs();
    let lead = (-0.5 * x.ln() - ln_cosh(PI * t)).exp();
    let contour = ContourSpec {
        gamma: 1.0,
        abs_tol: 1e-14 * lead,
        rel_tol: 1e-14,
        ..ContourSpec::default()
    };
    let t_max = 2.0 * t + 2.0 / PI * (1e14f64.ln() + 0.5 * x.ln());
    let r = integrate_contour_real(
        |s| kernel_mb_integrand(t, x, s),
        &contour,
        t_max,
        (2.0 * PI / x.ln()).min(1.0),
    )?;
    Ok(KernelSample {
        tau,
        x,
        value: lead + r.value,
        method: Method::MellinBarnes,
        abs_error_estimate: r.abs_error_estimate,
    })
}

/// Ψ_τ(x) by the series for x ≤ 120 and the shifted contour beyond.
pub fn psi(tau: f64, x: f64) -> Result<KernelSample> {
    if x <= PSI_SERIES_MAX_X {
        psi_series(tau, x)
    } else {
        psi_large_x(tau, x)
    }
}

/// Integrand of the cosine representation at y: (2/π) cos(τy) D(√x cosh(y/2)),
/// D being Dawson's integral.
pub fn psi_cosine_integrand(tau: f64, x: f64, y: f64) -> Result<f64> {
    let u = x.sqrt() * (y / 2.0).cosh();
    Ok(2.0 / PI * (tau * y).cos() * u * kummer_dawson(u * u)?)
}

/// Ψ_τ(x) by the cosine representation.
///
/// The y-integral is truncated where the bound D(u) ≤ 0.65/u makes the tail
/// smaller than abs_tol/2; only the tolerances of `spec` are used.
pub fn psi_cosine_rep(tau: f64, x: f64, spec: &QuadratureSpec) -> Result<KernelSample> {
    check_x(x, f64::MAX)?;
    let env = Envelope::Exponential {
        rate: 0.5,
        prefactor: 2.6 / (PI * x.sqrt()),
    };
    let tail_tol = 0.5 * spec.abs_tol;
    let cut = env.cut_for(tail_tol);
    let width = (PI / tau.abs().max(1e-300)).min(1.0);
    let n = (cut / width).ceil() as usize;
    let pts: Vec<f64> = (0..=n).map(|k| cut * k as f64 / n as f64).collect();
    let r = integrate_interval(
        |y: f64| psi_cosine_integrand(tau, x, y),
        &pts,
        spec.abs_tol - env.tail(cut),
        spec.rel_tol,
        spec.max_subdivisions,
    )?;
    Ok(KernelSample {
        tau,
        x,
        value: r.value,
        method: Method::CosineRep,
        abs_error_estimate: r.abs_error_estimate + env.tail(cut),
    })
}

/// Gap in the index integral
/// ∫₀^∞ cos(τy) Re I_{iτ}(x/2)/cosh(πτ) dτ = √(x/π) e^{x/2} cosh(y/2) ₁F₁(1; 3/2; −x cosh²(y/2)).
pub fn index_cosine_identity_gap(x: f64, y: f64, spec: &QuadratureSpec) -> Result<IdentityGap> {
    check_x(x, PSI_SERIES_MAX_X)?;
    let policy = SeriesPolicy::default();
    let env = Envelope::Exponential {
        rate: PI / 2.0,
        prefactor: 2f64.sqrt() * (x / 2.0).exp(),
    };
    let local = QuadratureSpec {
        scale: 1.0,
        left_levels: 0,
        ..*spec
    }
    .with_envelope(env);
    let lhs = integrate_semiinfinite(
        |tau: f64| {
            let s = i_series(tau, x / 2.0, ln_cosh(PI * tau), &policy, false)?;
            Ok((tau * y).cos() * s.values[0].re)
        },
        &local,
    )?;
    let c = (y / 2.0).cosh();
    let rhs = (x / PI).sqrt() * (x / 2.0).exp() * c * kummer_dawson(x * c * c)?;
    Ok(IdentityGap::new(lhs.value, rhs, lhs.abs_error_estimate))
}

/// Which half of the gamma cosine-transform pair to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairDirection {
    /// ∫₀^∞ |Γ(s+iτ)|² cos(τy) dτ = π 2^{−2s} Γ(2s) / cosh^{2s}(y/2)
    Forward,
    /// |Γ(s+iτ)|² = 2^{1−2s} Γ(2s) ∫₀^∞ cos(τy) / cosh^{2s}(y/2) dy
    Inverse,
}

/// Gap in the cosine-transform pair for |Γ(s+iτ)|², s real.
pub fn gamma_cosine_pair_gap(
    s_re: f64,
    tau_or_y: f64,
    direction: PairDirection,
) -> Result<IdentityGap> {
    if !(s_re > 0.0) {
        return Err(Error::InvalidParameter(format!("s = {s_re} must be positive")));
    }
    let s = s_re;
    let g2s = gamma_real(2.0 * s)?;
    match direction {
        PairDirection::Forward => {
            let y = tau_or_y;
            let peak = if s > 0.5 {
                ((2.0 * s - 1.0) * 2.0 / (PI * std::f64::consts::E)).powf(2.0 * s - 1.0)
            } else {
                1.0
            };
            let env = Envelope::Exponential {
                rate: PI / 2.0,
                prefactor: 2.2 * PI * peak.max(1.0),
            };
            let spec = QuadratureSpec::with_tolerances(1e-12, 1e-12).with_envelope(env);
            let lhs = integrate_semiinfinite(
                |tau: f64| Ok(ln_abs_gamma_sq(s, tau)?.exp() * (tau * y).cos()),
                &spec,
            )?;
            let rhs = PI * 2f64.powf(-2.0 * s) * g2s / (y / 2.0).cosh().powf(2.0 * s);
            Ok(IdentityGap::new(lhs.value, rhs, lhs.abs_error_estimate))
        }
        PairDirection::Inverse => {
            let tau = tau_or_y;
            let c = 2f64.powf(1.0 - 2.0 * s) * g2s;
            let env = Envelope::Exponential {
                rate: s,
                prefactor: 2f64.powf(2.0 * s),
            };
            let spec = QuadratureSpec::with_tolerances(1e-13, 1e-12).with_envelope(env);
            let r = integrate_semiinfinite(
                |y: f64| Ok((tau * y).cos() * (-2.0 * s * ln_cosh(y / 2.0)).exp()),
                &spec,
            )?;
            let lhs = ln_abs_gamma_sq(s, tau)?.exp();
            Ok(IdentityGap::new(lhs, c * r.value, c * r.abs_error_estimate))
        }
    }
}

/// Normalized residual of x²Ψ'' + x(1+x)Ψ' + (x/2 + τ²)Ψ = 0 with analytic
/// derivatives.
pub fn ode_residual(tau: f64, x: f64) -> Result<f64> {
    let [p0, p1, p2] = psi_series_derivatives(tau, x)?;
    Ok(ode_combination(tau, x, p0, p1, p2))
}

/// The same residual with central differences of step h.
pub fn ode_residual_fd(tau: f64, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < x) {
        return Err(Error::InvalidParameter(format!("step {h} must lie in (0, x)")));
    }
    let m = psi_series(tau, x - h)?.value;
    let c = psi_series(tau, x)?.value;
    let p = psi_series(tau, x + h)?.value;
    let d1 = (p - m) / (2.0 * h);
    let d2 = (p - 2.0 * c + m) / (h * h);
    Ok(ode_combination(tau, x, c, x * d1, x * x * d2))
}

fn ode_combination(tau: f64, x: f64, p0: f64, p1: f64, p2: f64) -> f64 {
    let a = p2;
    let b = (1.0 + x) * p1;
    let c = (0.5 * x + tau * tau) * p0;
    (a + b + c).abs() / (a.abs() + b.abs() + c.abs() + f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn series_limits_and_evenness() {
        assert_relative_eq!(psi_series(0.0, 1e-9).unwrap().value, SQRT_PI, max_relative = 1e-8);
        assert_eq!(psi_series(2.0, 1.0).unwrap().value, psi_series(-2.0, 1.0).unwrap().value);
        assert_relative_eq!(
            psi_series(1.0, 2.0).unwrap().value,
            0.106_920_303_227_111_26,
            max_relative = 1e-13
        );
    }

    #[test]
    fn mellin_barnes_matches_series() {
        let c = ContourSpec::default();
        for &(t, x) in &[(1.0, 2.0), (0.0, 0.1), (2.0, 5.0)] {
            let a = psi_series(t, x).unwrap().value;
            let b = psi_mellin_barnes(t, x, &c).unwrap().value;
            assert_relative_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn mb_integrand_envelope() {
        let v = kernel_mb_integrand(0.0, 1.0, Complex64::new(0.25, 40.0)).unwrap().norm();
        let env = (-20.0 * PI).exp() * 40f64.powf(-0.75);
        assert!(v <= 10.0 * env, "{v} vs {env}");
    }

    #[test]
    fn contour_outside_strip_is_rejected() {
        let c = ContourSpec::default().with_gamma(0.6);
        assert!(psi_mellin_barnes(1.0, 1.0, &c).is_err());
    }

    #[test]
    fn large_x_route_joins_series() {
        for &t in &[0.0, 1.0, 3.0] {
            let a = psi_series(t, 100.0).unwrap().value;
            let b = psi_large_x(t, 100.0).unwrap().value;
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn cosine_rep_matches_series() {
        let spec = QuadratureSpec::with_tolerances(1e-10, 1e-10);
        for &(t, x) in &[(0.5, 1.0), (0.0, 4.0)] {
            let a = psi_series(t, x).unwrap().value;
            let b = psi_cosine_rep(t, x, &spec).unwrap().value;
            assert_relative_eq!(a, b, epsilon = 1e-8);
        }
        let y0 = psi_cosine_integrand(0.3, 2.0, 0.0).unwrap();
        assert_relative_eq!(y0, 2.0 * 2f64.sqrt() / PI * kummer_dawson(2.0).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn index_cosine_gaps() {
        let spec = QuadratureSpec::with_tolerances(1e-10, 1e-10);
        assert!(index_cosine_identity_gap(1.0, 0.0, &spec).unwrap().gap <= 1e-8);
        assert!(index_cosine_identity_gap(2.0, 1.0, &spec).unwrap().gap <= 1e-8);
        let tiny = index_cosine_identity_gap(1e-8, 1.0, &spec).unwrap();
        assert!(tiny.rhs < 1e-3 && tiny.gap < 1e-8);
    }

    #[test]
    fn gamma_pair() {
        let g = gamma_cosine_pair_gap(0.5, 0.0, PairDirection::Forward).unwrap();
        assert_relative_eq!(g.lhs, PI / 2.0, max_relative = 1e-10);
        assert!(gamma_cosine_pair_gap(1.0, 1.0, PairDirection::Forward).unwrap().gap <= 1e-9);
        assert!(gamma_cosine_pair_gap(1.0, 1.0, PairDirection::Inverse).unwrap().gap <= 1e-9);
        assert!(gamma_cosine_pair_gap(-1.0, 1.0, PairDirection::Inverse).is_err());
    }

    #[test]
    fn ode_residuals() {
        assert!(ode_residual(0.0, 1.0).unwrap() <= 1e-10);
        assert!(ode_residual(2.0, 0.5).unwrap() <= 1e-10);
        let r1 = ode_residual_fd(1.0, 2.0, 0.02).unwrap();
        let r2 = ode_residual_fd(1.0, 2.0, 0.01).unwrap();
        assert!((r1 / r2 - 4.0).abs() < 0.5, "{}", r1 / r2);
    }
}
