//! Inversion of the G-direction transform.
//!
//! With c(ε, x) = |Γ(ε−1+ix)|² x sinh(πx) / (π√π Γ(ε−1/2)) the kernel of the
//! regularized inversion is
//!
//! ```text
//! B_ε(x, t) = c(ε, x) ₂F₂(1, 3/2−ε; 2−ε−ix, 2−ε+ix; t)
//!           − x e^{t/2} t^{ε−1} Im( I_{ix}(t/2) / sin(π(ε+ix)) )
//! ```
//!
//! and g(x) = (cosh(πx)/√π) ∫₀^∞ B_ε(x, t) G(t) dt; ε = 0 is the limit form.
//!
//! For t ≤ 8 both terms are summed directly. Beyond, they cancel to
//! O(1/t) and the kernel is evaluated from its Mellin–Barnes form on
//! Re w = (1−ε)/2:
//!
//! ```text
//! B_ε = (x sinh(πx)/π²) [ (1/2πi)∫ π/sin(πw) √π Γ(w+ε−1+ix)Γ(w+ε−1−ix)/Γ(w+ε−1/2) t^{−w} dw + 2 Re R ],
//! R   = π/sin(π(ε+ix)) 2^{−2ix−1} Γ(−ix) t^{ε−1+ix}.
//! ```
//!
//! The t-integral runs over [1e-20, 2000] in ln t and over the rest of the
//! half-line in u = √(2000/t).

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use super::TransformResult;
use crate::error::{Error, Result};
use crate::handle::FunctionHandle;
use crate::quadrature::{integrate_contour_real, integrate_interval, ContourSpec, QuadratureSpec};
use crate::specfun::{
    gamma_real, hyp2f2_inv_g, i_series, ln_abs_gamma_sq, ln_cosh, ln_sin_pi, ln_sinhc,
    log_gamma_complex, rgamma_complex, SeriesPolicy,
};
use crate::tolerances::{INVERSE_G_DIRECT_MAX_T, INVERSE_G_T_MAX, INVERSE_G_T_MIN};

fn check(x: f64, eps: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::InvalidParameter(format!("eps = {eps} outside [0, 1/2)")));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("inversion abscissa {x} must be finite and nonzero")));
    }
    Ok(x.abs())
}

/// ln(x sinh(πx)) for x > 0.
fn ln_x_sinh(x: f64) -> f64 {
    2.0 * x.ln() + PI.ln() + ln_sinhc(PI * x)
}

/// c(ε, x); equals −1/(2π(1+x²)) at ε = 0.
pub fn inverse_g_coefficient(x: f64, eps: f64) -> Result<f64> {
    let x = check(x, eps)?;
    let l = ln_abs_gamma_sq(eps - 1.0, x)? + ln_x_sinh(x) - 1.5 * PI.ln();
    Ok(l.exp() / gamma_real(eps - 0.5)?)
}

/// B_ε(x, t) by direct summation; accurate for t up to about 8.
pub fn inverse_g_bracket_direct(x: f64, eps: f64, t: f64) -> Result<f64> {
    let x = check(x, eps)?;
    let policy = SeriesPolicy::default();
    let c = inverse_g_coefficient(x, eps)?;
    let h = hyp2f2_inv_g(x, eps, t, &policy)?;
    let l = ln_sin_pi(Complex64::new(eps, x));
    let s = i_series(x, t / 2.0, l.re - t / 2.0, &policy, false)?.values[0];
    let q = s * Complex64::from_polar(1.0, -l.im);
    Ok(c * h - x * t.powf(eps - 1.0) * q.im)
}

/// ln of x sinh(πx)/π², the common prefactor of the contour form.
fn ln_pref(x: f64) -> f64 {
    ln_x_sinh(x) - 2.0 * PI.ln()
}

/// 2 Re R with the prefactor applied.
fn residue_term(x: f64, eps: f64, t: f64) -> Result<f64> {
    let l = ln_pref(x) + PI.ln() - ln_sin_pi(Complex64::new(eps, x))
        + Complex64::new(-1.0, -2.0 * x) * LN_2
        + log_gamma_complex(Complex64::new(0.0, -x))?
        + Complex64::new(eps - 1.0, x) * t.ln();
    Ok(2.0 * l.exp().re)
}

/// B_ε(x, t) from the contour form; intended for t ≥ 8.
pub fn inverse_g_bracket_mb(x: f64, eps: f64, t: f64) -> Result<f64> {
    let x = check(x, eps)?;
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("t = {t} must be positive")));
    }
    let lp = ln_pref(x) + 1.5 * PI.ln();
    let lt = t.ln();
    let c = 0.5 * (1.0 - eps);
    let contour = ContourSpec {
        gamma: c,
        abs_tol: 1e-13 / t,
        rel_tol: 1e-11,
        ..ContourSpec::default()
    };
    let ix = Complex64::new(0.0, x);
    let r = integrate_contour_real(
        |w| {
            let a = w + eps - 1.0;
            let l = lp - ln_sin_pi(w) + log_gamma_complex(a + ix)? + log_gamma_complex(a - ix)?
                - w * lt;
            Ok(l.exp() * rgamma_complex(w + eps - 0.5))
        },
        &contour,
        x + 8.0,
        1.0,
    )?;
    Ok(r.value + residue_term(x, eps, t)?)
}

/// B_ε(x, t), switching from direct summation to the contour form at t = 8.
pub fn inverse_g_bracket(x: f64, eps: f64, t: f64) -> Result<f64> {
    if t <= INVERSE_G_DIRECT_MAX_T {
        inverse_g_bracket_direct(x, eps, t)
    } else {
        inverse_g_bracket_mb(x, eps, t)
    }
}

/// Large-t expansion B_ε ≈ a1/t + a2/t².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseGTails {
    pub a1: f64,
    pub a2: f64,
}

impl InverseGTails {
    pub fn new(x: f64, eps: f64) -> Result<Self> {
        let x = check(x, eps)?;
        let lp = ln_pref(x) + 0.5 * PI.ln();
        Ok(Self {
            a1: (lp + ln_abs_gamma_sq(eps, x)?).exp() / gamma_real(eps + 0.5)?,
            a2: -(lp + ln_abs_gamma_sq(1.0 + eps, x)?).exp() / gamma_real(eps + 1.5)?,
        })
    }
}

/// g(x) by the ε-regularized inversion formula.
pub fn inverse_g_regularized(
    g_of_t: &FunctionHandle,
    x: f64,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<TransformResult> {
    let xa = check(x, eps)?;
    let outer = (ln_cosh(PI * xa) - 0.5 * PI.ln()).exp();
    let (lo, hi) = (INVERSE_G_T_MIN.ln(), INVERSE_G_T_MAX.ln());
    let width = (PI / xa.max(0.5)).min(1.0);
    let n = ((hi - lo) / width).ceil() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
    pts.push(INVERSE_G_DIRECT_MAX_T.ln());
    pts.sort_by(f64::total_cmp);
    let integrand = |v: f64| -> Result<f64> {
        let t = v.exp();
        let g = g_of_t.eval(t);
        if g == 0.0 {
            return Ok(0.0);
        }
        Ok(inverse_g_bracket(xa, eps, t)? * g * t)
    };
    let body = integrate_interval(
        integrand,
        &pts,
        spec.abs_tol / outer,
        spec.rel_tol,
        spec.max_subdivisions,
    )?;

    // Beyond T the kernel comes from the Mellin–Barnes form; t = T/u² maps the tail onto (0, 1].
    let big_t = INVERSE_G_T_MAX;
    let tail = integrate_interval(
        |u: f64| {
            let t = big_t / (u * u);
            let g = g_of_t.eval(t);
            if g == 0.0 {
                return Ok(0.0);
            }
            Ok(inverse_g_bracket_mb(xa, eps, t)? * g * 2.0 * t / u)
        },
        &[0.0, 0.25, 0.5, 0.75, 1.0],
        0.1 * spec.abs_tol / outer,
        spec.rel_tol,
        spec.max_subdivisions,
    )?;
    let left = (inverse_g_bracket(xa, eps, INVERSE_G_T_MIN)? * g_of_t.eval(INVERSE_G_T_MIN)).abs()
        * INVERSE_G_T_MIN
        * 2.0;
    Ok(TransformResult {
        abscissa: x,
        value: outer * (body.value + tail.value),
        abs_error_estimate: outer * (body.abs_error_estimate + tail.abs_error_estimate + left),
    })
}

/// g(x) by the limit form of the inversion (ε = 0).
pub fn inverse_g(g_of_t: &FunctionHandle, x: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    inverse_g_regularized(g_of_t, x, 0.0, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coefficient_limit() {
        let c0 = inverse_g_coefficient(1.0, 0.0).unwrap();
        assert_relative_eq!(c0, -1.0 / (4.0 * PI), max_relative = 1e-13);
        let c = inverse_g_coefficient(1.0, 1e-4).unwrap();
        assert!((c - c0).abs() < 1e-3 * c0.abs());
    }

    #[test]
    fn forms_agree_at_switch() {
        for &x in &[0.5, 1.0, 2.5] {
            for &eps in &[0.0, 1e-3, 0.2] {
                for &t in &[6.0, 8.0, 12.0] {
                    let d = inverse_g_bracket_direct(x, eps, t).unwrap();
                    let m = inverse_g_bracket_mb(x, eps, t).unwrap();
                    assert!((d - m).abs() < 1e-9 * (1.0 + d.abs()), "{x} {eps} {t}: {d} {m}");
                }
            }
        }
    }

    #[test]
    fn large_t_expansion() {
        let k = InverseGTails::new(1.0, 0.0).unwrap();
        assert_relative_eq!(k.a1, 1.0 / PI, max_relative = 1e-12);
        assert_relative_eq!(k.a2, -2.0 / PI, max_relative = 1e-12);
        let t = 400.0;
        let b = inverse_g_bracket_mb(1.0, 0.0, t).unwrap();
        assert!((b - k.a1 / t - k.a2 / (t * t)).abs() < 5.0 / t.powi(3));
    }

    #[test]
    fn limit_of_regularized_kernel() {
        let d0 = inverse_g_bracket_direct(1.0, 0.0, 1.0).unwrap();
        let d = inverse_g_bracket_direct(1.0, 1e-6, 1.0).unwrap();
        assert!((d - d0).abs() < 1e-4);
    }
}
