//! The transform pair
//!
//! ```text
//! F(τ) = ∫₀^∞ Ψ_τ(x) f(x) dx,        G(x) = ∫_ℝ Ψ_τ(x) g(τ) dτ,
//! ```
//!
//! their inversion formulas and the identities connecting them with the
//! Stieltjes, Laplace and Kontorovich–Lebedev transforms.

mod interp;
mod inverse_f;
mod inverse_g;
mod roundtrip;

pub use interp::{Chebyshev, CubicSpline, SplineEnd};
pub use inverse_f::{inverse_f, inverse_f_bracket, inverse_f_spec, Bracket};
pub use inverse_g::{
    inverse_g, inverse_g_bracket, inverse_g_bracket_direct, inverse_g_bracket_mb,
    inverse_g_coefficient, inverse_g_regularized, InverseGTails,
};
pub use roundtrip::{
    round_trip_f, round_trip_g, sampled_profile, tabulate_apply_g, tabulate_forward_f, ForwardTable, GTable,
    RecoveredPoint, RoundTripOptions,
};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::handle::{Domain, FunctionHandle, Symmetry};
use crate::kernel::{psi, IdentityGap};
use crate::quadrature::{
    integrate_contour, integrate_interval, integrate_semiinfinite, ContourSpec, Envelope,
    QuadratureSpec, TailMode,
};
use crate::specfun::{
    bessel_i_imag_order_scaled, gamma_complex, hyp2f2_inv_f, i_series, kummer_1f1, ln_cosh,
    macdonald_k_imag_order, SeriesPolicy,
};

pub(crate) const SQRT_PI: f64 = 1.772_453_850_905_516;

/// One transform value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformResult {
    /// τ for the F direction, x for the G direction.
    pub abscissa: f64,
    pub value: f64,
    pub abs_error_estimate: f64,
}

/// Bound |Ψ_τ(x)| ≤ √(2π) e^{-π|τ|/2} combined with a bound on g.
fn kernel_times(env: Envelope) -> Envelope {
    let k = (2.0 * PI).sqrt();
    match env {
        Envelope::Exponential { rate, prefactor } => Envelope::Exponential {
            rate: rate + PI / 2.0,
            prefactor: k * prefactor,
        },
        Envelope::Gaussian { rate, prefactor } => Envelope::Gaussian {
            rate,
            prefactor: k * prefactor,
        },
        Envelope::Algebraic { prefactor, .. } => Envelope::Exponential {
            rate: PI / 2.0,
            prefactor: k * prefactor,
        },
    }
}

/// F(τ) = ∫₀^∞ Ψ_τ(x) f(x) dx.
///
/// The spec is used as given; when it carries no envelope, uses envelope
/// truncation and f declares a bound, √π times that bound is attached.
pub fn forward_f(f: &FunctionHandle, tau: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    if f.domain != Domain::HalfLine {
        return Err(Error::InvalidParameter(format!("{} is not a half-line function", f.name)));
    }
    let mut local = *spec;
    if let (None, Some(env), TailMode::Envelope) = (spec.envelope, f.envelope, spec.tail) {
        let scaled = match env {
            Envelope::Exponential { rate, prefactor } => Envelope::Exponential { rate, prefactor: SQRT_PI * prefactor },
            Envelope::Gaussian { rate, prefactor } => Envelope::Gaussian { rate, prefactor: SQRT_PI * prefactor },
            Envelope::Algebraic { power, prefactor } => Envelope::Algebraic { power, prefactor: SQRT_PI * prefactor },
        };
        local = local.with_envelope(scaled);
    }
    let r = integrate_semiinfinite(|x: f64| Ok(psi(tau, x)?.value * f.eval(x)), &local)?;
    Ok(TransformResult {
        abscissa: tau,
        value: r.value,
        abs_error_estimate: r.abs_error_estimate,
    })
}

/// Quadrature settings for τ-integrals against Ψ_τ(x): uniform panels
/// matched to the oscillation of (x/4)^{iτ} and, when g declares a bound,
/// an envelope cut.
pub(crate) fn tau_spec(g: &FunctionHandle, x: f64, spec: &QuadratureSpec) -> QuadratureSpec {
    let width = (PI / (x / 4.0).ln().abs().max(1.0)).min(1.0);
    let mut local = spec.with_panel_width(width);
    if spec.envelope.is_none() {
        if let Some(env) = g.envelope {
            local = local.with_envelope(kernel_times(env));
        }
    }
    local
}

/// G(x) = ∫_ℝ Ψ_τ(x) g(τ) dτ, split by the declared symmetry of g.
pub fn apply_g(g: &FunctionHandle, x: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    if g.domain != Domain::WholeLine {
        return Err(Error::InvalidParameter(format!("{} is not a whole-line function", g.name)));
    }
    if !(x > 0.0) {
        return Err(Error::OutOfRange {
            what: "apply_g abscissa",
            value: x,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if g.symmetry == Symmetry::Odd {
        return Ok(TransformResult {
            abscissa: x,
            value: 0.0,
            abs_error_estimate: 0.0,
        });
    }
    let local = tau_spec(g, x, spec);
    let even = g.symmetry == Symmetry::Even;
    let r = integrate_semiinfinite(
        |tau: f64| {
            let w = if even {
                2.0 * g.eval(tau)
            } else {
                g.eval(tau) + g.eval(-tau)
            };
            if w == 0.0 {
                return Ok(0.0);
            }
            Ok(psi(tau, x)?.value * w)
        },
        &local,
    )?;
    Ok(TransformResult {
        abscissa: x,
        value: r.value,
        abs_error_estimate: r.abs_error_estimate,
    })
}

/// ‖f‖₁ on the half-line.
pub fn l1_norm(f: &FunctionHandle, spec: &QuadratureSpec) -> Result<f64> {
    Ok(integrate_semiinfinite(|x: f64| Ok(f.eval(x).abs()), spec)?.value)
}

/// ∫_ℝ |g(τ)| / √cosh(πτ) dτ.
pub fn cosh_weighted_norm(g: &FunctionHandle, spec: &QuadratureSpec) -> Result<f64> {
    let w = |t: f64| (-0.5 * ln_cosh(PI * t)).exp();
    let r = integrate_semiinfinite(|t: f64| Ok((g.eval(t).abs() + g.eval(-t).abs()) * w(t)), spec)?;
    Ok(r.value)
}

/// √π ‖f‖₁, the bound on |F(τ)|.
pub fn forward_bound(f: &FunctionHandle, spec: &QuadratureSpec) -> Result<f64> {
    Ok(SQRT_PI * l1_norm(f, spec)?)
}

/// √π ∫|g|/√cosh(πτ) dτ, the bound on |G(x)|.
pub fn apply_g_bound(g: &FunctionHandle, spec: &QuadratureSpec) -> Result<f64> {
    Ok(SQRT_PI * cosh_weighted_norm(g, spec)?)
}

/// Kontorovich–Lebedev link: with Im in place of Re, the F-kernel becomes
/// −tanh(πτ) e^{−x/2} K_{iτ}(x/2)/√π.
///
/// `lhs` is ∫₀^∞ e^{−x/2} K_{iτ}(x/2) f(x) dx computed with K from
/// [`macdonald_k_imag_order`]; `rhs` is −(√π/tanh(πτ)) times the Im-kernel
/// transform computed from the Bessel-I series.
pub fn kl_link_gap(f: &FunctionHandle, tau: f64, spec: &QuadratureSpec) -> Result<IdentityGap> {
    if tau == 0.0 {
        return Err(Error::InvalidParameter("the link needs tau != 0".into()));
    }
    let t = tau.abs();
    let cut = 120.0f64.min(spec.tail_cut.max(60.0));
    let local = spec.truncated_at(cut);
    let policy = SeriesPolicy::default();
    let lhs = integrate_semiinfinite(
        |x: f64| Ok((-x / 2.0).exp() * macdonald_k_imag_order(t, x / 2.0)? * f.eval(x)),
        &local,
    )?;
    let im = integrate_semiinfinite(
        |x: f64| {
            let s = i_series(t, x / 2.0, ln_cosh(PI * t) + x / 2.0, &policy, false)?;
            Ok(SQRT_PI * s.values[0].im * f.eval(x))
        },
        &local,
    )?;
    let factor = -SQRT_PI / (PI * t).tanh();
    Ok(IdentityGap::new(
        lhs.value,
        factor * im.value,
        lhs.abs_error_estimate + factor.abs() * im.abs_error_estimate,
    ))
}

/// Gap in the Stieltjes identity
/// ∫₀^∞ G(t)/(x+t) dt = √π e^{x/2} ∫_ℝ K_{iτ}(x/2) g(τ)/cosh(πτ) dτ,
/// with G taken from a precomputed table.
pub fn stieltjes_identity_gap(
    g: &FunctionHandle,
    table: &GTable,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityGap> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("x = {x} must be positive")));
    }
    let lhs = table.stieltjes(x, spec)?;
    let local = tau_spec(g, x, &QuadratureSpec { panel_width: None, ..*spec });
    let rhs = integrate_semiinfinite(
        |tau: f64| {
            let w = g.eval(tau) + g.eval(-tau);
            if w == 0.0 {
                return Ok(0.0);
            }
            Ok(macdonald_k_imag_order(tau, x / 2.0)? * w * (-ln_cosh(PI * tau)).exp())
        },
        &local,
    )?;
    let c = SQRT_PI * (x / 2.0).exp();
    Ok(IdentityGap::new(
        lhs.value,
        c * rhs.value,
        lhs.abs_error_estimate + c * rhs.abs_error_estimate,
    ))
}

/// Gap in ₁F₁(1/2+iτ; 1+2iτ; 1/x) = Γ(1+iτ) (4x)^{iτ} e^{1/(2x)} I_{iτ}(1/(2x)).
///
/// `lhs` and `rhs` hold the real parts; `gap` is the modulus of the complex
/// difference.
pub fn kummer_bessel_gap(tau: f64, x: f64) -> Result<IdentityGap> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("x = {x} must be positive")));
    }
    let z = 1.0 / x;
    let policy = SeriesPolicy::default();
    let lhs = kummer_1f1(
        Complex64::new(0.5, tau),
        Complex64::new(1.0, 2.0 * tau),
        Complex64::new(z, 0.0),
        &policy,
    )?;
    let i = bessel_i_imag_order_scaled(tau, z / 2.0, -z / 2.0, &policy)?;
    let rhs = gamma_complex(Complex64::new(1.0, tau))? * Complex64::new(0.0, tau * (4.0 * x).ln()).exp() * i;
    Ok(IdentityGap {
        lhs: lhs.re,
        rhs: rhs.re,
        gap: (lhs - rhs).norm(),
        abs_error_estimate: 0.0,
    })
}

/// Closed form of ∫₀^∞ e^{−xy} K²_{iτ}(√y) dy.
pub fn laplace_kernel_closed(x: f64, tau: f64) -> Result<f64> {
    let t = tau.abs();
    if t == 0.0 || !(x > 0.0) {
        return Err(Error::InvalidParameter("closed form needs tau != 0 and x > 0".into()));
    }
    let sh = (PI * t).sinh();
    let z = 1.0 / (2.0 * x);
    let i = bessel_i_imag_order_scaled(t, z, -z, &SeriesPolicy::default())?;
    let p = hyp2f2_inv_f(t, 1.0 / x, &SeriesPolicy::default())?;
    Ok(-(PI / (2.0 * x * sh)) * (PI / sh * i.re - p / t))
}

/// Gap between direct quadrature of ∫₀^∞ e^{−xy} K²_{iτ}(√y) dy and its
/// closed form.
pub fn laplace_kernel_gap(x: f64, tau: f64, spec: &QuadratureSpec) -> Result<IdentityGap> {
    let rhs = laplace_kernel_closed(x, tau)?;
    let env = Envelope::Exponential {
        rate: x,
        prefactor: PI / 2.0,
    };
    let local = QuadratureSpec {
        left_levels: 40,
        ..*spec
    }
    .with_envelope(env);
    let lhs = integrate_semiinfinite(
        |y: f64| {
            let k = macdonald_k_imag_order(tau, y.sqrt())?;
            Ok((-x * y).exp() * k * k)
        },
        &local,
    )?;
    Ok(IdentityGap::new(lhs.value, rhs, lhs.abs_error_estimate))
}

/// φ(x) = (1/2πi) ∫ f*(s)/Γ(1−s) x^{−s} ds along Re s = 1 − ν.
pub fn lebedev_phi(f: &FunctionHandle, x: f64, nu: f64, contour: &ContourSpec) -> Result<f64> {
    let mut c = contour.with_gamma(1.0 - nu);
    let lx = x.ln();
    let integrand = |s: Complex64| Ok(f.mellin(s)? * crate::specfun::rgamma_complex(1.0 - s) * (-s * lx).exp());
    // The ratio may decay more slowly than a single gamma; widen the window on truncation.
    for _ in 0..6 {
        match integrate_contour(integrand, &c) {
            Err(Error::Truncation { .. }) => c.t_max *= 1.25,
            r => return Ok(r?.value.re),
        }
    }
    Ok(integrate_contour(integrand, &c)?.value.re)
}

/// Gap in the Lebedev form F(τ) = (2√π/cosh(πτ)) ∫₀^∞ Re I_{iτ}(√x) K_{iτ}(√x) φ(x) dx,
/// φ being built from the Mellin transform of f.
pub fn lebedev_form_gap(
    f: &FunctionHandle,
    tau: f64,
    nu: f64,
    spec: &QuadratureSpec,
    contour: &ContourSpec,
) -> Result<IdentityGap> {
    if !(nu > 0.0 && nu < 0.5) {
        return Err(Error::InvalidParameter(format!("nu = {nu} outside (0, 1/2)")));
    }
    let lhs = forward_f(f, tau, spec)?;
    if !f.has_mellin() {
        return Err(Error::InvalidParameter(format!("{} has no Mellin transform", f.name)));
    }
    let t = tau.abs();
    let policy = SeriesPolicy::default();
    let pts = spec.partition(spec.tail_cut.min(60.0));
    let body = integrate_interval(
        |x: f64| {
            let z = x.sqrt();
            let i = i_series(t, z, z + ln_cosh(PI * t), &policy, false)?.values[0].re;
            let k = macdonald_k_imag_order(t, z)? * z.exp();
            Ok(i * k * lebedev_phi(f, x, nu, contour)?)
        },
        &pts,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_subdivisions,
    )?;
    let rhs = 2.0 * SQRT_PI * body.value;
    Ok(IdentityGap::new(
        lhs.value,
        rhs,
        lhs.abs_error_estimate + 2.0 * SQRT_PI * body.abs_error_estimate,
    ))
}
