//! Inversion of the F-direction transform.

use std::f64::consts::PI;

use super::{TransformResult, SQRT_PI};
use crate::error::{Error, Result};
use crate::handle::FunctionHandle;
use crate::quadrature::{integrate_interval, Envelope, QuadratureSpec};
use crate::specfun::{hyp2f2_inv_f, i_series, ln_cosh, ln_sinhc, SeriesPolicy};
use crate::tolerances::{CANCELLATION_DIGITS, INVERSE_F_MAX_X};

/// The inversion bracket and the size of its larger term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub value: f64,
    pub scale: f64,
}

impl Bracket {
    /// Decimal digits lost to cancellation.
    pub fn digits_lost(&self) -> f64 {
        if self.value == 0.0 {
            f64::INFINITY
        } else {
            (self.scale / self.value.abs()).log10().max(0.0)
        }
    }
}

/// ₂F₂(1, 1/2; 1+iτ, 1−iτ; x) − (πτ/sinh(πτ)) e^{x/2} Re I_{iτ}(x/2).
pub fn inverse_f_bracket(tau: f64, x: f64, policy: &SeriesPolicy) -> Result<Bracket> {
    if !(x > 0.0 && x <= INVERSE_F_MAX_X) {
        return Err(Error::OutOfRange {
            what: "inverse_f abscissa",
            value: x,
            min: 0.0,
            max: INVERSE_F_MAX_X,
        });
    }
    let t = tau.abs();
    let h = hyp2f2_inv_f(t, x, policy)?;
    let i = i_series(t, x / 2.0, -x / 2.0 + ln_sinhc(PI * t), policy, false)?.values[0].re;
    Ok(Bracket {
        value: h - i,
        scale: h.abs().max(i.abs()),
    })
}

/// Quadrature settings suited to the τ-integral of the inversion at x.
pub fn inverse_f_spec(x: f64, tau_max: f64, abs_tol: f64) -> QuadratureSpec {
    let width = (PI / (x / 4.0).ln().abs().max(1.0)).min(1.0);
    QuadratureSpec {
        abs_tol,
        rel_tol: 1e-10,
        ..QuadratureSpec::default()
    }
    .truncated_at(tau_max)
    .with_panel_width(width)
}

/// f(x) from F = F_of_f(τ):
///
/// ```text
/// f(x) = −(2/(π√π x)) ∫₀^∞ cosh(πτ) [bracket] F(τ) dτ.
/// ```
///
/// The τ-integral is truncated at `spec.tail_cut`. An exponential envelope
/// on F with rate above π contributes a tail bound to the error estimate.
/// Loss of more than six digits in the bracket is tolerated only while the
/// resulting rounding error stays below `spec.abs_tol`.
pub fn inverse_f(f_of_tau: &FunctionHandle, x: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    let policy = SeriesPolicy::default();
    inverse_f_bracket(0.0, x, &policy)?;
    let cut = spec.tail_cut;
    let local = QuadratureSpec {
        panel_width: spec.panel_width.or(inverse_f_spec(x, cut, spec.abs_tol).panel_width),
        ..*spec
    };
    let pts = local.partition(cut);
    let pref = -2.0 / (PI * SQRT_PI * x);
    let r = integrate_interval(
        |tau: f64| {
            let f = f_of_tau.eval(tau);
            if f == 0.0 {
                return Ok(0.0);
            }
            let h = ln_cosh(PI * tau).exp() * f;
            let b = inverse_f_bracket(tau, x, &policy)?;
            if b.digits_lost() > CANCELLATION_DIGITS {
                let contribution = 4.0 * f64::EPSILON * b.scale * (h * pref).abs();
                if contribution > spec.abs_tol {
                    return Err(Error::Cancellation {
                        tau,
                        digits: b.digits_lost(),
                        contribution,
                    });
                }
            }
            Ok(h * b.value)
        },
        &pts,
        spec.abs_tol / pref.abs(),
        spec.rel_tol,
        spec.max_subdivisions,
    )?;
    let tail = match f_of_tau.envelope {
        Some(Envelope::Exponential { rate, prefactor }) if rate > PI => Envelope::Exponential {
            rate: rate - PI,
            prefactor,
        }
        .tail(cut),
        _ => 0.0,
    };
    Ok(TransformResult {
        abscissa: x,
        value: pref * r.value,
        abs_error_estimate: pref.abs() * (r.abs_error_estimate + tail),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_vanishes_at_zero_index() {
        let b = inverse_f_bracket(0.0, 2.0, &SeriesPolicy::default()).unwrap();
        assert!(b.value.abs() < 1e-13 * b.scale);
    }

    #[test]
    fn bracket_tends_to_one() {
        let p = SeriesPolicy::default();
        let b10 = inverse_f_bracket(10.0, 1.0, &p).unwrap().value;
        let b20 = inverse_f_bracket(20.0, 1.0, &p).unwrap().value;
        assert!((b20 - 1.0).abs() < (b10 - 1.0).abs());
        assert!((b20 - 1.0).abs() < 1e-2);
    }

    #[test]
    fn zero_input_inverts_to_zero() {
        let z = FunctionHandle::zero(crate::handle::Domain::HalfLine);
        let spec = inverse_f_spec(1.0, 8.0, 1e-10);
        assert_eq!(inverse_f(&z, 1.0, &spec).unwrap().value, 0.0);
    }
}
