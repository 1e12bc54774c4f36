//! Vertical-line contour integrals (1/2πi)∫ f(s) ds along Re s = γ.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{integrate_interval, EvalResult, Method};
use crate::error::{Error, Result};
use crate::tolerances::{CONTOUR_ABS_TOL, DEFAULT_GAMMA};

/// Contour abscissa, truncation and resolution for vertical-line integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub gamma: f64,
    pub t_max: f64,
    /// Gauss–Kronrod nodes per unit of Im s in the initial partition.
    pub nodes_per_unit: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self::new(DEFAULT_GAMMA, CONTOUR_ABS_TOL)
    }
}

impl ContourSpec {
    /// Contour at `gamma` with t_max chosen so that e^{-πt/2} t^{γ-1}
    /// equals abs_tol/10.
    pub fn new(gamma: f64, abs_tol: f64) -> Self {
        Self {
            gamma,
            t_max: envelope_t_max(gamma, abs_tol / 10.0),
            nodes_per_unit: 15,
            abs_tol,
            rel_tol: abs_tol,
            max_subdivisions: 4000,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self.t_max = envelope_t_max(gamma, self.abs_tol / 10.0);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_max {} must be positive", self.t_max)));
        }
        if self.nodes_per_unit == 0 || !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter("invalid contour resolution or tolerance".into()));
        }
        if !self.gamma.is_finite() {
            return Err(Error::InvalidParameter("contour abscissa must be finite".into()));
        }
        Ok(())
    }

    pub(crate) fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let width = 15.0 / self.nodes_per_unit as f64;
        let n = ((hi - lo) / width).ceil().max(1.0) as usize;
        (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect()
    }
}

/// Solve e^{-πt/2} t^{γ-1} = target for t ≥ 1.
fn envelope_t_max(gamma: f64, target: f64) -> f64 {
    let g = |t: f64| -PI * t / 2.0 + (gamma - 1.0) * t.ln() - target.ln();
    let (mut lo, mut hi) = (1.0, 2.0);
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    if g(lo) <= 0.0 {
        return lo;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// (1/2π) ∫_{-t_max}^{t_max} f(γ + it) dt, i.e. (1/2πi)∫ f(s) ds along the
/// truncated line.
///
/// The truncated tails are estimated from |f| at ±t_max with the e^{-π|t|/2}
/// decay of gamma-ratio integrands; an estimate above abs_tol is an error.
pub fn integrate_contour<F>(mut integrand: F, contour: &ContourSpec) -> Result<EvalResult<Complex64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    contour.validate()?;
    let g = contour.gamma;
    let tm = contour.t_max;
    let edge = integrand(Complex64::new(g, tm))?.norm() + integrand(Complex64::new(g, -tm))?.norm();
    let truncation = edge * (2.0 / PI) / (2.0 * PI);
    if truncation > contour.abs_tol {
        return Err(Error::Truncation {
            estimate: truncation,
            tolerance: contour.abs_tol,
        });
    }
    let pts = contour.breakpoints(-tm, tm);
    let r = integrate_interval(
        |t: f64| integrand(Complex64::new(g, t)),
        &pts,
        2.0 * PI * (contour.abs_tol - truncation).max(0.5 * contour.abs_tol),
        contour.rel_tol,
        contour.max_subdivisions,
    )?;
    Ok(EvalResult {
        value: r.value / (2.0 * PI),
        abs_error_estimate: r.abs_error_estimate / (2.0 * PI) + truncation,
        evaluations: r.evaluations + 2,
        method: Method::Contour,
    })
}

/// Real-valued contour integral for integrands with f(conj s) = conj f(s):
/// (1/π) ∫₀^{t_max} Re f(γ + it) dt.
pub(crate) fn integrate_contour_real<F>(
    mut integrand: F,
    contour: &ContourSpec,
    t_max: f64,
    extra_breaks: f64,
) -> Result<EvalResult<f64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    contour.validate()?;
    let g = contour.gamma;
    let edge = integrand(Complex64::new(g, t_max))?.norm();
    let truncation = edge * (2.0 / PI) / PI;
    if truncation > contour.abs_tol {
        return Err(Error::Truncation {
            estimate: truncation,
            tolerance: contour.abs_tol,
        });
    }
    let mut pts = contour.breakpoints(0.0, t_max);
    if extra_breaks > 0.0 {
        let n = (t_max / extra_breaks).ceil() as usize;
        pts.extend((1..n).map(|k| k as f64 * extra_breaks));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
    }
    let r = integrate_interval(
        |t: f64| Ok(integrand(Complex64::new(g, t))?.re),
        &pts,
        PI * (contour.abs_tol - truncation).max(0.5 * contour.abs_tol),
        contour.rel_tol,
        contour.max_subdivisions,
    )?;
    Ok(EvalResult {
        value: r.value / PI,
        abs_error_estimate: r.abs_error_estimate / PI + truncation,
        evaluations: r.evaluations + 1,
        method: Method::Contour,
    })
}
