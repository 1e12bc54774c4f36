//! Adaptive quadrature for the three integral shapes used throughout the
//! crate: half-line integrals with a decay envelope, even whole-line
//! integrals and vertical-line contour integrals.

mod contour;
mod gk;

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

pub use contour::{integrate_contour, ContourSpec};
pub(crate) use contour::integrate_contour_real;
pub(crate) use gk::gk15_nodes;
pub use gk::integrate_interval;

use crate::error::{Error, Result};

/// Values the engines can integrate: real or complex.
pub trait QuadValue:
    Copy + Default + Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// How a value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    GaussKronrod,
    Contour,
    MellinBarnes,
    CosineRep,
    CoshIntegral,
    Composite,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::GaussKronrod => "gauss_kronrod",
            Method::Contour => "contour",
            Method::MellinBarnes => "mellin_barnes",
            Method::CosineRep => "cosine_rep",
            Method::CoshIntegral => "cosh_integral",
            Method::Composite => "composite",
        }
    }
}

/// A computed value with its absolute error estimate and effort counter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub method: Method,
}

/// Decay bound |f(x)| ≤ envelope(x) valid for large x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// C e^{-λx}
    Exponential { rate: f64, prefactor: f64 },
    /// C e^{-λx²}
    Gaussian { rate: f64, prefactor: f64 },
    /// C x^{-p}, p > 1
    Algebraic { power: f64, prefactor: f64 },
}

impl Envelope {
    pub fn bound(&self, x: f64) -> f64 {
        match *self {
            Envelope::Exponential { rate, prefactor } => prefactor * (-rate * x).exp(),
            Envelope::Gaussian { rate, prefactor } => prefactor * (-rate * x * x).exp(),
            Envelope::Algebraic { power, prefactor } => prefactor * x.powf(-power),
        }
    }

    /// Upper bound on ∫_cut^∞ envelope.
    pub fn tail(&self, cut: f64) -> f64 {
        match *self {
            Envelope::Exponential { rate, prefactor } => prefactor * (-rate * cut).exp() / rate,
            Envelope::Gaussian { rate, prefactor } => {
                prefactor * (-rate * cut * cut).exp() / (2.0 * rate * cut)
            }
            Envelope::Algebraic { power, prefactor } => {
                prefactor * cut.powf(1.0 - power) / (power - 1.0)
            }
        }
    }

    /// Smallest cut (up to bisection accuracy) with tail(cut) ≤ target.
    pub fn cut_for(&self, target: f64) -> f64 {
        let mut hi = 1.0;
        while self.tail(hi) > target && hi < 1e300 {
            hi *= 2.0;
        }
        let mut lo = hi / 2.0;
        if self.tail(lo) <= target {
            return lo;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.tail(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Envelope::Exponential { rate, prefactor } | Envelope::Gaussian { rate, prefactor } => {
                rate > 0.0 && prefactor >= 0.0
            }
            Envelope::Algebraic { power, prefactor } => power > 1.0 && prefactor >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid envelope {self:?}")))
        }
    }
}

/// Treatment of the half-line beyond `tail_cut`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Drop the tail and add the envelope bound to the error estimate.
    Envelope,
    /// Integrate the tail after the substitution x = cut/u².
    Mapped,
}

/// Tolerances and truncation for real-line quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub tail_cut: f64,
    pub envelope: Option<Envelope>,
    pub tail: TailMode,
    /// Abscissa around which the initial partition is graded.
    pub scale: f64,
    /// Number of geometric panels between 0 and `scale`.
    pub left_levels: usize,
    /// Uniform initial panels of this width replace the graded partition,
    /// for oscillatory integrands.
    pub panel_width: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            tail_cut: 60.0,
            envelope: None,
            tail: TailMode::Mapped,
            scale: 1.0,
            left_levels: 12,
            panel_width: None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    /// Attach an envelope and move `tail_cut` to where its tail is abs_tol/2.
    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = Some(envelope);
        self.tail = TailMode::Envelope;
        self.tail_cut = envelope.cut_for(0.5 * self.abs_tol);
        self
    }

    pub fn with_tail_cut(mut self, cut: f64) -> Self {
        self.tail_cut = cut;
        self
    }

    /// Truncate at `cut` without a tail estimate.
    pub fn truncated_at(mut self, cut: f64) -> Self {
        self.tail = TailMode::Envelope;
        self.envelope = None;
        self.tail_cut = cut;
        self
    }

    pub fn with_panel_width(mut self, width: f64) -> Self {
        self.panel_width = Some(width);
        self
    }

    pub fn mapped_tail(mut self, cut: f64) -> Self {
        self.tail = TailMode::Mapped;
        self.tail_cut = cut;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter("max_subdivisions must be positive".into()));
        }
        if !(self.tail_cut > 0.0 && self.tail_cut.is_finite()) {
            return Err(Error::InvalidParameter(format!("tail_cut {} must be positive", self.tail_cut)));
        }
        if !(self.scale > 0.0) || self.panel_width.is_some_and(|w| !(w > 0.0)) {
            return Err(Error::InvalidParameter("scale and panel width must be positive".into()));
        }
        if let Some(env) = self.envelope {
            env.validate()?;
            if self.tail == TailMode::Envelope {
                let t = env.tail(self.tail_cut);
                if t > 0.5 * self.abs_tol {
                    return Err(Error::Envelope(format!(
                        "tail estimate {t:e} at cut {} exceeds abs_tol/2",
                        self.tail_cut
                    )));
                }
            }
        }
        Ok(())
    }

    /// Breakpoints on [0, cut]: geometric toward 0 and doubling toward cut.
    pub(crate) fn partition(&self, cut: f64) -> Vec<f64> {
        if let Some(w) = self.panel_width {
            let n = (cut / w).ceil().max(1.0) as usize;
            return (0..=n).map(|k| cut * k as f64 / n as f64).collect();
        }
        let s = self.scale.min(cut);
        let mut pts = vec![0.0];
        for j in (1..=self.left_levels).rev() {
            pts.push(s * 0.5f64.powi(j as i32));
        }
        pts.push(s);
        let mut x = 2.0 * s;
        while x < cut {
            pts.push(x);
            x *= 2.0;
        }
        if cut > s {
            pts.push(cut);
        }
        pts
    }
}

/// ∫₀^∞ f(x) dx.
///
/// The body (0, tail_cut] is integrated adaptively. The tail is either bounded
/// by the envelope and folded into the error estimate, or integrated after
/// the substitution x = tail_cut/u².
pub fn integrate_semiinfinite<T, F>(mut f: F, spec: &QuadratureSpec) -> Result<EvalResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    spec.validate()?;
    let cut = spec.tail_cut;
    let pts = spec.partition(cut);
    match spec.tail {
        TailMode::Envelope => {
            let tail = spec.envelope.map_or(0.0, |e| e.tail(cut));
            let body = integrate_interval(
                &mut f,
                &pts,
                (spec.abs_tol - tail).max(0.5 * spec.abs_tol),
                spec.rel_tol,
                spec.max_subdivisions,
            )?;
            Ok(EvalResult {
                abs_error_estimate: body.abs_error_estimate + tail,
                ..body
            })
        }
        TailMode::Mapped => {
            let body = integrate_interval(
                &mut f,
                &pts,
                0.5 * spec.abs_tol,
                spec.rel_tol,
                spec.max_subdivisions,
            )?;
            let upts = [0.0, 0.125, 0.25, 0.5, 1.0];
            let tail = integrate_interval(
                |u: f64| Ok(f(cut / (u * u))? * (2.0 * cut / (u * u * u))),
                &upts,
                0.5 * spec.abs_tol,
                spec.rel_tol,
                spec.max_subdivisions,
            )?;
            Ok(EvalResult {
                value: body.value + tail.value,
                abs_error_estimate: body.abs_error_estimate + tail.abs_error_estimate,
                evaluations: body.evaluations + tail.evaluations,
                method: Method::GaussKronrod,
            })
        }
    }
}

/// ∫_ℝ f = 2∫₀^∞ f for even f, after a three-point symmetry spot check.
pub fn integrate_real_line_even<T, F>(mut f: F, spec: &QuadratureSpec) -> Result<EvalResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    for k in [0.31, 1.13, 2.71] {
        let x = k * spec.scale;
        let (l, r) = (f(x)?, f(-x)?);
        let diff = (l - r).magnitude();
        if diff > spec.rel_tol * l.magnitude().max(r.magnitude()) + f64::MIN_POSITIVE {
            return Err(Error::SymmetryViolation {
                at: x,
                left: l.magnitude(),
                right: r.magnitude(),
            });
        }
    }
    let mut half = QuadratureSpec {
        abs_tol: 0.5 * spec.abs_tol,
        ..*spec
    };
    if let (Some(env), TailMode::Envelope) = (spec.envelope, spec.tail) {
        let cut = spec.tail_cut;
        half = half.with_envelope(env);
        half.tail_cut = half.tail_cut.max(cut);
    }
    let r = integrate_semiinfinite(f, &half)?;
    Ok(EvalResult {
        value: r.value * 2.0,
        abs_error_estimate: 2.0 * r.abs_error_estimate,
        evaluations: r.evaluations + 6,
        method: r.method,
    })
}
