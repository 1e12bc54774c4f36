//! Tabulated transforms and round-trip pipelines.
//!
//! A forward table stores H(τ) = cosh(πτ) F(τ) on a uniform τ-grid, which
//! is the quantity the F inversion integrates. A G table stores G(t) as a
//! cubic spline in ln t on [1e-20, 120] and √t G(t) as a Chebyshev series
//! in 120/t beyond.

use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

use super::interp::{Chebyshev, CubicSpline, SplineEnd};
use super::{apply_g, forward_f, inverse_f, inverse_f_spec, inverse_g_regularized, TransformResult};
use crate::error::{Error, Result};
use crate::handle::{Domain, FunctionHandle, Symmetry};
use crate::quadrature::{integrate_interval, integrate_semiinfinite, EvalResult, Method, QuadratureSpec};
use crate::specfun::ln_cosh;
use crate::tolerances::{INVERSE_G_T_MIN, ROUND_TRIP_TAU_MAX};

/// Where the G table switches from the spline to the Chebyshev series.
const G_SPLIT: f64 = 120.0;

/// Discretization of the round-trip pipelines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripOptions {
    pub tau_max: f64,
    pub tau_nodes: usize,
    /// Absolute tolerance of each tabulated transform value.
    pub node_abs_tol: f64,
    /// Step in ln t of the G table.
    pub log_step: f64,
    pub chebyshev_order: usize,
    /// Tolerances of the inversion integrals.
    pub inverse_abs_tol: f64,
    pub inverse_rel_tol: f64,
}

impl Default for RoundTripOptions {
    fn default() -> Self {
        Self {
            tau_max: ROUND_TRIP_TAU_MAX,
            tau_nodes: 161,
            node_abs_tol: 1e-11,
            log_step: 0.05,
            chebyshev_order: 16,
            inverse_abs_tol: 1e-9,
            inverse_rel_tol: 1e-8,
        }
    }
}

impl RoundTripOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tau_max > 0.0) || self.tau_nodes < 4 || self.chebyshev_order < 4 {
            return Err(Error::GridTooCoarse("round-trip grids need at least 4 nodes".into()));
        }
        if !(self.log_step > 0.0 && self.log_step <= 0.5) {
            return Err(Error::GridTooCoarse(format!("log step {} outside (0, 0.5]", self.log_step)));
        }
        if !(self.node_abs_tol > 0.0 && self.inverse_abs_tol > 0.0 && self.inverse_rel_tol > 0.0) {
            return Err(Error::InvalidParameter("round-trip tolerances must be positive".into()));
        }
        Ok(())
    }

    fn inverse_spec(&self) -> QuadratureSpec {
        QuadratureSpec::with_tolerances(self.inverse_abs_tol, self.inverse_rel_tol)
    }
}

/// A recovered function value next to the exact one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredPoint {
    pub x: f64,
    pub recovered: f64,
    pub expected: f64,
    pub abs_error_estimate: f64,
}

impl RecoveredPoint {
    fn new(r: TransformResult, expected: f64) -> Self {
        Self {
            x: r.abscissa,
            recovered: r.value,
            expected,
            abs_error_estimate: r.abs_error_estimate,
        }
    }

    pub fn rel_error(&self) -> f64 {
        (self.recovered - self.expected).abs() / self.expected.abs()
    }
}

/// H(τ) = cosh(πτ) F(τ) tabulated on [0, τ_max].
#[derive(Debug, Clone)]
pub struct ForwardTable {
    pub spline: CubicSpline,
    pub max_node_error: f64,
}

impl ForwardTable {
    /// F as a function of τ, even, zero beyond the table.
    pub fn handle(&self) -> FunctionHandle {
        let s = Arc::new(self.spline.clone());
        let hi = s.range().1;
        FunctionHandle::new("forward_table", Domain::WholeLine, move |tau: f64| {
            let t = tau.abs();
            if t > hi {
                0.0
            } else {
                s.eval_unchecked(t) * (-ln_cosh(PI * t)).exp()
            }
        })
        .with_symmetry(Symmetry::Even)
    }

    /// f at each x by the F inversion.
    pub fn invert(&self, xs: &[f64], abs_tol: f64, rel_tol: f64) -> Result<Vec<TransformResult>> {
        let h = self.handle();
        let tau_max = self.spline.range().1;
        xs.par_iter()
            .map(|&x| {
                let spec = QuadratureSpec {
                    rel_tol,
                    ..inverse_f_spec(x, tau_max, abs_tol)
                };
                inverse_f(&h, x, &spec)
            })
            .collect()
    }
}

/// H = cosh(πτ) F on a uniform grid, each node to node_abs_tol/cosh(πτ).
pub fn tabulate_forward_f(f: &FunctionHandle, opts: &RoundTripOptions) -> Result<ForwardTable> {
    opts.validate()?;
    let n = opts.tau_nodes;
    let taus: Vec<f64> = (0..n).map(|j| opts.tau_max * j as f64 / (n - 1) as f64).collect();
    let nodes: Vec<(f64, f64)> = taus
        .par_iter()
        .map(|&tau| {
            let c = ln_cosh(PI * tau).exp();
            let spec = QuadratureSpec {
                abs_tol: opts.node_abs_tol / c,
                rel_tol: 1e-10,
                ..QuadratureSpec::default()
            };
            let r = forward_f(f, tau, &spec)?;
            Ok((c * r.value, c * r.abs_error_estimate))
        })
        .collect::<Result<_>>()?;
    let max_node_error = nodes.iter().map(|p| p.1).fold(0.0, f64::max);
    let spline = CubicSpline::new(
        taus,
        nodes.iter().map(|p| p.0).collect(),
        SplineEnd::Clamped(0.0),
        SplineEnd::Natural,
    )?;
    Ok(ForwardTable {
        spline,
        max_node_error,
    })
}

impl ForwardTable {
    /// Table from samples F(τ_j) on increasing τ_j ≥ 0 starting at 0.
    pub fn from_samples(taus: Vec<f64>, values: &[f64]) -> Result<Self> {
        if taus.len() != values.len() {
            return Err(Error::InvalidParameter("sample lengths differ".into()));
        }
        if taus.first() != Some(&0.0) {
            return Err(Error::InvalidParameter("forward samples must start at tau = 0".into()));
        }
        let h = taus
            .iter()
            .zip(values)
            .map(|(&t, &v)| ln_cosh(PI * t).exp() * v)
            .collect();
        Ok(Self {
            spline: CubicSpline::new(taus, h, SplineEnd::Clamped(0.0), SplineEnd::Natural)?,
            max_node_error: 0.0,
        })
    }
}

/// G from samples (t_j, G(t_j)): cubic spline in ln t between the samples,
/// √t scaling below the first and 1/√t decay beyond the last.
pub fn sampled_profile(ts: &[f64], values: &[f64]) -> Result<FunctionHandle> {
    if ts.len() != values.len() || ts.len() < 3 {
        return Err(Error::InvalidParameter("profile needs at least three samples with values".into()));
    }
    if ts.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::InvalidParameter("profile abscissae must be positive".into()));
    }
    let vs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let s = Arc::new(CubicSpline::new(vs, values.to_vec(), SplineEnd::Natural, SplineEnd::Natural)?);
    let (lo, hi) = (ts[0], ts[ts.len() - 1]);
    let (g_lo, g_hi) = (values[0], values[values.len() - 1]);
    Ok(FunctionHandle::new("sampled_profile", Domain::HalfLine, move |t: f64| {
        if t < lo {
            g_lo * (t / lo).sqrt()
        } else if t > hi {
            g_hi * (hi / t).sqrt()
        } else {
            s.eval_unchecked(t.ln())
        }
    }))
}

/// Forward transform on a τ-grid, then the F inversion at each x.
pub fn round_trip_f(f: &FunctionHandle, xs: &[f64], opts: &RoundTripOptions) -> Result<Vec<RecoveredPoint>> {
    let table = tabulate_forward_f(f, opts)?;
    let r = table.invert(xs, opts.inverse_abs_tol, opts.inverse_rel_tol)?;
    Ok(r.into_iter().map(|p| RecoveredPoint::new(p, f.eval(p.abscissa))).collect())
}

/// G(t) tabulated for all t > 0.
#[derive(Debug, Clone)]
pub struct GTable {
    /// G against v = ln t on [ln 1e-20, ln 120].
    pub spline: CubicSpline,
    /// √t G(t) against w = 120/t on [0, 1].
    pub far: Chebyshev,
    pub max_node_error: f64,
}

impl GTable {
    pub fn eval(&self, t: f64) -> f64 {
        let (lo, _) = self.spline.range();
        if t >= G_SPLIT {
            self.far.eval(G_SPLIT / t) / t.sqrt()
        } else if t >= INVERSE_G_T_MIN {
            self.spline.eval_unchecked(t.ln().max(lo))
        } else {
            self.spline.eval_unchecked(lo) * (t / INVERSE_G_T_MIN).sqrt()
        }
    }

    /// G as a function of t on the half-line.
    pub fn handle(&self) -> FunctionHandle {
        let me = Arc::new(self.clone());
        FunctionHandle::new("g_table", Domain::HalfLine, move |t: f64| me.eval(t))
    }

    /// ∫₀^∞ G(t)/(x+t) dt.
    pub fn stieltjes(&self, x: f64, spec: &QuadratureSpec) -> Result<EvalResult<f64>> {
        let (lo, hi) = self.spline.range();
        let knots = self.spline.knots();
        let mut pts: Vec<f64> = knots.iter().step_by(10).copied().collect();
        if *pts.last().unwrap() < hi {
            pts.push(hi);
        }
        let near = integrate_interval(
            |v: f64| {
                let t = v.exp();
                Ok(self.spline.eval_unchecked(v) * t / (x + t))
            },
            &pts,
            0.5 * spec.abs_tol,
            spec.rel_tol,
            spec.max_subdivisions,
        )?;
        let far = integrate_interval(
            |u: f64| Ok(2.0 * G_SPLIT.sqrt() * self.far.eval(u * u) / (x * u * u + G_SPLIT)),
            &[0.0, 0.25, 0.5, 0.75, 1.0],
            0.5 * spec.abs_tol,
            spec.rel_tol,
            spec.max_subdivisions,
        )?;
        let left = self.spline.eval_unchecked(lo).abs() * lo.exp() / x;
        Ok(EvalResult {
            value: near.value + far.value,
            abs_error_estimate: near.abs_error_estimate + far.abs_error_estimate + left,
            evaluations: near.evaluations + far.evaluations,
            method: Method::Composite,
        })
    }

    /// g at each x by the ε-regularized inversion (ε = 0 for the limit form).
    pub fn invert(&self, xs: &[f64], eps: f64, spec: &QuadratureSpec) -> Result<Vec<TransformResult>> {
        let h = self.handle();
        xs.par_iter()
            .map(|&x| inverse_g_regularized(&h, x, eps, spec))
            .collect()
    }
}

fn log_grid(opts: &RoundTripOptions) -> Vec<f64> {
    let (lo, hi) = (INVERSE_G_T_MIN.ln(), G_SPLIT.ln());
    let n = ((hi - lo) / opts.log_step).ceil() as usize;
    (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect()
}

impl GTable {
    fn from_nodes(vs: Vec<f64>, near: Vec<f64>, far: Vec<f64>, max_node_error: f64) -> Result<Self> {
        if let Some(bad) = near.iter().chain(far.iter()).find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { at: *bad });
        }
        Ok(Self {
            spline: CubicSpline::new(vs, near, SplineEnd::Natural, SplineEnd::Natural)?,
            far: Chebyshev::from_lobatto_values(&far)?,
            max_node_error,
        })
    }

    /// Tabulate an arbitrary profile G(t). The t → ∞ limit of √t G(t) is
    /// taken from t = 1.2e8.
    pub fn from_handle(h: &FunctionHandle, opts: &RoundTripOptions) -> Result<Self> {
        opts.validate()?;
        let vs = log_grid(opts);
        let near: Vec<f64> = vs.par_iter().map(|&v| h.eval(v.exp())).collect();
        let far: Vec<f64> = Chebyshev::lobatto_nodes(opts.chebyshev_order)
            .par_iter()
            .map(|&w| {
                let t = G_SPLIT / w.max(1e-6);
                t.sqrt() * h.eval(t)
            })
            .collect();
        Self::from_nodes(vs, near, far, 0.0)
    }
}

/// G = apply_g(g, ·) tabulated on the ln t grid and the Chebyshev nodes.
pub fn tabulate_apply_g(g: &FunctionHandle, opts: &RoundTripOptions) -> Result<GTable> {
    opts.validate()?;
    let spec = QuadratureSpec::with_tolerances(opts.node_abs_tol, 1e-12);
    let vs = log_grid(opts);
    let near: Vec<TransformResult> = vs
        .par_iter()
        .map(|&v| apply_g(g, v.exp(), &spec))
        .collect::<Result<_>>()?;
    let far: Vec<TransformResult> = Chebyshev::lobatto_nodes(opts.chebyshev_order)
        .par_iter()
        .map(|&w| {
            if w == 0.0 {
                // √t Ψ_τ(t) → 1/cosh(πτ) as t → ∞
                let r = integrate_semiinfinite(
                    |tau: f64| Ok((g.eval(tau) + g.eval(-tau)) * (-ln_cosh(PI * tau)).exp()),
                    &spec,
                )?;
                Ok(TransformResult {
                    abscissa: f64::INFINITY,
                    value: r.value,
                    abs_error_estimate: r.abs_error_estimate,
                })
            } else {
                let t = G_SPLIT / w;
                let r = apply_g(g, t, &spec)?;
                Ok(TransformResult {
                    value: r.value * t.sqrt(),
                    abs_error_estimate: r.abs_error_estimate * t.sqrt(),
                    ..r
                })
            }
        })
        .collect::<Result<_>>()?;
    let max_node_error = near
        .iter()
        .chain(far.iter())
        .map(|r| r.abs_error_estimate)
        .fold(0.0, f64::max);
    GTable::from_nodes(
        vs,
        near.iter().map(|r| r.value).collect(),
        far.iter().map(|r| r.value).collect(),
        max_node_error,
    )
}

/// Tabulate G = apply_g(g, ·), then invert at each x with parameter ε.
pub fn round_trip_g(
    g: &FunctionHandle,
    xs: &[f64],
    eps: f64,
    opts: &RoundTripOptions,
) -> Result<Vec<RecoveredPoint>> {
    let table = tabulate_apply_g(g, opts)?;
    let r = table.invert(xs, eps, &opts.inverse_spec())?;
    Ok(r.into_iter().map(|p| RecoveredPoint::new(p, g.eval(p.abscissa))).collect())
}
