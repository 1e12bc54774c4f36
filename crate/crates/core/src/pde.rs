//! The wedge problem
//!
//! ```text
//! u_rr + (1/r + 1) u_r + u_θθ / r² + u / (2r) = 0,   r > 0, 0 ≤ θ < β,
//! ```
//!
//! solved by u(r, θ) = ∫_ℝ Ψ_τ(r) e^{θτ} g(τ) dτ, together with the
//! initial-value pipeline that recovers g from the boundary profile
//! u(r, 0) = G(r).

use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::handle::{Domain, FunctionHandle, Symmetry};
use crate::kernel::psi;
use crate::quadrature::{gk15_nodes, QuadratureSpec};
use crate::transforms::{CubicSpline, GTable, RoundTripOptions, SplineEnd};

/// How the r-nodes are spaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RSpacing {
    Uniform,
    LogUniform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WedgeGrid {
    pub r_values: Vec<f64>,
    pub theta_values: Vec<f64>,
    pub beta: f64,
    pub r_spacing: RSpacing,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn is_uniform(v: &[f64]) -> bool {
    if v.len() < 3 {
        return true;
    }
    let h = v[1] - v[0];
    v.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(w[1].abs()))
}

impl WedgeGrid {
    pub fn new(r_values: Vec<f64>, theta_values: Vec<f64>, beta: f64, r_spacing: RSpacing) -> Result<Self> {
        let g = Self {
            r_values,
            theta_values,
            beta,
            r_spacing,
        };
        g.validate()?;
        Ok(g)
    }

    /// Uniform grid with steps h_r and h_θ covering [r0, r1] × [θ0, θ1].
    pub fn uniform(r: (f64, f64), h_r: f64, theta: (f64, f64), h_theta: f64, beta: f64) -> Result<Self> {
        let nr = ((r.1 - r.0) / h_r).round() as usize + 1;
        let nt = ((theta.1 - theta.0) / h_theta).round() as usize + 1;
        Self::new(linspace(r.0, r.1, nr), linspace(theta.0, theta.1, nt), beta, RSpacing::Uniform)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 2.0 * PI) {
            return Err(Error::InvalidParameter(format!("beta = {} outside (0, 2pi)", self.beta)));
        }
        if self.r_values.is_empty() || self.theta_values.is_empty() {
            return Err(Error::GridTooCoarse("empty grid".into()));
        }
        let ascending = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
        if !ascending(&self.r_values) || self.r_values[0] <= 0.0 {
            return Err(Error::InvalidParameter("r values must be positive and ascending".into()));
        }
        if !ascending(&self.theta_values)
            || self.theta_values[0] < 0.0
            || *self.theta_values.last().unwrap() >= self.beta
        {
            return Err(Error::InvalidParameter("theta values must be ascending in [0, beta)".into()));
        }
        if !is_uniform(&self.theta_values) {
            return Err(Error::InvalidParameter("theta spacing must be uniform".into()));
        }
        let spaced = match self.r_spacing {
            RSpacing::Uniform => is_uniform(&self.r_values),
            RSpacing::LogUniform => is_uniform(&self.r_values.iter().map(|r| r.ln()).collect::<Vec<_>>()),
        };
        if !spaced {
            return Err(Error::InvalidParameter(format!("r spacing is not {:?}", self.r_spacing)));
        }
        Ok(())
    }
}

/// u on a wedge grid; `u[i][j]` belongs to (r_i, θ_j).
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeField {
    pub grid: WedgeGrid,
    pub u: Vec<Vec<f64>>,
    pub abs_error_estimate: f64,
}

impl WedgeField {
    pub fn theta_column(&self, j: usize) -> Vec<f64> {
        self.u.iter().map(|row| row[j]).collect()
    }

    /// max |u| over θ at each r.
    pub fn radial_profile(&self) -> Vec<f64> {
        self.u.iter().map(|row| row.iter().fold(0.0, |m: f64, v| m.max(v.abs()))).collect()
    }
}

/// Composite 15-point Kronrod rule on [0, T]: nodes, Kronrod weights and
/// Kronrod-minus-Gauss weights.
fn tau_rule(t_max: f64, width: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = (t_max / width).ceil() as usize;
    let h = t_max / n as f64;
    let base = gk15_nodes();
    let mut nodes = Vec::with_capacity(15 * n);
    let mut wk = Vec::with_capacity(15 * n);
    let mut wd = Vec::with_capacity(15 * n);
    for p in 0..n {
        let mid = (p as f64 + 0.5) * h;
        for &(x, k, g) in &base {
            nodes.push(mid + 0.5 * h * x);
            wk.push(0.5 * h * k);
            wd.push(0.5 * h * (k - g));
        }
    }
    (nodes, wk, wd)
}

/// Upper bound |g(τ)| e^{θτ} √(2π) e^{−πτ/2} of the τ-integrand, both signs of τ.
fn integrand_bound(g: &FunctionHandle, tau: f64, theta: f64) -> f64 {
    let k = (2.0 * PI).sqrt() * (-PI * tau / 2.0).exp();
    k * (g.eval(tau).abs() * (theta * tau).exp() + g.eval(-tau).abs() * (-theta * tau).exp())
}

/// u(r, θ) = √π e^{−r/2} ∫_ℝ Re I_{iτ}(r/2) e^{θτ} g(τ)/cosh(πτ) dτ at every node.
///
/// One fixed composite rule in τ is used for all nodes, so the field is a
/// smooth function of (r, θ) and finite differences of it are meaningful.
/// The τ-range is doubled until the integrand at the largest θ is below
/// 1e-3 · spec.abs_tol; failure to reach that is an envelope error.
pub fn solve_wedge(g: &FunctionHandle, grid: &WedgeGrid, spec: &QuadratureSpec) -> Result<WedgeField> {
    grid.validate()?;
    if g.domain != Domain::WholeLine {
        return Err(Error::InvalidParameter(format!("{} is not a whole-line function", g.name)));
    }
    let th_max = *grid.theta_values.last().unwrap();
    let target = 1e-3 * spec.abs_tol;
    let mut t_max = 4.0;
    loop {
        let m1 = integrand_bound(g, t_max, th_max);
        let m2 = integrand_bound(g, 2.0 * t_max, th_max);
        if m1 <= target && m2 <= m1 {
            break;
        }
        t_max *= 2.0;
        if t_max > 512.0 {
            return Err(Error::Envelope(format!(
                "wedge integrand for {} does not decay at theta = {th_max}",
                g.name
            )));
        }
    }
    let (nodes, wk, wd) = tau_rule(t_max, spec.panel_width.unwrap_or(0.25));
    let weights: Vec<(f64, f64)> = nodes.iter().map(|&t| (g.eval(t), g.eval(-t))).collect();
    let rows: Vec<(Vec<f64>, f64)> = grid
        .r_values
        .par_iter()
        .map(|&r| {
            let k: Vec<f64> = nodes.iter().map(|&t| Ok(psi(t, r)?.value)).collect::<Result<_>>()?;
            let mut row = Vec::with_capacity(grid.theta_values.len());
            let mut err = 0.0f64;
            for &th in &grid.theta_values {
                let (mut s, mut d) = (0.0, 0.0);
                for i in 0..nodes.len() {
                    let e = (th * nodes[i]).exp();
                    let v = k[i] * (weights[i].0 * e + weights[i].1 / e);
                    s += wk[i] * v;
                    d += wd[i] * v;
                }
                if !s.is_finite() {
                    return Err(Error::NonFinite { at: r });
                }
                row.push(s);
                err = err.max(d.abs());
            }
            Ok((row, err))
        })
        .collect::<Result<_>>()?;
    let abs_error_estimate = rows.iter().map(|r| r.1).fold(target, f64::max);
    Ok(WedgeField {
        grid: grid.clone(),
        u: rows.into_iter().map(|r| r.0).collect(),
        abs_error_estimate,
    })
}

/// Normalized residuals at interior nodes (None on the boundary).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualMap {
    pub values: Vec<Vec<Option<f64>>>,
    pub max: f64,
}

/// |u_rr + (1/r + 1)u_r + u_θθ/r² + u/(2r)| from three-point differences,
/// divided by the sum of the magnitudes of the four terms.
pub fn pde_residual(field: &WedgeField) -> Result<ResidualMap> {
    let r = &field.grid.r_values;
    let th = &field.grid.theta_values;
    if r.len() < 5 || th.len() < 5 {
        return Err(Error::GridTooCoarse(format!(
            "{} x {} nodes; at least 5 per direction are needed",
            r.len(),
            th.len()
        )));
    }
    let u = &field.u;
    let ht = th[1] - th[0];
    let mut values = vec![vec![None; th.len()]; r.len()];
    let mut max = 0.0f64;
    for i in 1..r.len() - 1 {
        let (h1, h2) = (r[i] - r[i - 1], r[i + 1] - r[i]);
        for j in 1..th.len() - 1 {
            let (a, b, c) = (u[i - 1][j], u[i][j], u[i + 1][j]);
            let ur = -h2 / (h1 * (h1 + h2)) * a + (h2 - h1) / (h1 * h2) * b + h1 / (h2 * (h1 + h2)) * c;
            let urr = 2.0 * (a / (h1 * (h1 + h2)) - b / (h1 * h2) + c / (h2 * (h1 + h2)));
            let utt = (u[i][j - 1] - 2.0 * b + u[i][j + 1]) / (ht * ht);
            let terms = [urr, (1.0 / r[i] + 1.0) * ur, utt / (r[i] * r[i]), b / (2.0 * r[i])];
            let scale: f64 = terms.iter().map(|t| t.abs()).sum();
            let res = if scale == 0.0 {
                0.0
            } else {
                terms.iter().sum::<f64>().abs() / scale
            };
            max = max.max(res);
            values[i][j] = Some(res);
        }
    }
    Ok(ResidualMap { values, max })
}

/// Result of the initial-value pipeline.
#[derive(Debug, Clone)]
pub struct IvpSolution {
    pub field: WedgeField,
    /// (τ, ĝ(τ)) on the recovery grid.
    pub recovered: Vec<(f64, f64)>,
    /// ĝ interpolated and extended evenly, zero beyond the recovery grid.
    pub g_hat: FunctionHandle,
}

/// Number of recovery nodes on [0, IVP_TAU_MAX].
pub const IVP_TAU_NODES: usize = 121;
pub const IVP_TAU_MAX: f64 = 6.0;

/// Solve the wedge problem with boundary profile u(r, 0) = G(r).
///
/// G is tabulated, g is recovered on [0, 6] by the limit form of the G
/// inversion with ĝ(0) = 0, interpolated by a cubic spline, extended
/// evenly, and passed to [`solve_wedge`].
pub fn ivp_solve(g_boundary: &FunctionHandle, grid: &WedgeGrid, spec: &QuadratureSpec) -> Result<IvpSolution> {
    grid.validate()?;
    let opts = RoundTripOptions::default();
    let table = GTable::from_handle(g_boundary, &opts)?;
    let taus: Vec<f64> = (0..IVP_TAU_NODES)
        .map(|j| IVP_TAU_MAX * j as f64 / (IVP_TAU_NODES - 1) as f64)
        .collect();
    let inv_spec = QuadratureSpec::with_tolerances(opts.inverse_abs_tol, opts.inverse_rel_tol);
    let mut values = vec![0.0];
    values.extend(table.invert(&taus[1..], 0.0, &inv_spec)?.into_iter().map(|r| r.value));
    let spline = Arc::new(CubicSpline::new(
        taus.clone(),
        values.clone(),
        SplineEnd::Clamped(0.0),
        SplineEnd::Natural,
    )?);
    let g_hat = FunctionHandle::new(format!("recovered {}", g_boundary.name), Domain::WholeLine, move |t| {
        let a = t.abs();
        if a > IVP_TAU_MAX {
            0.0
        } else {
            spline.eval_unchecked(a)
        }
    })
    .with_symmetry(Symmetry::Even);
    let field = solve_wedge(&g_hat, grid, spec)?;
    Ok(IvpSolution {
        field,
        recovered: taus.into_iter().zip(values).collect(),
        g_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(WedgeGrid::uniform((0.5, 1.0), 0.1, (0.0, 0.5), 0.1, 1.0).is_ok());
        assert!(WedgeGrid::uniform((0.5, 1.0), 0.1, (0.0, 1.0), 0.1, 1.0).is_err());
        assert!(WedgeGrid::new(vec![1.0, 2.0, 4.0], vec![0.0], 1.0, RSpacing::LogUniform).is_ok());
        assert!(WedgeGrid::new(vec![1.0, 2.0, 4.0], vec![0.0], 1.0, RSpacing::Uniform).is_err());
    }

    #[test]
    fn zero_field_has_zero_residual() {
        let grid = WedgeGrid::uniform((0.5, 1.0), 0.1, (0.0, 0.5), 0.1, 1.0).unwrap();
        let f = solve_wedge(&FunctionHandle::zero(Domain::WholeLine), &grid, &QuadratureSpec::default()).unwrap();
        assert!(f.u.iter().flatten().all(|&v| v == 0.0));
        assert_eq!(pde_residual(&f).unwrap().max, 0.0);
    }

    #[test]
    fn coarse_grid_rejected() {
        let grid = WedgeGrid::uniform((0.5, 0.8), 0.1, (0.0, 0.5), 0.1, 1.0).unwrap();
        let f = solve_wedge(&FunctionHandle::zero(Domain::WholeLine), &grid, &QuadratureSpec::default()).unwrap();
        assert!(matches!(pde_residual(&f), Err(Error::GridTooCoarse(_))));
    }
}
