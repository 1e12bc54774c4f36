use std::path::Path;

use ls_transform::kernel::{psi, psi_cosine_rep, psi_mellin_barnes, psi_series, KernelSample};
use ls_transform::pde::{ivp_solve, pde_residual, solve_wedge, RSpacing, WedgeGrid};
use ls_transform::registry::{builtin_entries, check_hypothesis, lookup, HypothesisTag, RegistryEntry};
use ls_transform::transforms::{
    apply_g, forward_f, sampled_profile, tabulate_apply_g, tabulate_forward_f, ForwardTable, GTable,
    TransformResult,
};
use ls_transform::{Domain, FunctionHandle};
use rayon::prelude::*;

use crate::config::Settings;
use crate::error::CliError;
use crate::grid::{self, Grid};
use crate::output::{read_pairs, Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KernelMethod {
    /// Series up to x = 120, contour beyond
    Auto,
    Series,
    Mb,
    Cosine,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Direction {
    /// F(τ) of a half-line function
    Forward,
    /// G(x) of a whole-line function
    Apply,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InvertKind {
    F,
    G,
}

fn entry(name: &str) -> Result<RegistryEntry, CliError> {
    lookup(name).ok_or_else(|| {
        let names: Vec<String> = builtin_entries().iter().map(|e| e.name().to_string()).collect();
        CliError::Usage(format!("unknown function '{name}' (known: {})", names.join(", ")))
    })
}

fn function(name: &str, domain: Domain) -> Result<FunctionHandle, CliError> {
    let h = entry(name)?.handle;
    if h.domain != domain {
        return Err(CliError::Usage(format!("{name} is a {:?} function, expected {domain:?}", h.domain)));
    }
    Ok(h)
}

pub fn kernel(tau: &str, x: &str, method: KernelMethod, s: &Settings) -> Result<Table, CliError> {
    let taus = grid::parse(tau, "--tau")?;
    let xs = grid::parse(x, "--x")?;
    grid::check_range(&xs, "--x", 0.0, f64::MAX, false)?;
    let methods: &[KernelMethod] = match method {
        KernelMethod::All => &[KernelMethod::Series, KernelMethod::Mb, KernelMethod::Cosine],
        _ => std::slice::from_ref(&method),
    };
    let (spec, contour) = (s.quadrature(), s.contour());
    let jobs: Vec<(f64, f64, KernelMethod)> = taus
        .values
        .iter()
        .flat_map(|&t| xs.values.iter().flat_map(move |&x| methods.iter().map(move |&m| (t, x, m))))
        .collect();
    let samples: Vec<KernelSample> = jobs
        .par_iter()
        .map(|&(t, x, m)| match m {
            KernelMethod::Series => psi_series(t, x),
            KernelMethod::Mb => psi_mellin_barnes(t, x, &contour),
            KernelMethod::Cosine => psi_cosine_rep(t, x, &spec),
            _ => psi(t, x),
        })
        .collect::<ls_transform::Result<_>>()?;
    let mut table = Table::new(&["tau", "x", "method", "value", "abs_error_estimate"]);
    for k in samples {
        table.push(vec![
            k.tau.into(),
            k.x.into(),
            k.method.as_str().into(),
            k.value.into(),
            k.abs_error_estimate.into(),
        ]);
    }
    Ok(table)
}

fn results_table(first: &str, rs: &[TransformResult], expected: Option<&FunctionHandle>) -> Table {
    let mut cols = vec![first, "value", "abs_error_estimate"];
    if expected.is_some() {
        cols.push("expected");
    }
    let mut table = Table::new(&cols);
    for r in rs {
        let mut row: Vec<Cell> = vec![r.abscissa.into(), r.value.into(), r.abs_error_estimate.into()];
        if let Some(h) = expected {
            row.push(h.eval(r.abscissa).into());
        }
        table.push(row);
    }
    table
}

pub fn transform(dir: Direction, name: &str, grid_spec: &str, s: &Settings) -> Result<Table, CliError> {
    let g = grid::parse(grid_spec, "--grid")?;
    let spec = s.quadrature();
    let rs: Vec<TransformResult> = match dir {
        Direction::Forward => {
            let h = function(name, Domain::HalfLine)?;
            g.values.par_iter().map(|&t| forward_f(&h, t, &spec)).collect::<ls_transform::Result<_>>()?
        }
        Direction::Apply => {
            grid::check_range(&g, "--grid", 0.0, f64::MAX, false)?;
            let h = function(name, Domain::WholeLine)?;
            g.values.par_iter().map(|&x| apply_g(&h, x, &spec)).collect::<ls_transform::Result<_>>()?
        }
    };
    Ok(results_table(if dir == Direction::Forward { "tau" } else { "x" }, &rs, None))
}

pub fn invert(
    kind: InvertKind,
    input: Option<&Path>,
    name: Option<&str>,
    x_grid: &str,
    eps: f64,
    s: &Settings,
) -> Result<Table, CliError> {
    let xs: Grid = grid::parse(x_grid, "--x-grid")?;
    grid::check_range(&xs, "--x-grid", 0.0, f64::MAX, false)?;
    if !(eps >= 0.0 && eps < 0.5) {
        return Err(CliError::Usage(format!("--eps {eps} outside [0, 1/2)")));
    }
    let opts = s.round_trip();
    match kind {
        InvertKind::F => {
            if eps != 0.0 {
                return Err(CliError::Usage("--eps applies to the g inversion only".into()));
            }
            let (table, f) = match (input, name) {
                (Some(p), _) => {
                    let (taus, vals) = read_pairs(p)?;
                    (ForwardTable::from_samples(taus, &vals)?, None)
                }
                (None, Some(n)) => {
                    let f = function(n, Domain::HalfLine)?;
                    (tabulate_forward_f(&f, &opts)?, Some(f))
                }
                (None, None) => return Err(CliError::Usage("give --input or --function".into())),
            };
            let rs = table.invert(&xs.values, s.abs_tol, s.rel_tol)?;
            Ok(results_table("x", &rs, f.as_ref()))
        }
        InvertKind::G => {
            let (table, g) = match (input, name) {
                (Some(p), _) => {
                    let (ts, vals) = read_pairs(p)?;
                    (GTable::from_handle(&sampled_profile(&ts, &vals)?, &opts)?, None)
                }
                (None, Some(n)) => {
                    let g = function(n, Domain::WholeLine)?;
                    (tabulate_apply_g(&g, &opts)?, Some(g))
                }
                (None, None) => return Err(CliError::Usage("give --input or --function".into())),
            };
            let rs = table.invert(&xs.values, eps, &s.quadrature())?;
            Ok(results_table("x", &rs, g.as_ref()))
        }
    }
}

pub fn pde(
    g_name: Option<&str>,
    boundary: Option<&Path>,
    r: &str,
    theta: &str,
    beta: f64,
    s: &Settings,
) -> Result<Table, CliError> {
    let rg = grid::parse(r, "--r")?;
    let tg = grid::parse(theta, "--theta")?;
    let spacing = if rg.log { RSpacing::LogUniform } else { RSpacing::Uniform };
    let grid = WedgeGrid::new(rg.values, tg.values, beta, spacing)?;
    let spec = s.quadrature();
    let field = match (g_name, boundary) {
        (Some(n), _) => solve_wedge(&function(n, Domain::WholeLine)?, &grid, &spec)?,
        (None, Some(p)) => {
            let (ts, vals) = read_pairs(p)?;
            ivp_solve(&sampled_profile(&ts, &vals)?, &grid, &spec)?.field
        }
        (None, None) => return Err(CliError::Usage("give --g or --boundary".into())),
    };
    let residual = match pde_residual(&field) {
        Ok(m) => Some(m.values),
        Err(e) => {
            eprintln!("residual skipped: {e}");
            None
        }
    };
    let mut table = Table::new(&["r", "theta", "u", "residual"]);
    for (i, &rv) in grid.r_values.iter().enumerate() {
        for (j, &tv) in grid.theta_values.iter().enumerate() {
            let res = residual.as_ref().and_then(|m| m[i][j]);
            table.push(vec![rv.into(), tv.into(), field.u[i][j].into(), res.into()]);
        }
    }
    Ok(table)
}

fn tags(e: &RegistryEntry) -> String {
    e.hypothesis_tags.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(";")
}

pub fn registry_list() -> Table {
    let mut table = Table::new(&["name", "domain", "hypothesis_tags", "notes"]);
    for e in builtin_entries() {
        table.push(vec![
            e.name().into(),
            format!("{:?}", e.handle.domain).into(),
            tags(&e).into(),
            e.notes.clone().into(),
        ]);
    }
    table
}

pub fn registry_describe(name: &str) -> Result<Table, CliError> {
    let e = entry(name)?;
    let h = &e.handle;
    let mut table = Table::new(&["field", "value"]);
    let mut put = |k: &str, v: String| table.push(vec![k.into(), v.into()]);
    put("name", e.name().to_string());
    put("domain", format!("{:?}", h.domain));
    put("symmetry", format!("{:?}", h.symmetry));
    put("envelope", h.envelope.map_or("none".into(), |v| format!("{v:?}")));
    put(
        "mellin_strip",
        h.mellin_strip().map_or("none".into(), |(a, b)| format!("({a}, {b})")),
    );
    put("hypothesis_tags", tags(&e));
    put("notes", e.notes.clone());
    for tag in HypothesisTag::ALL {
        let c = check_hypothesis(&e, tag)?;
        let declared = if e.has_tag(tag) { "declared" } else { "not declared" };
        let verdict = if c.passed { "holds" } else { "fails" };
        put(&format!("check:{tag}"), format!("{declared}; check {verdict}: {}", c.detail));
    }
    Ok(table)
}
