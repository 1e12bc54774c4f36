//! Verification suites run by `ls-transform verify`.

use ls_transform::kernel::{
    gamma_cosine_pair_gap, index_cosine_identity_gap, ode_residual, psi_cosine_rep, psi_mellin_barnes, psi_series,
    PairDirection,
};
use ls_transform::pde::{ivp_solve, pde_residual, solve_wedge, RSpacing, WedgeGrid};
use ls_transform::quadrature::QuadratureSpec;
use ls_transform::registry::{boundary_profile, f1, f2, f3, g1, g2, lookup, mellin_check, parseval_gap};
use ls_transform::specfun::{macdonald_k_cosh_integral, macdonald_k_series};
use ls_transform::transforms::{
    apply_g, apply_g_bound, forward_bound, forward_f, kl_link_gap, kummer_bessel_gap, laplace_kernel_gap,
    lebedev_form_gap, round_trip_f, round_trip_g, stieltjes_identity_gap, tabulate_apply_g,
};
use ls_transform::{ComplexValue, FunctionHandle, Result};
use rayon::prelude::*;

use crate::config::Settings;
use crate::output::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Kernel,
    Identities,
    Roundtrip,
    Pde,
    All,
}

/// A check: its identity, default tolerance and whether `--tol` may override it.
struct Check {
    suite: &'static str,
    name: &'static str,
    identity: &'static str,
    tolerance: f64,
    overridable: bool,
    /// Pass only when strictly below the tolerance.
    strict: bool,
    run: fn(&Settings) -> Result<(f64, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub identity: &'static str,
    pub max_gap: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

const TAUS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 5.0];
const XS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

fn grid_max<F>(pts: Vec<(f64, f64)>, f: F) -> Result<(f64, String)>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let vals: Vec<f64> = pts.par_iter().map(|&(a, b)| f(a, b)).collect::<Result<_>>()?;
    let (k, m) = vals
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    Ok((m, format!("worst at ({}, {})", pts[k].0, pts[k].1)))
}

fn product(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

/// min(|a−b|, |a−b|/|a|): the looser of absolute and relative agreement.
fn agreement(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(d / a.abs())
}

fn series_vs_mb(s: &Settings) -> Result<(f64, String)> {
    let c = s.contour();
    grid_max(product(&TAUS, &XS), |t, x| {
        Ok(agreement(psi_series(t, x)?.value, psi_mellin_barnes(t, x, &c)?.value))
    })
}

fn series_vs_cosine(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    grid_max(product(&TAUS, &XS), |t, x| {
        Ok(agreement(psi_series(t, x)?.value, psi_cosine_rep(t, x, &q)?.value))
    })
}

fn mb_vs_cosine(s: &Settings) -> Result<(f64, String)> {
    let (c, q) = (s.contour(), s.quadrature());
    grid_max(product(&TAUS, &XS), |t, x| {
        Ok(agreement(psi_mellin_barnes(t, x, &c)?.value, psi_cosine_rep(t, x, &q)?.value))
    })
}

fn ode(_: &Settings) -> Result<(f64, String)> {
    grid_max(product(&TAUS, &XS), ode_residual)
}

fn index_cosine(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    grid_max(product(&[0.5, 1.0, 2.0, 4.0], &[0.0, 0.5, 1.0, 2.0]), |x, y| {
        Ok(index_cosine_identity_gap(x, y, &q)?.gap)
    })
}

fn gamma_pair(_: &Settings) -> Result<(f64, String)> {
    grid_max(product(&[0.5, 1.0], &[0.0, 1.0, 2.0]), |s, y| {
        let a = gamma_cosine_pair_gap(s, y, PairDirection::Forward)?.gap;
        let b = gamma_cosine_pair_gap(s, y, PairDirection::Inverse)?.gap;
        Ok(a.max(b))
    })
}

fn k_routes(_: &Settings) -> Result<(f64, String)> {
    grid_max(product(&[0.25, 1.0, 2.0, 4.0], &[0.25, 1.0, 4.0, 8.0]), |t, x| {
        let a = macdonald_k_series(t, x)?;
        let b = macdonald_k_cosh_integral(t, x)?.value;
        Ok((a - b).abs() / b.abs())
    })
}

fn laplace(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    grid_max(product(&[0.5, 1.0, 2.0, 4.0], &[0.5, 1.0, 2.0, 3.0]), |x, t| {
        Ok(laplace_kernel_gap(x, t, &q)?.gap)
    })
}

fn kummer_bessel(_: &Settings) -> Result<(f64, String)> {
    grid_max(product(&[0.5, 1.0, 2.0], &[0.5, 1.0, 2.0]), |t, x| {
        let g = kummer_bessel_gap(t, x)?;
        Ok(g.gap / g.rhs.abs().max(1e-300))
    })
}

fn kl_link(s: &Settings) -> Result<(f64, String)> {
    let q = QuadratureSpec {
        abs_tol: s.abs_tol.min(1e-13),
        rel_tol: s.rel_tol.min(1e-12),
        ..s.quadrature()
    };
    let f = f1();
    grid_max(vec![(0.5, 0.0), (1.0, 0.0), (2.0, 0.0)], |t, _| {
        let g = kl_link_gap(&f, t, &q)?;
        Ok(g.gap / g.lhs.abs())
    })
}

fn stieltjes(s: &Settings) -> Result<(f64, String)> {
    let opts = s.round_trip();
    let q = s.quadrature();
    let mut worst = (0.0f64, String::new());
    for g in [g1(), g2()] {
        let table = tabulate_apply_g(&g, &opts)?;
        for x in [0.5, 1.0, 2.0] {
            let gap = stieltjes_identity_gap(&g, &table, x, &q)?.gap;
            if gap >= worst.0 {
                worst = (gap, format!("worst for {} at x = {x}", g.name));
            }
        }
    }
    Ok(worst)
}

fn norm_bounds(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    let mut worst = (0.0f64, String::new());
    for f in [f1(), f2(), f3()] {
        let bound = forward_bound(&f, &q)?;
        for tau in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let r = forward_f(&f, tau, &q)?.value.abs() / bound;
            if r >= worst.0 {
                worst = (r, format!("worst |F|/bound for {} at tau = {tau}", f.name));
            }
        }
    }
    for g in [g1(), g2()] {
        let bound = apply_g_bound(&g, &q)?;
        for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let r = apply_g(&g, x, &q)?.value.abs() / bound;
            if r >= worst.0 {
                worst = (r, format!("worst |G|/bound for {} at x = {x}", g.name));
            }
        }
    }
    Ok(worst)
}

fn lebedev(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    let g = lebedev_form_gap(&f1(), 1.0, 0.25, &q, &s.contour())?;
    Ok((g.gap, "f1 at tau = 1, nu = 1/4".into()))
}

fn mellin(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    let mut worst = 0.0f64;
    for name in ["f1", "f2", "f3"] {
        let e = lookup(name).unwrap();
        for z in [ComplexValue::new(0.75, 0.0), ComplexValue::new(0.75, 2.0), ComplexValue::new(1.25, -1.0)] {
            worst = worst.max(mellin_check(&e, z, &q)?);
        }
    }
    let (a, b) = (lookup("f1").unwrap(), lookup("f3").unwrap());
    worst = worst.max(parseval_gap(&a, &a, 0.5, &q, &s.contour())?);
    worst = worst.max(parseval_gap(&a, &b, 0.5, &q, &s.contour())?);
    Ok((worst, "closed-form Mellin transforms of f1, f2, f3 and Parseval for f1 f1, f1 f3".into()))
}

fn max_rel(f: &FunctionHandle, pts: &[ls_transform::transforms::RecoveredPoint]) -> (f64, String) {
    pts.iter().fold((0.0, String::new()), |acc, p| {
        let e = p.rel_error();
        if e >= acc.0 {
            (e, format!("worst for {} at x = {}", f.name, p.x))
        } else {
            acc
        }
    })
}

fn roundtrip_f(s: &Settings) -> Result<(f64, String)> {
    let xs = [0.5, 1.0, 2.0, 4.0];
    let mut worst = (0.0f64, String::new());
    for f in [f1(), f2()] {
        let r = max_rel(&f, &round_trip_f(&f, &xs, &s.round_trip())?);
        if r.0 >= worst.0 {
            worst = r;
        }
    }
    Ok(worst)
}

fn roundtrip_g(s: &Settings) -> Result<(f64, String)> {
    let g = g1();
    let r = round_trip_g(&g, &[0.75, 1.0, 1.5, 2.0, 2.5], 0.0, &s.round_trip())?;
    Ok(max_rel(&g, &r))
}

fn wedge_grid(h: f64) -> Result<WedgeGrid> {
    WedgeGrid::uniform((0.5, 4.0), h, (0.0, 0.98), h, 1.5)
}

fn wedge_residual(s: &Settings) -> Result<(f64, String)> {
    let field = solve_wedge(&g1(), &wedge_grid(0.01)?, &s.quadrature())?;
    Ok((pde_residual(&field)?.max, "g1 on r in [0.5, 4], theta in [0, 0.98], h = 0.01".into()))
}

fn wedge_order(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    let coarse = pde_residual(&solve_wedge(&g1(), &wedge_grid(0.02)?, &q)?)?.max;
    let fine = pde_residual(&solve_wedge(&g1(), &wedge_grid(0.01)?, &q)?)?.max;
    let order = (coarse / fine).log2();
    Ok(((order - 2.0).abs(), format!("observed order {order:.3}")))
}

fn wedge_boundary(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    let g = g1();
    let grid = WedgeGrid::new(vec![0.5, 1.0, 1.5, 2.0], vec![0.0, 0.5], 1.5, RSpacing::Uniform)?;
    let field = solve_wedge(&g, &grid, &q)?;
    let mut worst = 0.0f64;
    for (i, &r) in grid.r_values.iter().enumerate() {
        worst = worst.max((field.u[i][0] - apply_g(&g, r, &q)?.value).abs());
    }
    Ok((worst, "theta = 0 column against G(r)".into()))
}

fn ivp(s: &Settings) -> Result<(f64, String)> {
    let q = s.quadrature();
    let boundary = boundary_profile(g1(), QuadratureSpec::with_tolerances(1e-11, 1e-11));
    let rs: Vec<f64> = (0..8).map(|k| 0.75 + 0.25 * k as f64).collect();
    let grid = WedgeGrid::new(rs.clone(), vec![0.0, 0.25, 0.5], 1.5, RSpacing::Uniform)?;
    let sol = ivp_solve(&boundary, &grid, &q)?;
    let mut worst = (0.0f64, String::new());
    for (i, &r) in rs.iter().enumerate() {
        let want = boundary.eval(r);
        let e = (sol.field.u[i][0] - want).abs() / want.abs();
        if e >= worst.0 {
            worst = (e, format!("worst at r = {r}"));
        }
    }
    Ok(worst)
}

fn checks() -> Vec<Check> {
    let c = |suite, name, identity, tolerance, run| Check {
        suite,
        name,
        identity,
        tolerance,
        overridable: true,
        strict: false,
        run,
    };
    vec![
        c("kernel", "series-vs-mellin-barnes", "kernel Mellin-Barnes representation", 1e-8, series_vs_mb),
        c("kernel", "series-vs-cosine", "kernel cosine representation", 1e-8, series_vs_cosine),
        c("kernel", "mellin-barnes-vs-cosine", "kernel Mellin-Barnes and cosine representations", 1e-8, mb_vs_cosine),
        c("kernel", "ode-residual", "kernel second-order differential equation", 1e-8, ode),
        c("kernel", "index-cosine-integral", "Fourier-cosine index integral of Re I/cosh", 1e-6, index_cosine),
        c("kernel", "gamma-cosine-pair", "cosine-transform pair of |Gamma(s+i tau)|^2", 1e-7, gamma_pair),
        c("identities", "k-routes", "K via Im I/sinh against the cosh integral", 1e-8, k_routes),
        c("identities", "laplace-kernel", "closed form of the Laplace transform of K^2", 1e-6, laplace),
        c("identities", "kummer-bessel-relation", "Kummer-Bessel relation for 1F1(1/2+i tau; 1+2i tau; z)", 1e-9, kummer_bessel),
        c("identities", "kontorovich-lebedev-link", "Im-kernel transform against the K-transform", 1e-8, kl_link),
        c("identities", "stieltjes", "Stieltjes transform of G", 1e-6, stieltjes),
        Check {
            overridable: false,
            strict: true,
            ..c("identities", "norm-bounds", "L1 bounds on F and G (ratio must stay below 1)", 1.0, norm_bounds)
        },
        c("identities", "lebedev-form", "Lebedev form of the F transform", 1e-6, lebedev),
        c("identities", "mellin-parseval", "Mellin transforms and Parseval relation", 1e-8, mellin),
        c("roundtrip", "f-inversion", "F inversion formula", 1e-3, roundtrip_f),
        c("roundtrip", "g-inversion", "G inversion formula, limit form", 1e-2, roundtrip_g),
        c("pde", "wedge-residual", "wedge equation in polar form", 1e-4, wedge_residual),
        Check {
            overridable: false,
            ..c("pde", "wedge-residual-order", "second-order convergence of the residual (|order - 2|)", 0.3, wedge_order)
        },
        c("pde", "wedge-boundary", "theta = 0 reduction of the wedge solution to G", 1e-8, wedge_boundary),
        c("pde", "ivp-boundary", "initial condition u(r, 0) = G(r) after inversion", 2e-2, ivp),
    ]
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Kernel => "kernel",
        Suite::Identities => "identities",
        Suite::Roundtrip => "roundtrip",
        Suite::Pde => "pde",
        Suite::All => "all",
    }
}

pub fn run(suite: Suite, tol: Option<f64>, s: &Settings) -> Vec<Outcome> {
    let want = suite_name(suite);
    checks()
        .into_iter()
        .filter(|c| want == "all" || c.suite == want)
        .map(|c| {
            let tolerance = match tol {
                Some(t) if c.overridable => t,
                _ => c.tolerance,
            };
            let (max_gap, detail) = match (c.run)(s) {
                Ok(v) => v,
                Err(e) => (f64::NAN, format!("error: {e}")),
            };
            let passed = if c.strict { max_gap < tolerance } else { max_gap <= tolerance };
            Outcome {
                suite: c.suite,
                name: c.name,
                identity: c.identity,
                max_gap,
                tolerance,
                passed,
                detail,
            }
        })
        .collect()
}

pub fn table(outcomes: &[Outcome]) -> Table {
    let mut t = Table::new(&["suite", "check", "identity", "max_gap", "tolerance", "status", "detail"]);
    for o in outcomes {
        t.push(vec![
            o.suite.into(),
            o.name.into(),
            o.identity.into(),
            o.max_gap.into(),
            o.tolerance.into(),
            if o.passed { "pass" } else { "fail" }.into(),
            o.detail.clone().into(),
        ]);
    }
    t
}
