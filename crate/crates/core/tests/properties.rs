use std::f64::consts::PI;

use ls_transform::kernel::{ode_residual, psi_mellin_barnes, psi_series};
use ls_transform::quadrature::{ContourSpec, Envelope, QuadratureSpec};
use ls_transform::registry::{f1, f3, g2};
use ls_transform::specfun::{gamma_complex, ln_abs_gamma_sq};
use ls_transform::transforms::{apply_g, apply_g_bound, forward_bound, forward_f, sampled_profile, CubicSpline, SplineEnd};
use ls_transform::{ComplexValue, Domain, FunctionHandle};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    let d = (a - b).abs();
    d <= tol || d <= tol * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_even_in_tau(tau in 0.0f64..6.0, x in 0.01f64..50.0) {
        let a = psi_series(tau, x).unwrap().value;
        let b = psi_series(-tau, x).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kernel_is_bounded_by_sqrt_pi(tau in -6.0f64..6.0, x in 0.01f64..100.0) {
        prop_assert!(psi_series(tau, x).unwrap().value.abs() <= PI.sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn series_and_contour_agree(tau in 0.0f64..4.0, x in 0.1f64..10.0) {
        let a = psi_series(tau, x).unwrap().value;
        let b = psi_mellin_barnes(tau, x, &ContourSpec::default()).unwrap().value;
        prop_assert!(close(a, b, 1e-8), "{} vs {}", a, b);
    }

    #[test]
    fn contour_shift_leaves_kernel_unchanged(tau in 0.0f64..3.0, x in 0.2f64..8.0, g1 in 0.1f64..0.45, g2 in 0.1f64..0.45) {
        let base = ContourSpec::default();
        let a = psi_mellin_barnes(tau, x, &base.with_gamma(g1)).unwrap().value;
        let b = psi_mellin_barnes(tau, x, &base.with_gamma(g2)).unwrap().value;
        prop_assert!(close(a, b, 1e-9), "{} vs {}", a, b);
    }

    #[test]
    fn kernel_solves_its_ode(tau in 0.0f64..5.0, x in 0.1f64..10.0) {
        prop_assert!(ode_residual(tau, x).unwrap() <= 1e-8);
    }

    #[test]
    fn gamma_reflection(re in -3.5f64..3.5, im in 0.1f64..20.0) {
        let z = ComplexValue::new(re, im);
        let lhs = gamma_complex(z).unwrap() * gamma_complex(ComplexValue::new(1.0, 0.0) - z).unwrap();
        let rhs = ComplexValue::new(PI, 0.0) / (z * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }

    #[test]
    fn log_gamma_modulus_matches_gamma(s in 0.1f64..5.0, tau in -10.0f64..10.0) {
        let g = gamma_complex(ComplexValue::new(s, tau)).unwrap();
        prop_assert!(close(ln_abs_gamma_sq(s, tau).unwrap(), g.norm_sqr().ln(), 1e-12));
    }

    #[test]
    fn spline_interpolates_and_reproduces_lines(
        steps in prop::collection::vec(0.05f64..2.0, 3..20),
        slope in -3.0f64..3.0,
        offset in -3.0f64..3.0,
        u in 0.0f64..1.0,
    ) {
        let mut x = vec![0.0];
        for s in &steps {
            x.push(x.last().unwrap() + s);
        }
        let y: Vec<f64> = x.iter().map(|&t| offset + slope * t).collect();
        let sp = CubicSpline::new(x.clone(), y.clone(), SplineEnd::Natural, SplineEnd::Natural).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            prop_assert!(close(sp.eval(*xi).unwrap(), *yi, 1e-12));
        }
        let t = u * x.last().unwrap();
        prop_assert!(close(sp.eval(t).unwrap(), offset + slope * t, 1e-10));
    }

    #[test]
    fn sampled_profile_passes_through_samples(vals in prop::collection::vec(-2.0f64..2.0, 4..12)) {
        let ts: Vec<f64> = (0..vals.len()).map(|k| 0.5 * (k + 1) as f64).collect();
        let h = sampled_profile(&ts, &vals).unwrap();
        for (t, v) in ts.iter().zip(&vals) {
            prop_assert!(close(h.eval(*t), *v, 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn forward_transform_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0, tau in 0.0f64..4.0) {
        let (p, q) = (f1(), f3());
        let (pc, qc) = (p.clone(), q.clone());
        let sum = FunctionHandle::new("a f1 + b f3", Domain::HalfLine, move |x| a * pc.eval(x) + b * qc.eval(x))
            .with_envelope(Envelope::Algebraic { power: 2.0, prefactor: a.abs() + b.abs() + 1e-300 });
        let spec = QuadratureSpec::with_tolerances(1e-11, 1e-11);
        let lhs = forward_f(&sum, tau, &spec).unwrap().value;
        let rhs = a * forward_f(&p, tau, &spec).unwrap().value + b * forward_f(&q, tau, &spec).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn forward_norm_bound_is_strict(tau in 0.0f64..8.0) {
        let spec = QuadratureSpec::with_tolerances(1e-10, 1e-10);
        for f in [f1(), f3()] {
            prop_assert!(forward_f(&f, tau, &spec).unwrap().value.abs() < forward_bound(&f, &spec).unwrap());
        }
    }

    #[test]
    fn apply_norm_bound_is_strict(x in 0.05f64..20.0) {
        let spec = QuadratureSpec::with_tolerances(1e-10, 1e-10);
        let g = g2();
        prop_assert!(apply_g(&g, x, &spec).unwrap().value.abs() < apply_g_bound(&g, &spec).unwrap());
    }
}
