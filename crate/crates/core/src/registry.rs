//! Built-in test functions with known Mellin transforms and declared
//! hypotheses, and Mellin-transform utilities to check that metadata.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::handle::{Domain, FunctionHandle, Symmetry};
use crate::quadrature::{integrate_contour, integrate_interval, ContourSpec, Envelope, QuadratureSpec};
use crate::specfun::{gamma_complex, rgamma_complex};
use crate::transforms::{apply_g, cosh_weighted_norm, l1_norm};

/// Hypotheses an entry is declared to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HypothesisTag {
    /// f ∈ L₁(ℝ₊): F is bounded by √π‖f‖₁ and has the Lebedev form.
    ForwardBounded,
    /// f*(s)/Γ(1−s) decays on vertical lines in 1/2 < Re s < 3/2, so the F inversion applies.
    ForwardInvertible,
    /// g/√cosh(πτ) ∈ L₁(ℝ): G is bounded.
    IndexBounded,
    /// g even, analytic near the real axis, g(0) = g′(0) = 0: the G inversion applies.
    IndexInvertible,
    /// g decays fast enough to build the wedge solution.
    WedgeAdmissible,
}

impl HypothesisTag {
    pub const ALL: [HypothesisTag; 5] = [
        HypothesisTag::ForwardBounded,
        HypothesisTag::ForwardInvertible,
        HypothesisTag::IndexBounded,
        HypothesisTag::IndexInvertible,
        HypothesisTag::WedgeAdmissible,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            HypothesisTag::ForwardBounded => "forward_bounded",
            HypothesisTag::ForwardInvertible => "forward_invertible",
            HypothesisTag::IndexBounded => "index_bounded",
            HypothesisTag::IndexInvertible => "index_invertible",
            HypothesisTag::WedgeAdmissible => "wedge_admissible",
        }
    }
}

impl fmt::Display for HypothesisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub handle: FunctionHandle,
    pub hypothesis_tags: Vec<HypothesisTag>,
    pub notes: String,
}

impl RegistryEntry {
    pub fn name(&self) -> &str {
        &self.handle.name
    }

    pub fn has_tag(&self, tag: HypothesisTag) -> bool {
        self.hypothesis_tags.contains(&tag)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn f1() -> FunctionHandle {
    FunctionHandle::new("f1", Domain::HalfLine, |x| 1.0 / ((1.0 + x) * (1.0 + x)))
        .with_envelope(Envelope::Algebraic { power: 2.0, prefactor: 1.0 })
        .with_mellin(0.0, 2.0, |s| Ok(gamma_complex(s)? * gamma_complex(2.0 - s)?))
}

pub fn f2() -> FunctionHandle {
    FunctionHandle::new("f2", Domain::HalfLine, |x| x / ((1.0 + x) * (1.0 + x) * (1.0 + x)))
        .with_envelope(Envelope::Algebraic { power: 2.0, prefactor: 1.0 })
        .with_mellin(-1.0, 2.0, |s| Ok(gamma_complex(s + 1.0)? * gamma_complex(2.0 - s)? * 0.5))
}

pub fn f3() -> FunctionHandle {
    FunctionHandle::new("f3", Domain::HalfLine, |x| (-x).exp())
        .with_envelope(Envelope::Exponential { rate: 1.0, prefactor: 1.0 })
        .with_mellin(0.0, f64::INFINITY, gamma_complex)
}

pub fn g1() -> FunctionHandle {
    FunctionHandle::new("g1", Domain::WholeLine, |t| t * t * (-t * t).exp())
        .with_symmetry(Symmetry::Even)
        .with_envelope(Envelope::Gaussian {
            rate: 0.5,
            prefactor: 2.0 / std::f64::consts::E,
        })
}

pub fn g2() -> FunctionHandle {
    FunctionHandle::new("g2", Domain::WholeLine, |t| t * t / t.cosh())
        .with_symmetry(Symmetry::Even)
        .with_envelope(Envelope::Exponential {
            rate: 0.5,
            prefactor: 32.0 / (std::f64::consts::E * std::f64::consts::E),
        })
}

/// r ↦ G(r) = apply_g(g, r), evaluated on demand; NaN where evaluation fails.
pub fn boundary_profile(g: FunctionHandle, spec: QuadratureSpec) -> FunctionHandle {
    let name = format!("G{}", g.name);
    FunctionHandle::new(name, Domain::HalfLine, move |r| {
        apply_g(&g, r, &spec).map_or(f64::NAN, |v| v.value)
    })
}

/// The built-in entries, in a fixed order.
pub fn builtin_entries() -> Vec<RegistryEntry> {
    use HypothesisTag::*;
    let spec = QuadratureSpec::with_tolerances(1e-11, 1e-11);
    vec![
        RegistryEntry {
            handle: f1(),
            hypothesis_tags: vec![ForwardBounded, ForwardInvertible],
            notes: "1/(1+x)^2; Mellin transform Gamma(s)Gamma(2-s) on 0 < Re s < 2".into(),
        },
        RegistryEntry {
            handle: f2(),
            hypothesis_tags: vec![ForwardBounded, ForwardInvertible],
            notes: "x/(1+x)^3; Mellin transform Gamma(s+1)Gamma(2-s)/2 on -1 < Re s < 2".into(),
        },
        RegistryEntry {
            handle: f3(),
            hypothesis_tags: vec![ForwardBounded],
            notes: "exp(-x); Mellin transform Gamma(s) on Re s > 0. Not forward_invertible: \
                    Gamma(s)/Gamma(1-s) grows like |Im s|^(2 Re s - 1) on vertical lines"
                .into(),
        },
        RegistryEntry {
            handle: g1(),
            hypothesis_tags: vec![IndexBounded, IndexInvertible, WedgeAdmissible],
            notes: "tau^2 exp(-tau^2); even, entire, double zero at 0".into(),
        },
        RegistryEntry {
            handle: g2(),
            hypothesis_tags: vec![IndexBounded, IndexInvertible, WedgeAdmissible],
            notes: "tau^2/cosh(tau); poles at +-i pi/2; wedge integrand decays for theta < 1 + pi/2".into(),
        },
        RegistryEntry {
            handle: boundary_profile(g1(), spec),
            hypothesis_tags: vec![],
            notes: "boundary profile G(r) of g1".into(),
        },
        RegistryEntry {
            handle: boundary_profile(g2(), spec),
            hypothesis_tags: vec![],
            notes: "boundary profile G(r) of g2".into(),
        },
    ]
}

pub fn lookup(name: &str) -> Option<RegistryEntry> {
    builtin_entries().into_iter().find(|e| e.name() == name)
}

/// Outcome of a numeric hypothesis check.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisCheck {
    pub tag: HypothesisTag,
    pub passed: bool,
    pub detail: String,
}

/// Run the numeric check backing `tag` on `entry`, whether or not the tag
/// is declared.
pub fn check_hypothesis(entry: &RegistryEntry, tag: HypothesisTag) -> Result<HypothesisCheck> {
    let h = &entry.handle;
    let spec = QuadratureSpec::with_tolerances(1e-10, 1e-10);
    let (passed, detail) = match tag {
        HypothesisTag::ForwardBounded => {
            if h.domain != Domain::HalfLine {
                (false, "not a half-line function".to_string())
            } else {
                let (a, b) = (1e3 * h.eval(1e3).abs(), 1e4 * h.eval(1e4).abs());
                if !(b < 0.5 * a || b == 0.0) {
                    (false, format!("x|f(x)| does not decay: {a:.3e} at 1e3, {b:.3e} at 1e4"))
                } else {
                    let n = l1_norm(h, &spec)?;
                    (n.is_finite(), format!("L1 norm {n:.6e}"))
                }
            }
        }
        HypothesisTag::ForwardInvertible => {
            if !h.has_mellin() {
                (false, "no closed-form Mellin transform".to_string())
            } else {
                let mut ok = true;
                let mut worst = 0.0f64;
                for re in [0.75, 1.25] {
                    let r = |t: f64| -> Result<f64> {
                        let s = Complex64::new(re, t);
                        Ok((h.mellin(s)? * rgamma_complex(1.0 - s)).norm())
                    };
                    let (a, b) = (r(5.0)?, r(40.0)?);
                    worst = worst.max(b / a);
                    ok &= b < 1e-8 * a;
                }
                (ok, format!("|f*(s)/Gamma(1-s)| ratio between Im s = 40 and 5: {worst:.3e}"))
            }
        }
        HypothesisTag::IndexBounded => {
            if h.domain != Domain::WholeLine {
                (false, "not a whole-line function".to_string())
            } else {
                let n = cosh_weighted_norm(h, &spec)?;
                (n.is_finite(), format!("weighted norm {n:.6e}"))
            }
        }
        HypothesisTag::IndexInvertible => {
            let even = [0.3, 1.1, 2.7].iter().all(|&t| (h.eval(t) - h.eval(-t)).abs() <= 1e-14 * h.eval(t).abs());
            let d = 1e-4;
            let g0 = h.eval(0.0).abs();
            let g1 = ((h.eval(d) - h.eval(-d)) / (2.0 * d)).abs();
            let decays = h.eval(30.0).abs() < 1e-6;
            (
                h.domain == Domain::WholeLine && even && g0 < 1e-14 && g1 < 1e-8 && decays,
                format!("even {even}, g(0) {g0:.1e}, g'(0) {g1:.1e}, decays {decays}"),
            )
        }
        HypothesisTag::WedgeAdmissible => match h.envelope {
            Some(_) if h.domain != Domain::WholeLine => (false, "not a whole-line function".to_string()),
            Some(env) => {
                let ok = [1.0, 2.0, 4.0, 10.0, 20.0]
                    .iter()
                    .all(|&t| h.eval(t).abs() <= env.bound(t) * (1.0 + 1e-12));
                (ok, format!("envelope {env:?}"))
            }
            None => (false, "no decay envelope".to_string()),
        },
    };
    Ok(HypothesisCheck { tag, passed, detail })
}

/// Integrate f(x) x^{s−1} over the half-line in u = ln x.
fn mellin_numeric(h: &FunctionHandle, s: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    let integrand = |u: f64| -> Complex64 {
        let f = h.eval(u.exp());
        if f == 0.0 {
            return c(0.0);
        }
        (s * u).exp() * f
    };
    let floor = 1e-3 * spec.abs_tol;
    let reach = |dir: f64| {
        let mut u = dir;
        while integrand(u).norm() > floor && u.abs() < 700.0 {
            u += dir;
        }
        u + dir
    };
    let (lo, hi) = (reach(-1.0), reach(1.0));
    let width = (PI / s.im.abs().max(1e-300)).min(1.0);
    let n = ((hi - lo) / width).ceil() as usize;
    let pts: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
    Ok(integrate_interval(|u| Ok(integrand(u)), &pts, spec.abs_tol, spec.rel_tol, spec.max_subdivisions)?.value)
}

/// |∫₀^∞ f(x) x^{s−1} dx − f*(s)| for an entry with a closed-form transform.
pub fn mellin_check(entry: &RegistryEntry, s: Complex64, spec: &QuadratureSpec) -> Result<f64> {
    let exact = entry.handle.mellin(s)?;
    Ok((mellin_numeric(&entry.handle, s, spec)? - exact).norm())
}

/// (1/2πi) ∫_{ν−i∞}^{ν+i∞} f*(s) x^{−s} ds.
pub fn inverse_mellin<F>(closed_form: F, x: f64, nu_line: f64, contour: &ContourSpec) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("x = {x} must be positive")));
    }
    let c = contour.with_gamma(nu_line);
    let lx = x.ln();
    Ok(integrate_contour(|s| Ok(closed_form(s)? * (-s * lx).exp()), &c)?.value.re)
}

/// |∫₀^∞ f g dx − (1/2π) ∫ f*(ν+it) g*(1−ν−it) dt|.
pub fn parseval_gap(
    a: &RegistryEntry,
    b: &RegistryEntry,
    nu_line: f64,
    spec: &QuadratureSpec,
    contour: &ContourSpec,
) -> Result<f64> {
    let (fa, fb) = (a.handle.clone(), b.handle.clone());
    let product = FunctionHandle::new("product", Domain::HalfLine, move |x| fa.eval(x) * fb.eval(x));
    let lhs = mellin_numeric(&product, c(1.0), spec)?.re;
    let cs = contour.with_gamma(nu_line);
    let rhs = integrate_contour(|s| Ok(a.handle.mellin(s)? * b.handle.mellin(1.0 - s)?), &cs)?.value.re;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let e = builtin_entries();
        for (i, a) in e.iter().enumerate() {
            assert!(e[i + 1..].iter().all(|b| b.name() != a.name()));
        }
        assert!(lookup("g2").is_some());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn g1_double_zero() {
        let g = g1();
        assert_eq!(g.eval(0.0), 0.0);
        assert!(((g.eval(1e-5) - g.eval(-1e-5)) / 2e-5).abs() < 1e-12);
    }
}
