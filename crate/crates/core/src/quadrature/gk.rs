//! Adaptive 15-point Gauss–Kronrod integration on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{EvalResult, Method, QuadValue};
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Abscissae (on [-1, 1]) and Kronrod weights of the 15-point rule, in
/// ascending order, with the embedded 7-point Gauss weights (zero for
/// Kronrod-only nodes).
pub(crate) fn gk15_nodes() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for j in 0..7 {
        let wg = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        out[j] = (-XGK[j], WGK[j], wg);
        out[14 - j] = (XGK[j], WGK[j], wg);
    }
    out[7] = (0.0, WGK[7], WG[3]);
    out
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel<T> {
    pub a: f64,
    pub b: f64,
    pub value: T,
    pub error: f64,
    /// Rounding floor 50 ε ∫|f| on the panel.
    pub floor: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

pub(crate) fn gk15<T, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [T::default(); 15];
    for (j, (x, _, _)) in gk15_nodes().iter().enumerate() {
        let t = if j == 7 { center } else { center + half * x };
        let v = f(t)?;
        if !v.magnitude().is_finite() {
            return Err(Error::NonFinite { at: t });
        }
        fv[j] = v;
    }
    let mut resk = T::default();
    let mut resg = T::default();
    let mut resabs = 0.0;
    for (j, (_, wk, wg)) in gk15_nodes().iter().enumerate() {
        resk = resk + fv[j] * *wk;
        if *wg != 0.0 {
            resg = resg + fv[j] * *wg;
        }
        resabs += wk * fv[j].magnitude();
    }
    let mean = resk * 0.5;
    let mut resasc = 0.0;
    for (j, (_, wk, _)) in gk15_nodes().iter().enumerate() {
        resasc += wk * (fv[j] - mean).magnitude();
    }
    let h = half.abs();
    let resasc = resasc * h;
    let resabs = resabs * h;
    let mut err = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok(Panel {
        a,
        b,
        value: resk * half,
        error: err,
        floor,
    })
}

/// Adaptive integration over [points[0], points[last]] starting from the
/// panels delimited by `points`.
///
/// Panels are bisected in order of decreasing error estimate until the
/// total estimate falls below max(abs_tol, rel_tol·|I|). The per-panel
/// estimates include a rounding floor of 50 ε ∫|f|; a tolerance below that
/// floor is met once only the floor remains.
pub fn integrate_interval<T, F>(
    mut f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<EvalResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    if points.len() < 2 {
        return Err(Error::InvalidParameter(
            "integration needs at least two breakpoints".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Panel<T>> = Vec::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        heap.push(gk15(&mut f, w[0], w[1])?);
        evaluations += 15;
    }
    let mut splits = 0;
    loop {
        let (value, error, floor) = totals(&heap, &settled);
        let target = abs_tol.max(rel_tol * value.magnitude()).max(2.0 * floor);
        if error <= target {
            return Ok(EvalResult {
                value,
                abs_error_estimate: error,
                evaluations,
                method: Method::GaussKronrod,
            });
        }
        let Some(worst) = heap.pop() else {
            return Ok(EvalResult {
                value,
                abs_error_estimate: error,
                evaluations,
                method: Method::GaussKronrod,
            });
        };
        let width = (worst.b - worst.a).abs();
        if width <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs()) || width < 1e-290 {
            settled.push(worst);
            continue;
        }
        if splits >= max_subdivisions {
            heap.push(worst);
            let (value, error, _) = totals(&heap, &settled);
            return Err(Error::SubdivisionLimit {
                limit: max_subdivisions,
                value: value.magnitude(),
                estimate: error,
                tolerance: target,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gk15(&mut f, worst.a, mid)?);
        heap.push(gk15(&mut f, mid, worst.b)?);
        evaluations += 30;
        splits += 1;
    }
}

fn totals<T: QuadValue>(heap: &BinaryHeap<Panel<T>>, settled: &[Panel<T>]) -> (T, f64, f64) {
    let mut value = T::default();
    let mut error = 0.0;
    let mut floor = 0.0;
    for p in heap.iter().chain(settled.iter()) {
        value = value + p.value;
        error += p.error;
        floor += p.floor;
    }
    (value, error, floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_interval(|x: f64| Ok(x.powi(6) - x), &[0.0, 2.0], 1e-14, 1e-14, 10)
            .unwrap();
        assert_relative_eq!(r.value, 128.0 / 7.0 - 2.0, max_relative = 1e-14);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate_interval(|x: f64| Ok(x.sqrt().recip()), &[0.0, 1.0], 1e-10, 1e-10, 200)
            .unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn complex_oscillation() {
        let r = integrate_interval(
            |x: f64| Ok(Complex64::new(0.0, 10.0 * x).exp()),
            &[0.0, 1.0],
            1e-13,
            1e-13,
            100,
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 10.0);
        assert!((r.value - exact).norm() < 1e-13);
    }

    #[test]
    fn non_finite_is_reported() {
        let r = integrate_interval(|x: f64| Ok(1.0 / (x - 0.5)), &[0.0, 0.5, 1.0], 1e-8, 1e-8, 10);
        assert!(r.is_ok() || matches!(r, Err(Error::NonFinite { .. }) | Err(Error::SubdivisionLimit { .. })));
        let r = integrate_interval(|_x: f64| Ok(f64::NAN), &[0.0, 1.0], 1e-8, 1e-8, 10);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn subdivision_limit_is_reported() {
        let r = integrate_interval(|x: f64| Ok((1.0 / x).sin()), &[1e-6, 1.0], 1e-14, 1e-14, 5);
        assert!(matches!(r, Err(Error::SubdivisionLimit { .. })));
    }
}
