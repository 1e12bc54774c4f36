//! Confluent hypergeometric ₁F₁ and the two ₂F₂ instances used by the
//! inversion formulas.

use num_complex::Complex64;

use super::sum::CompensatedSum;
use super::SeriesPolicy;
use crate::error::{Error, Result};
use crate::tolerances::HYPERGEOMETRIC_MAX_ARG;

fn check_arg(what: &'static str, z: f64) -> Result<()> {
    if !(z.is_finite() && z.abs() <= HYPERGEOMETRIC_MAX_ARG) {
        return Err(Error::OutOfRange {
            what,
            value: z,
            min: -HYPERGEOMETRIC_MAX_ARG,
            max: HYPERGEOMETRIC_MAX_ARG,
        });
    }
    Ok(())
}

fn is_nonpositive_integer(b: Complex64) -> bool {
    b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round()
}

/// Kummer's function ₁F₁(a; b; z) for |z| ≤ 30.
///
/// For Re z < 0 the series is summed after Kummer's transformation
/// ₁F₁(a; b; z) = e^z ₁F₁(b − a; b; −z).
pub fn kummer_1f1(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::ParameterPole(format!("1F1 with b = {b}")));
    }
    check_arg("kummer_1f1", z.norm())?;
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if z.re < 0.0 {
        return Ok(z.exp() * kummer_series(b - a, b, -z, policy)?);
    }
    kummer_series(a, b, z, policy)
}

fn kummer_series(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let mut sum = CompensatedSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..policy.max_terms {
        sum.add(term);
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        if term.norm() > policy.overflow_guard {
            return Err(Error::Overflow("kummer_1f1"));
        }
        let small = term.norm() <= policy.rel_tol * sum.value().norm().max(f64::MIN_POSITIVE);
        if term.norm() == 0.0 || (small && ratio.norm() < 0.5) {
            sum.add(term);
            return Ok(sum.value());
        }
    }
    Err(Error::NonConvergence {
        what: "kummer_1f1",
        terms: policy.max_terms,
    })
}

/// ₁F₁(1; 3/2; −z) for z ≥ 0, with no upper limit on z.
///
/// Equals D(√z)/√z, D being Dawson's integral. Summed as
/// e^{−z} Σ z^k/((2k+1) k!) for z ≤ 40 and by the asymptotic series
/// (1/2z) Σ (2k−1)!!/(2z)^k beyond.
pub fn kummer_dawson(z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::OutOfRange {
            what: "kummer_dawson",
            value: z,
            min: 0.0,
            max: f64::MAX,
        });
    }
    if z <= 40.0 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in 0..400 {
            let t = power / (2 * k + 1) as f64;
            sum += t;
            if t <= 1e-17 * sum && k as f64 > z {
                return Ok(sum * (-z).exp());
            }
            power *= z / (k + 1) as f64;
        }
        Err(Error::NonConvergence {
            what: "kummer_dawson",
            terms: 400,
        })
    } else {
        let w = 1.0 / (2.0 * z);
        let mut sum: f64 = 0.0;
        let mut t = 1.0;
        let mut k = 0;
        while t > 1e-17 * sum.max(1.0) && k < 60 {
            sum += t;
            k += 1;
            t *= (2 * k - 1) as f64 * w;
        }
        Ok(sum * w)
    }
}

/// Dawson's integral D(u) = e^{−u²} ∫₀^u e^{t²} dt for u ≥ 0.
pub fn dawson(u: f64) -> Result<f64> {
    if u == 0.0 {
        return Ok(0.0);
    }
    Ok(u * kummer_dawson(u * u)?)
}

/// Sum of a series with positive terms t_{k+1} = t_k·ratio(k), stopping once
/// the ratios are decreasing (from `decreasing_from`) and the geometric tail
/// bound falls below rel_tol.
fn positive_series(
    what: &'static str,
    policy: &SeriesPolicy,
    decreasing_from: usize,
    ratio: impl Fn(usize) -> f64,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 0..policy.max_terms {
        sum += term;
        let r = ratio(k);
        term *= r;
        if term > policy.overflow_guard {
            return Err(Error::Overflow(what));
        }
        if k + 1 >= decreasing_from {
            let r_next = ratio(k + 1);
            if r_next < 1.0 && term / (1.0 - r_next) <= policy.rel_tol * sum {
                return Ok(sum + term);
            }
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: policy.max_terms,
    })
}

/// ₂F₂(1, 1/2; 1+iτ, 1−iτ; x) = Σ (1/2)_k x^k / |(1+iτ)_k|², for 0 ≤ x ≤ 30.
pub fn hyp2f2_inv_f(tau: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::OutOfRange {
            what: "hyp2f2_inv_f",
            value: x,
            min: 0.0,
            max: HYPERGEOMETRIC_MAX_ARG,
        });
    }
    check_arg("hyp2f2_inv_f", x)?;
    let t2 = tau * tau;
    let from = t2.sqrt().ceil() as usize + 1;
    positive_series("hyp2f2_inv_f", policy, from, |k| {
        let kf = k as f64;
        (0.5 + kf) * x / ((kf + 1.0) * (kf + 1.0) + t2)
    })
}

/// ₂F₂(1, 3/2−ε; 2−ε−ix, 2−ε+ix; t) for 0 ≤ ε < 1/2 and 0 ≤ t ≤ 30.
pub fn hyp2f2_inv_g(x_index: f64, eps: f64, t: f64, policy: &SeriesPolicy) -> Result<f64> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} outside [0, 1/2)"
        )));
    }
    if t < 0.0 {
        return Err(Error::OutOfRange {
            what: "hyp2f2_inv_g",
            value: t,
            min: 0.0,
            max: HYPERGEOMETRIC_MAX_ARG,
        });
    }
    check_arg("hyp2f2_inv_g", t)?;
    let x2 = x_index * x_index;
    let from = (x2 + 0.25).sqrt().ceil() as usize + 1;
    positive_series("hyp2f2_inv_g", policy, from, |k| {
        let kf = k as f64;
        let d = 2.0 - eps + kf;
        (1.5 - eps + kf) * t / (d * d + x2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kummer_at_zero_is_one() {
        let p = SeriesPolicy::default();
        assert_eq!(kummer_1f1(c(0.3, 1.0), c(2.5, -1.0), c(0.0, 0.0), &p).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn kummer_dawson_reference() {
        let p = SeriesPolicy::default();
        let v = kummer_1f1(c(1.0, 0.0), c(1.5, 0.0), c(-1.0, 0.0), &p).unwrap();
        assert_relative_eq!(v.re, 0.538_079_506_912_768_4, max_relative = 1e-14);
        assert_relative_eq!(kummer_dawson(1.0).unwrap(), 0.538_079_506_912_768_4, max_relative = 1e-14);
    }

    #[test]
    fn dawson_branches_join() {
        let below = kummer_dawson(40.0).unwrap();
        let above = kummer_dawson(40.000_000_001).unwrap();
        assert_relative_eq!(below, above, max_relative = 1e-10);
        // D(u) ~ 1/(2u) for large u
        assert_relative_eq!(dawson(1e4).unwrap(), 0.5e-4, max_relative = 1e-8);
    }

    #[test]
    fn kummer_rejects_pole_and_range() {
        let p = SeriesPolicy::default();
        assert!(matches!(
            kummer_1f1(c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), &p),
            Err(Error::ParameterPole(_))
        ));
        assert!(kummer_1f1(c(1.0, 0.0), c(1.5, 0.0), c(31.0, 0.0), &p).is_err());
    }

    #[test]
    fn terminating_series() {
        // ₁F₁(−2; 1; z) = 1 − 2z + z²/2
        let p = SeriesPolicy::default();
        let v = kummer_1f1(c(-2.0, 0.0), c(1.0, 0.0), c(3.0, 0.0), &p).unwrap();
        assert_relative_eq!(v.re, 1.0 - 6.0 + 4.5, epsilon = 1e-14);
    }

    #[test]
    fn hyp2f2_references() {
        let p = SeriesPolicy::default();
        assert_eq!(hyp2f2_inv_f(1.0, 0.0, &p).unwrap(), 1.0);
        assert_relative_eq!(
            hyp2f2_inv_f(0.0, 2.0, &p).unwrap(),
            3.441_523_869_125_335_3,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            hyp2f2_inv_f(1.0, 1.0, &p).unwrap(),
            1.348_392_309_414_700_1,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            hyp2f2_inv_g(0.0, 0.0, 1.0, &p).unwrap(),
            1.506_775_308_754_180_8,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            hyp2f2_inv_g(1.0, 0.1, 2.0, &p).unwrap(),
            2.111_381_841_160_816_9,
            max_relative = 1e-14
        );
    }

    #[test]
    fn hyp2f2_inv_g_rejects_bad_eps() {
        let p = SeriesPolicy::default();
        assert!(hyp2f2_inv_g(1.0, 0.5, 1.0, &p).is_err());
        assert!(hyp2f2_inv_g(1.0, -0.1, 1.0, &p).is_err());
    }
}
