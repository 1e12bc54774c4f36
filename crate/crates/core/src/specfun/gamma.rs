//! Complex gamma function: Lanczos approximation (g = 671/128, fourteen
//! coefficients) in the right half-plane and the reflection formula elsewhere.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_SHIFT: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COEF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LN_PI: f64 = 1.144_729_885_849_400_2;
/// Largest real part of log Γ for which Γ itself is finite.
const LN_MAX: f64 = 709.78;

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite gamma argument {z}")));
    }
    Ok(())
}

/// Lanczos sum for Re z ≥ 1/2.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate() {
        ser += c / (z + (k + 1) as f64);
    }
    let t = z + LANCZOS_SHIFT;
    (z + 0.5) * t.ln() - t + (ser * SQRT_2PI / z).ln()
}

/// sin(πz) after exact removal of the nearest integer from Re z.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let w = Complex64::new(z.re - n, z.im);
    let s = (w * PI).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Principal-branch-free log of sin(πz), stable for large |Im z|.
pub(crate) fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 15.0 {
        return sin_pi(z).ln();
    }
    let n = z.re.round();
    let w = Complex64::new(z.re - n, z.im);
    let parity = if (n as i64) % 2 == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, PI)
    };
    let core = if w.im > 0.0 {
        // sin(πw) = (i/2) e^{-iπw} (1 - e^{2iπw})
        -std::f64::consts::LN_2 + i * (PI / 2.0) - i * PI * w
            + (Complex64::new(1.0, 0.0) - (i * 2.0 * PI * w).exp()).ln()
    } else {
        -std::f64::consts::LN_2 - i * (PI / 2.0) + i * PI * w
            + (Complex64::new(1.0, 0.0) - (-i * 2.0 * PI * w).exp()).ln()
    };
    core + parity
}

/// log Γ(z). The imaginary part is a continuous branch along horizontal
/// lines in the right half-plane; only exp of the result is relied upon
/// for Re z < 1/2.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        let lg = ln_gamma_right(1.0 - z);
        Ok(LN_PI - ln_sin_pi(z) - lg)
    }
}

/// Γ(z) for complex z.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    let lg = log_gamma_complex(z)?;
    if lg.re > LN_MAX {
        return Err(Error::Overflow("gamma_complex"));
    }
    Ok(lg.exp())
}

/// 1/Γ(z), an entire function: zero at the poles of Γ.
pub fn rgamma_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        (-ln_gamma_right(z)).exp()
    } else {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        let lg = ln_gamma_right(1.0 - z);
        if z.im.abs() < 15.0 {
            sin_pi(z) * lg.exp() / PI
        } else {
            (ln_sin_pi(z) + lg - LN_PI).exp()
        }
    }
}

/// Γ(x) for real x, not a non-positive integer.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma_complex(Complex64::new(x, 0.0))?.re)
}

/// ln|Γ(s + iτ)|² = 2 Re log Γ(s + iτ) for real s.
pub fn ln_abs_gamma_sq(s: f64, tau: f64) -> Result<f64> {
    Ok(2.0 * log_gamma_complex(Complex64::new(s, tau))?.re)
}

/// ln(sinh(a)/a) for a ≥ 0, accurate near zero.
pub(crate) fn ln_sinhc(a: f64) -> f64 {
    let a = a.abs();
    if a < 1e-4 {
        a * a / 6.0
    } else if a < 20.0 {
        (a.sinh() / a).ln()
    } else {
        a - std::f64::consts::LN_2 - a.ln() + (-(-2.0 * a).exp()).ln_1p()
    }
}

/// ln cosh(a), overflow-free.
pub(crate) fn ln_cosh(a: f64) -> f64 {
    let a = a.abs();
    a - std::f64::consts::LN_2 + (-2.0 * a).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_values() {
        assert_relative_eq!(gamma_complex(c(1.0, 0.0)).unwrap().re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            gamma_complex(c(0.5, 0.0)).unwrap().re,
            PI.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(gamma_complex(c(6.0, 0.0)).unwrap().re, 120.0, max_relative = 1e-14);
        assert_relative_eq!(
            gamma_complex(c(-0.5, 0.0)).unwrap().re,
            -2.0 * PI.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(gamma_complex(c(0.0, 0.0)), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_complex(c(-3.0, 0.0)), Err(Error::GammaPole(_))));
        assert_eq!(rgamma_complex(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(gamma_complex(c(180.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn modulus_on_the_line_one() {
        for &t in &[0.5, 1.0, 3.0, 10.0, 30.0] {
            let g = gamma_complex(c(1.0, t)).unwrap();
            let exact = PI * t / (PI * t).sinh();
            assert_relative_eq!(g.norm_sqr(), exact, max_relative = 1e-13);
        }
    }

    #[test]
    fn log_sin_matches_direct() {
        for &z in &[c(0.3, 16.0), c(-2.7, -20.0), c(5.1, 40.0)] {
            let direct = (z * PI).sin();
            let via = ln_sin_pi(z).exp();
            assert_relative_eq!((via - direct).norm() / direct.norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn helpers() {
        assert_relative_eq!(ln_sinhc(2.0), (2f64.sinh() / 2.0).ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_sinhc(30.0), (30f64.sinh() / 30.0).ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_cosh(3.0), 3f64.cosh().ln(), max_relative = 1e-15);
        assert_eq!(ln_cosh(1000.0), 1000.0 - std::f64::consts::LN_2);
    }
}
