//! Cubic splines and Chebyshev interpolants for tabulated transforms.

use crate::error::{Error, Result};

/// End condition of a cubic spline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplineEnd {
    Natural,
    /// Prescribed first derivative.
    Clamped(f64),
}

/// Interpolating cubic spline on strictly increasing knots.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>, left: SplineEnd, right: SplineEnd) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return Err(Error::InvalidParameter(
                "spline needs at least three knots and matching values".into(),
            ));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("spline knots must increase".into()));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        // tridiagonal system for the second derivatives
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        match left {
            SplineEnd::Natural => b[0] = 1.0,
            SplineEnd::Clamped(d0) => {
                b[0] = 2.0 * h[0];
                c[0] = h[0];
                d[0] = 6.0 * (slope[0] - d0);
            }
        }
        for i in 1..n - 1 {
            a[i] = h[i - 1];
            b[i] = 2.0 * (h[i - 1] + h[i]);
            c[i] = h[i];
            d[i] = 6.0 * (slope[i] - slope[i - 1]);
        }
        match right {
            SplineEnd::Natural => b[n - 1] = 1.0,
            SplineEnd::Clamped(dn) => {
                a[n - 1] = h[n - 2];
                b[n - 1] = 2.0 * h[n - 2];
                d[n - 1] = 6.0 * (dn - slope[n - 2]);
            }
        }
        for i in 1..n {
            let w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = d[n - 1] / b[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (d[i] - c[i] * m[i + 1]) / b[i];
        }
        Ok(Self { x, y, m })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value at t, or an interpolation-range error outside the knots.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if !(t >= lo && t <= hi) {
            return Err(Error::InterpolationRange { value: t, lo, hi });
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        let n = self.x.len();
        let i = match self.x.binary_search_by(|v| v.total_cmp(&t)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }
}

/// Chebyshev interpolant on [0, 1] through the Lobatto points
/// w_j = (1 + cos(jπ/n))/2, j = 0..=n.
#[derive(Debug, Clone)]
pub struct Chebyshev {
    coeffs: Vec<f64>,
}

impl Chebyshev {
    pub fn lobatto_nodes(n: usize) -> Vec<f64> {
        (0..=n)
            .map(|j| 0.5 * (1.0 + (std::f64::consts::PI * j as f64 / n as f64).cos()))
            .collect()
    }

    /// `values[j]` is the function at `lobatto_nodes(n)[j]`.
    pub fn from_lobatto_values(values: &[f64]) -> Result<Self> {
        let n = values.len().saturating_sub(1);
        if n < 2 {
            return Err(Error::InvalidParameter("Chebyshev fit needs three values".into()));
        }
        let pi = std::f64::consts::PI;
        let coeffs = (0..=n)
            .map(|k| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                        w * v * (pi * (j * k) as f64 / n as f64).cos()
                    })
                    .sum();
                let w = if k == 0 || k == n { 0.5 } else { 1.0 };
                w * 2.0 * s / n as f64
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn eval(&self, w: f64) -> f64 {
        let y = 2.0 * w - 1.0;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * y * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        y * b1 - b2 + self.coeffs[0]
    }

    /// Magnitude of the last coefficient, a truncation indicator.
    pub fn tail_coefficient(&self) -> f64 {
        self.coeffs.last().map_or(0.0, |c| c.abs())
    }
}
