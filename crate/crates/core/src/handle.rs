//! Named real functions carrying the metadata the transforms need.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::Envelope;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type ComplexFn = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

/// Where a function lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    HalfLine,
    WholeLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Even,
    Odd,
    None,
}

/// A named real function with optional closed-form Mellin transform and
/// decay envelope. Cloning is cheap.
#[derive(Clone)]
pub struct FunctionHandle {
    pub name: String,
    pub domain: Domain,
    pub symmetry: Symmetry,
    pub envelope: Option<Envelope>,
    eval: RealFn,
    mellin: Option<(f64, f64, ComplexFn)>,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("symmetry", &self.symmetry)
            .field("envelope", &self.envelope)
            .field("mellin_strip", &self.mellin_strip())
            .finish()
    }
}

impl FunctionHandle {
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            symmetry: Symmetry::None,
            envelope: None,
            eval: Arc::new(f),
            mellin: None,
        }
    }

    /// The zero function.
    pub fn zero(domain: Domain) -> Self {
        Self::new("zero", domain, |_| 0.0).with_symmetry(Symmetry::Even)
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = Some(envelope);
        self
    }

    /// Attach f*(s), valid on the open strip lo < Re s < hi.
    pub fn with_mellin(
        mut self,
        lo: f64,
        hi: f64,
        f: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        self.mellin = Some((lo, hi, Arc::new(f)));
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn mellin_strip(&self) -> Option<(f64, f64)> {
        self.mellin.as_ref().map(|(lo, hi, _)| (*lo, *hi))
    }

    /// Closed-form Mellin transform at s, checked against the strip.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        let (lo, hi, f) = self.mellin.as_ref().ok_or_else(|| {
            Error::InvalidParameter(format!("{} has no closed-form Mellin transform", self.name))
        })?;
        if !(s.re > *lo && s.re < *hi) {
            return Err(Error::StripViolation {
                re: s.re,
                lo: *lo,
                hi: *hi,
            });
        }
        f(s)
    }

    pub fn has_mellin(&self) -> bool {
        self.mellin.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_is_enforced() {
        let h = FunctionHandle::new("e", Domain::HalfLine, |x| (-x).exp())
            .with_mellin(0.0, f64::INFINITY, |s| crate::specfun::gamma_complex(s));
        assert!(h.mellin(Complex64::new(0.5, 0.0)).is_ok());
        assert!(matches!(
            h.mellin(Complex64::new(-0.5, 0.0)),
            Err(Error::StripViolation { .. })
        ));
        assert_eq!(h.eval(0.0), 1.0);
    }
}
