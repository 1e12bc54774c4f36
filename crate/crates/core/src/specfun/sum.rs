use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
    max_term: f64,
}

#[inline]
fn two_sum(sum: f64, comp: &mut f64, term: f64) -> f64 {
    let t = sum + term;
    if sum.abs() >= term.abs() {
        *comp += (sum - t) + term;
    } else {
        *comp += (term - t) + sum;
    }
    t
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn add(&mut self, term: Complex64) {
        self.sum.re = two_sum(self.sum.re, &mut self.comp.re, term.re);
        self.sum.im = two_sum(self.sum.im, &mut self.comp.im, term.im);
        self.max_term = self.max_term.max(term.norm());
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }

    /// Largest term magnitude seen so far; bounds the rounding error.
    pub(crate) fn max_term(&self) -> f64 {
        self.max_term
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_bits() {
        let mut s = CompensatedSum::new();
        s.add(Complex64::new(1.0, 0.0));
        s.add(Complex64::new(1e-17, 1.0));
        s.add(Complex64::new(-1.0, 0.0));
        assert_eq!(s.value().re, 1e-17);
        assert_eq!(s.value().im, 1.0);
        assert_eq!(s.max_term(), 1.0);
    }
}
