//! Numerical toolkit for the index transform pair
//!
//! ```text
//! F(τ) = ∫₀^∞ Ψ_τ(x) f(x) dx,        G(x) = ∫_ℝ Ψ_τ(x) g(τ) dτ,
//! Ψ_τ(x) = √π e^{-x/2} Re I_{iτ}(x/2) / cosh(πτ),
//! ```
//!
//! whose kernel is the real part of the modified Bessel function of
//! imaginary order.
//!
//! # Modules
//!
//! - [`specfun`]: complex gamma, I_{iτ}, K_{iτ}, ₁F₁ and the ₂F₂ instances
//!   needed by the inversion formulas.
//! - [`quadrature`]: adaptive Gauss–Kronrod engines for half-line, even
//!   whole-line and vertical contour integrals.
//! - [`kernel`]: Ψ_τ(x) by power series, Mellin–Barnes integral and cosine
//!   representation, plus the identities attached to it.
//! - [`transforms`]: forward transforms, both inversion formulas and the
//!   transform identities.
//! - [`registry`]: curated test functions with Mellin metadata.
//! - [`pde`]: the wedge problem solved by the G-type transform.
//!
//! # Example
//!
//! ```
//! use ls_transform::kernel::{psi_series, psi_mellin_barnes};
//! use ls_transform::quadrature::ContourSpec;
//!
//! let a = psi_series(1.0, 2.0).unwrap();
//! let b = psi_mellin_barnes(1.0, 2.0, &ContourSpec::default()).unwrap();
//! assert!((a.value - b.value).abs() < 1e-10);
//! ```

pub mod error;
pub mod handle;
pub mod kernel;
pub mod pde;
pub mod quadrature;
pub mod registry;
pub mod specfun;
pub mod tolerances;
pub mod transforms;

pub use error::{Error, Result};
pub use handle::{Domain, FunctionHandle, Symmetry};
pub use num_complex::Complex64 as ComplexValue;
