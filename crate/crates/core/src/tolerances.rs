//! Numerical constants shared across modules: declared ranges, switch
//! points and default tolerances.

/// Largest argument accepted by the Bessel-I power series.
pub const I_SERIES_MAX_ARG: f64 = 60.0;

/// Largest kernel abscissa evaluated by the series; beyond it the kernel
/// uses the shifted Mellin–Barnes contour.
pub const PSI_SERIES_MAX_X: f64 = 2.0 * I_SERIES_MAX_ARG;

/// Largest argument of the generic hypergeometric series.
pub const HYPERGEOMETRIC_MAX_ARG: f64 = 30.0;

/// |τ| below which K_{iτ} is evaluated by the cosh integral.
pub const K_TAU_SWITCH: f64 = 1e-3;

/// Largest x for which K_{iτ}(x) is taken from the Bessel-I series.
pub const K_SERIES_MAX_ARG: f64 = 6.0;

/// Default contour abscissa for the kernel Mellin–Barnes integral.
pub const DEFAULT_GAMMA: f64 = 0.25;

/// Default absolute tolerance for contour quadrature.
pub const CONTOUR_ABS_TOL: f64 = 1e-13;

/// Allowed imaginary residual of a real-valued contour integral.
pub const IMAGINARY_RESIDUAL_LIMIT: f64 = 1e-9;

/// Default cap on x for the F-inversion bracket.
pub const INVERSE_F_MAX_X: f64 = 8.0;

/// Digits of bracket cancellation that trigger the alarm.
pub const CANCELLATION_DIGITS: f64 = 6.0;

/// Upper end of the τ-grid used by round trips.
pub const ROUND_TRIP_TAU_MAX: f64 = 8.0;

/// t beyond which the G-inversion kernel switches to its contour form.
pub const INVERSE_G_DIRECT_MAX_T: f64 = 8.0;

/// Lower cutoff of the t-integral in the G inversion.
pub const INVERSE_G_T_MIN: f64 = 1e-20;

/// End of the ln t part of the G inversion; the tail beyond is mapped
/// onto a finite interval.
pub const INVERSE_G_T_MAX: f64 = 2.0e3;
