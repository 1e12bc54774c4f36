//! Reference values computed independently at 50 digits.

use approx::assert_relative_eq;
use ls_transform::kernel::{psi, psi_mellin_barnes, psi_series};
use ls_transform::quadrature::{integrate_semiinfinite, ContourSpec, QuadratureSpec};
use ls_transform::registry::{f1, f2, g1, g2};
use ls_transform::specfun::{
    bessel_i_imag_order, gamma_complex, hyp2f2_inv_f, hyp2f2_inv_g, kummer_1f1, kummer_dawson,
    ln_abs_gamma_sq, macdonald_k_cosh_integral, macdonald_k_imag_order, macdonald_k_series, SeriesPolicy,
};
use ls_transform::transforms::{apply_g, forward_f, laplace_kernel_closed};
use ls_transform::ComplexValue;

const ANALYTIC: f64 = 1e-10;
const QUADRATURE: f64 = 1e-6;

fn tight() -> QuadratureSpec {
    QuadratureSpec::with_tolerances(1e-13, 1e-12)
}

#[test]
fn macdonald_at_unit_index() {
    let want = 0.289_428_037_025_992_127_63;
    assert_relative_eq!(macdonald_k_series(1.0, 1.0).unwrap(), want, max_relative = ANALYTIC);
    assert_relative_eq!(macdonald_k_cosh_integral(1.0, 1.0).unwrap().value, want, max_relative = QUADRATURE);
    assert_relative_eq!(macdonald_k_imag_order(0.0, 1.0).unwrap(), 0.421_024_438_240_708_333_34, max_relative = ANALYTIC);
}

#[test]
fn hypergeometric_of_f_inversion() {
    let p = SeriesPolicy::default();
    assert_relative_eq!(hyp2f2_inv_f(1.0, 1.0, &p).unwrap(), 1.348_392_309_414_700_117_9, max_relative = ANALYTIC);
    assert_relative_eq!(hyp2f2_inv_f(0.0, 2.0, &p).unwrap(), 3.441_523_869_125_335_258_0, max_relative = ANALYTIC);
}

#[test]
fn hypergeometric_of_g_inversion() {
    let p = SeriesPolicy::default();
    assert_relative_eq!(hyp2f2_inv_g(0.0, 0.0, 1.0, &p).unwrap(), 1.506_775_308_754_180_791_4, max_relative = ANALYTIC);
    assert_relative_eq!(hyp2f2_inv_g(1.0, 0.1, 2.0, &p).unwrap(), 2.111_381_841_160_816_881_0, max_relative = ANALYTIC);
}

#[test]
fn slowly_decaying_integrand() {
    let spec = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    let r = integrate_semiinfinite(
        |x: f64| Ok(psi(0.0, x)?.value / std::f64::consts::PI.sqrt() * x.powf(-0.75)),
        &spec,
    )
    .unwrap();
    assert_relative_eq!(r.value, 6.052_062_693_682_955_368_9, max_relative = QUADRATURE);
}

#[test]
fn kernel_at_one_two() {
    let want = 0.106_920_303_227_111_260_20;
    assert_relative_eq!(psi_series(1.0, 2.0).unwrap().value, want, max_relative = ANALYTIC);
    assert_relative_eq!(psi_mellin_barnes(1.0, 2.0, &ContourSpec::default()).unwrap().value, want, max_relative = ANALYTIC);
}

#[test]
fn forward_transform_values() {
    let want = -0.012_610_375_130_350_028_174;
    let v = forward_f(&f1(), 1.0, &tight()).unwrap().value;
    assert_relative_eq!(v, want, max_relative = QUADRATURE);
    assert!(v.abs() <= std::f64::consts::PI.sqrt());
    assert_relative_eq!(forward_f(&f2(), 1.0, &tight()).unwrap().value, 0.017_855_152_029_424_753_959, max_relative = QUADRATURE);
}

#[test]
fn apply_transform_values() {
    let v = apply_g(&g1(), 1.0, &tight()).unwrap().value;
    assert_relative_eq!(v, 0.118_679_525_796_093_608_52, max_relative = QUADRATURE);
    assert_relative_eq!(apply_g(&g2(), 2.0, &tight()).unwrap().value, 0.168_498_901_592_691_933_18, max_relative = QUADRATURE);
}

#[test]
fn kernel_values() {
    for &(t, x, want) in &[
        (0.5, 1.0, 0.485_073_579_793_484_405_45),
        (0.0, 4.0, 0.546_816_764_346_655_296_28),
        (0.0, 0.1, 1.687_064_177_622_146_244_7),
        (5.0, 10.0, 2.104_185_783_396_635_908_2e-6),
    ] {
        assert_relative_eq!(psi_series(t, x).unwrap().value, want, max_relative = ANALYTIC);
    }
}

#[test]
fn special_function_values() {
    let p = SeriesPolicy::default();
    let i = bessel_i_imag_order(1.5, 2.0, &p).unwrap();
    assert_relative_eq!(i.re, 4.717_936_511_033_381_023_6, max_relative = ANALYTIC);
    assert_relative_eq!(i.im, -1.252_386_616_292_375_963_9, max_relative = ANALYTIC);
    assert_relative_eq!(bessel_i_imag_order(0.0, 1.0, &p).unwrap().re, 1.266_065_877_752_008_335_6, max_relative = ANALYTIC);
    assert_relative_eq!(kummer_dawson(1.0).unwrap(), 0.538_079_506_912_768_419_14, max_relative = ANALYTIC);
    let g = gamma_complex(ComplexValue::new(1.0, 1.0)).unwrap();
    assert_relative_eq!(g.norm_sqr(), 0.272_029_054_982_133_162_95, max_relative = ANALYTIC);
    assert_relative_eq!(ln_abs_gamma_sq(1.0, 1.0).unwrap(), 0.272_029_054_982_133_162_95f64.ln(), max_relative = ANALYTIC);
    assert_relative_eq!(gamma_complex(ComplexValue::new(10.0, 0.0)).unwrap().re.ln(), 12.801_827_480_081_469_611, max_relative = ANALYTIC);
    let k = kummer_1f1(ComplexValue::new(0.5, 1.0), ComplexValue::new(1.0, 2.0), ComplexValue::new(1.0, 0.0), &p).unwrap();
    assert_relative_eq!(k.re, 1.700_565_820_089_898_229_8, max_relative = ANALYTIC);
    assert_relative_eq!(k.im, -0.052_495_320_713_572_731_718, max_relative = ANALYTIC);
    assert_relative_eq!(macdonald_k_imag_order(2.0, 4.0).unwrap(), 0.007_073_840_985_797_562_703_2, max_relative = ANALYTIC);
    assert_relative_eq!(macdonald_k_imag_order(0.5, 0.25).unwrap(), 1.202_391_168_754_035_521_1, max_relative = ANALYTIC);
}

#[test]
fn laplace_kernel_values() {
    assert_relative_eq!(laplace_kernel_closed(1.0, 1.0).unwrap(), 0.130_328_904_579_451_520_97, max_relative = ANALYTIC);
    assert_relative_eq!(laplace_kernel_closed(2.0, 0.5).unwrap(), 0.336_981_775_625_956_681_47, max_relative = ANALYTIC);
}
