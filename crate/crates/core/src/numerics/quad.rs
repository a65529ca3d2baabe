//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex-valued
//! integrands of one real variable, with a panel-truncation rule for
//! infinite intervals.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

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

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and budgets for [`adaptive_quad_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of subintervals per finite panel.
    pub max_subdivisions: usize,
    /// Consecutive negligible panels that end an infinite-interval integral.
    pub tail_panels: usize,
    /// Maximum number of panels on an infinite interval.
    pub max_panels: usize,
}

impl QuadConfig {
    /// Absolute-or-relative tolerance `tol`.
    pub fn new(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            max_subdivisions: 4000,
            tail_panels: 3,
            max_panels: 400,
        }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Error estimate for `value`.
    pub error: f64,
    /// Estimate of `∫ |f|`.
    pub abs_integral: f64,
    pub evaluations: usize,
}

/// `∫_lo^hi f(x) dx` to absolute-or-relative tolerance `tol`.
///
/// Either limit may be infinite. Infinite ranges are covered by panels of
/// doubling width and cut off once [`QuadConfig::tail_panels`] consecutive
/// panels contribute less than `tol` times the running `∫|f|`.
pub fn adaptive_quad<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    adaptive_quad_with(f, lo, hi, &QuadConfig::new(tol)).map(|r| r.value)
}

/// [`adaptive_quad`] with explicit configuration and diagnostics.
pub fn adaptive_quad_with<F>(mut f: F, lo: f64, hi: f64, config: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::Domain("NaN integration limit"));
    }
    if lo == hi {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            abs_integral: 0.0,
            evaluations: 0,
        });
    }
    if lo > hi {
        let r = adaptive_quad_with(f, hi, lo, config)?;
        return Ok(QuadResult {
            value: -r.value,
            ..r
        });
    }
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => finite(&mut f, lo, hi, config),
        (true, false) => semi_infinite(&mut f, lo, config),
        (false, true) => semi_infinite(&mut |x: f64| f(-x), -hi, config),
        (false, false) => {
            let right = semi_infinite(&mut f, 0.0, config)?;
            let left = semi_infinite(&mut |x: f64| f(-x), 0.0, config)?;
            Ok(QuadResult {
                value: right.value + left.value,
                error: right.error + left.error,
                abs_integral: right.abs_integral + left.abs_integral,
                evaluations: right.evaluations + left.evaluations,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
    abs_integral: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut abs_sum = f_center.norm() * WGK[7];
    let mut values = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let left = f(center - dx);
        let right = f(center + dx);
        values[j] = (left, right);
        kronrod += (left + right) * WGK[j];
        abs_sum += (left.norm() + right.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (left + right) * WG[j / 2];
        }
    }
    if !(kronrod.re.is_finite() && kronrod.im.is_finite()) {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (f_center - mean).norm();
    for (j, (l, r)) in values.iter().enumerate() {
        asc += WGK[j] * ((l - mean).norm() + (r - mean).norm());
    }
    let asc = asc * half.abs();
    let value = kronrod * half;
    let abs_integral = abs_sum * half.abs();
    let mut error = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * abs_integral;
    if abs_integral > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(roundoff);
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error,
        abs_integral,
    })
}

fn finite<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    config: &QuadConfig,
) -> Result<QuadResult> {
    let first = gauss_kronrod(f, lo, hi)?;
    let mut evaluations = 15;
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_integral = first.abs_integral;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // Segments too narrow to split in floating point.
    let mut frozen_value = Complex64::new(0.0, 0.0);
    let mut frozen_error = 0.0;
    let target = |v: Complex64| config.abs_tol.max(config.rel_tol * v.norm());
    while error > target(value) {
        if heap.len() >= config.max_subdivisions {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        let left = gauss_kronrod(f, worst.lo, mid)?;
        let right = gauss_kronrod(f, mid, worst.hi)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        abs_integral += left.abs_integral + right.abs_integral - worst.abs_integral;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            error = heap.iter().map(|s| s.error).sum::<f64>() + frozen_error;
        }
    }
    let value = heap.iter().fold(frozen_value, |acc, s| acc + s.value);
    let error = heap.iter().map(|s| s.error).sum::<f64>() + frozen_error;
    if error > target(value) {
        return Err(Error::QuadratureNonConvergence {
            lo,
            hi,
            estimate: error,
            tol: target(value),
        });
    }
    Ok(QuadResult {
        value,
        error,
        abs_integral,
        evaluations,
    })
}

fn semi_infinite<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    lo: f64,
    config: &QuadConfig,
) -> Result<QuadResult> {
    let mut total = QuadResult {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        abs_integral: 0.0,
        evaluations: 0,
    };
    let mut start = lo;
    let mut width = 1.0_f64.max(lo.abs() * 1e-3);
    let mut quiet = 0;
    for _ in 0..config.max_panels {
        let end = start + width;
        let panel_cfg = QuadConfig {
            abs_tol: config.abs_tol.max(config.rel_tol * total.value.norm()) * 0.1,
            ..*config
        };
        let panel = finite(f, start, end, &panel_cfg)?;
        total.value += panel.value;
        total.error += panel.error;
        total.abs_integral += panel.abs_integral;
        total.evaluations += panel.evaluations;
        let scale = total.value.norm().max(total.abs_integral * f64::EPSILON);
        if panel.abs_integral <= config.rel_tol * scale || panel.abs_integral <= config.abs_tol * 1e-3 {
            quiet += 1;
            if quiet >= config.tail_panels {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        start = end;
        width *= 2.0;
        if !start.is_finite() {
            break;
        }
    }
    Err(Error::QuadratureNonConvergence {
        lo,
        hi: f64::INFINITY,
        estimate: total.error,
        tol: config.abs_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::complex_gamma;
    use proptest::prelude::*;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl FnMut(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn constant_on_unit_interval() {
        let v = adaptive_quad(real(|_| 1.0), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14 && v.im == 0.0);
    }

    #[test]
    fn exponential_tail() {
        let v = adaptive_quad(real(|q| (-q).exp()), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((v.re - 1.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn gamma_integral_with_endpoint_singularity() {
        let v = adaptive_quad(real(|q| q.powf(-0.4) * (-q).exp()), 0.0, f64::INFINITY, 1e-12).unwrap();
        let g = complex_gamma(Complex64::new(0.6, 0.0)).unwrap();
        assert!((v.re - g.re).abs() < 1e-10, "{} vs {}", v.re, g.re);
        assert!((g.re - 1.489_192_248_812_817).abs() < 1e-12);
    }

    #[test]
    fn reversed_and_empty_limits() {
        let v = adaptive_quad(real(|x| x), 1.0, 0.0, 1e-12).unwrap();
        assert!((v.re + 0.5).abs() < 1e-14);
        assert_eq!(adaptive_quad(real(|x| x), 2.0, 2.0, 1e-12).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn whole_real_line() {
        let v = adaptive_quad(real(|x| (-x * x).exp()), f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!((v.re - core::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn complex_oscillatory_integrand() {
        // ∫_0^1 u^{-0.4 i} du = 1 / (1 - 0.4 i)
        let v = adaptive_quad(|u: f64| Complex64::new(0.0, -0.4 * u.ln()).exp(), 0.0, 1.0, 1e-12).unwrap();
        let expected = Complex64::new(1.0, 0.0) / Complex64::new(1.0, -0.4);
        assert!((v - expected).norm() < 1e-10, "{v} vs {expected}");
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadConfig {
            max_subdivisions: 4,
            ..QuadConfig::new(1e-14)
        };
        let r = adaptive_quad_with(real(|x: f64| x.powf(-0.9)), 0.0, 1.0, &cfg);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn nan_integrand_is_an_error() {
        let r = adaptive_quad(real(|_| f64::NAN), 0.0, 1.0, 1e-8);
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }

    proptest! {
        #[test]
        fn additivity(a in -3.0f64..0.0, c in 0.0f64..2.0, b in 2.0f64..5.0, k in 0.1f64..3.0) {
            let tol = 1e-10;
            let f = |x: f64| Complex64::new((k * x).sin() * (-0.1 * x * x).exp(), x.cos());
            let whole = adaptive_quad(f, a, b, tol).unwrap();
            let parts = adaptive_quad(f, a, c, tol).unwrap() + adaptive_quad(f, c, b, tol).unwrap();
            let scale = 1.0f64.max(whole.norm());
            prop_assert!((whole - parts).norm() <= 2.0 * tol * scale);
        }
    }
}
