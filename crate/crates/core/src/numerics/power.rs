use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Argument of `s` in `(-π, π]`.
///
/// The negative real axis maps to `+π`, including `-x - 0i`, so that a point
/// written as `x e^{iπ}` keeps the upper-side value.
pub fn principal_arg(s: Complex64) -> f64 {
    if s.im == 0.0 && s.re < 0.0 {
        PI
    } else {
        s.im.atan2(s.re)
    }
}

/// Principal logarithm `ln|s| + i arg s` with `arg s ∈ (-π, π]`.
pub fn principal_ln(s: Complex64) -> Result<Complex64> {
    if s.re == 0.0 && s.im == 0.0 {
        return Err(Error::Domain("logarithm of zero"));
    }
    Ok(Complex64::new(s.norm().ln(), principal_arg(s)))
}

/// Principal power `s^γ = exp(γ (ln|s| + i arg s))`.
///
/// `0^γ` is `0` when `Re γ > 0` and a domain error otherwise.
pub fn principal_power(s: Complex64, gamma: Complex64) -> Result<Complex64> {
    if s.re == 0.0 && s.im == 0.0 {
        return if gamma.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::Domain("zero raised to a power with non-positive real part"))
        };
    }
    let value = (gamma * principal_ln(s)?).exp();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("principal_power"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_to_any_power() {
        let v = principal_power(c(1.0, 0.0), c(0.4, 0.4)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn imaginary_axis_real_order() {
        let (omega, alpha) = (3.7_f64, 0.4_f64);
        let v = principal_power(c(0.0, omega), c(alpha, 0.0)).unwrap();
        let expected = Complex64::from_polar(omega.powf(alpha), alpha * PI / 2.0);
        assert!((v - expected).norm() < 1e-14);
    }

    #[test]
    fn i_to_imaginary_power() {
        // exp(iB · iπ/2) = e^{-Bπ/2}
        let v = principal_power(c(0.0, 1.0), c(0.0, 0.4)).unwrap();
        assert!((v - c(0.533_488_091_091_103_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_axis_uses_upper_side() {
        assert_eq!(principal_arg(c(-2.0, 0.0)), PI);
        assert_eq!(principal_arg(c(-2.0, -0.0)), PI);
        let v = principal_power(c(-1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_base() {
        assert_eq!(principal_power(c(0.0, 0.0), c(0.3, 1.0)).unwrap(), c(0.0, 0.0));
        assert!(principal_power(c(0.0, 0.0), c(-0.3, 1.0)).is_err());
        assert!(principal_power(c(0.0, 0.0), c(0.0, 1.0)).is_err());
    }

    proptest! {
        #[test]
        fn conjugation_symmetry(
            re in -10.0f64..10.0,
            im in 0.01f64..10.0,
            gr in -2.0f64..2.0,
            gi in -2.0f64..2.0,
            lower in proptest::bool::ANY,
        ) {
            let s = c(re, if lower { -im } else { im });
            let g = c(gr, gi);
            let direct = principal_power(s.conj(), g.conj()).unwrap();
            let mirrored = principal_power(s, g).unwrap().conj();
            prop_assert!((direct - mirrored).norm() <= 1e-12 * (1.0 + direct.norm()));
        }
    }
}
