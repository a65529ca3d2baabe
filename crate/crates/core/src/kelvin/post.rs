//! Post's inversion formula
//! `f(t) ≈ ((-1)^n/n!) s^{n+1} F^{(n)}(s)` at `s = n/t`.

use alloc::vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Jet;
use crate::thermo::ModelParams;

/// Post approximation of the inverse of `image` at `t`.
///
/// `image` receives the jet of `s = s0 (1 + u)` in `u`, `s0 = n/t`, so the
/// `u^n` coefficient `d_n` of the result equals `s0^n F^{(n)}(s0)/n!` and the
/// formula reduces to `(-1)^n s0 d_n` without large factorials.
pub fn post_invert_image<F>(image: F, t: f64, n: usize) -> Result<Complex64>
where
    F: Fn(&Jet) -> Result<Jet>,
{
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("Post inversion needs t > 0"));
    }
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "Post inversion needs n ≥ 1",
        });
    }
    let s0 = n as f64 / t;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[0] = Complex64::new(s0, 0.0);
    coeffs[1] = Complex64::new(s0, 0.0);
    let out = image(&Jet::new(coeffs))?;
    if out.order() < n {
        return Err(Error::Domain("image truncated the jet below the requested order"));
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let v = out.coeff(n) * (sign * s0);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("Post inversion"))
    }
}

/// Creep strain under unit step stress, `L⁻¹[1/(s ψ(s))](t)`, by Post's
/// formula of order `n`.
pub fn post_invert(params: &ModelParams, t: f64, n: usize) -> Result<f64> {
    let beta = params.beta();
    let image = |s: &Jet| -> Result<Jet> {
        let mut psi = s.powc(Complex64::new(params.alpha(), 0.0))?.scale(Complex64::new(params.a(), 0.0));
        if params.b() != 0.0 {
            let pair = &s.powc(beta)? + &s.powc(beta.conj())?;
            psi = &psi + &pair.scale(Complex64::new(params.b(), 0.0));
        }
        let denom = s * &psi.add_scalar(Complex64::new(1.0, 0.0));
        denom.recip()
    };
    let v = post_invert_image(image, t, n)?;
    let limit = 1e-8 * (1.0 + v.re.abs());
    if v.im.abs() > limit {
        return Err(Error::ImaginaryResidue {
            residue: v.im.abs(),
            limit,
            context: "post_invert",
        });
    }
    Ok(v.re)
}
