//! The characteristic function `ψ(s) = 1 + a s^α + b(s^β + s^β̄)`, its
//! zeros, the creep kernel `K = L⁻¹[1/ψ]` and strain from stress by
//! convolution or Post inversion.
//!
//! Functions taking `(r, φ)` or a logarithm `w = ln r + iφ` accept any angle,
//! not only the principal one; this is how both sides of the branch cut on
//! the negative real axis are reached.

mod contour;
mod kernel;
mod post;
mod zeros;

pub use contour::{count_zeros, winding_number, ContourSpec, HalfPlane};
pub use kernel::{
    kernel_density, kernel_ki, kernel_ki_integrals, kernel_ki_two_term, kernel_kr, residue_integrals, residue_sum,
    solve_strain, KernelIntegrals, KernelTable,
};
pub use post::{post_invert, post_invert_image};
pub use zeros::{
    asymptotic_zero_angle, find_zeros, residue_zeros, zero_free_radius, SearchRegion, ZeroSet,
};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::principal_ln;
use crate::thermo::ModelParams;

/// `ψ` at `s = e^w`.
pub fn psi_log(params: &ModelParams, w: Complex64) -> Complex64 {
    let beta = params.beta();
    (w * params.alpha()).exp() * params.a() + ((w * beta).exp() + (w * beta.conj()).exp()) * params.b() + 1.0
}

/// `d/dw ψ(e^w) = s ψ'(s)` at `s = e^w`.
pub fn psi_log_prime(params: &ModelParams, w: Complex64) -> Complex64 {
    let beta = params.beta();
    let alpha = params.alpha();
    (w * alpha).exp() * (params.a() * alpha)
        + ((w * beta).exp() * beta + (w * beta.conj()).exp() * beta.conj()) * params.b()
}

/// `ψ(r e^{iφ})` with the powers taken along the angle `φ` as given.
pub fn psi_polar(params: &ModelParams, r: f64, phi: f64) -> Complex64 {
    psi_log(params, Complex64::new(r.ln(), phi))
}

/// `ψ(s)` on the principal branch, `arg s ∈ (-π, π]`.
pub fn psi(params: &ModelParams, s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("psi is not evaluated at s = 0"));
    }
    Ok(psi_log(params, principal_ln(s)?))
}

/// `ψ'(s) = aα s^{α-1} + b(β s^{β-1} + β̄ s^{β̄-1})` on the principal branch.
pub fn psi_prime(params: &ModelParams, s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("psi' is not evaluated at s = 0"));
    }
    Ok(psi_log_prime(params, principal_ln(s)?) / s)
}

/// Magnitude scale `1 + r^α (a + 2b)` used for zero and simplicity tests.
pub(crate) fn psi_scale(params: &ModelParams, r: f64) -> f64 {
    1.0 + r.powf(params.alpha()) * (params.a() + 2.0 * params.b())
}
