//! Complex-order fractional calculus and the complex-order fractional
//! Kelvin–Voigt viscoelastic model.
//!
//! The constitutive law handled throughout the crate is
//!
//! ```text
//! σ(t) = ε(t) + a·D^α ε(t) + b·(D^β + D^β̄) ε(t),    β = α + iB
//! ```
//!
//! with Riemann–Liouville derivatives of real order `α` and complex orders
//! `β`, `β̄`. Its Laplace image gives the characteristic function
//! `ψ(s) = 1 + a s^α + b (s^β + s^β̄)`.
//!
//! Modules, bottom-up:
//!
//! - [`numerics`]: complex gamma, principal powers, adaptive Gauss–Kronrod
//!   quadrature, RK4 stepping and truncated Taylor jets.
//! - [`fracops`]: Riemann–Liouville derivatives of complex order, evaluated
//!   from the definition or by the moment-state expansion formula.
//! - [`thermo`]: complex modulus and the dissipation (admissibility)
//!   inequalities.
//! - [`kelvin`]: zeros of `ψ`, the creep kernel and its inversion.
//! - [`experiments`]: stress-relaxation and creep pipelines.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]
#![warn(missing_debug_implementations)]
// reference values are kept at the digits they were computed to
#![allow(clippy::excessive_precision)]

extern crate alloc;

// Modules import `num_traits::Float` for f64 math without std. Once any
// dependency links std the inherent methods take over and the import goes
// unused, hence the `allow` on each of them.

#[cfg(test)]
extern crate std;

pub mod error;
pub mod experiments;
pub mod fracops;
pub mod kelvin;
pub mod numerics;
pub mod thermo;

pub use error::{Error, Result};
pub use num_complex::Complex64;
