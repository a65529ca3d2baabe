//! Foundation routines shared by the model code.

mod gamma;
mod jet;
mod ode;
mod power;
mod quad;

pub use gamma::complex_gamma;
pub use jet::{jet_eval_nth_derivative, Jet};
pub use ode::{ode_integrate, rk4_step};
pub use power::{principal_arg, principal_ln, principal_power};
pub use quad::{adaptive_quad, adaptive_quad_with, QuadConfig, QuadResult};

/// Complex numbers used throughout the crate.
pub type ComplexValue = num_complex::Complex64;
