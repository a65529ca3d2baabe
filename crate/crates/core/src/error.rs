use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The gamma function was evaluated at a non-positive integer.
    #[error("gamma function pole at z = {0}")]
    Pole(f64),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// A parameter violates its invariant.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Adaptive quadrature hit its subdivision budget.
    #[error("quadrature did not converge on [{lo}, {hi}]: error estimate {estimate:e} > {tol:e}")]
    QuadratureNonConvergence {
        lo: f64,
        hi: f64,
        estimate: f64,
        tol: f64,
    },

    /// A NaN or infinity escaped an intermediate computation.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// A jet with zero constant term was inverted or had its logarithm taken.
    #[error("jet division by zero (constant term vanishes)")]
    JetDivisionByZero,

    /// Two sampled signals or grids that must coincide do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(&'static str),

    /// The contour of a winding-number computation passes through a zero.
    #[error("function vanishes on the contour (|f| = {magnitude:e}) after {attempts} perturbations")]
    ZeroOnContour { magnitude: f64, attempts: usize },

    /// The winding number could not be resolved with the sample budget.
    #[error("winding number not resolved: phase step above pi/2 after maximal refinement")]
    WindingNotResolved,

    /// Newton search located a different number of zeros than the argument
    /// principle predicts.
    #[error("zero search found {found} zeros but the winding number is {expected}")]
    ZeroCountMismatch { expected: i64, found: usize },

    /// A zero is too close to being multiple for the simple-pole residue formula.
    #[error("near-degenerate zero at {re} + {im}i (|s psi'(s)| = {derivative:e})")]
    DegenerateZero { re: f64, im: f64, derivative: f64 },

    /// An imaginary residue that must vanish by conjugate pairing did not.
    #[error("imaginary residue {residue:e} exceeds {limit:e} in {context}")]
    ImaginaryResidue {
        residue: f64,
        limit: f64,
        context: &'static str,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
