//! Riemann–Liouville derivatives of real and complex order.
//!
//! For `0 < Re γ < 1` the left derivative is
//!
//! ```text
//! D^γ y(t) = 1/Γ(1-γ) · d/dt ∫_0^t y(τ) (t-τ)^{-γ} dτ
//!          = y(0) t^{-γ}/Γ(1-γ) + 1/Γ(1-γ) ∫_0^t y'(τ) (t-τ)^{-γ} dτ
//! ```
//!
//! where the second form holds for absolutely continuous `y` and is what
//! [`rl_deriv_direct`] integrates. [`ExpansionState`] carries the moment
//! states `V_{p-1}(t) = ∫_0^t τ^{p-1} y(τ) dτ` for the truncated expansion
//!
//! ```text
//! D^γ y(t) ≈ y(t) A(N,γ) / t^γ - Σ_{p=1}^{N} C_{p-1}(γ) V_{p-1}(t) / t^{p+γ}.
//! ```

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{adaptive_quad, complex_gamma, principal_power, rk4_step};

/// Derivative order `γ = alpha + i·imag` with `0 < alpha < 1`.
///
/// The imaginary part may take either sign so that an order and its
/// conjugate are both representable; the model layer additionally requires
/// `B > 0` for the complex pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder {
    alpha: f64,
    imag: f64,
}

impl ComplexOrder {
    pub fn new(alpha: f64, imag: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "real part of the order must lie in (0, 1)",
            });
        }
        if !imag.is_finite() {
            return Err(Error::InvalidParameter {
                name: "B",
                value: imag,
                reason: "imaginary part of the order must be finite",
            });
        }
        Ok(Self { alpha, imag })
    }

    pub fn real(alpha: f64) -> Result<Self> {
        Self::new(alpha, 0.0)
    }

    pub fn from_complex(gamma: Complex64) -> Result<Self> {
        Self::new(gamma.re, gamma.im)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn imag(&self) -> f64 {
        self.imag
    }

    pub fn conj(&self) -> Self {
        Self {
            alpha: self.alpha,
            imag: -self.imag,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.alpha, self.imag)
    }

    pub fn is_real(&self) -> bool {
        self.imag == 0.0
    }
}

/// A real, absolutely continuous function on `[0, T]` with known derivative.
pub trait Signal {
    fn value(&self, t: f64) -> f64;
    fn derivative(&self, t: f64) -> f64;
}

impl<S: Signal + ?Sized> Signal for &S {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn derivative(&self, t: f64) -> f64 {
        (**self).derivative(t)
    }
}

/// `y(t) = t^μ`, `μ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub exponent: f64,
}

impl Signal for PowerLaw {
    fn value(&self, t: f64) -> f64 {
        if self.exponent == 0.0 {
            1.0
        } else {
            t.powf(self.exponent)
        }
    }
    fn derivative(&self, t: f64) -> f64 {
        if self.exponent == 0.0 {
            0.0
        } else {
            self.exponent * t.powf(self.exponent - 1.0)
        }
    }
}

/// The regularized unit step `H_k(t) = 1 - e^{-t/k}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedStep {
    pub k: f64,
}

impl Signal for RegularizedStep {
    fn value(&self, t: f64) -> f64 {
        -(-t / self.k).exp_m1()
    }
    fn derivative(&self, t: f64) -> f64 {
        (-t / self.k).exp() / self.k
    }
}

/// Smooth nonnegative bump `exp(1 - 1/(1 - x²))`, `x = (t - center)/half_width`,
/// supported on `|x| < 1` with peak value 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub half_width: f64,
}

impl Default for Bump {
    fn default() -> Self {
        Self {
            center: 1.0,
            half_width: 0.5,
        }
    }
}

impl Signal for Bump {
    fn value(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.half_width;
        if x.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - x * x)).exp()
        }
    }
    fn derivative(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.half_width;
        if x.abs() >= 1.0 {
            return 0.0;
        }
        let d = 1.0 - x * x;
        self.value(t) * (-2.0 * x / (d * d)) / self.half_width
    }
}

/// A signal given by a pair of closures `(value, derivative)`.
#[derive(Clone, Copy)]
pub struct FnSignal<F, G> {
    pub value: F,
    pub derivative: G,
}

impl<F, G> core::fmt::Debug for FnSignal<F, G> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("FnSignal")
    }
}

impl<F: Fn(f64) -> f64, G: Fn(f64) -> f64> Signal for FnSignal<F, G> {
    fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }
    fn derivative(&self, t: f64) -> f64 {
        (self.derivative)(t)
    }
}

const LEFT_PANELS: usize = 40;

/// `D^γ y(t)` from the definition, to quadrature tolerance `tol`.
///
/// The `(t-τ)^{-γ}` singularity is removed on `[t/2, t]` by the substitution
/// `t - τ = u^m`, `m = 1/(1 - Re γ)`, which makes the integrand bounded.
/// A transient of `y'` near `τ = 0` is resolved down to widths of `t·2^{-41}`;
/// narrow features elsewhere in `[0, t/2]` can still be missed.
pub fn rl_deriv_direct<S: Signal + ?Sized>(y: &S, order: ComplexOrder, t: f64, tol: f64) -> Result<Complex64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain("derivative time must be positive and finite"));
    }
    let gamma = order.as_complex();
    let one = Complex64::new(1.0, 0.0);
    let inv_gamma_fn = one / complex_gamma(one - gamma)?;
    let mut total = Complex64::new(0.0, 0.0);

    let y0 = y.value(0.0);
    if y0 != 0.0 {
        total += principal_power(Complex64::new(t, 0.0), -gamma)? * y0;
    }

    let half = 0.5 * t;
    // Panels [t/2^{j+1}, t/2^j] graded toward τ = 0, so a narrow transient at
    // the start (such as a regularized step) is not stepped over at large t.
    let mut left = Complex64::new(0.0, 0.0);
    let mut hi = half;
    for j in 0..=LEFT_PANELS {
        let lo = if j == LEFT_PANELS { 0.0 } else { 0.5 * hi };
        left += adaptive_quad(
            |tau: f64| {
                let w = t - tau;
                (-gamma * w.ln()).exp() * y.derivative(tau)
            },
            lo,
            hi,
            tol,
        )?;
        hi = lo;
    }

    let m = 1.0 / (1.0 - order.alpha());
    let u_max = half.powf(1.0 / m);
    // (u^m)^{-γ} · m u^{m-1} = m · u^{-i m Im γ}
    let right = adaptive_quad(
        |u: f64| {
            let w = u.powf(m);
            let phase = Complex64::new(0.0, -m * order.imag() * u.ln()).exp();
            phase * (m * y.derivative(t - w))
        },
        0.0,
        u_max,
        tol,
    )?;

    total += left + right;
    let value = total * inv_gamma_fn;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("rl_deriv_direct"))
    }
}

/// The coefficients `A(N,γ)` and `C_{p-1}(γ)`, `p = 1..=N`, of the expansion
/// formula.
///
/// `Γ(1-γ)Γ(γ)` is taken as `π / sin(πγ)` and the ratios `Γ(p+γ)/(p-1)!` are
/// built by the product recurrence starting from `Γ(1+γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    order: ComplexOrder,
    a: Complex64,
    c: Vec<Complex64>,
}

impl ExpansionCoefficients {
    pub fn new(order: ComplexOrder, n_terms: usize) -> Result<Self> {
        if n_terms < 1 {
            return Err(Error::InvalidParameter {
                name: "N",
                value: n_terms as f64,
                reason: "expansion needs at least one term",
            });
        }
        let gamma = order.as_complex();
        let sin_ratio = (gamma * PI).sin() / PI;
        // ratio_p = Γ(p + γ) / (p - 1)!, starting from Γ(1 + γ).
        let mut ratio = complex_gamma(gamma + 1.0)?;
        let mut c = Vec::with_capacity(n_terms);
        for p in 1..=n_terms {
            if p > 1 {
                let j = (p - 1) as f64;
                ratio = ratio * (gamma + j) / j;
            }
            c.push(ratio * sin_ratio);
        }
        // Γ(N+1+γ)/N! = ratio_N · (N + γ)/N
        let n = n_terms as f64;
        let a = ratio * (gamma + n) / n * sin_ratio / gamma;
        Ok(Self { order, a, c })
    }

    pub fn order(&self) -> ComplexOrder {
        self.order
    }

    pub fn n_terms(&self) -> usize {
        self.c.len()
    }

    /// `A(N, γ)`.
    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// `C_{p-1}(γ)` for `p = 1..=N`.
    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    /// Truncated-series value of `D^γ y(t)` at the state's current time, given
    /// `y(t)`.
    pub fn derivative(&self, y_t: f64, state: &ExpansionState) -> Result<Complex64> {
        if state.n_terms() != self.n_terms() {
            return Err(Error::GridMismatch("expansion state and coefficients differ in N"));
        }
        let t = state.time();
        if !(t > 0.0) {
            return Err(Error::Domain("expansion formula needs t > 0"));
        }
        let mut acc = self.a * y_t;
        for (c, m) in self.c.iter().zip(state.normalized_moments()) {
            acc -= c * m;
        }
        let value = acc * principal_power(Complex64::new(t, 0.0), -self.order.as_complex())?;
        if value.re.is_finite() && value.im.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite("rl_deriv_expansion"))
        }
    }
}

/// Moment states `V_{p-1}(t)`, `p = 1..=N`, obeying `V'_{p-1} = t^{p-1} y(t)`,
/// `V_{p-1}(0) = 0`.
///
/// States are stored relative to the current time, `V_{p-1}(t)/t^p`, which is
/// the combination the expansion formula consumes and stays representable
/// for large `p` and small `t`. Each [`advance`](Self::advance) runs RK4 on
/// internal substeps no longer than `t/(8N)`; the `t^{p-1}` weight varies on
/// that scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionState {
    normalized: Vec<f64>,
    t: f64,
}

impl ExpansionState {
    pub fn new(n_terms: usize) -> Result<Self> {
        if n_terms < 1 {
            return Err(Error::InvalidParameter {
                name: "N",
                value: n_terms as f64,
                reason: "expansion needs at least one term",
            });
        }
        Ok(Self {
            normalized: vec![0.0; n_terms],
            t: 0.0,
        })
    }

    pub fn n_terms(&self) -> usize {
        self.normalized.len()
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// `V_{p-1}(t) / t^p` for `p = 1..=N` (all zero at `t = 0`).
    pub fn normalized_moments(&self) -> &[f64] {
        &self.normalized
    }

    /// `V_{p-1}(t)` for `p` in `1..=N`. May underflow or overflow for large `p`.
    pub fn moment(&self, p: usize) -> f64 {
        self.normalized[p - 1] * self.t.powi(p as i32)
    }

    /// Advances the states to `t_next` for a given signal.
    pub fn advance<S: Signal + ?Sized>(&mut self, y: &S, t_next: f64) -> Result<()> {
        self.advance_coupled(t_next, |t, _| y.value(t))
    }

    /// Advances the states to `t_next` when the integrand depends on the
    /// states themselves: `y = f(t, V_{p-1}(t)/t^p)`. `f` is also called at
    /// `t = 0`, where the normalized moments are reported as zero.
    pub fn advance_coupled<F>(&mut self, t_next: f64, mut f: F) -> Result<()>
    where
        F: FnMut(f64, &[f64]) -> f64,
    {
        if !(t_next > self.t) || !t_next.is_finite() {
            return Err(Error::GridMismatch("expansion state must advance forward in time"));
        }
        let n = self.n_terms();
        let substeps = ((8.0 * n as f64 * (t_next - self.t) / t_next).ceil() as usize).max(1);
        let h = (t_next - self.t) / substeps as f64;
        let mut scratch = vec![0.0; n];
        for k in 0..substeps {
            let t0 = self.t;
            let t1 = if k + 1 == substeps { t_next } else { self.t + h };
            // Rebase from t0 to the substep end t1: U_p = V_{p-1} / t1^p.
            let ratio = t0 / t1;
            let mut scale = 1.0;
            let rebased: Vec<f64> = self
                .normalized
                .iter()
                .map(|w| {
                    scale *= ratio;
                    w * scale
                })
                .collect();
            let mut rhs = |tau: f64, u: &[f64], du: &mut [f64]| {
                let rel = tau / t1;
                if tau > 0.0 {
                    // V_{p-1}(τ)/τ^p = U_p (t1/τ)^p
                    let inv = t1 / tau;
                    let mut s = 1.0;
                    for (m, u) in scratch.iter_mut().zip(u) {
                        s *= inv;
                        *m = u * s;
                    }
                } else {
                    scratch.fill(0.0);
                }
                let y = f(tau, &scratch);
                // U_p' = (τ/t1)^{p-1} y / t1
                let mut w = y / t1;
                for d in du.iter_mut() {
                    *d = w;
                    w *= rel;
                }
            };
            let next = rk4_step(&mut rhs, t0, &rebased, t1 - t0);
            if next.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("expansion state"));
            }
            self.normalized = next;
            self.t = t1;
        }
        Ok(())
    }
}

/// `D^γ y(t)` by the expansion formula at the state's current time.
pub fn rl_deriv_expansion<S: Signal + ?Sized>(y: &S, order: ComplexOrder, state: &ExpansionState) -> Result<Complex64> {
    ExpansionCoefficients::new(order, state.n_terms())?.derivative(y.value(state.time()), state)
}

/// Integrates the moment states of `y` on a uniform grid of `steps` cells
/// over `[0, t]` and evaluates the expansion formula at `t`.
pub fn rl_deriv_expansion_at<S: Signal + ?Sized>(
    y: &S,
    order: ComplexOrder,
    t: f64,
    n_terms: usize,
    steps: usize,
) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::Domain("expansion formula needs t > 0"));
    }
    let mut state = ExpansionState::new(n_terms)?;
    let steps = steps.max(1);
    for i in 1..=steps {
        state.advance(y, t * i as f64 / steps as f64)?;
    }
    rl_deriv_expansion(y, order, &state)
}

/// How a fractional derivative is evaluated.
#[derive(Debug, Clone, Copy)]
pub enum Evaluator<'a> {
    Direct { tol: f64 },
    /// Moment states already advanced to the evaluation time.
    Expansion(&'a ExpansionState),
}

/// Value of the symmetric derivative together with the discarded imaginary
/// part of `½(D^β y + D^β̄ y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricDerivative {
    pub value: f64,
    pub imag_residue: f64,
}

/// `½ (D^β + D^β̄) y(t)` for real `y`.
///
/// Both orders are evaluated independently; the imaginary part of their
/// average is returned as a diagnostic and is expected to stay below
/// `1e-8 (1 + |value|)`.
pub fn sym_deriv<S: Signal + ?Sized>(y: &S, beta: ComplexOrder, t: f64, method: Evaluator<'_>) -> Result<SymmetricDerivative> {
    let (d, d_conj) = match method {
        Evaluator::Direct { tol } => (rl_deriv_direct(y, beta, t, tol)?, rl_deriv_direct(y, beta.conj(), t, tol)?),
        Evaluator::Expansion(state) => {
            if (state.time() - t).abs() > 1e-12 * t.abs().max(1.0) {
                return Err(Error::GridMismatch("expansion state is not at the evaluation time"));
            }
            (rl_deriv_expansion(y, beta, state)?, rl_deriv_expansion(y, beta.conj(), state)?)
        }
    };
    let avg = (d + d_conj) * 0.5;
    Ok(SymmetricDerivative {
        value: avg.re,
        imag_residue: avg.im.abs(),
    })
}

/// Largest `|Im Σ b_k D^{β_k} y(t)|` over `grid`, with the derivatives taken
/// from the definition at quadrature tolerance `tol`.
///
/// Conjugate-paired term lists give a real sum; a lone complex order does not.
pub fn realness_check<S: Signal + ?Sized>(terms: &[(f64, Complex64)], y: &S, grid: &[f64], tol: f64) -> Result<f64> {
    let orders = terms
        .iter()
        .map(|&(b, g)| ComplexOrder::from_complex(g).map(|o| (b, o)))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for &t in grid {
        let mut sum = Complex64::new(0.0, 0.0);
        for &(b, order) in &orders {
            sum += rl_deriv_direct(y, order, t, tol)? * b;
        }
        worst = worst.max(sum.im.abs());
    }
    Ok(worst)
}
