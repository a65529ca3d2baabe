//! Complex modulus and dissipation inequalities of the model
//! `σ = ε + a D^α ε + b (D^β + D^β̄) ε`, `β = α + iB`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Parameters `(a, b, α, B)` of the constitutive law, in units where the
/// elastic modulus is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    a: f64,
    b: f64,
    alpha: f64,
    big_b: f64,
}

impl ModelParams {
    /// Validated parameters: `a, b > 0`, `0 < α < 1`, `B > 0`.
    pub fn new(a: f64, b: f64, alpha: f64, big_b: f64) -> Result<Self> {
        positive("a", a)?;
        positive("b", b)?;
        positive("B", big_b)?;
        order("alpha", alpha)?;
        Ok(Self { a, b, alpha, big_b })
    }

    /// Like [`new`](Self::new) but admits `a = 0`, `b = 0` and `B = 0`, for
    /// the limiting laws (pure real order, pure complex pair, identity).
    pub fn degenerate(a: f64, b: f64, alpha: f64, big_b: f64) -> Result<Self> {
        nonnegative("a", a)?;
        nonnegative("b", b)?;
        nonnegative("B", big_b)?;
        order("alpha", alpha)?;
        Ok(Self { a, b, alpha, big_b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Imaginary part `B` of `β`.
    pub fn big_b(&self) -> f64 {
        self.big_b
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.alpha, self.big_b)
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be positive and finite",
        })
    }
}

fn nonnegative(name: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be non-negative and finite",
        })
    }
}

fn order(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must lie in (0, 1)",
        })
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("frequency must be positive and finite"))
    }
}

/// `Ê(ω)`, or `1 + Ê(ω) = ψ(iω)` when `with_unit_term` is set.
pub fn complex_modulus(params: &ModelParams, omega: f64, with_unit_term: bool) -> Result<Complex64> {
    check_omega(omega)?;
    let ModelParams { a, b, alpha, big_b } = *params;
    let w_alpha = omega.powf(alpha);
    let half = alpha * PI / 2.0;
    let x = big_b * omega.ln();
    let hb = big_b * PI / 2.0;
    let real_term = Complex64::from_polar(a * w_alpha, half);
    let pair = Complex64::from_polar((-hb).exp(), half + x) + Complex64::from_polar(hb.exp(), half - x);
    let e = real_term + pair * (b * w_alpha);
    Ok(if with_unit_term { e + 1.0 } else { e })
}

/// The auxiliary functions `f(ω)` and `g(ω)` with
/// `Re Ê = aω^α cos(απ/2) + 2bω^α f` and `Im Ê = aω^α sin(απ/2) + 2bω^α g`.
pub fn f_g(params: &ModelParams, omega: f64) -> Result<(f64, f64)> {
    check_omega(omega)?;
    let (sa, ca) = (params.alpha * PI / 2.0).sin_cos();
    let hb = params.big_b * PI / 2.0;
    let (sx, cx) = (params.big_b * omega.ln()).sin_cos();
    let f = ca * cx * hb.cosh() + sa * sx * hb.sinh();
    let g = sa * cx * hb.cosh() - ca * sx * hb.sinh();
    Ok((f, g))
}

/// Storage and loss moduli `(Re Ê, Im Ê)` from the `f`/`g` form.
pub fn storage_loss(params: &ModelParams, omega: f64) -> Result<(f64, f64)> {
    let (f, g) = f_g(params, omega)?;
    let (sa, ca) = (params.alpha * PI / 2.0).sin_cos();
    let w_alpha = omega.powf(params.alpha);
    let storage = params.a * w_alpha * ca + 2.0 * params.b * w_alpha * f;
    let loss = params.a * w_alpha * sa + 2.0 * params.b * w_alpha * g;
    Ok((storage, loss))
}

/// Which of the two dissipation inequalities applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThermoBranch {
    /// `α ∈ (0, 1/2]`, bound built from `cot(απ/2)`.
    Cot,
    /// `α ∈ (1/2, 1)`, bound built from `tan(απ/2)`.
    Tan,
}

impl ThermoBranch {
    pub fn for_alpha(alpha: f64) -> Self {
        if alpha <= 0.5 {
            Self::Cot
        } else {
            Self::Tan
        }
    }
}

/// Which form of the no-zeros condition applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongBranch {
    /// `α ∈ [1/4, 3/4] \ {1/2}`, bound built from `tan(απ)`.
    Tan,
    /// `α ∈ (0, 1/4) ∪ {1/2} ∪ (3/4, 1)`, bound built from `cot(απ)`.
    Cot,
}

impl StrongBranch {
    pub fn for_alpha(alpha: f64) -> Self {
        if (0.25..=0.75).contains(&alpha) && alpha != 0.5 {
            Self::Tan
        } else {
            Self::Cot
        }
    }
}

/// `2b cosh(Bπ/2) sqrt(1 + (c · tanh(Bπ/2))²)` with `c = cot(απ/2)` or
/// `tan(απ/2)` depending on `branch`.
pub fn thermo_threshold(params: &ModelParams, branch: ThermoBranch) -> f64 {
    let h = params.big_b * PI / 2.0;
    let angle = params.alpha * PI / 2.0;
    let c = match branch {
        ThermoBranch::Cot => 1.0 / angle.tan(),
        ThermoBranch::Tan => angle.tan(),
    };
    2.0 * params.b * h.cosh() * (c * h.tanh()).hypot(1.0)
}

/// `2b cosh(Bπ) sqrt(1 + (c · tanh(Bπ))²)` with `c = tan(απ)` or `cot(απ)`.
pub fn strong_threshold(params: &ModelParams, branch: StrongBranch) -> f64 {
    let h = params.big_b * PI;
    let angle = params.alpha * PI;
    let c = match branch {
        StrongBranch::Tan => angle.tan(),
        // cot(π/2) is zero; evaluate it as cos/sin so it is exactly 0 there
        StrongBranch::Cot => {
            if params.alpha == 0.5 {
                0.0
            } else {
                angle.cos() / angle.sin()
            }
        }
    };
    2.0 * params.b * h.cosh() * (c * h.tanh()).hypot(1.0)
}

/// Verdicts and thresholds of both admissibility conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub thermo_ok: bool,
    pub strong_ok: bool,
    pub thermo_threshold: f64,
    pub strong_threshold: f64,
    pub thermo_branch: ThermoBranch,
    pub strong_branch: StrongBranch,
}

/// The no-zeros condition alone: verdict, threshold and branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongReport {
    pub strong_ok: bool,
    pub threshold: f64,
    pub branch: StrongBranch,
}

pub fn check_strong(params: &ModelParams) -> StrongReport {
    let branch = StrongBranch::for_alpha(params.alpha);
    let threshold = strong_threshold(params, branch);
    StrongReport {
        strong_ok: params.a >= threshold,
        threshold,
        branch,
    }
}

pub fn check_thermo(params: &ModelParams) -> AdmissibilityReport {
    let thermo_branch = ThermoBranch::for_alpha(params.alpha);
    let thermo_threshold = thermo_threshold(params, thermo_branch);
    let strong = check_strong(params);
    AdmissibilityReport {
        thermo_ok: params.a >= thermo_threshold,
        strong_ok: strong.strong_ok,
        thermo_threshold,
        strong_threshold: strong.threshold,
        thermo_branch,
        strong_branch: strong.branch,
    }
}

/// Grid minima of the storage and loss moduli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityScan {
    pub min_storage: f64,
    pub argmin_storage: f64,
    pub min_loss: f64,
    pub argmin_loss: f64,
}

/// Minimum of `Re Ê` and `Im Ê` over `omega_grid`.
///
/// Intended for log-spaced grids of at least 10³ points spanning eight or
/// more decades (see [`log_space`]).
pub fn positivity_scan(params: &ModelParams, omega_grid: &[f64]) -> Result<PositivityScan> {
    if omega_grid.is_empty() {
        return Err(Error::Domain("empty frequency grid"));
    }
    let mut scan = PositivityScan {
        min_storage: f64::INFINITY,
        argmin_storage: f64::NAN,
        min_loss: f64::INFINITY,
        argmin_loss: f64::NAN,
    };
    for &w in omega_grid {
        let (s, l) = storage_loss(params, w)?;
        if s < scan.min_storage {
            scan.min_storage = s;
            scan.argmin_storage = w;
        }
        if l < scan.min_loss {
            scan.min_loss = l;
            scan.argmin_loss = w;
        }
    }
    Ok(scan)
}

/// `n` points log-uniformly spaced from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || n < 2 {
        return Err(Error::Domain("log grid needs 0 < lo < hi and at least two points"));
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    let step = (l1 - l0) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => (l0 + step * i as f64).exp(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::principal_power;

    fn fig3() -> ModelParams {
        ModelParams::new(0.8, 0.1, 0.4, 0.4).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0.0, 0.1, 0.4, 0.4).is_err());
        assert!(ModelParams::new(0.8, 0.0, 0.4, 0.4).is_err());
        assert!(ModelParams::new(0.8, 0.1, 1.0, 0.4).is_err());
        assert!(ModelParams::new(0.8, 0.1, 0.4, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 0.1, 0.4, 0.4).is_err());
        assert!(ModelParams::degenerate(0.0, 0.0, 0.4, 0.0).is_ok());
        assert!(ModelParams::degenerate(-1.0, 0.0, 0.4, 0.0).is_err());
        assert_eq!(fig3().beta(), Complex64::new(0.4, 0.4));
    }

    #[test]
    fn modulus_at_unit_frequency() {
        let p = fig3();
        let e = complex_modulus(&p, 1.0, false).unwrap();
        let expected = Complex64::from_polar(0.8 + 0.2 * (0.2 * PI).cosh(), 0.2 * PI);
        assert!((e - expected).norm() < 1e-14);
        // frozen value
        assert!((e - Complex64::new(0.842_020_371_705_504_55, 0.611_763_609_490_930_93)).norm() < 1e-14);
        assert!(complex_modulus(&p, 0.0, false).is_err());
        assert!(complex_modulus(&p, -1.0, true).is_err());
    }

    #[test]
    fn modulus_is_psi_on_imaginary_axis() {
        let p = fig3();
        for omega in [1e-3, 0.37, 1.0, 12.5, 900.0] {
            let s = Complex64::new(0.0, omega);
            let psi = principal_power(s, Complex64::new(p.alpha(), 0.0)).unwrap() * p.a()
                + (principal_power(s, p.beta()).unwrap() + principal_power(s, p.beta().conj()).unwrap()) * p.b()
                + 1.0;
            let e1 = complex_modulus(&p, omega, true).unwrap();
            assert!((psi - e1).norm() <= 1e-12 * psi.norm());
            let e = complex_modulus(&p, omega, false).unwrap();
            assert!(((e1 - e) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn storage_loss_matches_modulus() {
        let p = fig3();
        for omega in [0.1, 1.0, 10.0] {
            let e = complex_modulus(&p, omega, false).unwrap();
            let (s, l) = storage_loss(&p, omega).unwrap();
            assert!((s - e.re).abs() < 1e-12 && (l - e.im).abs() < 1e-12);
        }
        let (f, g) = f_g(&p, 1.0).unwrap();
        let hb = (0.2 * PI).cosh();
        assert!((f - (0.2 * PI).cos() * hb).abs() < 1e-15);
        assert!((g - (0.2 * PI).sin() * hb).abs() < 1e-15);
    }

    #[test]
    fn thresholds_for_reference_parameters() {
        let r = check_thermo(&fig3());
        assert!(r.thermo_ok);
        assert_eq!(r.thermo_branch, ThermoBranch::Cot);
        assert!((r.thermo_threshold - 0.303_393_226_488_151_55).abs() < 1e-14);
        assert_eq!(r.strong_branch, StrongBranch::Tan);
        assert!((r.strong_threshold - 1.063_886_695_386_445).abs() < 1e-12);
        assert!(!r.strong_ok);
        let bad = check_thermo(&ModelParams::new(0.1, 0.1, 0.4, 0.4).unwrap());
        assert!(!bad.thermo_ok);
    }

    #[test]
    fn vanishing_b_is_admissible() {
        let p = ModelParams::new(0.5, 1e-300, 0.4, 0.4).unwrap();
        let r = check_thermo(&p);
        assert!(r.thermo_ok && r.strong_ok);
        let p0 = ModelParams::degenerate(0.5, 0.0, 0.4, 0.4).unwrap();
        assert_eq!(check_thermo(&p0).thermo_threshold, 0.0);
    }

    #[test]
    fn half_order_branches() {
        let p = ModelParams::new(1.0, 0.1, 0.5, 0.7).unwrap();
        let cot = thermo_threshold(&p, ThermoBranch::Cot);
        let tan = thermo_threshold(&p, ThermoBranch::Tan);
        assert!((cot - tan).abs() < 1e-12);
        let s = check_strong(&p);
        assert_eq!(s.branch, StrongBranch::Cot);
        assert!((s.threshold - 0.2 * (0.7 * PI).cosh()).abs() < 1e-14);
    }

    #[test]
    fn mirror_symmetry_and_monotonicity() {
        for &alpha in &[0.1, 0.3, 0.45] {
            let p = ModelParams::new(1.0, 0.1, alpha, 0.6).unwrap();
            let q = ModelParams::new(1.0, 0.1, 1.0 - alpha, 0.6).unwrap();
            let lhs = thermo_threshold(&p, ThermoBranch::Cot);
            let rhs = thermo_threshold(&q, ThermoBranch::Tan);
            assert!((lhs - rhs).abs() < 1e-12 * lhs);
        }
        let mut last = 0.0;
        for i in 1..50 {
            let p = ModelParams::new(1.0, 0.1, 0.3, 0.05 * i as f64).unwrap();
            let t = check_thermo(&p).thermo_threshold;
            assert!(t > last);
            last = t;
        }
    }

    #[test]
    fn scan_on_admissible_and_inadmissible_laws() {
        let grid = log_space(1e-4, 1e4, 1000).unwrap();
        let s = positivity_scan(&fig3(), &grid).unwrap();
        assert!(s.min_storage >= -1e-10 && s.min_loss >= -1e-10);
        let pure_pair = ModelParams::degenerate(0.0, 0.1, 0.4, 0.4).unwrap();
        assert!(positivity_scan(&pure_pair, &grid).unwrap().min_loss < 0.0);
        let pure_real = ModelParams::degenerate(0.8, 0.0, 0.4, 0.4).unwrap();
        let r = positivity_scan(&pure_real, &grid).unwrap();
        assert!((r.min_storage - 0.8 * 1e-4f64.powf(0.4) * (0.2 * PI).cos()).abs() < 1e-15);
        assert!(positivity_scan(&fig3(), &[]).is_err());
        assert!(positivity_scan(&fig3(), &[-1.0]).is_err());
    }

    #[test]
    fn log_space_endpoints() {
        let g = log_space(1e-4, 1e4, 9).unwrap();
        assert_eq!(g[0], 1e-4);
        assert_eq!(g[8], 1e4);
        assert!((g[4] - 1.0).abs() < 1e-14);
        assert!(log_space(0.0, 1.0, 10).is_err());
        assert!(log_space(1.0, 2.0, 1).is_err());
    }
}
