//! The creep kernel `K = L⁻¹[1/ψ]` and the strain `ε = K ∗ σ`.
//!
//! Collapsing the Bromwich contour onto the cut gives `K = K_I + K_R` with
//!
//! ```text
//! K_I(t) = ∫_0^∞ G(q) e^{-qt} dq,   G(q) = Im(1/ψ(q e^{-iπ})) / π,
//! K_R(t) = Σ_z 2 Re(e^{zt} / ψ'(z)),
//! ```
//!
//! the sum running over the upper-half-plane zeros of `ψ`. The strain needs
//! the running integrals `Φ(t) = ∫_0^t K` and `Φ₁(t) = ∫_0^t Φ`, which are
//! evaluated in closed form against the same density.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::zeros::ZeroSet;
use super::{psi_polar, psi_scale};
use crate::error::{Error, Result};
use crate::experiments::SampledSignal;
use crate::numerics::adaptive_quad;
use crate::thermo::ModelParams;

/// The spectral density `G(q) = Im(1/ψ(q e^{-iπ})) / π` of `K_I`.
///
/// Returns 0 where `ψ` overflows; `G` decays like `q^{-α}` there.
pub fn kernel_density(params: &ModelParams, q: f64) -> f64 {
    let psi = psi_polar(params, q, -PI);
    if !(psi.re.is_finite() && psi.im.is_finite()) {
        return 0.0;
    }
    (1.0 / psi).im / PI
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("kernel time must be positive and finite"))
    }
}

/// `∫_0^∞ G(q) w(q) dq`, integrated in `x = ln q` and split where `qt = 1`.
fn integrate_density<W: Fn(f64) -> f64>(params: &ModelParams, t: f64, tol: f64, weight: W) -> Result<f64> {
    let c = -t.ln();
    let f = |x: f64| {
        let q = x.exp();
        // G(q) q vanishes at both ends faster than any weight grows
        if q == 0.0 || !q.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(kernel_density(params, q) * weight(q) * q, 0.0)
    };
    let left = adaptive_quad(f, f64::NEG_INFINITY, c, tol)?;
    let right = adaptive_quad(f, c, f64::INFINITY, tol)?;
    let v = (left + right).re;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("kernel integral"))
    }
}

/// `K_I(t)` to quadrature tolerance `tol`.
pub fn kernel_ki(params: &ModelParams, t: f64, tol: f64) -> Result<f64> {
    check_time(t)?;
    integrate_density(params, t, tol, |q| (-q * t).exp())
}

/// `K_I(t)` from the two sides of the cut,
/// `(1/2πi) ∫_0^∞ [1/ψ(q e^{-iπ}) - 1/ψ(q e^{iπ})] e^{-qt} dq`, without
/// discarding the imaginary part.
pub fn kernel_ki_two_term(params: &ModelParams, t: f64, tol: f64) -> Result<Complex64> {
    check_time(t)?;
    let c = -t.ln();
    let f = |x: f64| {
        let q = x.exp();
        let jump = 1.0 / psi_polar(params, q, -PI) - 1.0 / psi_polar(params, q, PI);
        jump / Complex64::new(0.0, 2.0 * PI) * ((-q * t).exp() * q)
    };
    Ok(adaptive_quad(f, f64::NEG_INFINITY, c, tol)? + adaptive_quad(f, c, f64::INFINITY, tol)?)
}

/// `K`, `Φ = ∫_0^t K` and `Φ₁ = ∫_0^t Φ` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelIntegrals {
    pub k: f64,
    pub phi: f64,
    pub phi1: f64,
}

/// Cut contributions to `K`, `Φ`, `Φ₁` at time `t`.
pub fn kernel_ki_integrals(params: &ModelParams, t: f64, tol: f64) -> Result<KernelIntegrals> {
    check_time(t)?;
    let k = kernel_ki(params, t, tol)?;
    let phi = integrate_density(params, t, tol, |q| -(-q * t).exp_m1() / q)?;
    let phi1 = integrate_density(params, t, tol, |q| {
        let u = q * t;
        // (u - 1 + e^{-u}) / q², with the cancellation removed for small u
        if u < 1e-3 {
            t * t * (0.5 - u / 6.0 + u * u / 24.0)
        } else {
            t / q * (1.0 + (-u).exp_m1() / u)
        }
    })?;
    Ok(KernelIntegrals { k, phi, phi1 })
}

/// `Σ 2 Re(e^{z t} / d)` over pairs `(z, d)`; with `d = ψ'(z)` this is the
/// residue part of `K`.
pub fn residue_sum(t: f64, zeros: &[Complex64], derivatives: &[Complex64]) -> f64 {
    zeros
        .iter()
        .zip(derivatives)
        .map(|(z, d)| 2.0 * ((z * t).exp() / d).re)
        .sum()
}

fn check_simple(params: &ModelParams, zeros: &ZeroSet) -> Result<()> {
    for (z, d) in zeros.zeros.iter().zip(&zeros.psi_prime_at_zeros) {
        let m = (z * d).norm();
        if m <= 1e-8 * psi_scale(params, z.norm()) {
            return Err(Error::DegenerateZero {
                re: z.re,
                im: z.im,
                derivative: m,
            });
        }
    }
    Ok(())
}

/// `K_R(t) = Σ 2 Re(e^{z t}/ψ'(z))`.
pub fn kernel_kr(params: &ModelParams, t: f64, zeros: &ZeroSet) -> Result<f64> {
    check_simple(params, zeros)?;
    Ok(residue_sum(t, &zeros.zeros, &zeros.psi_prime_at_zeros))
}

/// Residue contributions to `K`, `Φ`, `Φ₁` at time `t ≥ 0`.
pub fn residue_integrals(params: &ModelParams, t: f64, zeros: &ZeroSet) -> Result<KernelIntegrals> {
    check_simple(params, zeros)?;
    let mut out = KernelIntegrals {
        k: 0.0,
        phi: 0.0,
        phi1: 0.0,
    };
    for (z, d) in zeros.zeros.iter().zip(&zeros.psi_prime_at_zeros) {
        let u = z * t;
        let e = u.exp();
        let (m1, m2) = if u.norm() < 1e-3 {
            // (e^u - 1)/u and (e^u - 1 - u)/u²
            let one = Complex64::new(1.0, 0.0);
            (one + u / 2.0 + u * u / 6.0, one / 2.0 + u / 6.0 + u * u / 24.0)
        } else {
            ((e - 1.0) / u, (e - 1.0 - u) / (u * u))
        };
        out.k += 2.0 * (e / d).re;
        out.phi += 2.0 * (m1 * t / d).re;
        out.phi1 += 2.0 * (m2 * t * t / d).re;
    }
    Ok(out)
}

/// `K`, `Φ`, `Φ₁` on the uniform grid `t_i = i·dt`, `i = 0..=steps`.
///
/// `K` is unbounded at `t = 0`; its entry there holds `K(dt/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    dt: f64,
    k_values: Vec<f64>,
    cumulative: Vec<f64>,
    cumulative1: Vec<f64>,
    includes_residue_part: bool,
}

impl KernelTable {
    /// Tabulates the kernel. Pass the zeros from
    /// [`residue_zeros`](super::residue_zeros) to include `K_R`; `None`
    /// tabulates `K_I` alone.
    pub fn build(params: &ModelParams, t_max: f64, steps: usize, tol: f64, zeros: Option<&ZeroSet>) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) || steps < 1 {
            return Err(Error::InvalidParameter {
                name: "t_max",
                value: t_max,
                reason: "kernel grid needs t_max > 0 and at least one step",
            });
        }
        let dt = t_max / steps as f64;
        let mut k_values = Vec::with_capacity(steps + 1);
        let mut cumulative = Vec::with_capacity(steps + 1);
        let mut cumulative1 = Vec::with_capacity(steps + 1);
        for i in 0..=steps {
            let t = i as f64 * dt;
            let (kt, mut v) = if i == 0 {
                (0.5 * dt, KernelIntegrals { k: 0.0, phi: 0.0, phi1: 0.0 })
            } else {
                (t, kernel_ki_integrals(params, t, tol)?)
            };
            v.k = kernel_ki(params, kt, tol)?;
            if let Some(z) = zeros {
                let r = residue_integrals(params, t, z)?;
                v.phi += r.phi;
                v.phi1 += r.phi1;
                v.k += kernel_kr(params, kt, z)?;
            }
            k_values.push(v.k);
            cumulative.push(v.phi);
            cumulative1.push(v.phi1);
        }
        Ok(Self {
            dt,
            k_values,
            cumulative,
            cumulative1,
            includes_residue_part: zeros.is_some_and(|z| !z.is_empty()),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.k_values.len() - 1
    }

    pub fn t_grid(&self) -> Vec<f64> {
        (0..self.k_values.len()).map(|i| i as f64 * self.dt).collect()
    }

    pub fn k_values(&self) -> &[f64] {
        &self.k_values
    }

    /// `Φ(t_i) = ∫_0^{t_i} K`.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// `Φ₁(t_i) = ∫_0^{t_i} Φ`.
    pub fn cumulative1(&self) -> &[f64] {
        &self.cumulative1
    }

    pub fn includes_residue_part(&self) -> bool {
        self.includes_residue_part
    }
}

/// `ε(t_n) = ∫_0^{t_n} K(t_n - τ) σ(τ) dτ` on the kernel's grid.
///
/// `σ` is taken piecewise linear between samples and integrated exactly
/// against `K` through `Φ` and `Φ₁`, so the weakly singular kernel needs no
/// special end cell: on lag cell `[t_j, t_{j+1}]` the weights are
/// `ΔΦ_j - M_j` and `M_j` with `M_j = Φ_{j+1} - (Φ₁_{j+1} - Φ₁_j)/dt`.
pub fn solve_strain(sigma: &SampledSignal, kernel: &KernelTable) -> Result<SampledSignal> {
    if sigma.len() != kernel.k_values.len() || (sigma.dt() - kernel.dt).abs() > 1e-12 * kernel.dt {
        return Err(Error::GridMismatch("stress and kernel grids differ"));
    }
    let n = sigma.len();
    let s = sigma.values();
    let phi = &kernel.cumulative;
    let phi1 = &kernel.cumulative1;
    let h = kernel.dt;
    let (w_near, w_far): (Vec<f64>, Vec<f64>) = (0..n - 1)
        .map(|j| {
            let d = phi[j + 1] - phi[j];
            let m = phi[j + 1] - (phi1[j + 1] - phi1[j]) / h;
            (d - m, m)
        })
        .unzip();
    let mut eps = Vec::with_capacity(n);
    eps.push(0.0);
    for i in 1..n {
        let mut acc = 0.0;
        for j in 0..i {
            acc += w_near[j] * s[i - j] + w_far[j] * s[i - j - 1];
        }
        eps.push(acc);
    }
    SampledSignal::new(h, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::{find_zeros, residue_zeros, SearchRegion};
    use crate::numerics::complex_gamma;

    fn fig3() -> ModelParams {
        ModelParams::new(0.8, 0.1, 0.4, 0.4).unwrap()
    }

    // K for 1/(1 + a s^α): t^{α-1}/a · E_{α,α}(-t^α/a)
    fn mittag_leffler_kernel(a: f64, alpha: f64, t: f64) -> f64 {
        let z = -t.powf(alpha) / a;
        let mut sum = 0.0;
        let mut zk = 1.0;
        for k in 0..400 {
            let g = complex_gamma(Complex64::new(alpha * k as f64 + alpha, 0.0)).unwrap().re;
            let term = zk / g;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() && k > 10 {
                break;
            }
            zk *= z;
        }
        t.powf(alpha - 1.0) / a * sum
    }

    #[test]
    fn frozen_kernel_values() {
        let p = fig3();
        for (t, v) in [(0.1, 0.770_238_945_972_373_79), (1.0, 0.110_173_226_028_149_61), (10.0, 0.008_929_693_228_397_941_1)] {
            let k = kernel_ki(&p, t, 1e-12).unwrap();
            assert!((k - v).abs() < 1e-9 * v, "t={t}: {k}");
        }
        assert!(kernel_ki(&p, 0.0, 1e-8).is_err());
    }

    #[test]
    fn frozen_cumulative_values() {
        let p = fig3();
        for (t, phi, phi1) in [
            (1.0, 0.551_984_731_169_224_08, 0.454_431_642_805_690_71),
            (10.0, 0.795_723_527_287_223_32, 6.945_100_219_579_019_6),
            (100.0, 0.934_588_553_293_715_5, 87.918_790_067_704_234),
        ] {
            let v = kernel_ki_integrals(&p, t, 1e-12).unwrap();
            assert!((v.phi - phi).abs() < 1e-9, "t={t}: {}", v.phi);
            assert!((v.phi1 - phi1).abs() < 1e-9 * phi1, "t={t}: {}", v.phi1);
        }
    }

    #[test]
    fn two_term_form_is_real() {
        let p = fig3();
        for t in [0.05, 1.0, 30.0] {
            let two = kernel_ki_two_term(&p, t, 1e-12).unwrap();
            let k = kernel_ki(&p, t, 1e-12).unwrap();
            assert!((two.re - k).abs() <= 1e-10 * k.abs());
            assert!(two.im.abs() <= 1e-10 * k.abs());
        }
    }

    #[test]
    fn real_order_kernel_matches_mittag_leffler() {
        let p = ModelParams::degenerate(0.8, 0.0, 0.4, 0.0).unwrap();
        for t in [0.2, 1.0, 3.0] {
            let k = kernel_ki(&p, t, 1e-12).unwrap();
            let e = mittag_leffler_kernel(0.8, 0.4, t);
            assert!((k - e).abs() < 1e-9 * e, "t={t}: {k} vs {e}");
        }
    }

    #[test]
    fn residue_sum_of_a_simple_pole() {
        let s0 = Complex64::new(-1.0, 2.0);
        let t = 0.7;
        let v = residue_sum(t, &[s0], &[Complex64::new(1.0, 0.0)]);
        assert!((v - 2.0 * (s0 * t).exp().re).abs() < 1e-15);
        assert_eq!(residue_sum(t, &[], &[]), 0.0);
    }

    #[test]
    fn residue_part_single_pair_and_empty() {
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.7).unwrap();
        assert_eq!(kernel_kr(&p, 1.0, &ZeroSet::empty()).unwrap(), 0.0);
        let z = find_zeros(&p, &SearchRegion::default()).unwrap();
        let k = kernel_kr(&p, 0.01, &z).unwrap();
        assert!(k.is_finite() && k != 0.0);
        let bad = ZeroSet {
            zeros: alloc::vec![Complex64::new(-1.0, 1.0)],
            psi_prime_at_zeros: alloc::vec![Complex64::new(1e-12, 0.0)],
        };
        assert!(matches!(kernel_kr(&p, 1.0, &bad), Err(Error::DegenerateZero { .. })));
    }

    #[test]
    fn residue_integrals_are_consistent() {
        // Φ' = K and Φ₁' = Φ along the residue part
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.99).unwrap();
        let z = residue_zeros(&p, 1e-10).unwrap();
        let t = 0.03;
        let h = 1e-6;
        let a = residue_integrals(&p, t - h, &z).unwrap();
        let b = residue_integrals(&p, t + h, &z).unwrap();
        let c = residue_integrals(&p, t, &z).unwrap();
        assert!(((b.phi - a.phi) / (2.0 * h) - c.k).abs() < 1e-6 * (1.0 + c.k.abs()));
        assert!(((b.phi1 - a.phi1) / (2.0 * h) - c.phi).abs() < 1e-6);
        let zero = residue_integrals(&p, 0.0, &z).unwrap();
        assert_eq!((zero.phi, zero.phi1), (0.0, 0.0));
    }

    #[test]
    fn total_compliance_is_one_with_residues() {
        // Φ(∞) = 1/ψ(0) = 1: the cut part alone falls short when zeros exist
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.99).unwrap();
        let z = residue_zeros(&p, 1e-12).unwrap();
        let t = 1e6;
        let cut = kernel_ki_integrals(&p, t, 1e-10).unwrap().phi;
        let res = residue_integrals(&p, t, &z).unwrap().phi;
        assert!(cut < 0.99);
        assert!((cut + res - 1.0).abs() < 2e-3, "{cut} + {res}");
    }

    #[test]
    fn strain_from_step_and_zero_stress() {
        let p = fig3();
        let table = KernelTable::build(&p, 2.0, 20, 1e-10, None).unwrap();
        assert_eq!(table.steps(), 20);
        assert!(!table.includes_residue_part());
        let step = SampledSignal::new(0.1, alloc::vec![1.0; 21]).unwrap();
        let eps = solve_strain(&step, &table).unwrap();
        for (e, phi) in eps.values().iter().zip(table.cumulative()) {
            assert!((e - phi).abs() < 1e-14);
        }
        let zero = SampledSignal::new(0.1, alloc::vec![0.0; 21]).unwrap();
        assert!(solve_strain(&zero, &table).unwrap().values().iter().all(|v| *v == 0.0));
        let short = SampledSignal::new(0.1, alloc::vec![0.0; 20]).unwrap();
        assert!(solve_strain(&short, &table).is_err());
    }

    #[test]
    fn strain_from_ramp_matches_double_integral() {
        // σ = t gives ε = Φ₁ exactly for piecewise-linear σ
        let p = fig3();
        let table = KernelTable::build(&p, 1.0, 10, 1e-11, None).unwrap();
        let ramp = SampledSignal::from_fn(1.0, 10, |t| t).unwrap();
        let eps = solve_strain(&ramp, &table).unwrap();
        for (e, phi1) in eps.values().iter().zip(table.cumulative1()) {
            assert!((e - phi1).abs() < 1e-12, "{e} vs {phi1}");
        }
    }
}
