//! Zeros of `ψ` in the upper-left quadrant.
//!
//! For large `|s|` the zero condition reduces to
//! `a + 2b cosh(Bφ - i B ln r) ≈ 0`, which has the solutions
//! `B ln r = (2k+1)π`, `cosh(Bφ) = a/(2b)`. So when `cosh(Bπ) > a/(2b)` the
//! quadrant holds an infinite sequence of zeros with `r_k ≈ e^{(2k+1)π/B}`
//! along the ray `φ* = arccosh(a/(2b))/B`, and none otherwise beyond a
//! computable radius. Searches run in `w = ln s`, where the powers are
//! entire.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::contour::{count_zeros, ContourSpec, HalfPlane, MIN_CONTOUR_SAMPLES};
use super::{psi_log, psi_log_prime, psi_scale};
use crate::error::{Error, Result};
use crate::thermo::ModelParams;

/// Annulus `r_min ≤ |s| ≤ r_max` in the quadrant `Re s < 0 < Im s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for SearchRegion {
    fn default() -> Self {
        Self { r_min: 1e-3, r_max: 1e3 }
    }
}

/// Located zeros (upper-half-plane representatives; conjugates implied).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroSet {
    pub zeros: Vec<Complex64>,
    pub psi_prime_at_zeros: Vec<Complex64>,
}

impl ZeroSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// A radius below which `ψ` has no zeros: there `|ψ - 1| ≤ 1/2`.
pub fn zero_free_radius(params: &ModelParams) -> f64 {
    let bound = params.a() + 2.0 * params.b() * (params.big_b() * PI).exp();
    (0.5 / bound).powf(1.0 / params.alpha())
}

/// The limiting angle `φ* = arccosh(a/(2b))/B` of the large-`|s|` zeros, if
/// it lies in the quadrant.
pub fn asymptotic_zero_angle(params: &ModelParams) -> Option<f64> {
    if params.b() == 0.0 || params.big_b() == 0.0 {
        return None;
    }
    let ratio = params.a() / (2.0 * params.b());
    if ratio < 1.0 {
        return None;
    }
    let phi = ratio.acosh() / params.big_b();
    (phi > FRAC_PI_2 && phi < PI).then_some(phi)
}

/// A radius above which `ψ` has no zeros in the quadrant, when the
/// asymptotic family is absent.
fn zero_free_outer_radius(params: &ModelParams) -> Option<f64> {
    let margin = params.a() - 2.0 * params.b() * (params.big_b() * PI).cosh();
    (margin > 0.0).then(|| (2.0 / margin).powf(1.0 / params.alpha()))
}

fn newton(params: &ModelParams, mut w: Complex64) -> Option<Complex64> {
    for _ in 0..100 {
        let g = psi_log(params, w);
        let d = psi_log_prime(params, w);
        if d.norm() == 0.0 || !(g.re.is_finite() && g.im.is_finite()) {
            return None;
        }
        let mut step = g / d;
        if step.norm() > 1.0 {
            step = step / step.norm();
        }
        w -= step;
        if !(w.re.is_finite() && w.im.is_finite()) || w.im.abs() > 4.0 * PI {
            return None;
        }
        if step.norm() <= 1e-14 * (1.0 + w.norm()) {
            return Some(w);
        }
    }
    let g = psi_log(params, w);
    (g.norm() <= 1e-12 * psi_scale(params, w.re.exp())).then_some(w)
}

fn accept(params: &ModelParams, w: Complex64, region: &SearchRegion) -> bool {
    let r = w.re.exp();
    w.im > FRAC_PI_2
        && w.im <= PI
        && r >= region.r_min
        && r <= region.r_max
        && psi_log(params, w).norm() <= 1e-10 * psi_scale(params, r)
}

fn insert_distinct(found: &mut Vec<Complex64>, w: Complex64) {
    if found.iter().all(|v| (v - w).norm() > 1e-8 * (1.0 + w.norm())) {
        found.push(w);
    }
}

fn asymptotic_seeds(params: &ModelParams, region: &SearchRegion) -> Vec<Complex64> {
    let Some(phi) = asymptotic_zero_angle(params) else {
        return Vec::new();
    };
    let bb = params.big_b();
    let k_lo = ((region.r_min.ln() * bb / PI - 1.0) / 2.0).floor().max(0.0) as i64;
    let k_hi = ((region.r_max.ln() * bb / PI - 1.0) / 2.0).ceil() as i64;
    (k_lo..=k_hi)
        .map(|k| Complex64::new((2 * k + 1) as f64 * PI / bb, phi))
        .collect()
}

/// Zeros of `ψ` in the annulus, located by Newton's method from a seed grid
/// and checked against the winding number of the annulus boundary.
///
/// Each zero must be simple: `|s ψ'(s)| > 1e-8 (1 + |s|^α (a + 2b))`.
pub fn find_zeros(params: &ModelParams, region: &SearchRegion) -> Result<ZeroSet> {
    let contour = ContourSpec::new(region.r_min, region.r_max, HalfPlane::LeftUpper, MIN_CONTOUR_SAMPLES)?;
    let expected = count_zeros(params, &contour)?;
    if expected < 0 {
        return Err(Error::ZeroCountMismatch { expected, found: 0 });
    }
    if expected == 0 {
        return Ok(ZeroSet::empty());
    }
    let (l0, l1) = (region.r_min.ln(), region.r_max.ln());
    let mut found = Vec::new();
    for w in asymptotic_seeds(params, region) {
        if let Some(z) = newton(params, w).filter(|z| accept(params, *z, region)) {
            insert_distinct(&mut found, z);
        }
    }
    let mut n_r = ((l1 - l0) * 4.0).ceil().max(40.0) as usize;
    let mut n_phi = 8usize;
    for _ in 0..4 {
        if found.len() as i64 >= expected {
            break;
        }
        for i in 0..n_r {
            for j in 0..n_phi {
                let x = l0 + (l1 - l0) * (i as f64 + 0.5) / n_r as f64;
                let phi = FRAC_PI_2 + FRAC_PI_2 * (j as f64 + 0.5) / n_phi as f64;
                if let Some(z) = newton(params, Complex64::new(x, phi)).filter(|z| accept(params, *z, region)) {
                    insert_distinct(&mut found, z);
                }
            }
            if found.len() as i64 >= expected {
                break;
            }
        }
        n_r *= 2;
        n_phi *= 2;
    }
    if found.len() as i64 != expected {
        return Err(Error::ZeroCountMismatch {
            expected,
            found: found.len(),
        });
    }
    found.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut set = ZeroSet::empty();
    for w in found {
        let s = w.exp();
        let d = psi_log_prime(params, w);
        if d.norm() <= 1e-8 * psi_scale(params, s.norm()) {
            return Err(Error::DegenerateZero {
                re: s.re,
                im: s.im,
                derivative: d.norm(),
            });
        }
        set.zeros.push(s);
        set.psi_prime_at_zeros.push(d / s);
    }
    Ok(set)
}

/// All zeros whose residues matter for the creep kernel at tolerance `tol`.
///
/// Without the asymptotic family this is every zero of `ψ`. With it, the
/// sequence is cut after the first zero whose compliance weight
/// `|1/(z ψ'(z))|` (which decays like `|z|^{-α}`) drops below `tol/100`.
pub fn residue_zeros(params: &ModelParams, tol: f64) -> Result<ZeroSet> {
    if params.b() == 0.0 {
        return Ok(ZeroSet::empty());
    }
    let r_min = zero_free_radius(params).min(1e-3);
    let r_max = match (asymptotic_zero_angle(params), zero_free_outer_radius(params)) {
        (_, Some(r)) => r.max(1e3),
        (Some(phi), None) => {
            let bb = params.big_b();
            let mut k = 0i64;
            loop {
                let seed = Complex64::new((2 * k + 1) as f64 * PI / bb, phi);
                let weight = newton(params, seed).map(|w| 1.0 / psi_log_prime(params, w).norm());
                if weight.is_some_and(|m| m < 1e-2 * tol) || k >= 400 {
                    break;
                }
                k += 1;
            }
            ((2 * k + 2) as f64 * PI / bb).exp().max(1e3)
        }
        // only reachable outside the admissible region
        (None, None) => 1e3,
    };
    find_zeros(params, &SearchRegion { r_min, r_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::{psi, psi_prime};

    #[test]
    fn reference_parameters_have_no_zeros() {
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.4).unwrap();
        assert!(find_zeros(&p, &SearchRegion::default()).unwrap().is_empty());
        assert!(residue_zeros(&p, 1e-10).unwrap().is_empty());
        assert_eq!(asymptotic_zero_angle(&p), None);
    }

    #[test]
    fn single_zero_in_default_annulus() {
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.7).unwrap();
        let set = find_zeros(&p, &SearchRegion::default()).unwrap();
        assert_eq!(set.len(), 1);
        let z = set.zeros[0];
        // frozen reference
        assert!((z - Complex64::new(-112.950_039_910_749_75, 9.194_041_271_320_777_7)).norm() < 1e-9 * z.norm());
        let d = set.psi_prime_at_zeros[0];
        assert!((d - Complex64::new(0.034_692_766_144_307_3, -0.014_376_846_649_698_7)).norm() < 1e-10);
        assert!(psi(&p, z).unwrap().norm() <= 1e-10 * psi_scale(&p, z.norm()));
        assert!((psi_prime(&p, z).unwrap() - d).norm() < 1e-14);
    }

    #[test]
    fn zero_for_near_maximal_b() {
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.99).unwrap();
        let set = find_zeros(&p, &SearchRegion::default()).unwrap();
        assert_eq!(set.len(), 1);
        let z = set.zeros[0];
        assert!((z - Complex64::new(-19.640_973_182_365_958, 22.256_469_595_913_961)).norm() < 1e-9 * z.norm());
    }

    #[test]
    fn residue_set_follows_the_asymptotic_ray() {
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.99).unwrap();
        let phi = asymptotic_zero_angle(&p).unwrap();
        assert!((phi - 4f64.acosh() / 0.99).abs() < 1e-15);
        let set = residue_zeros(&p, 1e-10).unwrap();
        assert!(set.len() >= 8, "{}", set.len());
        let far = set.zeros[set.len() - 1];
        assert!((far.arg() - phi).abs() < 1e-3);
        for (z, d) in set.zeros.iter().zip(&set.psi_prime_at_zeros) {
            assert!(z.re < 0.0 && z.im > 0.0);
            assert!(psi(&p, *z).unwrap().norm() <= 1e-10 * psi_scale(&p, z.norm()));
            assert!((z * d).norm() > 1e-8 * psi_scale(&p, z.norm()));
        }
    }

    #[test]
    fn inner_radius_is_zero_free() {
        let p = ModelParams::new(0.8, 0.1, 0.4, 0.99).unwrap();
        let r = zero_free_radius(&p);
        for k in 0..64 {
            let phi = PI * k as f64 / 32.0 - PI;
            assert!((super::super::psi_polar(&p, r, phi) - 1.0).norm() <= 0.5 + 1e-12);
        }
    }
}
