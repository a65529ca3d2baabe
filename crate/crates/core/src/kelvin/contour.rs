//! Argument-principle zero counting on sector contours.

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{psi_polar, psi_scale};
use crate::error::{Error, Result};
use crate::thermo::ModelParams;

/// Sector bounded by the arcs `|s| = r_inner`, `|s| = r_outer` and two rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    /// `arg s ∈ [-π/2, π/2]`.
    Right,
    /// `arg s ∈ [π/2, π]`, the ray `arg s = π` taken on the upper side of
    /// the cut.
    LeftUpper,
}

impl HalfPlane {
    fn angles(self) -> (f64, f64) {
        match self {
            Self::Right => (-FRAC_PI_2, FRAC_PI_2),
            Self::LeftUpper => (FRAC_PI_2, PI),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub r_inner: f64,
    pub r_outer: f64,
    pub half: HalfPlane,
    /// Initial number of samples around the whole contour.
    pub samples: usize,
}

pub const MIN_CONTOUR_SAMPLES: usize = 1000;

impl ContourSpec {
    pub fn new(r_inner: f64, r_outer: f64, half: HalfPlane, samples: usize) -> Result<Self> {
        if !(r_inner > 0.0 && r_outer > r_inner && r_outer.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "r_inner",
                value: r_inner,
                reason: "contour radii must satisfy 0 < r_inner < r_outer < ∞",
            });
        }
        if samples < MIN_CONTOUR_SAMPLES {
            return Err(Error::InvalidParameter {
                name: "samples",
                value: samples as f64,
                reason: "contour needs at least 1000 samples",
            });
        }
        Ok(Self {
            r_inner,
            r_outer,
            half,
            samples,
        })
    }

    pub fn right(r_inner: f64, r_outer: f64) -> Result<Self> {
        Self::new(r_inner, r_outer, HalfPlane::Right, MIN_CONTOUR_SAMPLES)
    }

    pub fn left_upper(r_inner: f64, r_outer: f64) -> Result<Self> {
        Self::new(r_inner, r_outer, HalfPlane::LeftUpper, MIN_CONTOUR_SAMPLES)
    }

    /// Point `(r, φ)` at parameter `u ∈ [0, 1]` along piece `k` of the
    /// positively oriented boundary.
    fn point(&self, piece: usize, u: f64) -> (f64, f64) {
        let (lo, hi) = self.half.angles();
        let (li, lo_r) = (self.r_inner.ln(), self.r_outer.ln());
        match piece {
            0 => (self.r_outer, lo + u * (hi - lo)),
            1 => ((lo_r + u * (li - lo_r)).exp(), hi),
            2 => (self.r_inner, hi - u * (hi - lo)),
            _ => ((li + u * (lo_r - li)).exp(), lo),
        }
    }
}

const MAX_DEPTH: u32 = 48;

/// Winding number of `f(r, φ)` around the boundary of the sector described
/// by `contour`, counted counterclockwise.
///
/// Phase increments are accumulated between samples and any step of at least
/// `π/2` is bisected until it is smaller. A sample with `|f| ≤ 1e-13 (1 + r)`
/// counts as a zero on the contour.
pub fn winding_number<F>(f: F, contour: &ContourSpec) -> Result<i64>
where
    F: FnMut(f64, f64) -> Complex64,
{
    winding_number_scaled(f, |r| 1.0 + r, contour)
}

/// [`winding_number`] with the zero-on-contour test `|f| ≤ 1e-13 scale(r)`.
pub(crate) fn winding_number_scaled<F, S>(mut f: F, scale: S, contour: &ContourSpec) -> Result<i64>
where
    F: FnMut(f64, f64) -> Complex64,
    S: Fn(f64) -> f64,
{
    let per_piece = contour.samples.div_ceil(4);
    let mut eval = |piece: usize, u: f64| {
        let (r, phi) = contour.point(piece, u);
        let v = f(r, phi);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite("winding-number integrand"));
        }
        if v.norm() <= 1e-13 * scale(r) {
            return Err(Error::ZeroOnContour {
                magnitude: v.norm(),
                attempts: 0,
            });
        }
        Ok(v)
    };
    let mut total = 0.0;
    for piece in 0..4 {
        let mut prev = eval(piece, 0.0)?;
        for i in 1..=per_piece {
            let u0 = (i - 1) as f64 / per_piece as f64;
            let u1 = i as f64 / per_piece as f64;
            let next = eval(piece, u1)?;
            total += refine(&mut eval, piece, u0, u1, prev, next, 0)?;
            prev = next;
        }
    }
    let turns = total / (2.0 * PI);
    let n = turns.round();
    if (turns - n).abs() > 0.25 {
        return Err(Error::WindingNotResolved);
    }
    Ok(n as i64)
}

fn refine<E>(eval: &mut E, piece: usize, u0: f64, u1: f64, f0: Complex64, f1: Complex64, depth: u32) -> Result<f64>
where
    E: FnMut(usize, f64) -> Result<Complex64>,
{
    let step = (f1 / f0).arg();
    if step.abs() < FRAC_PI_2 {
        return Ok(step);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::WindingNotResolved);
    }
    let um = 0.5 * (u0 + u1);
    let fm = eval(piece, um)?;
    Ok(refine(eval, piece, u0, um, f0, fm, depth + 1)? + refine(eval, piece, um, u1, fm, f1, depth + 1)?)
}

/// Number of zeros of `ψ` inside the contour.
///
/// If `ψ` vanishes on the contour the radii are perturbed, up to three times.
pub fn count_zeros(params: &ModelParams, contour: &ContourSpec) -> Result<i64> {
    const ATTEMPTS: usize = 3;
    let mut spec = *contour;
    let mut last = 0.0;
    for attempt in 0..=ATTEMPTS {
        match winding_number_scaled(|r, phi| psi_polar(params, r, phi), |r| psi_scale(params, r), &spec) {
            Err(Error::ZeroOnContour { magnitude, .. }) => {
                last = magnitude;
                let k = (attempt + 1) as f64;
                spec.r_inner = contour.r_inner * (1.0 - 0.0137 * k);
                spec.r_outer = contour.r_outer * (1.0 + 0.0113 * k);
            }
            other => return other,
        }
    }
    Err(Error::ZeroOnContour {
        magnitude: last,
        attempts: ATTEMPTS,
    })
}
