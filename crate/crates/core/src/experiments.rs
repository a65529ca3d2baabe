//! Stress-relaxation and creep experiments for the model
//! `σ = ε + a D^α ε + b (D^β + D^β̄) ε`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fracops::{rl_deriv_direct, ComplexOrder, ExpansionCoefficients, ExpansionState, RegularizedStep, Signal};
use crate::kelvin::{post_invert, residue_zeros, solve_strain, KernelTable};
use crate::thermo::ModelParams;

/// Real samples on the uniform grid `t_i = i·dt`, `i = 0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    dt: f64,
    values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
                reason: "time step must be positive and finite",
            });
        }
        if values.len() < 2 {
            return Err(Error::GridMismatch("a sampled signal needs at least two points"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sampled signal"));
        }
        Ok(Self { dt, values })
    }

    /// Samples `f` at `t_i = i·t_max/steps`, `i = 0..=steps`.
    pub fn from_fn<F: FnMut(f64) -> f64>(t_max: f64, steps: usize, mut f: F) -> Result<Self> {
        let dt = t_max / steps as f64;
        Self::new(dt, (0..=steps).map(|i| f(i as f64 * dt)).collect())
    }

    pub fn t0(&self) -> f64 {
        0.0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |i| self.time(i))
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Whether `other` lives on the same grid.
    pub fn same_grid(&self, other: &Self) -> bool {
        self.values.len() == other.values.len() && (self.dt - other.dt).abs() <= 1e-12 * self.dt
    }
}

/// `H_k(t) = 1 - e^{-t/k}`, the smoothed unit step.
pub fn regularized_heaviside(t: f64, k: f64) -> f64 {
    -(-t / k).exp_m1()
}

/// How an experiment is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Moment-state expansion of every fractional derivative.
    Expansion,
    /// Fractional derivatives from the definition (relaxation only).
    Direct,
    /// Strain as the kernel convolution `K ∗ σ` (creep only).
    Convolution,
    /// Post's inversion formula (creep only).
    Post,
}

/// Which experiment a configuration describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Prescribed strain `H_k`, computed stress.
    Relaxation,
    /// Prescribed unit step stress, computed strain.
    Creep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub params: ModelParams,
    /// Regularization time `k` of the strain step.
    pub k_reg: f64,
    /// Number of moment states `N`.
    pub n_expansion: usize,
    pub t_max: f64,
    pub steps: usize,
    pub method: Method,
    /// Order `n` of Post's formula.
    pub post_n: usize,
    /// Quadrature tolerance.
    pub tol: f64,
}

impl ExperimentConfig {
    /// Relaxation defaults: `k = 0.01`, `N = 100`, `t ∈ [0, 10]`, 1000 steps,
    /// expansion method.
    pub fn relaxation(params: ModelParams) -> Self {
        Self {
            params,
            k_reg: 0.01,
            n_expansion: 100,
            t_max: 10.0,
            steps: 1000,
            method: Method::Expansion,
            post_n: 25,
            tol: 1e-8,
        }
    }

    /// Creep defaults: `N = 7`, `n = 25`, `t ∈ [0, 100]`, 1000 steps,
    /// convolution method.
    pub fn creep(params: ModelParams) -> Self {
        Self {
            n_expansion: 7,
            t_max: 100.0,
            method: Method::Convolution,
            ..Self::relaxation(params)
        }
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }

    pub fn with_grid(self, t_max: f64, steps: usize) -> Self {
        Self { t_max, steps, ..self }
    }

    pub fn dt(&self) -> f64 {
        self.t_max / self.steps as f64
    }

    pub fn validate(&self, kind: ExperimentKind) -> Result<()> {
        let bad = |name, value, reason| Err(Error::InvalidParameter { name, value, reason });
        if !(self.k_reg > 0.0 && self.k_reg.is_finite()) {
            return bad("k_reg", self.k_reg, "regularization time must be positive");
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return bad("t_max", self.t_max, "time horizon must be positive and finite");
        }
        if self.steps < 10 {
            return bad("steps", self.steps as f64, "need at least 10 steps");
        }
        if self.n_expansion < 1 {
            return bad("N", self.n_expansion as f64, "expansion needs at least one term");
        }
        if self.post_n < 1 {
            return bad("post_n", self.post_n as f64, "Post order must be at least 1");
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad("tol", self.tol, "tolerance must lie in (0, 1)");
        }
        let ok = match kind {
            ExperimentKind::Relaxation => matches!(self.method, Method::Expansion | Method::Direct),
            ExperimentKind::Creep => matches!(self.method, Method::Expansion | Method::Convolution | Method::Post),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain("method not available for this experiment"))
        }
    }
}

fn check_real(value: Complex64, context: &'static str) -> Result<f64> {
    let limit = 1e-8 * (1.0 + value.re.abs());
    if value.im.abs() > limit {
        return Err(Error::ImaginaryResidue {
            residue: value.im.abs(),
            limit,
            context,
        });
    }
    Ok(value.re)
}

/// Stress `σ = H_k + a D^α H_k + b (D^β + D^β̄) H_k` under the regularized
/// strain step; `σ(0) = 0`.
pub fn stress_relaxation(config: &ExperimentConfig) -> Result<SampledSignal> {
    config.validate(ExperimentKind::Relaxation)?;
    let p = &config.params;
    let strain = RegularizedStep { k: config.k_reg };
    let alpha = ComplexOrder::real(p.alpha())?;
    let beta = ComplexOrder::new(p.alpha(), p.big_b())?;
    let dt = config.dt();
    let mut values = Vec::with_capacity(config.steps + 1);
    values.push(0.0);
    match config.method {
        Method::Direct => {
            for i in 1..=config.steps {
                let t = i as f64 * dt;
                let da = rl_deriv_direct(&strain, alpha, t, config.tol)?;
                let db = rl_deriv_direct(&strain, beta, t, config.tol)?;
                let dbc = rl_deriv_direct(&strain, beta.conj(), t, config.tol)?;
                let sigma = da * p.a() + (db + dbc) * p.b() + strain.value(t);
                values.push(check_real(sigma, "stress_relaxation")?);
            }
        }
        _ => {
            let ca = ExpansionCoefficients::new(alpha, config.n_expansion)?;
            let cb = ExpansionCoefficients::new(beta, config.n_expansion)?;
            let cbc = ExpansionCoefficients::new(beta.conj(), config.n_expansion)?;
            let mut state = ExpansionState::new(config.n_expansion)?;
            for i in 1..=config.steps {
                let t = i as f64 * dt;
                state.advance(&strain, t)?;
                let y = strain.value(t);
                let sigma = ca.derivative(y, &state)? * p.a()
                    + (cb.derivative(y, &state)? + cbc.derivative(y, &state)?) * p.b()
                    + y;
                values.push(check_real(sigma, "stress_relaxation")?);
            }
        }
    }
    SampledSignal::new(dt, values)
}

/// Strain under unit step stress, `ε(0) = 0`.
///
/// The convolution method includes the residues of every zero of `ψ` that
/// matters at the configured tolerance.
pub fn creep(config: &ExperimentConfig) -> Result<SampledSignal> {
    config.validate(ExperimentKind::Creep)?;
    let p = &config.params;
    let dt = config.dt();
    match config.method {
        Method::Convolution => {
            let zeros = residue_zeros(p, config.tol)?;
            let table = KernelTable::build(p, config.t_max, config.steps, config.tol, Some(&zeros))?;
            let sigma = SampledSignal::new(dt, vec![1.0; config.steps + 1])?;
            solve_strain(&sigma, &table)
        }
        Method::Post => {
            let mut values = Vec::with_capacity(config.steps + 1);
            values.push(0.0);
            for i in 1..=config.steps {
                values.push(post_invert(p, i as f64 * dt, config.post_n)?);
            }
            SampledSignal::new(dt, values)
        }
        _ => creep_expansion(config),
    }
}

/// Creep by the expansion method. With every derivative replaced by its
/// expansion, the law is linear in `ε(t)` given the normalized moments
/// `m_p = V_{p-1}(t)/t^p`:
///
/// ```text
/// ε = [t^α + Σ_p m_p (a C_{α,p} + b (C_{β,p} t^{-iB} + C_{β̄,p} t^{iB}))]
///   / [t^α + a A_α + b (A_β t^{-iB} + A_β̄ t^{iB})]
/// ```
///
/// and the moments are advanced with that `ε` as integrand.
fn creep_expansion(config: &ExperimentConfig) -> Result<SampledSignal> {
    let p = &config.params;
    let n = config.n_expansion;
    let ca = ExpansionCoefficients::new(ComplexOrder::real(p.alpha())?, n)?;
    let cb = ExpansionCoefficients::new(ComplexOrder::new(p.alpha(), p.big_b())?, n)?;
    let cbc = ExpansionCoefficients::new(ComplexOrder::new(p.alpha(), -p.big_b())?, n)?;
    let (a, b, bb) = (p.a(), p.b(), p.big_b());
    let strain = |t: f64, m: &[f64]| -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let ta = t.powf(p.alpha());
        let rot = Complex64::from_polar(1.0, -bb * t.ln());
        let rot_c = rot.conj();
        let mut num = Complex64::new(ta, 0.0);
        for (i, m) in m.iter().enumerate() {
            num += (ca.c()[i] * a + (cb.c()[i] * rot + cbc.c()[i] * rot_c) * b) * m;
        }
        let den = ca.a() * a + (cb.a() * rot + cbc.a() * rot_c) * b + ta;
        (num / den).re
    };
    let dt = config.dt();
    let mut state = ExpansionState::new(n)?;
    let mut values = Vec::with_capacity(config.steps + 1);
    values.push(0.0);
    for i in 1..=config.steps {
        let t = i as f64 * dt;
        state.advance_coupled(t, strain)?;
        values.push(strain(t, state.normalized_moments()));
    }
    SampledSignal::new(dt, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveShape {
    Monotonic,
    Oscillatory,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveClass {
    pub shape: CurveShape,
    pub max_value: f64,
    /// Sign changes of the discrete slope, ignoring slopes within `tol` of 0.
    pub slope_sign_changes: usize,
}

/// Monotonic iff the discrete slopes never exceed `tol` in both directions,
/// i.e. the curve is non-decreasing or non-increasing up to `tol`.
pub fn classify_curve(values: &[f64], tol: f64) -> Result<CurveClass> {
    if values.len() < 3 {
        return Err(Error::GridMismatch("curve classification needs at least three samples"));
    }
    let (mut rises, mut falls) = (false, false);
    let mut changes = 0;
    let mut last_sign = 0i8;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        rises |= d > tol;
        falls |= d < -tol;
        let sign = if d > tol {
            1
        } else if d < -tol {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                changes += 1;
            }
            last_sign = sign;
        }
    }
    Ok(CurveClass {
        shape: if !(rises && falls) { CurveShape::Monotonic } else { CurveShape::Oscillatory },
        max_value: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        slope_sign_changes: changes,
    })
}

/// Largest relative deviation between two signals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    /// `max |a - b| / |b|` over samples with `|b| > floor` and `t ≥ t_from`.
    pub max_relative: f64,
    /// Time of the maximum; NaN when no sample qualified.
    pub at_time: f64,
}

pub fn compare_signals(a: &SampledSignal, b: &SampledSignal, floor: f64, t_from: f64) -> Result<Deviation> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch("compared signals live on different grids"));
    }
    let mut dev = Deviation {
        max_relative: 0.0,
        at_time: f64::NAN,
    };
    for (i, (x, y)) in a.values().iter().zip(b.values()).enumerate() {
        let t = a.time(i);
        if t < t_from || y.abs() <= floor {
            continue;
        }
        let r = (x - y).abs() / y.abs();
        if r > dev.max_relative || dev.at_time.is_nan() {
            dev = Deviation {
                max_relative: r,
                at_time: t,
            };
        }
    }
    Ok(dev)
}

/// Runs both configurations and compares them, the second being the
/// reference.
pub fn compare_methods(
    kind: ExperimentKind,
    a: &ExperimentConfig,
    b: &ExperimentConfig,
    floor: f64,
) -> Result<Deviation> {
    if a.params != b.params || a.steps != b.steps || a.t_max != b.t_max {
        return Err(Error::GridMismatch("compared runs differ in parameters or grid"));
    }
    let run = |c: &ExperimentConfig| match kind {
        ExperimentKind::Relaxation => stress_relaxation(c),
        ExperimentKind::Creep => creep(c),
    };
    compare_signals(&run(a)?, &run(b)?, floor, 0.0)
}

/// First grid time after which the signal stays within `band` of `target`;
/// `None` if the last sample is still outside.
pub fn band_entry_time(signal: &SampledSignal, target: f64, band: f64) -> Option<f64> {
    let values = signal.values();
    if (values[values.len() - 1] - target).abs() >= band {
        return None;
    }
    let last_out = values.iter().rposition(|v| (v - target).abs() >= band);
    Some(last_out.map_or(0.0, |i| signal.time(i + 1)))
}
