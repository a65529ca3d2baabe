//! End-to-end checks against values computed independently at 40 digits.

#![allow(clippy::excessive_precision)]

use cfkv_core::experiments::{creep, stress_relaxation, ExperimentConfig, Method};
use cfkv_core::kelvin::{kernel_ki_integrals, post_invert};
use cfkv_core::thermo::ModelParams;

// ε(t) = 1 - E_α(-t^α/a) for σ = ε + a D^α ε under a unit step (b = 0),
// a = 0.8, α = 0.4.
const MITTAG_LEFFLER_CREEP: [(f64, f64); 5] = [
    (0.5, 0.5436000950717648),
    (1.0, 0.61589248304404536),
    (2.0, 0.68350882244371157),
    (5.0, 0.7618380637137317),
    (10.0, 0.81126823414115475),
];

fn real_order_law() -> ModelParams {
    ModelParams::degenerate(0.8, 0.0, 0.4, 0.0).unwrap()
}

#[test]
fn real_order_creep_by_convolution() {
    let c = ExperimentConfig::creep(real_order_law()).with_grid(10.0, 100);
    let s = creep(&c).unwrap();
    for (t, expected) in MITTAG_LEFFLER_CREEP {
        let v = s.values()[(t * 10.0) as usize];
        assert!((v - expected).abs() < 1e-6, "t = {t}: {v} vs {expected}");
    }
}

#[test]
fn real_order_cumulative_kernel() {
    for (t, expected) in MITTAG_LEFFLER_CREEP {
        let phi = kernel_ki_integrals(&real_order_law(), t, 1e-10).unwrap().phi;
        assert!((phi - expected).abs() < 1e-8, "t = {t}: {phi} vs {expected}");
    }
}

#[test]
fn real_order_creep_by_post_and_expansion() {
    for (t, expected) in MITTAG_LEFFLER_CREEP {
        let v = post_invert(&real_order_law(), t, 25).unwrap();
        assert!((v - expected).abs() < 0.01 * expected, "t = {t}: {v}");
    }
    let c = ExperimentConfig::creep(real_order_law())
        .with_method(Method::Expansion)
        .with_grid(10.0, 1000);
    let s = creep(&c).unwrap();
    for (t, expected) in MITTAG_LEFFLER_CREEP {
        let v = s.values()[(t * 100.0) as usize];
        assert!((v - expected).abs() < 0.03 * expected, "t = {t}: {v}");
    }
}

// σ = H_k + a D^α H_k for b = 0, a = 0.8, α = 0.4, k = 0.01.
const REAL_ORDER_RELAXATION: [(f64, f64); 4] = [
    (0.02, 3.8311636399347941),
    (0.1, 2.4138956573042435),
    (0.5, 1.7146826300928762),
    (1.0, 1.5393836249809343),
];

#[test]
fn real_order_relaxation() {
    let p = real_order_law();
    let direct = ExperimentConfig::relaxation(p).with_method(Method::Direct).with_grid(1.0, 100);
    let s = stress_relaxation(&direct).unwrap();
    let e = stress_relaxation(&direct.with_method(Method::Expansion)).unwrap();
    for (t, expected) in REAL_ORDER_RELAXATION {
        let i = (t * 100.0).round() as usize;
        assert!((s.values()[i] - expected).abs() < 1e-8 * expected, "direct t = {t}: {}", s.values()[i]);
        assert!((e.values()[i] - expected).abs() < 0.05 * expected, "expansion t = {t}: {}", e.values()[i]);
    }
}
