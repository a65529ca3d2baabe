use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One classical fourth-order Runge–Kutta step of `y' = rhs(t, y)`.
///
/// `rhs(t, y, dydt)` writes the derivative into `dydt`.
pub fn rk4_step<R>(rhs: &mut R, t: f64, y: &[f64], h: f64) -> Vec<f64>
where
    R: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut stage = vec![0.0; n];

    rhs(t, y, &mut k1);
    for i in 0..n {
        stage[i] = y[i] + 0.5 * h * k1[i];
    }
    rhs(t + 0.5 * h, &stage, &mut k2);
    for i in 0..n {
        stage[i] = y[i] + 0.5 * h * k2[i];
    }
    rhs(t + 0.5 * h, &stage, &mut k3);
    for i in 0..n {
        stage[i] = y[i] + h * k3[i];
    }
    rhs(t + h, &stage, &mut k4);

    (0..n)
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Integrates `y' = rhs(t, y)` from `state0` at `t_grid[0]` with one RK4 step
/// per grid interval and returns the state at every grid point.
pub fn ode_integrate<R>(mut rhs: R, state0: &[f64], t_grid: &[f64]) -> Result<Vec<Vec<f64>>>
where
    R: FnMut(f64, &[f64], &mut [f64]),
{
    if t_grid.is_empty() {
        return Err(Error::GridMismatch("empty time grid"));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::GridMismatch("time grid must be strictly increasing"));
    }
    if state0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("initial state"));
    }
    let mut out = Vec::with_capacity(t_grid.len());
    out.push(state0.to_vec());
    for w in t_grid.windows(2) {
        let prev = out.last().expect("non-empty");
        let next = rk4_step(&mut rhs, w[0], prev, w[1] - w[0]);
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("ODE state"));
        }
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, t_max: f64) -> Vec<f64> {
        (0..=n).map(|i| t_max * i as f64 / n as f64).collect()
    }

    #[test]
    fn zero_rhs_keeps_zero_state() {
        let out = ode_integrate(|_, _, d: &mut [f64]| d.fill(0.0), &[0.0, 0.0], &grid(10, 1.0)).unwrap();
        assert!(out.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_slope_is_exact() {
        let g = grid(37, 3.0);
        let out = ode_integrate(|_, _, d: &mut [f64]| d[0] = 1.0, &[0.0], &g).unwrap();
        for (t, y) in g.iter().zip(&out) {
            assert!((y[0] - t).abs() < 1e-10);
        }
    }

    #[test]
    fn first_moment_of_unit_signal() {
        // V' = t · y with y ≡ 1 gives V = t²/2.
        let g = grid(20, 2.0);
        let out = ode_integrate(|t, _, d: &mut [f64]| d[0] = t, &[0.0], &g).unwrap();
        for (t, y) in g.iter().zip(&out) {
            assert!((y[0] - t * t / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fourth_order_convergence() {
        // y' = -y, y(0) = 1 on [0, 1]; halving h must cut the error ~16x.
        let err = |n: usize| {
            let out = ode_integrate(|_, y: &[f64], d: &mut [f64]| d[0] = -y[0], &[1.0], &grid(n, 1.0)).unwrap();
            (out[n][0] - (-1.0f64).exp()).abs()
        };
        let ratio = err(10) / err(20);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_grids_and_blowup() {
        assert!(ode_integrate(|_, _, d: &mut [f64]| d[0] = 0.0, &[0.0], &[0.0, 0.0]).is_err());
        assert!(ode_integrate(|_, _, d: &mut [f64]| d[0] = 0.0, &[f64::NAN], &[0.0, 1.0]).is_err());
        let r = ode_integrate(|_, y: &[f64], d: &mut [f64]| d[0] = y[0] * y[0] * 1e300, &[1e10], &[0.0, 1.0]);
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }
}
