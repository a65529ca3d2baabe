//! Truncated Taylor arithmetic in one complex variable.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::power::{principal_ln, principal_power};
use crate::error::{Error, Result};

/// Taylor coefficients `c_0, …, c_n` of a function at a point:
/// `f(s0 + h) = Σ c_k h^k + O(h^{n+1})`.
///
/// All arithmetic truncates at the common order, so products and quotients of
/// order-`n` jets are order-`n` jets.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Jet from explicit coefficients; panics on an empty slice.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant term");
        Self { coeffs }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The independent variable `s = s0 + h`.
    pub fn variable(s0: Complex64, order: usize) -> Self {
        let mut jet = Self::constant(s0, order);
        if order >= 1 {
            jet.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    /// `f^{(k)}(s0) = k! c_k`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let factorial: f64 = (1..=k).map(|j| j as f64).product();
        self.coeffs[k] * factorial
    }

    pub fn recip(&self) -> Result<Self> {
        Self::constant(Complex64::new(1.0, 0.0), self.order()).checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let n = self.order().min(rhs.order());
        let g0 = rhs.coeffs[0];
        if g0.norm() == 0.0 {
            return Err(Error::JetDivisionByZero);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= rhs.coeffs[j] * out[k - j];
            }
            out[k] = acc / g0;
        }
        Ok(Self { coeffs: out })
    }

    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j] * j as f64;
            }
            out[k] = acc / k as f64;
        }
        Self { coeffs: out }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Self> {
        let n = self.order();
        let f0 = self.coeffs[0];
        if f0.norm() == 0.0 {
            return Err(Error::JetDivisionByZero);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = principal_ln(f0)?;
        for k in 1..=n {
            let mut acc = self.coeffs[k] * k as f64;
            for j in 1..k {
                acc -= out[j] * self.coeffs[k - j] * j as f64;
            }
            out[k] = acc / (f0 * k as f64);
        }
        Ok(Self { coeffs: out })
    }

    /// Principal power `f^γ`, by the Miller recurrence `f p' = γ f' p`.
    pub fn powc(&self, gamma: Complex64) -> Result<Self> {
        let n = self.order();
        let f0 = self.coeffs[0];
        if f0.norm() == 0.0 {
            return Err(Error::JetDivisionByZero);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = principal_power(f0, gamma)?;
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j] * (gamma * j as f64 - (k - j) as f64);
            }
            out[k] = acc / (f0 * k as f64);
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_scalar(&self, value: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let n = self.order().min(rhs.order());
        Self {
            coeffs: (0..=n).map(|k| op(self.coeffs[k], rhs.coeffs[k])).collect(),
        }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).fold(Complex64::new(0.0, 0.0), |acc, j| acc + self.coeffs[j] * rhs.coeffs[k - j]))
            .collect();
        Jet { coeffs }
    }
}

/// Panics when the divisor's constant term is zero; use [`Jet::checked_div`]
/// to get an error instead.
impl Div for &Jet {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        self.checked_div(rhs).expect("jet division by zero")
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

/// n-th derivative at real `s0` of a function built from jet operations.
///
/// `f` receives the variable jet `s0 + h` of order `n`.
pub fn jet_eval_nth_derivative<F>(f: F, s0: f64, n: usize) -> Result<Complex64>
where
    F: Fn(&Jet) -> Result<Jet>,
{
    let out = f(&Jet::variable(Complex64::new(s0, 0.0), n))?;
    if out.order() < n {
        return Err(Error::Domain("function truncated the jet below the requested order"));
    }
    let d = out.derivative(n);
    if d.re.is_finite() && d.im.is_finite() {
        Ok(d)
    } else {
        Err(Error::NonFinite("jet derivative"))
    }
}
