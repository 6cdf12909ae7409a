//! Truncated complex power series about the origin.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order when a caller does not ask for one.
pub const DEFAULT_SERIES_ORDER: usize = 16;

/// Coefficients `c₀ + c₁z + ⋯ + c_N z^N`; index `p` holds the coefficient of `z^p`.
///
/// Binary operations truncate to the smaller order of their operands.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    /// Panics on an empty coefficient vector; a series always has order ≥ 0.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^p`, zero beyond the stored order.
    pub fn coeff(&self, p: usize) -> Complex64 {
        self.coeffs.get(p).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().copied().take(order + 1).collect();
        coeffs.resize(order + 1, Complex64::default());
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|p| self.coeffs[p] + other.coeffs[p]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|p| self.coeffs[p] - other.coeffs[p]).collect() }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * k).collect() }
    }

    /// Cauchy product, truncated to `min(self.order, other.order)`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|p| (0..=p).map(|l| self.coeffs[l] * other.coeffs[p - l]).sum()).collect();
        Self { coeffs }
    }

    /// Multiplicative inverse by forward substitution on the triangular system.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::NonInvertibleSeries);
        }
        let inv0 = a0.inv();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv0);
        for p in 1..self.coeffs.len() {
            let s: Complex64 = (1..=p).map(|l| self.coeffs[l] * out[p - l]).sum();
            out.push(-s * inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(z))` by Horner's scheme in the series ring.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0].norm() != 0.0 {
            return Err(Error::CompositionConstantTerm(inner.coeffs[0]));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for p in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[p];
        }
        Ok(acc)
    }

    /// Multiply by `z`, keeping the order (the top coefficient falls off).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Complex64::default());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self { coeffs }
    }

    /// `(self − self(0)) / z`; the order drops by one (stays ≥ 0).
    pub fn shift_down(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zeros(0);
        }
        Self { coeffs: self.coeffs[1..].to_vec() }
    }

    /// Termwise antiderivative vanishing at 0; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::default());
        coeffs.extend(self.coeffs.iter().enumerate().map(|(p, &c)| c / (p as f64 + 1.0)));
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zeros(0);
        }
        Self { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(p, &c)| c * p as f64).collect() }
    }

    /// `exp(self)` from the recurrence `E′ = S′E`, i.e. `p·E_p = Σ_{k=1}^p k·S_k·E_{p−k}`.
    pub fn exp(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(self.coeffs[0].exp());
        for p in 1..self.coeffs.len() {
            let s: Complex64 = (1..=p).map(|k| self.coeffs[k] * (k as f64) * out[p - k]).sum();
            out.push(s / p as f64);
        }
        Self { coeffs: out }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::default(), |acc, &c| acc * z + c)
    }

    /// Largest coefficient-wise modulus difference over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n).map(|p| (self.coeffs[p] - other.coeffs[p]).norm()).fold(0.0, f64::max)
    }
}

/// Taylor coefficients `0..=order` of `f` from `2^log2_samples` samples on the
/// circle `|z| = radius` (discrete Cauchy formula).
pub fn cauchy_coefficients<F>(f: F, radius: f64, order: usize, log2_samples: u32) -> Result<ComplexSeries>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let n = 1usize << log2_samples;
    let values =
        (0..n).map(|m| f(Complex64::from_polar(radius, 2.0 * PI * m as f64 / n as f64))).collect::<Result<Vec<_>>>()?;
    let coeffs = (0..=order)
        .map(|p| {
            let s: Complex64 = values
                .iter()
                .enumerate()
                .map(|(m, &v)| {
                    // reduce the index before forming the angle to keep the phase exact
                    let k = (p * m) % n;
                    v * Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64)
                })
                .sum();
            s / (n as f64 * radius.powi(p as i32))
        })
        .collect();
    Ok(ComplexSeries::new(coeffs))
}
