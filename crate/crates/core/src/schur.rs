//! Schur algorithm on Carathéodory data, coefficient-body classification, an
//! independent Toeplitz-contraction oracle, and the extremal Blaschke towers
//! `ω_{γ,ε}(z) = σ_{γ₀}(z σ_{γ₁}(⋯ z σ_{γₙ}(ε z)⋯))`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexSeries;

/// Default band for deciding `|γ| = 1` in floating point.
pub const DEFAULT_TOL_UNIT: f64 = 1e-12;

/// Initial Taylor coefficients `(c₀, …, cₙ)` prescribed for a self-map of the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CaratheodoryData {
    c: Vec<Complex64>,
}

impl CaratheodoryData {
    pub fn new(c: Vec<Complex64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidInput("Carathéodory data needs at least one entry".into()));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("Carathéodory data must be finite".into()));
        }
        Ok(Self { c })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.c
    }

    /// `n` for data of length `n + 1`.
    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }
}

/// A Schur parameter entry. `Infinite` is a tag, never an IEEE infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchurValue {
    Finite(Complex64),
    Infinite,
}

impl SchurValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            SchurValue::Finite(v) => Some(v),
            SchurValue::Infinite => None,
        }
    }
}

/// Position of data relative to the coefficient body `C(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Interior,
    Boundary,
    Exterior,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Interior => "interior",
            Classification::Boundary => "boundary",
            Classification::Exterior => "exterior",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurParameters {
    pub gamma: Vec<SchurValue>,
    pub classification: Classification,
}

impl SchurParameters {
    /// All entries as complex numbers, if none is `Infinite`.
    pub fn finite_values(&self) -> Option<Vec<Complex64>> {
        self.gamma.iter().map(|g| g.finite()).collect()
    }

    /// For boundary data `(γ₀, …, γᵢ, 0, …, 0)`, the index `i` of the unimodular entry.
    pub fn boundary_index(&self, tol_unit: f64) -> Option<usize> {
        if self.classification != Classification::Boundary {
            return None;
        }
        self.gamma.iter().position(|g| matches!(g, SchurValue::Finite(v) if (v.norm() - 1.0).abs() <= tol_unit))
    }
}

/// Runs the Schur recursion on `c` and classifies the result.
///
/// Moduli are compared against 1 within `tol_unit`; the same threshold decides
/// whether a trailing coefficient counts as zero once a unimodular parameter is met.
/// When some `|γⱼ| > 1` the recursion stops there and the remaining data is unused.
pub fn schur_parameters(c: &CaratheodoryData, tol_unit: f64) -> SchurParameters {
    let n = c.degree();
    let mut cur = c.values().to_vec();
    let mut gamma = Vec::with_capacity(n + 1);

    for j in 0..=n {
        let g = cur[0];
        gamma.push(SchurValue::Finite(g));
        let m = g.norm();

        if m > 1.0 + tol_unit {
            return SchurParameters { gamma, classification: Classification::Exterior };
        }
        if (m - 1.0).abs() <= tol_unit {
            let mut all_zero = true;
            for p in (j + 1)..=n {
                if cur[p - j].norm() > tol_unit {
                    all_zero = false;
                    gamma.push(SchurValue::Infinite);
                } else {
                    gamma.push(SchurValue::Finite(Complex64::default()));
                }
            }
            let classification = if all_zero { Classification::Boundary } else { Classification::Exterior };
            return SchurParameters { gamma, classification };
        }
        if j == n {
            break;
        }

        // c^{(j+1)} from c^{(j)}: the coefficients of (ω − γ)/(z(1 − γ̄ω)).
        let scale = 1.0 - m * m;
        let gc = g.conj();
        let mut next: Vec<Complex64> = Vec::with_capacity(n - j);
        next.push(cur[1] / scale);
        for p in 1..(n - j) {
            let s: Complex64 = (1..=p).map(|l| next[p - l] * cur[l]).sum();
            next.push((cur[p + 1] + gc * s) / scale);
        }
        cur = next;
    }

    SchurParameters { gamma, classification: Classification::Interior }
}

/// Independent membership test: `c ∈ C(n)` iff the lower-triangular Toeplitz
/// matrix with first column `c` is a contraction.
///
/// The spectral norm is banded by `margin` around 1 before deciding.
pub fn toeplitz_membership(c: &CaratheodoryData, margin: f64) -> Classification {
    let norm = toeplitz_spectral_norm(c.values());
    if norm < 1.0 - margin {
        Classification::Interior
    } else if norm > 1.0 + margin {
        Classification::Exterior
    } else {
        Classification::Boundary
    }
}

/// Spectral norm of the lower-triangular Toeplitz matrix `T[r][s] = c[r − s]` by
/// power iteration on `T*T`.
pub fn toeplitz_spectral_norm(c: &[Complex64]) -> f64 {
    const MAX_ITER: usize = 5000;
    let n = c.len();
    let apply =
        |x: &[Complex64]| -> Vec<Complex64> { (0..n).map(|r| (0..=r).map(|s| c[r - s] * x[s]).sum()).collect() };
    let apply_adj =
        |y: &[Complex64]| -> Vec<Complex64> { (0..n).map(|s| (s..n).map(|r| c[r - s].conj() * y[r]).sum()).collect() };
    let vnorm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    // fixed, generic start vector so the result is deterministic
    let mut x: Vec<Complex64> = (0..n).map(|k| Complex64::new(1.0 + 0.37 * k as f64, 0.21 - 0.13 * k as f64)).collect();
    let nx = vnorm(&x);
    x.iter_mut().for_each(|v| *v /= nx);

    let mut lambda = 0.0f64;
    for _ in 0..MAX_ITER {
        let y = apply_adj(&apply(&x));
        let ny = vnorm(&y);
        if ny == 0.0 {
            return 0.0;
        }
        let converged = (ny - lambda).abs() <= 1e-14 * ny;
        lambda = ny;
        x = y.into_iter().map(|v| v / ny).collect();
        if converged {
            break;
        }
    }
    lambda.sqrt()
}

/// The disk automorphism `σ_a(z) = (z + a)/(1 + āz)`; `|a| = 1` is allowed for tower leaves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAutomorphism {
    a: Complex64,
}

impl DiskAutomorphism {
    pub fn new(a: Complex64) -> Result<Self> {
        if !a.is_finite() || a.norm() > 1.0 + 1e-15 {
            return Err(Error::InvalidInput(format!("automorphism parameter {a} outside closed disk")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        mobius_eval(*self, z)
    }

    /// Taylor series of `σ_a(w)` in `w`: `(w + a)·(1 + āw)⁻¹`.
    pub fn series(&self, order: usize) -> ComplexSeries {
        let mut num = ComplexSeries::identity(order);
        let mut den = ComplexSeries::constant(Complex64::new(1.0, 0.0), order);
        if order >= 1 {
            den = den.add(&ComplexSeries::identity(order).scale(self.a.conj()));
        }
        num = num.add(&ComplexSeries::constant(self.a, order));
        let inv = den.reciprocal().expect("1 + āw has unit constant term");
        num.mul(&inv)
    }
}

pub fn mobius_eval(a: DiskAutomorphism, z: Complex64) -> Result<Complex64> {
    let den = 1.0 + a.a.conj() * z;
    if den.norm() <= 1e-300 {
        return Err(Error::PoleHit { a: a.a, z });
    }
    Ok((z + a.a) / den)
}

/// Extremal self-map `ω_{γ,ε}` for finite interior Schur parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeTower {
    gamma: Vec<Complex64>,
    epsilon: Complex64,
}

impl BlaschkeTower {
    /// Requires a non-empty `gamma` with every `|γᵢ| < 1` and `|ε| ≤ 1`.
    pub fn new(gamma: Vec<Complex64>, epsilon: Complex64) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidInput("tower needs at least one Schur parameter".into()));
        }
        if let Some(g) = gamma.iter().find(|g| !(g.norm() < 1.0)) {
            return Err(Error::InvalidInput(format!("tower parameter {g} not in the open disk")));
        }
        if !(epsilon.norm() <= 1.0 + 1e-15) {
            return Err(Error::InvalidInput(format!("tower leaf ε = {epsilon} outside closed disk")));
        }
        Ok(Self { gamma, epsilon })
    }

    /// Tower whose leaf multiplier may be unimodular and whose parameters need
    /// only lie in the closed disk; used for boundary-data extremals.
    pub(crate) fn new_unchecked(gamma: Vec<Complex64>, epsilon: Complex64) -> Self {
        Self { gamma, epsilon }
    }

    pub fn gamma(&self) -> &[Complex64] {
        &self.gamma
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        tower_eval(self, z)
    }

    /// Evaluates the tower with the leaf `ε·z` replaced by `z·leaf(z)`.
    pub fn eval_with_leaf(&self, z: Complex64, leaf: Complex64) -> Result<Complex64> {
        nest(&self.gamma, z, z * leaf)
    }
}

fn nest(gamma: &[Complex64], z: Complex64, mut w: Complex64) -> Result<Complex64> {
    for (i, &g) in gamma.iter().enumerate().rev() {
        w = mobius_eval(DiskAutomorphism { a: g }, w)?;
        if i > 0 {
            w *= z;
        }
    }
    Ok(w)
}

pub fn tower_eval(t: &BlaschkeTower, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-15 {
        return Err(Error::OutsideDisk(z));
    }
    nest(&t.gamma, z, t.epsilon * z)
}

/// Taylor coefficients `0..=order` of `ω_{γ,ε}`, built from the leaf `εz` outward.
pub fn tower_taylor(t: &BlaschkeTower, order: usize) -> ComplexSeries {
    let z = ComplexSeries::identity(order);
    let mut w = z.scale(t.epsilon);
    for (i, &g) in t.gamma.iter().enumerate().rev() {
        let sigma = DiskAutomorphism { a: g }.series(order);
        w = sigma.compose(&w).expect("inner series vanishes at the origin");
        if i > 0 {
            w = w.shift_up();
        }
    }
    w
}
