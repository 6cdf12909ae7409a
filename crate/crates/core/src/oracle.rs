//! Independent oracles: the closed-form boundary curve for the right half-plane
//! with prescribed `a₂`, the zero-data `H` identity, and random admissible
//! functions for membership trials.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::domains::DomainMap;
use crate::error::{Error, Result};
use crate::numerics::{try_integrate_segment, QuadratureConfig};
use crate::regions::{
    polygon_contains, segment_functional, signed_distance, trace_region, Refinement, RegionPolygon,
    DEFAULT_MEMBERSHIP_TOL, DEFAULT_SAMPLES,
};
use crate::schur::BlaschkeTower;

/// Radius of the disk the random Blaschke zeros are drawn from.
pub const BLASCHKE_ZERO_RADIUS: f64 = 0.9;
/// Largest random Blaschke degree used by [`membership_trial`].
pub const MAX_TRIAL_DEGREE: usize = 4;
/// Chord deviation bound for the reference trace used by [`membership_trial`].
pub const MEMBERSHIP_CHORD_DEVIATION: f64 = 1e-8;

/// `θ ↦ theorem_a_point(z₀, λ, θ)` over `θ_m = −π + 2π(m+1)/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCurve {
    pub z0: Complex64,
    pub lambda: f64,
    pub theta_grid: Vec<f64>,
}

impl ClosedFormCurve {
    pub fn new(z0: Complex64, lambda: f64, samples: usize) -> Result<Self> {
        check_curve_args(z0, lambda)?;
        if samples < 3 {
            return Err(Error::InvalidInput(format!("need at least 3 samples, got {samples}")));
        }
        let theta_grid = (0..samples).map(|m| -PI + 2.0 * PI * (m + 1) as f64 / samples as f64).collect();
        Ok(Self { z0, lambda, theta_grid })
    }

    pub fn polygon(&self) -> Result<RegionPolygon> {
        let points =
            self.theta_grid.iter().map(|&t| theorem_a_point(self.z0, self.lambda, t)).collect::<Result<_>>()?;
        Ok(RegionPolygon { points, thetas: self.theta_grid.clone(), meta: None })
    }
}

fn check_curve_args(z0: Complex64, lambda: f64) -> Result<()> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::InvalidInput(format!("lambda must lie in [0, 1), got {lambda}")));
    }
    if !(z0.norm() > 0.0 && z0.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("z0 must satisfy 0 < |z0| < 1, got {z0}")));
    }
    Ok(())
}

/// Boundary point of `{log f′(z₀) : f convex, f″(0)/2 = λ}` at angle `θ`.
pub fn theorem_a_point(z0: Complex64, lambda: f64, theta: f64) -> Result<Complex64> {
    check_curve_args(z0, lambda)?;
    let (s, c) = (0.5 * theta).sin_cos();
    let r = (1.0 - lambda * lambda * s * s).sqrt();
    let rot = Complex64::from_polar(1.0, 0.5 * theta) * z0;
    let i = Complex64::i();
    let minus = 1.0 - rot / (i * lambda * s - r);
    let plus = 1.0 - rot / (i * lambda * s + r);
    Ok(-(1.0 - lambda * c / r) * minus.ln() - (1.0 + lambda * c / r) * plus.ln())
}

/// `H(z) = (j+1)/u^{j+1} ∫₀^u ζ^j (P(ζⁿ) − P(0)) dζ` with `u = z^{1/n}` principal.
pub fn h_function(domain: &DomainMap, j: i32, n: u32, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if j < 0 {
        return Err(Error::InvalidInput(format!("h_function needs j >= 0, got {j}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("h_function needs n >= 1".into()));
    }
    if !(z.norm() > 0.0 && z.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("z must satisfy 0 < |z| < 1, got {z}")));
    }
    let u = (z.ln() / n as f64).exp();
    let base = domain.base();
    let integral = try_integrate_segment(|zeta| Ok(zeta.powi(j) * (domain.eval(zeta.powi(n as i32))? - base)), u, cfg)?;
    Ok((j + 1) as f64 * integral / u.powi(j + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleSampler {
    pub gamma: Vec<Complex64>,
    pub blaschke_degree: usize,
    pub seed: u64,
}

/// `g(z) = P(σ_{γ₀}(zσ_{γ₁}(⋯zσ_{γₙ}(zω*(z))⋯)))` with
/// `ω*(z) = e^{iφ} ∏ (z − a_m)/(1 − ā_m z)`.
#[derive(Debug, Clone)]
pub struct AdmissibleFunction {
    domain: DomainMap,
    tower: BlaschkeTower,
    phase: f64,
    zeros: Vec<Complex64>,
}

impl AdmissibleFunction {
    pub fn new(domain: DomainMap, gamma: Vec<Complex64>, phase: f64, zeros: Vec<Complex64>) -> Result<Self> {
        let tower = BlaschkeTower::new(gamma, Complex64::new(1.0, 0.0))?;
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidInput(format!("Blaschke zero {a} not in the open disk")));
        }
        Ok(Self { domain, tower, phase, zeros })
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn gamma(&self) -> &[Complex64] {
        self.tower.gamma()
    }

    pub fn omega_star(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(Complex64::from_polar(1.0, self.phase), |acc, &a| acc * (z - a) / (1.0 - a.conj() * z))
    }

    /// The self-map `P⁻¹∘g`.
    pub fn omega(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::OutsideDisk(z));
        }
        self.tower.eval_with_leaf(z, self.omega_star(z))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.domain.eval(self.omega(z)?)
    }
}

fn draw<R: Rng>(domain: &DomainMap, gamma: &[Complex64], degree: usize, rng: &mut R) -> Result<AdmissibleFunction> {
    let phase = rng.random_range(-PI..PI);
    let zeros = (0..degree)
        .map(|_| {
            let r = BLASCHKE_ZERO_RADIUS * rng.random::<f64>().sqrt();
            Complex64::from_polar(r, rng.random_range(-PI..PI))
        })
        .collect();
    AdmissibleFunction::new(domain.clone(), gamma.to_vec(), phase, zeros)
}

/// Random admissible function with the sampler's Schur parameters; zeros are
/// uniform on `|a| ≤ 0.9`, the phase uniform on the circle.
pub fn sample_admissible(domain: &DomainMap, s: &AdmissibleSampler) -> Result<AdmissibleFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    draw(domain, &s.gamma, s.blaschke_degree, &mut rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipFailure {
    pub trial: usize,
    pub value: Complex64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub inside: usize,
    pub total: usize,
    /// Largest signed distance to the traced boundary (negative when every value is strictly inside).
    pub max_signed_distance: f64,
    pub failures: Vec<MembershipFailure>,
}

/// Draws `trials` admissible functions and checks that
/// `∫₀^{z₀} ζ^j (g(ζ) − g(0)) dζ` lies in the 1e-6-inflated traced region.
///
/// Trial `m` uses the ChaCha8 stream `m` of `seed`, so counts do not depend on
/// scheduling.
pub fn membership_trial(
    domain: &DomainMap,
    gamma: &[Complex64],
    j: i32,
    z0: Complex64,
    trials: usize,
    seed: u64,
    cfg: &QuadratureConfig,
) -> Result<MembershipReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be >= 1".into()));
    }
    let poly =
        trace_region(domain, gamma, j, z0, DEFAULT_SAMPLES, Some(Refinement::new(MEMBERSHIP_CHORD_DEVIATION)), cfg)?;
    let base = domain.eval(gamma[0])?;

    let results: Vec<(Complex64, f64, bool)> = (0..trials)
        .into_par_iter()
        .map(|m| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(m as u64);
            let degree = rng.random_range(0..=MAX_TRIAL_DEGREE);
            let g = draw(domain, gamma, degree, &mut rng)?;
            let w = segment_functional(j, z0, cfg, |zeta| g.eval(zeta), base)?;
            Ok((w, signed_distance(&poly, w), polygon_contains(&poly, w, DEFAULT_MEMBERSHIP_TOL)))
        })
        .collect::<Result<_>>()?;

    let failures: Vec<MembershipFailure> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.2)
        .map(|(trial, &(value, distance, _))| MembershipFailure { trial, value, distance })
        .collect();
    Ok(MembershipReport {
        inside: trials - failures.len(),
        total: trials,
        max_signed_distance: results.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max),
        failures,
    })
}
