//! Variability of `log f′(z₀)` over `CV(Ω)` (equivalently `log(f(z₀)/z₀)` over
//! `S*(Ω)`) with optional prescribed `a₂ = λ` and `a₃ = μ`.
//!
//! For `f ∈ CV(Ω)`, `g = 1 + zf″/f′` maps into `Ω` with `g(0) = 1`, so the data
//! of `P⁻¹∘g` starts with `c₀ = 0`. Throughout this module a parameter list
//! `gamma = (γ₁, γ₂, …)` therefore means the Schur parameters after the implied
//! leading `γ₀ = 0`.

use num_complex::Complex64;

use crate::domains::DomainMap;
use crate::error::{Error, Result};
use crate::numerics::{try_integrate_segment, ComplexSeries, QuadratureConfig};
use crate::regions::{
    boundary_point, k_primitive, q_point, region_compute, trace_curve, RegionPolygon, RegionRequest, RegionResult,
    TraceMeta,
};
use crate::schur::{tower_taylor, BlaschkeTower, CaratheodoryData, DEFAULT_TOL_UNIT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    None,
    A2 { lambda: Complex64 },
    A2A3 { lambda: Complex64, mu: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetClass {
    ConvexClass,
    StarlikeClass,
}

#[derive(Debug, Clone)]
pub struct VariabilityQuery {
    pub domain: DomainMap,
    pub z0: Complex64,
    pub constraint: Constraint,
    pub target: TargetClass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gamma2 {
    Value(Complex64),
    /// `|γ₁| = 1` and the coefficient relation holds.
    Zero,
    /// `|γ₁| = 1` and the coefficient relation fails.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub gamma1: Complex64,
    pub gamma2: Gamma2,
}

fn with_leading_zero(gamma: &[Complex64]) -> Vec<Complex64> {
    let mut full = Vec::with_capacity(gamma.len() + 1);
    full.push(Complex64::default());
    full.extend_from_slice(gamma);
    full
}

/// `γ₁ = 2λ/α₁`.
pub fn gamma_from_a2(lambda: Complex64, domain: &DomainMap) -> Complex64 {
    2.0 * lambda / domain.alpha1()
}

/// `(γ₁, γ₂)` for prescribed `(a₂, a₃) = (λ, μ)`.
pub fn gamma_from_a2a3(lambda: Complex64, mu: Complex64, domain: &DomainMap) -> GammaPair {
    let (a1, a2) = (domain.alpha1(), domain.alpha2());
    let gamma1 = gamma_from_a2(lambda, domain);
    let lhs = 3.0 * a1 * a1 * mu;
    let rhs = 2.0 * (a1 * a1 + a2) * lambda * lambda;

    let gamma2 = if (gamma1.norm() - 1.0).abs() <= DEFAULT_TOL_UNIT {
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        if (lhs - rhs).norm() <= DEFAULT_TOL_UNIT * scale {
            Gamma2::Zero
        } else {
            Gamma2::Infinite
        }
    } else {
        let num = 2.0 * a1.conj() * (lhs - rhs);
        let den = a1 * a1 * (a1.norm_sqr() - 4.0 * lambda.norm_sqr());
        Gamma2::Value(num / den)
    };
    GammaPair { gamma1, gamma2 }
}

/// The region `{log f′(z₀)}` (or `{log f(z₀)/z₀}` for the starlike class, which
/// is the same set) under the query's constraint.
pub fn cv_region(q: &VariabilityQuery, samples: usize, cfg: &QuadratureConfig) -> Result<RegionResult> {
    let zero = Complex64::default();
    let data = |c: Vec<Complex64>| CaratheodoryData::new(c);
    let delegate = |c: Vec<Complex64>| -> Result<RegionResult> {
        let mut req = RegionRequest::new(q.domain.clone(), data(c)?, -1, q.z0);
        req.samples = samples;
        req.quad = *cfg;
        region_compute(&req)
    };

    match q.constraint {
        Constraint::None => {
            if !(q.z0.norm() > 0.0 && q.z0.norm() < 1.0) {
                return Err(Error::InvalidInput(format!("z0 must satisfy 0 < |z0| < 1, got {}", q.z0)));
            }
            let (thetas, points) =
                trace_curve(samples, None, |t| k_primitive(&q.domain, q.z0 * Complex64::from_polar(1.0, t), cfg))?;
            let meta = TraceMeta { z0: q.z0, j: -1, gamma: vec![zero] };
            Ok(RegionResult::Region(RegionPolygon { points, thetas, meta: Some(meta) }))
        }
        Constraint::A2 { lambda } => delegate(vec![zero, gamma_from_a2(lambda, &q.domain)]),
        Constraint::A2A3 { lambda, mu } => {
            let pair = gamma_from_a2a3(lambda, mu, &q.domain);
            let g1 = pair.gamma1;
            match pair.gamma2 {
                Gamma2::Zero => boundary_point(&q.domain, &[zero, g1], 1, -1, q.z0, cfg).map(RegionResult::SinglePoint),
                Gamma2::Infinite => Ok(RegionResult::Empty),
                Gamma2::Value(_) if g1.norm() > 1.0 => Ok(RegionResult::Empty),
                Gamma2::Value(g2) => delegate(vec![zero, g1, g2 * (1.0 - g1.norm_sqr())]),
            }
        }
    }
}

/// Taylor coefficients `(0, 1, a₂, a₃, …)` of the extremal
/// `f(z) = ∫₀^z exp Q(ζ) dζ`, `Q(z) = ∫₀^z ζ^{−1}(P(ω(ζ)) − 1) dζ`, by series
/// arithmetic only.
pub fn extremal_coefficients(
    domain: &DomainMap,
    gamma: &[Complex64],
    eps: Complex64,
    order: usize,
) -> Result<ComplexSeries> {
    if order < 3 {
        return Err(Error::InvalidInput(format!("extremal coefficients need order >= 3, got {order}")));
    }
    let tower = BlaschkeTower::new(with_leading_zero(gamma), eps)?;
    let omega = tower_taylor(&tower, order);
    let g = domain.taylor(order)?.compose(&omega)?;
    let q = g.shift_down().integrate();
    let f = q.exp().integrate();
    Ok(f.truncate(order))
}

/// `f(z)` for the extremal function, as a nested quadrature.
///
/// The inner integrals run at one tenth of the outer tolerances.
pub fn extremal_f_eval(
    domain: &DomainMap,
    gamma: &[Complex64],
    eps: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z));
    }
    let full = with_leading_zero(gamma);
    BlaschkeTower::new(full.clone(), eps)?;
    let inner = cfg.tightened(10.0);
    try_integrate_segment(|zeta| Ok(q_point(domain, &full, -1, zeta, eps, &inner)?.exp()), z, cfg)
}
