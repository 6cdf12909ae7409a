//! Extremal functionals `Q_{γ,j}(z₀, ε)`, the primitive `K`, and traced
//! boundaries of variability regions.
//!
//! For interior data the region is `Q_{γ,j}(z₀, 𝔻̄)`, whose boundary is the image
//! of the unit circle under a convex univalent map of `ε`, so a trace over an
//! `ε`-grid gives a convex polygon inscribed in the region.

mod geometry;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::domains::DomainMap;
use crate::error::{Error, Result};
use crate::numerics::{try_integrate_segment, QuadratureConfig};
use crate::schur::{schur_parameters, BlaschkeTower, CaratheodoryData, Classification, DEFAULT_TOL_UNIT};

pub use geometry::{
    hausdorff, point_segment_distance, polygon_contains, polygon_convexity, signed_area2, signed_distance,
};

pub const DEFAULT_SAMPLES: usize = 256;
pub const DEFAULT_CONVEXITY_TOL: f64 = 1e-9;
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-6;

/// Adaptive bisection of trace edges until each edge's midpoint lies within
/// `max_chord_deviation` of the chord.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub max_chord_deviation: f64,
    /// Bisection levels allowed per initial edge.
    pub max_levels: u32,
}

impl Refinement {
    pub fn new(max_chord_deviation: f64) -> Self {
        Self { max_chord_deviation, max_levels: 16 }
    }
}

#[derive(Debug, Clone)]
pub struct RegionRequest {
    pub domain: DomainMap,
    pub data: CaratheodoryData,
    pub j: i32,
    pub z0: Complex64,
    pub samples: usize,
    pub quad: QuadratureConfig,
    pub refinement: Option<Refinement>,
}

impl RegionRequest {
    pub fn new(domain: DomainMap, data: CaratheodoryData, j: i32, z0: Complex64) -> Self {
        Self { domain, data, j, z0, samples: DEFAULT_SAMPLES, quad: QuadratureConfig::default(), refinement: None }
    }

    pub fn validate(&self) -> Result<()> {
        validate_point(self.j, self.z0)?;
        if self.samples < 8 {
            return Err(Error::InvalidInput(format!("samples must be >= 8, got {}", self.samples)));
        }
        self.quad.validate()
    }
}

/// Where a trace came from.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceMeta {
    pub z0: Complex64,
    pub j: i32,
    pub gamma: Vec<Complex64>,
}

/// Ordered boundary samples `w(θ)`; `thetas[m]` is the argument of `ε` for `points[m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPolygon {
    pub points: Vec<Complex64>,
    pub thetas: Vec<f64>,
    pub meta: Option<TraceMeta>,
}

impl RegionPolygon {
    /// Bare polygon with a uniform parameter grid and no trace metadata.
    pub fn from_points(points: Vec<Complex64>) -> Self {
        let thetas = uniform_grid(points.len());
        Self { points, thetas, meta: None }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn centroid(&self) -> Complex64 {
        self.points.iter().sum::<Complex64>() / self.points.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionResult {
    Region(RegionPolygon),
    SinglePoint(Complex64),
    Empty,
}

impl RegionResult {
    pub fn polygon(&self) -> Option<&RegionPolygon> {
        match self {
            RegionResult::Region(p) => Some(p),
            _ => None,
        }
    }
}

/// `θ_m = −π + 2πm/samples`.
pub fn uniform_grid(samples: usize) -> Vec<f64> {
    (0..samples).map(|m| -PI + 2.0 * PI * m as f64 / samples as f64).collect()
}

fn validate_point(j: i32, z0: Complex64) -> Result<()> {
    if j < -1 {
        return Err(Error::InvalidInput(format!("j must be >= -1, got {j}")));
    }
    if !(z0.norm() > 0.0 && z0.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("z0 must satisfy 0 < |z0| < 1, got {z0}")));
    }
    Ok(())
}

/// `∫₀^{z₀} ζ^j (g(ζ) − g₀) dζ` along the segment; nodes never touch `ζ = 0`.
pub(crate) fn segment_functional<G>(
    j: i32,
    z0: Complex64,
    cfg: &QuadratureConfig,
    g: G,
    g0: Complex64,
) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    try_integrate_segment(
        |zeta| {
            let diff = g(zeta)? - g0;
            Ok(if j == -1 { diff / zeta } else { diff * zeta.powi(j) })
        },
        z0,
        cfg,
    )
}

/// `Q_{γ,j}(z₀, ε) = ∫₀^{z₀} ζ^j {P(ω_{γ,ε}(ζ)) − P(γ₀)} dζ` for finite interior `γ`.
pub fn q_point(
    domain: &DomainMap,
    gamma: &[Complex64],
    j: i32,
    z0: Complex64,
    eps: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    validate_point(j, z0)?;
    let tower = BlaschkeTower::new(gamma.to_vec(), eps)?;
    let base = domain.eval(gamma[0])?;
    segment_functional(j, z0, cfg, |zeta| domain.eval(tower.eval(zeta)?), base)
}

/// `K(z) = ∫₀^z ζ^{−1} (P(ζ) − P(0)) dζ`.
pub fn k_primitive(domain: &DomainMap, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z));
    }
    if z == Complex64::default() {
        return Ok(z);
    }
    segment_functional(-1, z, cfg, |zeta| domain.eval(zeta), domain.base())
}

/// Single value of the region for boundary data `(γ₀, …, γᵢ, 0, …, 0)`.
///
/// The extremal self-map is `σ_{γ₀}(ζσ_{γ₁}(⋯ζσ_{γ_{i−1}}(γᵢζ)⋯))`. For `i = 0`
/// it is the unimodular constant `γ₀`, the integrand vanishes identically and
/// the value is 0.
pub fn boundary_point(
    domain: &DomainMap,
    gamma: &[Complex64],
    boundary_index: usize,
    j: i32,
    z0: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    validate_point(j, z0)?;
    if boundary_index == 0 {
        return Ok(Complex64::default());
    }
    let tower = BlaschkeTower::new_unchecked(gamma[..boundary_index].to_vec(), gamma[boundary_index]);
    let base = domain.eval(gamma[0])?;
    segment_functional(j, z0, cfg, |zeta| domain.eval(tower.eval(zeta)?), base)
}

/// Traces `ε ↦ value(ε)` over the unit circle, optionally refining edges.
pub(crate) fn trace_curve<F>(
    samples: usize,
    refinement: Option<Refinement>,
    value: F,
) -> Result<(Vec<f64>, Vec<Complex64>)>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let grid = uniform_grid(samples);
    let points: Vec<Complex64> = grid.par_iter().map(|&t| value(t)).collect::<Result<_>>()?;

    let (thetas, points) = match refinement {
        None => (grid, points),
        Some(r) => {
            let n = grid.len();
            let inserted: Vec<Vec<(f64, Complex64)>> = (0..n)
                .into_par_iter()
                .map(|m| {
                    let (ta, wa) = (grid[m], points[m]);
                    let (tb, wb) =
                        if m + 1 < n { (grid[m + 1], points[m + 1]) } else { (grid[0] + 2.0 * PI, points[0]) };
                    let mut out = Vec::new();
                    refine_edge(&value, &r, (ta, wa), (tb, wb), 0, &mut out)?;
                    Ok(out)
                })
                .collect::<Result<_>>()?;
            let mut thetas = Vec::with_capacity(n);
            let mut pts = Vec::with_capacity(n);
            for m in 0..n {
                thetas.push(grid[m]);
                pts.push(points[m]);
                for &(t, w) in &inserted[m] {
                    thetas.push(t);
                    pts.push(w);
                }
            }
            (thetas, pts)
        }
    };

    let n = points.len();
    for m in 0..n {
        let next = (m + 1) % n;
        if !points[m].is_finite() {
            return Err(Error::InvalidInput(format!("non-finite trace value at sample {m}")));
        }
        if points[m] == points[next] {
            return Err(Error::TraceDegenerate(m, next));
        }
    }
    Ok((thetas, points))
}

fn refine_edge<F>(
    value: &F,
    r: &Refinement,
    a: (f64, Complex64),
    b: (f64, Complex64),
    level: u32,
    out: &mut Vec<(f64, Complex64)>,
) -> Result<()>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if level >= r.max_levels {
        return Ok(());
    }
    let tm = 0.5 * (a.0 + b.0);
    let wm = value(tm)?;
    if point_segment_distance(wm, a.1, b.1) <= r.max_chord_deviation {
        return Ok(());
    }
    refine_edge(value, r, a, (tm, wm), level + 1, out)?;
    out.push((tm, wm));
    refine_edge(value, r, (tm, wm), b, level + 1, out)
}

/// Trace of `Q_{γ,j}(z₀, e^{iθ})` for finite interior `γ`.
pub fn trace_region(
    domain: &DomainMap,
    gamma: &[Complex64],
    j: i32,
    z0: Complex64,
    samples: usize,
    refinement: Option<Refinement>,
    cfg: &QuadratureConfig,
) -> Result<RegionPolygon> {
    validate_point(j, z0)?;
    let (thetas, points) =
        trace_curve(samples, refinement, |t| q_point(domain, gamma, j, z0, Complex64::from_polar(1.0, t), cfg))?;
    Ok(RegionPolygon { points, thetas, meta: Some(TraceMeta { z0, j, gamma: gamma.to_vec() }) })
}

/// Classifies the data and returns the traced region, its single point, or nothing.
pub fn region_compute(req: &RegionRequest) -> Result<RegionResult> {
    req.validate()?;
    let params = schur_parameters(&req.data, DEFAULT_TOL_UNIT);
    match params.classification {
        Classification::Exterior => Ok(RegionResult::Empty),
        Classification::Boundary => {
            let gamma = params.finite_values().expect("boundary parameters are finite");
            let i = params.boundary_index(DEFAULT_TOL_UNIT).expect("boundary has a unimodular entry");
            boundary_point(&req.domain, &gamma, i, req.j, req.z0, &req.quad).map(RegionResult::SinglePoint)
        }
        Classification::Interior => {
            let gamma = params.finite_values().expect("interior parameters are finite");
            trace_region(&req.domain, &gamma, req.j, req.z0, req.samples, req.refinement, &req.quad)
                .map(RegionResult::Region)
        }
    }
}
