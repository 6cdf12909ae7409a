//! Adaptive Gauss–Kronrod (G7, K15) quadrature along straight segments from the origin.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and depth limit for [`integrate_segment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections applied to any one subinterval.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-12, max_depth: 30 }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        let cfg = Self { abs_tol, rel_tol, max_depth };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_depth >= 1) {
            return Err(Error::InvalidInput(format!(
                "quadrature config needs abs_tol > 0, rel_tol > 0, max_depth >= 1, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Same depth, tolerances divided by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self { abs_tol: self.abs_tol / factor, rel_tol: self.rel_tol / factor, ..*self }
    }
}

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

// Total subinterval budget; a second guard next to max_depth against pathological integrands.
const MAX_INTERVALS: usize = 1 << 16;

struct Piece {
    lo: f64,
    hi: f64,
    depth: u32,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// K15 estimate of `∫_lo^hi h(t) dt` and its |K15 − G7| error.
fn gk15<F>(h: &mut F, lo: f64, hi: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = h(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, &x) in XGK[..7].iter().enumerate() {
        let f1 = h(center - half * x)?;
        let f2 = h(center + half * x)?;
        kronrod += (f1 + f2) * WGK[i];
        if i % 2 == 1 {
            gauss += (f1 + f2) * WG[i / 2];
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).norm()))
}

/// `∫₀^{z_end} f(ζ) dζ` along `ζ(t) = t·z_end`, `t ∈ [0, 1]`, with a fallible integrand.
///
/// Nodes are strictly interior to each subinterval, so `f` is never evaluated at
/// `ζ = 0` or at `ζ = z_end`. Refinement is global: the subinterval with the
/// largest error is bisected until the summed error is at most
/// `max(abs_tol, rel_tol·|result|)`.
pub fn try_integrate_segment<F>(mut integrand: F, z_end: Complex64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    cfg.validate()?;
    if z_end == Complex64::default() {
        return Ok(Complex64::default());
    }
    let mut h = |t: f64| integrand(z_end * t).map(|v| v * z_end);

    let (value, error) = gk15(&mut h, 0.0, 1.0)?;
    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { lo: 0.0, hi: 1.0, depth: 0, value, error });

    loop {
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
            return Ok(total);
        }
        if !total_err.is_finite() {
            return Err(Error::QuadratureNonConvergence { estimate: total, error_bound: total_err });
        }
        let worst = heap.pop().expect("heap holds at least one piece");
        if worst.depth >= cfg.max_depth || heap.len() + 2 > MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence { estimate: total, error_bound: total_err });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let (v1, e1) = gk15(&mut h, worst.lo, mid)?;
        let (v2, e2) = gk15(&mut h, mid, worst.hi)?;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        let depth = worst.depth + 1;
        heap.push(Piece { lo: worst.lo, hi: mid, depth, value: v1, error: e1 });
        heap.push(Piece { lo: mid, hi: worst.hi, depth, value: v2, error: e2 });
        // the running sum drifts after many updates; resum to keep the stopping test honest
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// Infallible-integrand form of [`try_integrate_segment`].
pub fn integrate_segment<F>(integrand: F, z_end: Complex64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    try_integrate_segment(|z| Ok(integrand(z)), z_end, cfg)
}
