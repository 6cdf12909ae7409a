//! Conformal maps `P` of the unit disk onto the supported target domains `Ω`,
//! each normalised by `P(0) = 1`.
//!
//! | kind | `P(z)` | `Ω` |
//! |---|---|---|
//! | half-plane of order α | `(1 + (1 − 2α)z)/(1 − z)` | `Re w > α` |
//! | sector of order β | `((1 + z)/(1 − z))^β` | `|arg w| < πβ/2` |
//! | Janowski `(A, B)` | `(1 + Az)/(1 + Bz)` | disk or half-plane |
//! | k-uniformly convex | conic-section map, `k ∈ [0, 1]` | `Re w > k|w − 1|` |

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{cauchy_coefficients, ComplexSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainKind {
    HalfPlaneOrder { alpha: f64 },
    Sector { beta: f64 },
    Janowski { a: Complex64, b: Complex64 },
    Kucv { k: f64 },
}

/// Unvalidated domain request; [`make_domain`] checks the parameter ranges.
pub type DomainSpec = DomainKind;

#[derive(Debug, Clone, PartialEq)]
pub struct DomainMap {
    kind: DomainKind,
    base: Complex64,
    alpha1: Complex64,
    alpha2: Complex64,
    convex: bool,
}

// Coefficient extraction for maps without a closed-form series.
const CAUCHY_RADIUS: f64 = 0.5;
const CAUCHY_MIN_LOG2: u32 = 4;
const CAUCHY_MAX_LOG2: u32 = 16;
const CAUCHY_TOL: f64 = 1e-12;

impl DomainMap {
    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// `P(0)`; always 1 for the catalog.
    pub fn base(&self) -> Complex64 {
        self.base
    }

    /// `P′(0)`.
    pub fn alpha1(&self) -> Complex64 {
        self.alpha1
    }

    /// `P″(0)/2`.
    pub fn alpha2(&self) -> Complex64 {
        self.alpha2
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    /// Whether every Taylor coefficient of `P` is real.
    pub fn has_real_coefficients(&self) -> bool {
        match self.kind {
            DomainKind::Janowski { a, b } => a.im == 0.0 && b.im == 0.0,
            _ => true,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        domain_eval(self, z)
    }

    pub fn taylor(&self, order: usize) -> Result<ComplexSeries> {
        domain_taylor(self, order)
    }

    /// `P(z)` without the disk check; callers guarantee `|z| < 1`.
    #[inline]
    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            DomainKind::HalfPlaneOrder { alpha } => (one + (1.0 - 2.0 * alpha) * z) / (one - z),
            DomainKind::Sector { beta } => ((one + z) / (one - z)).powf(beta),
            DomainKind::Janowski { a, b } => (one + a * z) / (one + b * z),
            DomainKind::Kucv { k } => {
                let s = z.sqrt();
                let l = ((one + s) / (one - s)).ln();
                if k == 1.0 {
                    one + (2.0 / (PI * PI)) * l * l
                } else {
                    let big_a = kucv_exponent(k);
                    let k2 = k * k;
                    ((big_a * l).cosh() - k2) / (1.0 - k2)
                }
            }
        }
    }
}

/// `A_k = (2/π)·arccos k`.
fn kucv_exponent(k: f64) -> f64 {
    2.0 / PI * k.acos()
}

pub fn make_domain(spec: DomainSpec) -> Result<DomainMap> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let (alpha1, alpha2) = match spec {
        DomainKind::HalfPlaneOrder { alpha } => {
            if !(alpha.is_finite() && alpha < 1.0) {
                return Err(Error::InvalidDomain(format!("half-plane order must be < 1, got {alpha}")));
            }
            (c(2.0 * (1.0 - alpha)), c(2.0 * (1.0 - alpha)))
        }
        DomainKind::Sector { beta } => {
            if !(beta > 0.0 && beta <= 1.0) {
                return Err(Error::InvalidDomain(format!("sector order must lie in (0, 1], got {beta}")));
            }
            (c(2.0 * beta), c(2.0 * beta * beta))
        }
        DomainKind::Janowski { a, b } => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::InvalidDomain("Janowski parameters must be finite".into()));
            }
            if b.norm() > 1.0 {
                return Err(Error::InvalidDomain(format!("Janowski requires |B| <= 1, got |B| = {}", b.norm())));
            }
            if a == b {
                return Err(Error::InvalidDomain("Janowski requires A != B".into()));
            }
            (a - b, -b * (a - b))
        }
        DomainKind::Kucv { k } => {
            if k > 1.0 {
                return Err(Error::EllipticBranchUnsupported(k));
            }
            if !(k >= 0.0) {
                return Err(Error::InvalidDomain(format!("k must lie in [0, 1], got {k}")));
            }
            let alpha1 = if k == 1.0 {
                8.0 / (PI * PI)
            } else {
                let big_a = kucv_exponent(k);
                2.0 * big_a * big_a / (1.0 - k * k)
            };
            // α₂ has no closed form here; it is read off the extracted series below
            (c(alpha1), Complex64::default())
        }
    };

    let mut map = DomainMap { kind: spec, base: c(1.0), alpha1, alpha2, convex: true };
    if let DomainKind::Kucv { .. } = spec {
        map.alpha2 = domain_taylor(&map, 2)?.coeff(2);
    }
    Ok(map)
}

pub fn domain_eval(p: &DomainMap, z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z));
    }
    Ok(p.eval_unchecked(z))
}

/// Taylor coefficients of `P` about 0, orders `0..=order`.
///
/// Closed-form for the half-plane, sector and Janowski maps. The k-uniformly
/// convex map is sampled on `|z| = 1/2` at `2^m` points; `m` doubles until the
/// scaled coefficients `a_p·2^{−p}` move by at most `1e-12`.
pub fn domain_taylor(p: &DomainMap, order: usize) -> Result<ComplexSeries> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let coeffs = match p.kind {
        DomainKind::HalfPlaneOrder { alpha } => {
            let mut v = vec![c(2.0 * (1.0 - alpha)); order + 1];
            v[0] = c(1.0);
            v
        }
        DomainKind::Sector { beta } => {
            // (1 + z)^β · (1 − z)^{−β}
            let mut up = Vec::with_capacity(order + 1);
            let mut down = Vec::with_capacity(order + 1);
            let (mut u, mut d) = (1.0, 1.0);
            for i in 0..=order {
                up.push(c(u));
                down.push(c(d));
                u *= (beta - i as f64) / (i as f64 + 1.0);
                d *= (beta + i as f64) / (i as f64 + 1.0);
            }
            return Ok(ComplexSeries::new(up).mul(&ComplexSeries::new(down)));
        }
        DomainKind::Janowski { a, b } => {
            let mut v = Vec::with_capacity(order + 1);
            v.push(c(1.0));
            let mut pow = c(1.0);
            for _ in 1..=order {
                v.push((a - b) * pow);
                pow *= -b;
            }
            v
        }
        DomainKind::Kucv { .. } => return sampled_taylor(p, order),
    };
    Ok(ComplexSeries::new(coeffs))
}

fn sampled_taylor(p: &DomainMap, order: usize) -> Result<ComplexSeries> {
    let f = |z: Complex64| Ok(p.eval_unchecked(z));
    let first = (order + 1).next_power_of_two().trailing_zeros().max(CAUCHY_MIN_LOG2);
    let mut prev = cauchy_coefficients(f, CAUCHY_RADIUS, order, first)?;
    for m in (first + 1)..=CAUCHY_MAX_LOG2 {
        let next = cauchy_coefficients(f, CAUCHY_RADIUS, order, m)?;
        let moved = (0..=order)
            .map(|q| (next.coeff(q) - prev.coeff(q)).norm() * CAUCHY_RADIUS.powi(q as i32))
            .fold(0.0, f64::max);
        if moved <= CAUCHY_TOL {
            // P(0) = 1 exactly; drop the sampling noise in the constant term
            let mut coeffs = next.into_coeffs();
            coeffs[0] = Complex64::new(1.0, 0.0);
            return Ok(ComplexSeries::new(coeffs));
        }
        prev = next;
    }
    Err(Error::CoefficientExtraction { max_log2: CAUCHY_MAX_LOG2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn halfplane(alpha: f64) -> DomainMap {
        make_domain(DomainKind::HalfPlaneOrder { alpha }).unwrap()
    }

    fn kucv(k: f64) -> DomainMap {
        make_domain(DomainKind::Kucv { k }).unwrap()
    }

    /// Exact series of the conic map via `L² = 4·atanh(√z)²`, used as an
    /// independent check on the sampled coefficients.
    fn kucv_series_oracle(k: f64, order: usize) -> ComplexSeries {
        let mut l2 = vec![c(0.0, 0.0); order + 1];
        for (m, slot) in l2.iter_mut().enumerate().skip(1) {
            // [z^m] atanh(√z)² = Σ_{i+l=m−1} 1/((2i+1)(2l+1))
            let s: f64 = (0..m).map(|i| 1.0 / ((2 * i + 1) as f64 * (2 * (m - 1 - i) + 1) as f64)).sum();
            *slot = c(4.0 * s, 0.0);
        }
        let l2 = ComplexSeries::new(l2);
        if k == 1.0 {
            let mut out = l2.scale(c(2.0 / (PI * PI), 0.0));
            out = out.add(&ComplexSeries::constant(c(1.0, 0.0), order));
            return out;
        }
        // cosh(A√u) = Σ A^{2m} u^m / (2m)!
        let a = kucv_exponent(k);
        let mut outer = Vec::with_capacity(order + 1);
        let mut term = 1.0;
        for m in 0..=order {
            outer.push(c(term, 0.0));
            term *= a * a / ((2 * m + 1) as f64 * (2 * m + 2) as f64);
        }
        let cosh = ComplexSeries::new(outer).compose(&l2).unwrap();
        let k2 = k * k;
        cosh.sub(&ComplexSeries::constant(c(k2, 0.0), order)).scale(c(1.0 / (1.0 - k2), 0.0))
    }

    fn catalog() -> Vec<DomainMap> {
        vec![
            halfplane(0.0),
            halfplane(0.5),
            halfplane(-0.5),
            make_domain(DomainKind::Sector { beta: 0.5 }).unwrap(),
            make_domain(DomainKind::Sector { beta: 1.0 }).unwrap(),
            make_domain(DomainKind::Janowski { a: c(2.0, 0.0), b: c(-1.0, 0.0) }).unwrap(),
            make_domain(DomainKind::Janowski { a: c(-2.0, 0.0), b: c(-1.0, 0.0) }).unwrap(),
            make_domain(DomainKind::Janowski { a: c(0.5, 0.0), b: c(-0.5, 0.0) }).unwrap(),
            make_domain(DomainKind::Janowski { a: Complex64::from_polar(1.0, -0.8), b: c(-1.0, 0.0) }).unwrap(),
            kucv(0.0),
            kucv(0.5),
            kucv(1.0),
        ]
    }

    fn sample_points(n: usize) -> Vec<Complex64> {
        // deterministic spread over |z| < 0.95
        (0..n)
            .map(|i| {
                let r = 0.95 * ((i as f64 * 0.618_033_988_75) % 1.0).sqrt();
                Complex64::from_polar(r, i as f64 * 2.399_963_23)
            })
            .collect()
    }

    #[test]
    fn halfplane_values() {
        let p = halfplane(0.0);
        assert_eq!((p.alpha1(), p.alpha2()), (c(2.0, 0.0), c(2.0, 0.0)));
        assert!((p.eval(c(0.5, 0.0)).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        let s = p.taylor(3).unwrap();
        assert_eq!(s, ComplexSeries::from_real(&[1.0, 2.0, 2.0, 2.0]));
    }

    #[test]
    fn janowski_one_minus_one_is_the_halfplane() {
        let j = make_domain(DomainKind::Janowski { a: c(1.0, 0.0), b: c(-1.0, 0.0) }).unwrap();
        let h = halfplane(0.0);
        assert_eq!((j.alpha1(), j.alpha2()), (h.alpha1(), h.alpha2()));
        for z in sample_points(50) {
            assert!((j.eval(z).unwrap() - h.eval(z).unwrap()).norm() <= 1e-12);
        }
    }

    #[test]
    fn janowski_taylor_closed_form() {
        let (a, b) = (c(0.3, 0.7), c(-0.4, 0.2));
        let p = make_domain(DomainKind::Janowski { a, b }).unwrap();
        let s = p.taylor(2).unwrap();
        assert_eq!(s.coeffs(), &[c(1.0, 0.0), a - b, -b * (a - b)]);
    }

    #[test]
    fn sector_one_is_the_halfplane() {
        let p = make_domain(DomainKind::Sector { beta: 1.0 }).unwrap();
        assert!(p.taylor(2).unwrap().max_abs_diff(&ComplexSeries::from_real(&[1.0, 2.0, 2.0])) < 1e-15);
    }

    #[test]
    fn kucv_one_first_coefficient() {
        let p = kucv(1.0);
        assert!((p.alpha1() - c(0.810_569_469_138_702_2, 0.0)).norm() < 1e-15);
        // mpmath: 16/(3π²)
        assert!((p.alpha2() - c(0.540_379_646_092_468_1, 0.0)).norm() < 1e-10);
        let half = kucv(0.5);
        assert!((half.alpha1() - c(32.0 / 27.0, 0.0)).norm() < 1e-14);
        assert!((half.alpha2() - c(0.965_706_447_187_928_7, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn kucv_zero_reduces_to_halfplane() {
        let (k, h) = (kucv(0.0), halfplane(0.0));
        assert!((k.eval(c(0.5, 0.0)).unwrap() - c(3.0, 0.0)).norm() < 1e-14);
        for z in sample_points(100) {
            assert!((k.eval(z).unwrap() - h.eval(z).unwrap()).norm() <= 1e-10, "z = {z}");
        }
    }

    #[test]
    fn kucv_sampled_series_matches_exact_series() {
        for k in [0.0, 0.3, 0.5, 0.9, 1.0] {
            let got = kucv(k).taylor(12).unwrap();
            let want = kucv_series_oracle(k, 12);
            for q in 0..=12 {
                let tol = 1e-12 * 2f64.powi(q as i32);
                assert!((got.coeff(q) - want.coeff(q)).norm() < tol, "k={k} q={q}");
            }
        }
    }

    #[test]
    fn every_map_is_one_at_origin() {
        for p in catalog() {
            assert_eq!(p.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0), "{:?}", p.kind());
            assert_eq!(p.base(), c(1.0, 0.0));
        }
    }

    #[test]
    fn taylor_agrees_with_alpha_fields() {
        for p in catalog() {
            let s = p.taylor(4).unwrap();
            assert!((s.coeff(1) - p.alpha1()).norm() < 1e-10, "{:?}", p.kind());
            assert!((s.coeff(2) - p.alpha2()).norm() < 1e-10, "{:?}", p.kind());
        }
    }

    #[test]
    fn taylor_agrees_with_pointwise_values() {
        for p in catalog() {
            let s = p.taylor(80).unwrap_or_else(|_| p.taylor(40).unwrap());
            let z = c(0.1, -0.15);
            assert!((s.eval(z) - p.eval(z).unwrap()).norm() < 1e-9, "{:?}", p.kind());
        }
    }

    #[test]
    fn kucv_values_stay_in_the_conic_domain() {
        for k in [0.0, 0.25, 0.5, 0.75, 0.95, 1.0] {
            let p = kucv(k);
            for z in sample_points(1000) {
                let w = p.eval(z).unwrap();
                assert!(w.re - k * (w - 1.0).norm() > -1e-9, "k={k} z={z} w={w}");
            }
        }
    }

    #[test]
    fn janowski_reduction_for_orders() {
        for alpha in [-0.5, 0.0, 0.25, 0.5] {
            let j = make_domain(DomainKind::Janowski { a: c(1.0 - 2.0 * alpha, 0.0), b: c(-1.0, 0.0) }).unwrap();
            let h = halfplane(alpha);
            for z in sample_points(100) {
                assert!((j.eval(z).unwrap() - h.eval(z).unwrap()).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(make_domain(DomainKind::HalfPlaneOrder { alpha: 1.0 }).is_err());
        assert!(make_domain(DomainKind::Sector { beta: 0.0 }).is_err());
        assert!(make_domain(DomainKind::Sector { beta: 1.5 }).is_err());
        assert!(make_domain(DomainKind::Janowski { a: c(0.5, 0.0), b: c(0.5, 0.0) }).is_err());
        assert!(make_domain(DomainKind::Janowski { a: c(0.5, 0.0), b: c(1.5, 0.0) }).is_err());
        assert!(make_domain(DomainKind::Kucv { k: -0.1 }).is_err());
        let err = make_domain(DomainKind::Kucv { k: 2.0 }).unwrap_err();
        assert!(err.to_string().contains("elliptic branch unsupported"));
    }

    #[test]
    fn evaluation_outside_disk_is_an_error() {
        let p = halfplane(0.0);
        assert!(matches!(p.eval(c(1.0, 0.0)), Err(Error::OutsideDisk(_))));
        assert!(matches!(p.eval(c(0.0, -1.2)), Err(Error::OutsideDisk(_))));
    }
}
