//! Shared fixtures for the criterion benches.

use num_complex::Complex64;
use varregion_core::{make_domain, DomainKind, DomainMap};

pub fn catalog() -> Vec<(&'static str, DomainMap)> {
    [
        ("halfplane", DomainKind::HalfPlaneOrder { alpha: 0.0 }),
        ("sector", DomainKind::Sector { beta: 0.5 }),
        ("janowski", DomainKind::Janowski { a: Complex64::new(2.0, 0.0), b: Complex64::new(-1.0, 0.0) }),
        ("kucv", DomainKind::Kucv { k: 1.0 }),
    ]
    .into_iter()
    .map(|(name, kind)| (name, make_domain(kind).expect("catalog domain")))
    .collect()
}

pub fn sample_gamma() -> Vec<Complex64> {
    vec![Complex64::new(0.2, -0.1), Complex64::new(0.4, 0.3), Complex64::new(-0.3, 0.5)]
}

pub fn sample_z0() -> Complex64 {
    Complex64::new(0.45, 0.3)
}
