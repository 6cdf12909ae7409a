//! Exact variability regions of `∫₀^{z₀} ζ^j (g(ζ) − g(0)) dζ` over analytic
//! functions `g` mapping the unit disk into a domain `Ω` with prescribed
//! Carathéodory data.
//!
//! The pipeline is:
//!
//! * [`schur`] turns Carathéodory data into Schur parameters and classifies it
//!   against the coefficient body (interior, boundary, exterior).
//! * [`domains`] provides the conformal maps `P : 𝔻 → Ω` for the supported
//!   target domains.
//! * [`regions`] integrates along extremal Blaschke towers to trace the region
//!   boundary, and provides the polygon geometry used to check it.
//! * [`variability`] specialises the engine to `log f′(z₀)` for the classes
//!   `CV(Ω)` and `S*(Ω)` with prescribed `a₂`, `a₃`.
//! * [`oracle`] holds independent closed forms and Monte-Carlo samplers used for
//!   cross-validation.

// `!(x < y)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domains;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod regions;
pub mod schur;
pub mod variability;

pub use num_complex::Complex64;

pub use domains::{domain_eval, domain_taylor, make_domain, DomainKind, DomainMap, DomainSpec};
pub use error::{Error, Result};
pub use numerics::{integrate_segment, try_integrate_segment, ComplexSeries, QuadratureConfig, DEFAULT_SERIES_ORDER};
pub use oracle::{
    h_function, membership_trial, sample_admissible, theorem_a_point, AdmissibleFunction, AdmissibleSampler,
    ClosedFormCurve, MembershipReport,
};
pub use regions::{
    hausdorff, k_primitive, polygon_contains, polygon_convexity, q_point, region_compute, Refinement, RegionPolygon,
    RegionRequest, RegionResult,
};
pub use schur::{
    mobius_eval, schur_parameters, toeplitz_membership, tower_eval, tower_taylor, BlaschkeTower, CaratheodoryData,
    Classification, DiskAutomorphism, SchurParameters, SchurValue, DEFAULT_TOL_UNIT,
};
pub use variability::{
    cv_region, extremal_coefficients, extremal_f_eval, gamma_from_a2, gamma_from_a2a3, Constraint, Gamma2, GammaPair,
    TargetClass, VariabilityQuery,
};
