//! Complex truncated-series arithmetic and adaptive contour quadrature.
//!
//! Every function here is pure and safe to call from any number of threads.

mod quadrature;
mod series;

pub use quadrature::{integrate_segment, try_integrate_segment, QuadratureConfig};
pub use series::{cauchy_coefficients, ComplexSeries, DEFAULT_SERIES_ORDER};
