use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-invertible series: constant term is zero")]
    NonInvertibleSeries,

    #[error("composition requires inner(0)=0, got {0}")]
    CompositionConstantTerm(Complex64),

    #[error(
        "quadrature did not converge within the depth limit \
         (best estimate {estimate}, error bound {error_bound:e})"
    )]
    QuadratureNonConvergence { estimate: Complex64, error_bound: f64 },

    #[error("pole hit evaluating disk automorphism with a = {a} at z = {z}")]
    PoleHit { a: Complex64, z: Complex64 },

    #[error("point {0} lies outside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("elliptic branch unsupported: k-uniformly convex maps require k in [0, 1], got {0}")]
    EllipticBranchUnsupported(f64),

    #[error("invalid domain parameters: {0}")]
    InvalidDomain(String),

    #[error("coefficient extraction did not converge up to 2^{max_log2} samples")]
    CoefficientExtraction { max_log2: u32 },

    #[error("trace degenerate: samples {0} and {1} coincide")]
    TraceDegenerate(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
