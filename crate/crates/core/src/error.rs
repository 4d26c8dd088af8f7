use thiserror::Error;

/// Errors produced by the geometric and variational routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("support function is not convex: radius of curvature {rho:.3e} at theta = {theta:.6}")]
    NonConvex { theta: f64, rho: f64 },

    #[error("{what} = {value} is outside its admissible range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("the two boundary points coincide (theta1 = {0}, theta2 = {1})")]
    CoincidentPoints(f64, f64),

    #[error("endpoints do not bound a perfect arc (residual {residual:.3e})")]
    NotPerfect { residual: f64 },

    #[error("normals are opposite but the chord is not aligned with them (residual {residual:.3e})")]
    NormalsParallelButNotAligned { residual: f64 },

    #[error("two-point gradient vanishes at ({s1}, {s2}); the family cannot be continued")]
    DegenerateGradient { s1: f64, s2: f64 },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("theta = {theta} is not a vertex (kappa' = {derivative:.3e})")]
    NotAVertex { theta: f64, derivative: f64 },

    #[error("vertex at theta = {theta} is degenerate (kappa_ss = {second:.3e})")]
    DegenerateVertex { theta: f64, second: f64 },

    #[error("domain is not in the symmetric four-vertex class")]
    NotClassA,

    #[error("domain has area {area}, expected pi")]
    NotNormalized { area: f64 },

    #[error("domain is a disk; the comparison is an equality")]
    IsDisk,

    #[error("no perfect arc found enclosing area {area}")]
    NoArcAtArea { area: f64 },

    #[error("perturbation leaves the convex regime at u = {u:.6} (s = {s})")]
    NonConvexPerturbation { s: f64, u: f64 },

    #[error("area normalization failed (raw area {area})")]
    AreaNormalizationFailure { area: f64 },

    #[error("profile oracle failed at s = {s}: {reason}")]
    OracleFailure { s: f64, reason: String },

    #[error("least-squares fit is ill-conditioned: {0}")]
    FitIllConditioned(&'static str),

    #[error("invalid domain spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for failures caused by the input domain not meeting a precondition,
    /// as opposed to a numerical routine giving up.
    pub fn is_domain_precondition(&self) -> bool {
        matches!(
            self,
            Error::NonConvex { .. }
                | Error::NotClassA
                | Error::NotNormalized { .. }
                | Error::IsDisk
                | Error::NotAVertex { .. }
                | Error::DegenerateVertex { .. }
                | Error::NonConvexPerturbation { .. }
                | Error::OutOfRange { .. }
                | Error::CoincidentPoints(..)
        )
    }
}
