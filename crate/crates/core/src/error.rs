use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0 * inf is undefined")]
    UndefinedProduct,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("isotropic argument: q vanishes on {0}")]
    IsotropicArgument(String),
    #[error("zero vector has no ray")]
    ZeroVector,
    #[error("vector coordinates must be finite or -inf")]
    InfiniteCoordinate,
    #[error("ray is not on the interval")]
    NotOnInterval,
    #[error("interval endpoints coincide")]
    DegenerateInterval,
    #[error("piecewise monomial function is discontinuous at breakpoint {0}")]
    DiscontinuousInput(String),
    #[error("malformed piecewise monomial function: {0}")]
    MalformedPm(String),
    #[error("composition leaves the representable domain: {0}")]
    DomainMismatch(String),
    #[error("bad subinterval: {0}")]
    BadSubinterval(String),
    #[error("isotropic interval endpoint")]
    IsotropicEndpoint,
    #[error("witness is perpendicular to both endpoints")]
    PerpendicularWitness,
    #[error("pair ({0},{1}) is not strict in the stratum")]
    NotStrictPair(usize, usize),
    #[error("witness does not lie in the claimed stratum")]
    WitnessNotInStratum,
    #[error("interval has no entrance into the target stratum")]
    NoEntrance,
    #[error("ray is not S-regular")]
    NotRegular,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("interval has no anisotropic interior point")]
    NoAnisotropicInterior,
    #[error("ill-posed approach: {0}")]
    IllPosedApproach(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
