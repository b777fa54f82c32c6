use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Variants that carry a location report the parameter value (or sample
/// index) where the problem was detected so callers can point at the data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("curve needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("curve parameters must be strictly increasing (sample {index})")]
    NonMonotoneParams { index: usize },
    #[error("samples have inconsistent dimension at index {index}")]
    DimensionMismatch { index: usize },
    #[error("curve is degenerate: speed {speed:e} at sample {index}")]
    DegenerateCurve { index: usize, speed: f64 },
    #[error("invalid parameter range: {0}")]
    InvalidRange(String),
    #[error("initial frame is not orthonormal (defect {defect:e})")]
    InvalidFrame { defect: f64 },
    #[error("frame undefined at s = {s} (zero curvature)")]
    UndefinedFrame { s: f64 },
    #[error("curve is not closed (end gap {gap:e})")]
    NotClosed { gap: f64 },
    #[error("curve is not spherical about the given center (radius spread {spread:e})")]
    NotSpherical { spread: f64 },
    #[error("normal development is degenerate: all samples at {point:?}")]
    DegenerateFit { point: Vec<f64> },
    #[error("no line fits the normal development")]
    NoLineFit,
    #[error("causal character changes along the curve (sample {index})")]
    MixedCausalCharacter { index: usize },
    #[error("lightlike curve is a straight line (no pseudo arc length)")]
    DegenerateLightlike,
    #[error("curve is not lightlike (sample {index})")]
    NotLightlike { index: usize },
    #[error("lightlike curves have no RM frame; use a null frame")]
    LightlikeUnsupported,
    #[error("hyperbolic frame angle exceeds the overflow guard at s = {s}")]
    HyperbolicOverflow { s: f64 },
    #[error("curve is not admissible in isotropic space at sample {index}")]
    NotAdmissible { index: usize },
    #[error("unsupported quadric signature: eigenvalues {eigenvalues:?}")]
    UnsupportedSignature { eigenvalues: [f64; 3] },
    #[error("vector is not tangent to the space form (defect {defect:e})")]
    NotTangent { defect: f64 },
    #[error("geodesic radius {z0} is not below the cut-off {limit}")]
    RadiusOutOfRange { z0: f64, limit: f64 },
    #[error("torsion vanishes at s = {s}")]
    ZeroTorsion { s: f64 },
    #[error("tube radius too large: 1 - r*kappa = {f} at s = {s}")]
    TubeTooFat { s: f64, f: f64 },
    #[error("centerline curvature vanishes at s = {s}")]
    SingularCenterline { s: f64 },
    #[error("translation direction must leave the cross-section plane")]
    DegenerateDirection,
    #[error("1 - rho^2 A^2 <= 0 at rho = {rho}")]
    DomainViolation { rho: f64 },
    #[error("Bour integrand undefined at xi = {xi}")]
    BourDomainViolation { xi: f64 },
    #[error("minimal helicoidal family needs b >= 1, got b = {b}")]
    InvalidFamily { b: f64 },
    #[error("grid too coarse: need at least {needed} points, got {got}")]
    GridTooCoarse { needed: usize, got: usize },
    #[error("tube is not thin: r * max kappa = {value}")]
    NotThin { value: f64 },
    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;
