//! Moving frames on curves, curve characterizations in Euclidean, Lorentzian,
//! isotropic and constant-curvature spaces, and the quantum mechanics of
//! particles confined to tubes and invariant surfaces.
//!
//! Everything works on sampled data: curves are arrays of points, derivatives
//! are high-order finite differences and integrals are interpolatory
//! quadratures. Units follow `hbar^2 / 2m = 1`.

pub mod curve;
pub mod error;
pub mod indefinite;
pub mod level;
pub mod numeric;
pub mod rm;
pub mod schrodinger;
pub mod spaceform;
pub mod surfaces;

pub use curve::{FrenetData, SampledCurve};
pub use error::{GeoError, Result};
