//! Tubes and surfaces invariant under a one-parameter group of isometries,
//! with the inverse problem of prescribing their geometry-induced potential.
//!
//! Every invariant surface has coordinates `(u, v)` with metric
//! `du^2 + f(u)^2 dv^2`; [`InvariantSurface::natural`] exposes `f` and the
//! mean curvature along `u`, which is all the Schrodinger reduction needs.

pub mod cylindrical;
pub mod helicoidal;
pub mod revolution;
pub mod tube;

pub use cylindrical::{cylindrical_from_mean_curvature, CylindricalSurface};
pub use helicoidal::{bour_surface, minimal_helicoidal_family, HelicoidalSurface, MinimalHelicoidal};
pub use revolution::{kenmotsu_residual, revolution_from_u, Branch, RevolutionSurface};
pub use tube::{tube_geometry, vgip_critical_points, CriticalClass, CriticalPoint, FrameKind, TubeGeometry};

use crate::numeric::DiffOp;

#[derive(Debug, Clone)]
pub enum InvariantSurface {
    Cylindrical(CylindricalSurface),
    Revolution(RevolutionSurface),
    Helicoidal(HelicoidalSurface),
}

/// Profile data in natural coordinates.
#[derive(Debug, Clone)]
pub struct NaturalProfile {
    pub u: Vec<f64>,
    pub f: Vec<f64>,
    pub df: Vec<f64>,
    pub ddf: Vec<f64>,
    pub mean: Vec<f64>,
}

impl InvariantSurface {
    pub fn natural(&self) -> NaturalProfile {
        match self {
            InvariantSurface::Cylindrical(c) => {
                let n = c.u.len();
                NaturalProfile {
                    u: c.u.clone(),
                    f: vec![1.0; n],
                    df: vec![0.0; n],
                    ddf: vec![0.0; n],
                    mean: c.mean.clone(),
                }
            }
            InvariantSurface::Revolution(r) => {
                // x = rho as a function of profile arc length: x' = sqrt(1 - rho^2 A^2)
                let dx: Vec<f64> = r
                    .rho
                    .iter()
                    .zip(&r.a_fn)
                    .map(|(p, a)| (1.0 - p * p * a * a).sqrt())
                    .collect();
                let d = DiffOp::new(&r.rho).apply(1, &dx);
                let ddx = d.iter().zip(&dx).map(|(a, b)| a * b).collect();
                NaturalProfile {
                    u: r.u.clone(),
                    f: r.rho.clone(),
                    df: dx,
                    ddf: ddx,
                    mean: r.mean(),
                }
            }
            InvariantSurface::Helicoidal(h) => NaturalProfile {
                u: h.xi.clone(),
                f: h.u.clone(),
                df: h.du.clone(),
                ddf: h.ddu.clone(),
                mean: h.mean.clone(),
            },
        }
    }
}
