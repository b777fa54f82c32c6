//! Curves in simply isotropic space: the metric is the degenerate
//! `dx^2 + dy^2`, so lengths and curvature come from the top view `(x, y)`
//! while the `z` direction only enters through the torsion.

use nalgebra::{DVector, Matrix3, Vector3};

use crate::curve::SampledCurve;
use crate::error::{GeoError, Result};
use crate::numeric::fit::fit_hyperplane;
use crate::numeric::quad;

#[derive(Debug, Clone)]
pub struct IsoFrameData {
    /// Arc length of the top view.
    pub s: Vec<f64>,
    pub t: Vec<Vector3<f64>>,
    /// `t' / kappa`; its top view is the plane normal of the top view.
    pub n: Vec<Vector3<f64>>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    /// `theta = \int tau`, the (Galilean) angle of the RM frame.
    pub rm_theta: Vec<f64>,
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
}

fn det2(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Isotropic Frenet and RM data. Requires an admissible curve: the top view
/// is regular and has no inflection.
pub fn iso_apparatus(curve: &SampledCurve) -> Result<IsoFrameData> {
    if curve.ambient_dim() != 3 {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    let pts = curve.points3()?;
    let op = curve.diff_op();
    let d1 = op.apply(1, &pts);
    let d2 = op.apply(2, &pts);
    let d3 = op.apply(3, &pts);
    let n = curve.len();
    let mut speed = Vec::with_capacity(n);
    let mut out = IsoFrameData {
        s: Vec::new(),
        t: Vec::with_capacity(n),
        n: Vec::with_capacity(n),
        kappa: Vec::with_capacity(n),
        tau: Vec::with_capacity(n),
        rm_theta: Vec::new(),
        kappa1: Vec::new(),
        kappa2: Vec::new(),
    };
    for k in 0..n {
        let v = d1[k].x.hypot(d1[k].y);
        let w = det2(&d1[k], &d2[k]);
        if !(v > 1e-12) || w.abs() <= 1e-9 * v.powi(3) {
            return Err(GeoError::NotAdmissible { index: k });
        }
        let kappa = w / v.powi(3);
        // Normalised so that n' = -kappa t + tau b holds in arc length, which
        // is what makes theta' = tau produce an RM normal.
        let tau = Matrix3::from_columns(&[d1[k], d2[k], d3[k]]).determinant() / (w * w);
        let t = d1[k] / v;
        let dv = (d1[k].x * d2[k].x + d1[k].y * d2[k].y) / v;
        let tss = (d2[k] - t * dv) / (v * v);
        speed.push(v);
        out.t.push(t);
        out.n.push(tss / kappa);
        out.kappa.push(kappa);
        out.tau.push(tau);
    }
    out.s = quad::cumulative(&curve.params, &speed);
    out.rm_theta = quad::cumulative(&out.s, &out.tau);
    out.kappa1 = out.kappa.clone();
    out.kappa2 = out
        .kappa
        .iter()
        .zip(&out.rm_theta)
        .map(|(k, th)| k * th)
        .collect();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoClass {
    /// On a cylinder `x^2 + y^2 = r^2` (up to isotropic motions).
    Cylindrical { radius: f64 },
    /// On an isotropic sphere of parabolic type; the development lies on
    /// `<normal, k> = distance`.
    Parabolic { normal: [f64; 2], distance: f64 },
    /// On a non-isotropic plane; the development lies on a line through 0.
    Plane { normal: [f64; 2] },
    None,
}

/// Classify an admissible curve: constant curvature first, then a line fit
/// of `(kappa1, kappa2)`.
pub fn iso_sphere_classify(iso: &IsoFrameData) -> IsoClass {
    let n = iso.kappa.len() as f64;
    let mean = iso.kappa.iter().sum::<f64>() / n;
    let std = (iso.kappa.iter().map(|k| (k - mean).powi(2)).sum::<f64>() / n).sqrt();
    if std / mean.abs() < 1e-3 {
        return IsoClass::Cylindrical {
            radius: 1.0 / mean.abs(),
        };
    }
    let pts: Vec<DVector<f64>> = iso
        .kappa1
        .iter()
        .zip(&iso.kappa2)
        .map(|(a, b)| DVector::from_vec(vec![*a, *b]))
        .collect();
    let rms = (pts.iter().map(|p| p.norm_squared()).sum::<f64>() / n).sqrt();
    let tol = 1e-3 * rms;
    let fit = fit_hyperplane(&pts);
    if fit.residual >= tol {
        IsoClass::None
    } else if fit.offset.abs() < tol {
        IsoClass::Plane {
            normal: [fit.normal[0], fit.normal[1]],
        }
    } else {
        let sg = fit.offset.signum();
        IsoClass::Parabolic {
            normal: [sg * fit.normal[0], sg * fit.normal[1]],
            distance: fit.offset.abs(),
        }
    }
}
