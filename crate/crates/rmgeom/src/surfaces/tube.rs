//! Tubes of constant radius around a space curve, in Frenet or RM
//! coordinates, and the landscape of their geometry-induced potential.

use std::f64::consts::PI;

use nalgebra::{DVector, Vector3};

use crate::curve::{frenet_apparatus, SampledCurve};
use crate::error::{GeoError, Result};
use crate::numeric::{quad, DiffOp};
use crate::rm::rm_double_reflection;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    Frenet,
    Rm,
}

/// Fundamental forms, curvatures and `V_gip = -(H^2 - K)` of a tube on an
/// `(s, phi)` grid. Grids are indexed `[i_s][j_phi]`; the 2x2 forms are
/// stored as `[x11, x12, x22]`.
#[derive(Debug, Clone)]
pub struct TubeGeometry {
    pub frame_kind: FrameKind,
    pub r: f64,
    pub s: Vec<f64>,
    pub phi: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    /// `theta = \int tau`, angle from the principal normal to `n1`, when
    /// the Frenet frame exists along the whole centerline.
    pub theta: Option<Vec<f64>>,
    pub closed: bool,
    pub points: Vec<Vector3<f64>>,
    /// Frame normals spanning the cross sections: `(n, b)` or `(n1, n2)`.
    pub e1: Vec<Vector3<f64>>,
    pub e2: Vec<Vector3<f64>>,
    pub g: Vec<Vec<[f64; 3]>>,
    pub h: Vec<Vec<[f64; 3]>>,
    pub gauss: Vec<Vec<f64>>,
    pub mean: Vec<Vec<f64>>,
    pub vgip: Vec<Vec<f64>>,
    /// `kappa cos(phi_F)` expressed through the frame in use: `kappa cos(phi)`
    /// for Frenet, `kappa1 cos(phi) + kappa2 sin(phi)` for RM.
    k1: Vec<f64>,
    k2: Vec<f64>,
}

fn v3(v: &DVector<f64>) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

impl TubeGeometry {
    /// Point of the tube surface at centerline sample `i` and angle `phi`.
    pub fn point(&self, i: usize, phi: f64) -> Vector3<f64> {
        self.points[i] + (self.e1[i] * phi.cos() + self.e2[i] * phi.sin()) * self.r
    }

    /// Normal curvature weight `kappa cos(phi_F)` at sample `i`.
    fn kcos(&self, i: usize, phi: f64) -> f64 {
        self.k1[i] * phi.cos() + self.k2[i] * phi.sin()
    }

    /// `f = 1 - r kappa cos(phi_F)` at sample `i`, angle `phi`.
    pub fn f(&self, i: usize, phi: f64) -> f64 {
        1.0 - self.r * self.kcos(i, phi)
    }

    pub fn gauss_at(&self, i: usize, phi: f64) -> f64 {
        -self.kcos(i, phi) / (self.r * self.f(i, phi))
    }

    pub fn vgip_at(&self, i: usize, phi: f64) -> f64 {
        -(0.5 / (self.r * self.f(i, phi))).powi(2)
    }
}

/// Tube of radius `r` around `centerline` with `n_phi` angles on `[0, 2pi)`.
pub fn tube_geometry(centerline: &SampledCurve, r: f64, kind: FrameKind, n_phi: usize) -> Result<TubeGeometry> {
    if !(r > 0.0) || n_phi < 4 {
        return Err(GeoError::InvalidRange(format!("need r > 0 and n_phi >= 4 (r={r}, n_phi={n_phi})")));
    }
    let fd = frenet_apparatus(centerline)?;
    let n = fd.len();
    let phi: Vec<f64> = (0..n_phi).map(|j| 2.0 * PI * j as f64 / n_phi as f64).collect();
    let (e1, e2, k1, k2, theta) = match kind {
        FrameKind::Frenet => {
            if let Some(i) = fd.kappa_defined.iter().position(|d| !d) {
                return Err(GeoError::SingularCenterline { s: fd.s[i] });
            }
            (fd.n.clone(), fd.b.clone(), fd.kappa.clone(), vec![0.0; n], None)
        }
        FrameKind::Rm => {
            let init = match fd.kappa_defined.first() {
                Some(true) => fd.n[0],
                _ => {
                    let t = fd.t[0];
                    let axis = if t.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
                    t.cross(&axis)
                }
            };
            let rm = rm_double_reflection(centerline, &DVector::from_column_slice(init.as_slice()))?;
            (
                rm.normals[0].iter().map(v3).collect(),
                rm.normals[1].iter().map(v3).collect(),
                rm.kappas[0].clone(),
                rm.kappas[1].clone(),
                rm.theta.clone(),
            )
        }
    };
    let mut tube = TubeGeometry {
        frame_kind: kind,
        r,
        s: fd.s.clone(),
        phi,
        kappa: fd.kappa.clone(),
        tau: fd.tau.clone(),
        theta,
        closed: centerline.closed,
        points: fd.points.clone(),
        e1,
        e2,
        g: Vec::with_capacity(n),
        h: Vec::with_capacity(n),
        gauss: Vec::with_capacity(n),
        mean: Vec::with_capacity(n),
        vgip: Vec::with_capacity(n),
        k1,
        k2,
    };
    for i in 0..n {
        let fmin = 1.0 - r * tube.k1[i].hypot(tube.k2[i]);
        if fmin <= 0.0 {
            return Err(GeoError::TubeTooFat { s: tube.s[i], f: fmin });
        }
        let tau = tube.tau[i];
        let (mut g, mut h, mut kk, mut hh, mut vv) = (vec![], vec![], vec![], vec![], vec![]);
        for &p in &tube.phi {
            let c = tube.kcos(i, p);
            let f = 1.0 - r * c;
            match kind {
                FrameKind::Frenet => {
                    g.push([f * f + tau * tau * r * r, tau * r * r, r * r]);
                    h.push([-(f * c - tau * tau * r), tau * r, r]);
                }
                FrameKind::Rm => {
                    g.push([f * f, 0.0, r * r]);
                    h.push([-f * c, 0.0, r]);
                }
            }
            let k = -c / (r * f);
            kk.push(k);
            hh.push(0.5 / r + 0.5 * r * k);
            vv.push(-(0.5 / (r * f)).powi(2));
        }
        tube.g.push(g);
        tube.h.push(h);
        tube.gauss.push(kk);
        tube.mean.push(hh);
        tube.vgip.push(vv);
    }
    Ok(tube)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalClass {
    Min,
    Max,
    Saddle,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub s: f64,
    /// 0 or pi, measured from the principal normal.
    pub phi: f64,
    pub class: CriticalClass,
}

/// Critical points of `V_gip` in Frenet angles. They sit where `kappa' = 0`
/// at `phi = 0, pi`; with `V = -1/(2rf)^2` the Hessian there is a positive
/// multiple of `diag(-kappa'', kappa)` at `phi = 0` and of
/// `diag(kappa'', -kappa)` at `phi = pi`, so
///
/// - curvature maxima: minimum at `phi = 0`, maximum at `phi = pi`;
/// - curvature minima: saddles at both.
///
/// A centerline of constant curvature reports every sample as degenerate.
pub fn vgip_critical_points(tube: &TubeGeometry) -> Result<Vec<CriticalPoint>> {
    let kappa = &tube.kappa;
    let kmax = kappa.iter().cloned().fold(0.0, f64::max);
    if let Some(i) = kappa.iter().position(|&k| k <= 1e-12 * kmax.max(1e-300)) {
        return Err(GeoError::SingularCenterline { s: tube.s[i] });
    }
    let op = if tube.closed { DiffOp::periodic(&tube.s) } else { DiffOp::new(&tube.s) };
    let d1 = op.apply(1, kappa);
    let d2 = op.apply(2, kappa);
    let n = kappa.len();
    let tol1 = 1e-6 * kmax.max(1.0);
    let tol2 = 1e-4 * d2.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(kmax).max(1.0);
    let mut out = Vec::new();
    let mut push = |s: f64, kpp: f64| {
        let (c0, cpi) = if kpp.abs() <= tol2 {
            (CriticalClass::Degenerate, CriticalClass::Degenerate)
        } else if kpp < 0.0 {
            (CriticalClass::Min, CriticalClass::Max)
        } else {
            (CriticalClass::Saddle, CriticalClass::Saddle)
        };
        out.push(CriticalPoint { s, phi: 0.0, class: c0 });
        out.push(CriticalPoint { s, phi: PI, class: cpi });
    };
    if d1.iter().all(|v| v.abs() <= tol1) {
        for i in 0..n - usize::from(tube.closed) {
            push(tube.s[i], d2[i]);
        }
        return Ok(out);
    }
    // samples on one period; a closed grid repeats its first point
    let m = if tube.closed { n - 1 } else { n };
    let next = |i: usize| if tube.closed { Some((i + 1) % m) } else { (i + 1 < m).then_some(i + 1) };
    let prev = |i: usize| if tube.closed { Some((i + m - 1) % m) } else { i.checked_sub(1) };
    let mag = |i: Option<usize>| i.map_or(f64::INFINITY, |k| d1[k].abs());
    for i in 0..m {
        if d1[i].abs() <= tol1 {
            // kappa' touches zero without a clean sign change; keep the local minimum of |kappa'|
            if d1[i].abs() <= mag(prev(i)) && d1[i].abs() < mag(next(i)) {
                push(tube.s[i], d2[i]);
            }
            continue;
        }
        let Some(j) = next(i) else { continue };
        if d1[j].abs() > tol1 && d1[i] * d1[j] < 0.0 {
            let sj = if j == 0 { tube.s[n - 1] } else { tube.s[j] };
            let w = d1[i] / (d1[i] - d1[j]);
            push(tube.s[i] + w * (sj - tube.s[i]), d2[i] + w * (d2[j] - d2[i]));
        }
    }
    Ok(out)
}

/// Zero-crossings of `kappa'` refined onto the arc-length grid, exposed for
/// plotting: `(s, kappa(s))` at each curvature extremum.
pub fn curvature_extrema(tube: &TubeGeometry) -> Vec<(f64, f64)> {
    let op = if tube.closed { DiffOp::periodic(&tube.s) } else { DiffOp::new(&tube.s) };
    let d1 = op.apply(1, &tube.kappa);
    (0..d1.len() - 1)
        .filter(|&i| d1[i] * d1[i + 1] < 0.0)
        .map(|i| {
            let w = d1[i] / (d1[i] - d1[i + 1]);
            let s = tube.s[i] + w * (tube.s[i + 1] - tube.s[i]);
            (s, quad::interp_cubic(&tube.s, &tube.kappa, s))
        })
        .collect()
}
