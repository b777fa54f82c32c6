//! Rotation minimizing (RM) frames, the normal development of a curve and
//! the line/hyperplane test that characterizes spherical and plane curves.

use nalgebra::{DMatrix, DVector, Vector3};

use crate::curve::{dv, frenet_apparatus, FrenetData, SampledCurve};
use crate::error::{GeoError, Result};
use crate::numeric::fd::DiffOp;
use crate::numeric::fit::fit_hyperplane;
use crate::numeric::metric::{complete_basis, Metric};
use crate::numeric::{quad, unwrap_angles};

/// Tangent plus `m` normals whose derivatives are all parallel to the tangent.
/// `normals[i][k]` is normal `i` at sample `k`; likewise `kappas`.
#[derive(Debug, Clone)]
pub struct RMFrameData {
    pub s: Vec<f64>,
    pub points: Vec<DVector<f64>>,
    pub t: Vec<DVector<f64>>,
    pub normals: Vec<Vec<DVector<f64>>>,
    pub kappas: Vec<Vec<f64>>,
    /// Angle from the principal normal to `n1` (3D, only where the Frenet
    /// frame exists everywhere).
    pub theta: Option<Vec<f64>>,
    pub closed: bool,
}

impl RMFrameData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Number of normals `m` (ambient dimension minus one).
    pub fn m(&self) -> usize {
        self.normals.len()
    }

    pub fn kappa(&self) -> Vec<f64> {
        (0..self.len())
            .map(|k| {
                self.kappas
                    .iter()
                    .map(|ki| ki[k] * ki[k])
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// Normal development sample `(kappa_1, ..., kappa_m)` at index `k`.
    pub fn development_point(&self, k: usize) -> DVector<f64> {
        DVector::from_iterator(self.m(), self.kappas.iter().map(|ki| ki[k]))
    }

    pub fn s_op(&self) -> DiffOp {
        if self.closed {
            DiffOp::periodic(&self.s)
        } else {
            DiffOp::new(&self.s)
        }
    }

    /// Largest deviation from orthonormality of `{t, n_1, ..., n_m}`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for k in 0..self.len() {
            let mut fr = vec![&self.t[k]];
            fr.extend(self.normals.iter().map(|n| &n[k]));
            for i in 0..fr.len() {
                for j in 0..fr.len() {
                    let target = if i == j { 1.0 } else { 0.0 };
                    d = d.max((fr[i].dot(fr[j]) - target).abs());
                }
            }
        }
        d
    }
}

/// RM frame obtained from the Frenet frame by rotating through
/// `theta = theta0 + \int tau`.
pub fn rm_from_frenet(fd: &FrenetData, theta0: f64) -> Result<RMFrameData> {
    if let Some(i) = fd.kappa_defined.iter().position(|d| !d) {
        return Err(GeoError::UndefinedFrame { s: fd.s[i] });
    }
    let theta: Vec<f64> = quad::cumulative(&fd.s, &fd.tau)
        .into_iter()
        .map(|v| v + theta0)
        .collect();
    let n = fd.len();
    let mut n1 = Vec::with_capacity(n);
    let mut n2 = Vec::with_capacity(n);
    let mut k1 = Vec::with_capacity(n);
    let mut k2 = Vec::with_capacity(n);
    for i in 0..n {
        let (sn, cs) = theta[i].sin_cos();
        n1.push(dv(fd.n[i] * cs - fd.b[i] * sn));
        n2.push(dv(fd.n[i] * sn + fd.b[i] * cs));
        k1.push(fd.kappa[i] * cs);
        k2.push(fd.kappa[i] * sn);
    }
    Ok(RMFrameData {
        s: fd.s.clone(),
        points: fd.points.iter().map(|p| dv(*p)).collect(),
        t: fd.t.iter().map(|v| dv(*v)).collect(),
        normals: vec![n1, n2],
        kappas: vec![k1, k2],
        theta: Some(theta),
        closed: fd.closed,
    })
}

/// Unit tangent and its arc-length derivative for any regular parametrization.
pub(crate) fn tangent_and_derivative(curve: &SampledCurve) -> (Vec<DVector<f64>>, Vec<DVector<f64>>) {
    let op = curve.diff_op();
    let d1 = op.apply(1, &curve.points);
    let d2 = op.apply(2, &curve.points);
    let mut t = Vec::with_capacity(curve.len());
    let mut dt = Vec::with_capacity(curve.len());
    for i in 0..curve.len() {
        let v = d1[i].norm();
        let ti = &d1[i] / v;
        let acc = &d2[i] - &ti * ti.dot(&d2[i]);
        dt.push(acc / (v * v));
        t.push(ti);
    }
    (t, dt)
}

fn reflect(v: &DVector<f64>, axis: &DVector<f64>, c: f64) -> DVector<f64> {
    v - axis * (2.0 / c * axis.dot(v))
}

/// Discrete RM frame by the double reflection method, in any dimension. The
/// first normal starts at `init_normal` projected off the initial tangent;
/// the remaining normals complete a positively oriented orthonormal frame.
/// Works through inflection points.
pub fn rm_double_reflection(curve: &SampledCurve, init_normal: &DVector<f64>) -> Result<RMFrameData> {
    let dim = curve.ambient_dim();
    if init_normal.len() != dim {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    let (t, dt) = tangent_and_derivative(curve);
    let n0 = init_normal - &t[0] * t[0].dot(init_normal);
    let nn = n0.norm();
    if nn < 1e-12 * init_normal.norm().max(1e-300) {
        return Err(GeoError::InvalidFrame { defect: 1.0 });
    }
    let mut start = complete_basis(Metric::Euclidean, &[t[0].clone(), n0 / nn], dim);
    if dim == 3 {
        start[2] = DVector::from_column_slice(
            Vector3::from_column_slice(t[0].as_slice())
                .cross(&Vector3::from_column_slice(start[1].as_slice()))
                .as_slice(),
        );
    } else if DMatrix::from_columns(&start).determinant() < 0.0 {
        let last = start.len() - 1;
        start[last] = -&start[last];
    }
    let m = dim - 1;
    let n = curve.len();
    let mut normals: Vec<Vec<DVector<f64>>> = (0..m).map(|j| vec![start[j + 1].clone()]).collect();
    for i in 0..n - 1 {
        let v1 = &curve.points[i + 1] - &curve.points[i];
        let c1 = v1.norm_squared();
        let tl = reflect(&t[i], &v1, c1);
        let v2 = &t[i + 1] - &tl;
        let c2 = v2.norm_squared();
        let mut next: Vec<DVector<f64>> = Vec::with_capacity(m);
        for nj in normals.iter() {
            let mut r = reflect(&nj[i], &v1, c1);
            if c2 > 1e-300 {
                r = reflect(&r, &v2, c2);
            }
            // clean up rounding: stay orthonormal to t and earlier normals
            r -= &t[i + 1] * t[i + 1].dot(&r);
            for p in &next {
                r -= p * p.dot(&r);
            }
            next.push(r.normalize());
        }
        for (j, v) in next.into_iter().enumerate() {
            normals[j].push(v);
        }
    }
    let kappas: Vec<Vec<f64>> = normals
        .iter()
        .map(|nj| (0..n).map(|k| dt[k].dot(&nj[k])).collect())
        .collect();
    let s = curve.arclength();
    let theta = if dim == 3 {
        let fd = frenet_apparatus(curve)?;
        if fd.all_defined() {
            let mut th: Vec<f64> = (0..n)
                .map(|k| {
                    let nf = dv(fd.n[k]);
                    nf.dot(&normals[1][k]).atan2(nf.dot(&normals[0][k]))
                })
                .collect();
            unwrap_angles(&mut th);
            Some(th)
        } else {
            None
        }
    } else {
        None
    };
    Ok(RMFrameData {
        s,
        points: curve.points.clone(),
        t,
        normals,
        kappas,
        theta,
        closed: curve.closed,
    })
}

/// Rotation of `n1` after one trip around a closed curve, in `(-pi, pi]`.
pub fn holonomy(rm: &RMFrameData) -> f64 {
    let last = rm.len() - 1;
    let (a, b) = (&rm.normals[0][last], &rm.normals[0][0]);
    let c = &rm.normals[1][0];
    (-a.dot(c)).atan2(a.dot(b))
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::PI;
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// An adapted frame `{t, e1, e2}` along a space curve, with no assumption on
/// how the normals turn.
#[derive(Debug, Clone)]
pub struct AdaptedFrame {
    pub s: Vec<f64>,
    pub t: Vec<Vector3<f64>>,
    pub e1: Vec<Vector3<f64>>,
    pub e2: Vec<Vector3<f64>>,
    pub closed: bool,
}

fn v3(v: &DVector<f64>) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

impl AdaptedFrame {
    pub fn from_rm(rm: &RMFrameData) -> Result<Self> {
        if rm.m() != 2 {
            return Err(GeoError::DimensionMismatch { index: 0 });
        }
        Ok(AdaptedFrame {
            s: rm.s.clone(),
            t: rm.t.iter().map(v3).collect(),
            e1: rm.normals[0].iter().map(v3).collect(),
            e2: rm.normals[1].iter().map(v3).collect(),
            closed: rm.closed,
        })
    }

    pub fn from_frenet(fd: &FrenetData) -> Result<Self> {
        if let Some(i) = fd.kappa_defined.iter().position(|d| !d) {
            return Err(GeoError::UndefinedFrame { s: fd.s[i] });
        }
        Ok(AdaptedFrame {
            s: fd.s.clone(),
            t: fd.t.clone(),
            e1: fd.n.clone(),
            e2: fd.b.clone(),
            closed: fd.closed,
        })
    }

    /// Rotate the normals by `angle[k]` in the normal plane.
    pub fn rotated(&self, angle: &[f64]) -> Self {
        let mut out = self.clone();
        for k in 0..self.s.len() {
            let (sn, cs) = angle[k].sin_cos();
            out.e1[k] = self.e1[k] * cs + self.e2[k] * sn;
            out.e2[k] = -self.e1[k] * sn + self.e2[k] * cs;
        }
        out
    }

    /// Motion coefficients `(a, b, w)`: `t' = a e1 + b e2`, `e1' = -a t + w e2`.
    pub fn coefficients(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let op = if self.closed {
            DiffOp::periodic(&self.s)
        } else {
            DiffOp::new(&self.s)
        };
        let dt = op.apply(1, &self.t);
        let de1 = op.apply(1, &self.e1);
        let n = self.s.len();
        let a = (0..n).map(|k| dt[k].dot(&self.e1[k])).collect();
        let b = (0..n).map(|k| dt[k].dot(&self.e2[k])).collect();
        let w = (0..n).map(|k| de1[k].dot(&self.e2[k])).collect();
        (a, b, w)
    }
}

/// Scalar angular velocity of an adapted frame: the norm of its Darboux
/// vector, which is never below the curvature.
pub fn angular_velocity(frame: &AdaptedFrame) -> Vec<f64> {
    let (a, b, w) = frame.coefficients();
    (0..a.len())
        .map(|k| (a[k] * a[k] + b[k] * b[k] + w[k] * w[k]).sqrt())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum FitKind {
    /// `<normal, x> = distance` with `distance > 0`.
    LineNotThroughOrigin { distance: f64, normal: DVector<f64> },
    /// `<normal, x> = 0`.
    LineThroughOrigin { normal: DVector<f64> },
    NotALine,
}

/// The curve `(kappa_1, ..., kappa_m)(s)` and its best affine hyperplane (a
/// line when `m = 2`).
#[derive(Debug, Clone)]
pub struct NormalDevelopment {
    pub samples: Vec<DVector<f64>>,
    pub fit_kind: FitKind,
    pub fit_residual: f64,
    /// Threshold used for both the line and the through-origin decision.
    pub tol: f64,
    /// Set when every sample is the same nonzero point (a circle).
    pub constant_point: Option<DVector<f64>>,
}

impl NormalDevelopment {
    /// Radius `1/d` of the sphere implied by a line missing the origin.
    pub fn sphere_radius(&self) -> Option<f64> {
        match &self.fit_kind {
            FitKind::LineNotThroughOrigin { distance, .. } => Some(1.0 / distance),
            _ => None,
        }
    }
}

/// Classify the normal development by an orthogonal least squares fit.
pub fn normal_development(rm: &RMFrameData) -> Result<NormalDevelopment> {
    let m = rm.m();
    if m < 2 {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    let samples: Vec<DVector<f64>> = (0..rm.len()).map(|k| rm.development_point(k)).collect();
    let rms = (samples.iter().map(|p| p.norm_squared()).sum::<f64>() / samples.len() as f64).sqrt();
    let tol = 1e-3 * rms;
    let fit = fit_hyperplane(&samples);
    if fit.spread <= tol {
        let point = fit.centroid.clone();
        if point.norm() < 1e-9 {
            return Err(GeoError::DegenerateFit {
                point: point.iter().copied().collect(),
            });
        }
        return Ok(NormalDevelopment {
            fit_kind: FitKind::LineNotThroughOrigin {
                distance: point.norm(),
                normal: &point / point.norm(),
            },
            fit_residual: fit.spread,
            tol,
            constant_point: Some(point),
            samples,
        });
    }
    let fit_kind = if fit.residual >= tol {
        FitKind::NotALine
    } else if fit.offset.abs() < tol {
        FitKind::LineThroughOrigin { normal: fit.normal }
    } else {
        let sign = fit.offset.signum();
        FitKind::LineNotThroughOrigin {
            distance: fit.offset.abs(),
            normal: fit.normal * sign,
        }
    };
    Ok(NormalDevelopment {
        samples,
        fit_kind,
        fit_residual: fit.residual,
        tol,
        constant_point: None,
    })
}

/// Centers `P(s) = alpha + (1/d) sum a_i n_i` implied by a spherical fit.
/// For a spherical curve these coincide with the sphere's center.
pub fn sphere_centers(rm: &RMFrameData, dev: &NormalDevelopment) -> Option<Vec<DVector<f64>>> {
    let (d, a) = match &dev.fit_kind {
        FitKind::LineNotThroughOrigin { distance, normal } => (*distance, normal),
        _ => return None,
    };
    Some(
        (0..rm.len())
            .map(|k| {
                let mut p = rm.points[k].clone();
                for (i, ni) in rm.normals.iter().enumerate() {
                    p += &ni[k] * (a[i] / d);
                }
                p
            })
            .collect(),
    )
}

/// Maximum distance of any point in `pts` from their mean.
pub fn drift(pts: &[DVector<f64>]) -> f64 {
    let mean = pts.iter().fold(DVector::zeros(pts[0].len()), |acc, p| acc + p) / pts.len() as f64;
    pts.iter().map(|p| (p - &mean).norm()).fold(0.0, f64::max)
}

/// `\oint tau ds` over one period of a closed curve.
pub fn total_torsion(curve: &SampledCurve) -> Result<f64> {
    let n = curve.len();
    let gap = (&curve.points[0] - &curve.points[n - 1]).norm();
    if gap > 1e-9 {
        return Err(GeoError::NotClosed { gap });
    }
    let closed;
    let curve = if curve.closed {
        curve
    } else {
        closed = SampledCurve::new(curve.params.clone(), curve.points.clone(), true)?;
        &closed
    };
    let fd = frenet_apparatus(curve)?;
    if let Some(i) = fd.kappa_defined.iter().position(|d| !d) {
        return Err(GeoError::UndefinedFrame { s: fd.s[i] });
    }
    let speed: Vec<f64> = curve.derivative(1).iter().map(|v| v.norm()).collect();
    let integrand: Vec<f64> = fd.tau.iter().zip(&speed).map(|(t, v)| t * v).collect();
    Ok(quad::periodic_trapezoid(&curve.params, &integrand))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c3(f: impl Fn(f64) -> [f64; 3], a: f64, b: f64, n: usize, closed: bool) -> SampledCurve {
        SampledCurve::from_fn(|u| DVector::from_row_slice(&f(u)), a, b, n, closed).unwrap()
    }

    fn wavy_on_sphere(r: f64, p: [f64; 3], n: usize) -> SampledCurve {
        c3(
            |u| {
                let th = 1.1 + 0.4 * (3.0 * u).sin();
                [
                    p[0] + r * th.sin() * u.cos(),
                    p[1] + r * th.sin() * u.sin(),
                    p[2] + r * th.cos(),
                ]
            },
            0.0,
            2.0 * PI,
            n,
            true,
        )
    }

    #[test]
    fn plane_curve_rm_equals_frenet() {
        let c = c3(|u| [u, u * u, 0.0], -1.0, 1.0, 200, false);
        let fd = frenet_apparatus(&c).unwrap();
        let rm = rm_from_frenet(&fd, 0.0).unwrap();
        for k in 0..rm.len() {
            assert!((&rm.normals[0][k] - dv(fd.n[k])).norm() < 1e-14);
            assert!((rm.kappas[0][k] - fd.kappa[k]).abs() < 1e-14);
            assert!(rm.kappas[1][k].abs() < 1e-14);
        }
    }

    #[test]
    fn helix_theta_is_linear() {
        let (a, b) = (1.0, 0.5);
        let c = c3(|u| [a * u.cos(), a * u.sin(), b * u], 0.0, 6.0, 600, false);
        let fd = frenet_apparatus(&c).unwrap();
        let rm = rm_from_frenet(&fd, 0.0).unwrap();
        let (k0, t0) = (a / (a * a + b * b), b / (a * a + b * b));
        let th = rm.theta.as_ref().unwrap();
        for k in 0..rm.len() {
            assert!((th[k] - t0 * rm.s[k]).abs() < 1e-4);
            let kk = rm.kappas[0][k].hypot(rm.kappas[1][k]);
            assert!((kk - k0).abs() < 1e-4);
        }
    }

    #[test]
    fn theta_shift_rotates_development() {
        let c = c3(|u| [u, u * u, u * u * u], 0.0, 1.0, 300, false);
        let fd = frenet_apparatus(&c).unwrap();
        let r0 = rm_from_frenet(&fd, 0.0).unwrap();
        let d = 0.7;
        let r1 = rm_from_frenet(&fd, d).unwrap();
        for k in 0..r0.len() {
            let (x, y) = (r0.kappas[0][k], r0.kappas[1][k]);
            let (xr, yr) = (x * d.cos() - y * d.sin(), x * d.sin() + y * d.cos());
            assert!((xr - r1.kappas[0][k]).abs() < 1e-12);
            assert!((yr - r1.kappas[1][k]).abs() < 1e-12);
        }
    }

    #[test]
    fn double_reflection_straight_line_keeps_normals() {
        let c = c3(|u| [u, 2.0 * u, 0.5 * u], 0.0, 3.0, 50, false);
        let rm = rm_double_reflection(&c, &DVector::from_vec(vec![0.0, 0.0, 1.0])).unwrap();
        for k in 0..rm.len() {
            for j in 0..2 {
                assert!((&rm.normals[j][k] - &rm.normals[j][0]).norm() < 1e-12);
                assert!(rm.kappas[j][k].abs() < 1e-10);
            }
        }
        assert!(rm.theta.is_none());
    }

    #[test]
    fn double_reflection_through_inflection() {
        // the cubic (u, u^3, 0) + small twist has kappa = 0 at u = 0
        let c = c3(|u| [u, u * u * u, 0.2 * u * u * u * u], -1.0, 1.0, 801, false);
        let rm = rm_double_reflection(&c, &DVector::from_vec(vec![0.0, 0.0, 1.0])).unwrap();
        assert!(rm.orthonormality_defect() < 1e-10);
        // RM property: n_i' has no normal component
        let op = rm.s_op();
        for j in 0..2 {
            let dn = op.apply(1, &rm.normals[j]);
            for k in 2..rm.len() - 2 {
                let other = &rm.normals[1 - j][k];
                assert!(dn[k].dot(other).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn position_vector_of_spherical_curve_is_rm() {
        let p = [0.3, -0.2, 1.0];
        let r = 2.0;
        let c = wavy_on_sphere(r, p, 2000);
        let pc = DVector::from_row_slice(&p);
        let init = (&c.points[0] - &pc) / r;
        let rm = rm_double_reflection(&c, &init).unwrap();
        for k in 0..rm.len() {
            let e = (&c.points[k] - &pc) / r;
            assert!((&rm.normals[0][k] - e).norm() < 1e-4);
        }
    }

    #[test]
    fn holonomy_equals_total_torsion() {
        let c = c3(
            |u| {
                let q = 2.0 + (3.0 * u).cos();
                [q * u.cos(), q * u.sin(), (3.0 * u).sin()]
            },
            0.0,
            2.0 * PI,
            2001,
            true,
        );
        let rm = rm_double_reflection(&c, &DVector::from_vec(vec![0.0, 0.0, 1.0])).unwrap();
        let tt = total_torsion(&c).unwrap();
        // independent quadrature of the Frenet torsion on the arc-length grid
        let fd = frenet_apparatus(&c).unwrap();
        let direct = quad::integrate(&fd.s, &fd.tau);
        assert!((tt - direct).abs() < 1e-6);
        assert!(wrap_angle(holonomy(&rm) - tt).abs() < 1e-3);
    }

    #[test]
    fn angular_velocity_of_frames() {
        let c = c3(
            |u| [u.cos() + 0.2 * (2.0 * u).sin(), u.sin(), 0.3 * u * u],
            0.0,
            3.0,
            1000,
            false,
        );
        let fd = frenet_apparatus(&c).unwrap();
        let rm = rm_double_reflection(&c, &dv(fd.n[0])).unwrap();
        let w = angular_velocity(&AdaptedFrame::from_rm(&rm).unwrap());
        for k in 0..w.len() {
            assert!((w[k] - fd.kappa[k]).abs() < 1e-5);
        }
        let wf = angular_velocity(&AdaptedFrame::from_frenet(&fd).unwrap());
        for k in 5..wf.len() - 5 {
            assert!((wf[k] - fd.kappa[k].hypot(fd.tau[k])).abs() < 1e-4);
        }
        let rot = AdaptedFrame::from_rm(&rm).unwrap().rotated(&rm.s);
        let wr = angular_velocity(&rot);
        for k in 0..wr.len() {
            assert!((wr[k] - (fd.kappa[k].powi(2) + 1.0).sqrt()).abs() < 1e-4);
            assert!(wr[k] >= fd.kappa[k] - 1e-6);
        }
    }

    #[test]
    fn spherical_curve_development_misses_origin() {
        let p = [1.0, 0.0, -0.5];
        let c = wavy_on_sphere(2.0, p, 2000);
        let rm = rm_double_reflection(&c, &DVector::from_vec(vec![0.0, 0.0, 1.0])).unwrap();
        let dev = normal_development(&rm).unwrap();
        let r = dev.sphere_radius().expect("spherical");
        assert!((r - 2.0).abs() < 1e-3);
        let centers = sphere_centers(&rm, &dev).unwrap();
        assert!(drift(&centers) < 1e-3);
        assert!((&centers[0] - DVector::from_row_slice(&p)).norm() < 1e-3);
    }

    #[test]
    fn plane_and_twisted_developments() {
        let c = c3(|u| [u, u * u, 0.0], -1.0, 1.0, 400, false);
        let rm = rm_double_reflection(&c, &DVector::from_vec(vec![0.0, 1.0, 0.0])).unwrap();
        let dev = normal_development(&rm).unwrap();
        assert!(matches!(dev.fit_kind, FitKind::LineThroughOrigin { .. }));

        let c = c3(|u| [u, u * u, u * u * u], 0.0, 1.0, 400, false);
        let rm = rm_double_reflection(&c, &DVector::from_vec(vec![0.0, 1.0, 0.0])).unwrap();
        let dev = normal_development(&rm).unwrap();
        assert_eq!(dev.fit_kind, FitKind::NotALine);
        // brute-force check: no line through any pair of samples fits well
        let pts = &dev.samples;
        let mut best = f64::MAX;
        for i in (0..pts.len()).step_by(20) {
            for j in (i + 1..pts.len()).step_by(20) {
                let d = &pts[j] - &pts[i];
                let nrm = DVector::from_vec(vec![-d[1], d[0]]).normalize();
                let rms = (pts
                    .iter()
                    .map(|p| (p - &pts[i]).dot(&nrm).powi(2))
                    .sum::<f64>()
                    / pts.len() as f64)
                    .sqrt();
                best = best.min(rms);
            }
        }
        assert!(best > dev.tol);
    }

    #[test]
    fn circle_development_is_a_point() {
        let c = c3(|u| [2.0 * u.cos(), 2.0 * u.sin(), 1.0], 0.0, 2.0 * PI, 300, true);
        let fd = frenet_apparatus(&c).unwrap();
        let rm = rm_from_frenet(&fd, 0.0).unwrap();
        let dev = normal_development(&rm).unwrap();
        assert!(dev.constant_point.is_some());
        assert!((dev.sphere_radius().unwrap() - 2.0).abs() < 1e-6);

        let line = c3(|u| [u, 0.0, 0.0], 0.0, 1.0, 20, false);
        let rm = rm_double_reflection(&line, &DVector::from_vec(vec![0.0, 1.0, 0.0])).unwrap();
        assert!(matches!(normal_development(&rm), Err(GeoError::DegenerateFit { .. })));
    }

    #[test]
    fn development_distance_in_four_dimensions() {
        // curve on S^3(r) in E^4, not on any 2-sphere
        let r = 1.5;
        let c = SampledCurve::from_fn(
            |u| {
                let a = 0.8 + 0.3 * (2.0 * u).sin();
                let b = 0.4 * (3.0 * u).cos();
                DVector::from_vec(vec![
                    r * a.cos() * u.cos(),
                    r * a.cos() * u.sin(),
                    r * a.sin() * b.cos(),
                    r * a.sin() * b.sin(),
                ])
            },
            0.0,
            2.0 * PI,
            3000,
            true,
        )
        .unwrap();
        let init = DVector::from_vec(vec![0.0, 0.0, 1.0, 0.0]);
        let rm = rm_double_reflection(&c, &init).unwrap();
        assert_eq!(rm.m(), 3);
        assert!(rm.orthonormality_defect() < 1e-10);
        let dev = normal_development(&rm).unwrap();
        match dev.fit_kind {
            FitKind::LineNotThroughOrigin { distance, .. } => {
                assert!((distance - 1.0 / r).abs() < 1e-3)
            }
            ref k => panic!("expected a hyperplane off the origin, got {k:?}"),
        }
    }

    #[test]
    fn total_torsion_cases() {
        let c = wavy_on_sphere(1.0, [0.0; 3], 2000);
        assert!(total_torsion(&c).unwrap().abs() < 1e-4);
        let plane = c3(|u| [2.0 * u.cos(), u.sin(), 0.0], 0.0, 2.0 * PI, 200, true);
        assert_eq!(total_torsion(&plane).unwrap(), 0.0);
        let open = c3(|u| [u, u * u, u * u * u], 0.0, 1.0, 50, false);
        assert!(matches!(total_torsion(&open), Err(GeoError::NotClosed { .. })));
    }

    #[test]
    fn wrap_angle_range() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
        assert!((wrap_angle(2.0 * PI + 0.1) - 0.1).abs() < 1e-12);
    }
}
