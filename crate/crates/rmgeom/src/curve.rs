//! Sampled space curves, arc length, the Frenet apparatus and curves built
//! from prescribed curvature and torsion.

use nalgebra::{DVector, Vector3};

use crate::error::{GeoError, Result};
use crate::numeric::fd::DiffOp;
use crate::numeric::{linspace, quad};

/// Threshold on the curvature below which the Frenet frame is undefined.
pub const KAPPA_EPS: f64 = 1e-9;

/// Ordered samples `points[i] = alpha(params[i])`. A closed curve repeats its
/// first point at the end; derivatives then use periodic stencils.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    pub params: Vec<f64>,
    pub points: Vec<DVector<f64>>,
    pub closed: bool,
}

impl SampledCurve {
    pub fn new(params: Vec<f64>, points: Vec<DVector<f64>>, closed: bool) -> Result<Self> {
        let n = params.len();
        if n < 4 || points.len() != n {
            return Err(GeoError::TooFewSamples {
                needed: 4,
                got: n.min(points.len()),
            });
        }
        for i in 1..n {
            if !(params[i] > params[i - 1]) {
                return Err(GeoError::NonMonotoneParams { index: i });
            }
        }
        let dim = points[0].len();
        if dim < 2 {
            return Err(GeoError::DimensionMismatch { index: 0 });
        }
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(GeoError::DimensionMismatch { index: i });
        }
        if closed {
            let gap = (&points[0] - &points[n - 1]).norm();
            if gap > 1e-9 {
                return Err(GeoError::NotClosed { gap });
            }
        }
        let c = SampledCurve {
            params,
            points,
            closed,
        };
        let v = c.derivative(1);
        if let Some((i, sp)) = v
            .iter()
            .map(|d| d.norm())
            .enumerate()
            .find(|(_, sp)| !(*sp > 1e-12))
        {
            return Err(GeoError::DegenerateCurve { index: i, speed: sp });
        }
        Ok(c)
    }

    /// Sample `f` at `n` uniform parameters on `[a, b]`. For closed curves the
    /// last sample is replaced by the first so the ends coincide exactly.
    pub fn from_fn<F>(f: F, a: f64, b: f64, n: usize, closed: bool) -> Result<Self>
    where
        F: Fn(f64) -> DVector<f64>,
    {
        let params = linspace(a, b, n);
        let mut points: Vec<DVector<f64>> = params.iter().map(|&u| f(u)).collect();
        if closed && n > 1 {
            points[n - 1] = points[0].clone();
        }
        SampledCurve::new(params, points, closed)
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn diff_op(&self) -> DiffOp {
        if self.closed {
            DiffOp::periodic(&self.params)
        } else {
            DiffOp::new(&self.params)
        }
    }

    /// Derivative of the given order with respect to the curve parameter.
    pub fn derivative(&self, order: usize) -> Vec<DVector<f64>> {
        self.diff_op().apply(order, &self.points)
    }

    /// Running arc length from the first sample.
    pub fn arclength(&self) -> Vec<f64> {
        let speed: Vec<f64> = self.derivative(1).iter().map(|v| v.norm()).collect();
        quad::cumulative(&self.params, &speed)
    }

    pub fn length(&self) -> f64 {
        *self.arclength().last().unwrap()
    }

    /// The same points with new parameter values.
    pub fn with_params(&self, params: Vec<f64>) -> Result<Self> {
        SampledCurve::new(params, self.points.clone(), self.closed)
    }

    /// Apply a map to every sample (rigid motions, projections...).
    pub fn map_points<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&DVector<f64>) -> DVector<f64>,
    {
        SampledCurve::new(
            self.params.clone(),
            self.points.iter().map(f).collect(),
            self.closed,
        )
    }

    /// Points as 3-vectors; planar curves get a zero third coordinate.
    pub fn points3(&self) -> Result<Vec<Vector3<f64>>> {
        match self.ambient_dim() {
            2 => Ok(self
                .points
                .iter()
                .map(|p| Vector3::new(p[0], p[1], 0.0))
                .collect()),
            3 => Ok(self
                .points
                .iter()
                .map(|p| Vector3::new(p[0], p[1], p[2]))
                .collect()),
            _ => Err(GeoError::DimensionMismatch { index: 0 }),
        }
    }
}

#[cfg(test)]
pub(crate) fn to3(v: &DVector<f64>) -> Vector3<f64> {
    match v.len() {
        2 => Vector3::new(v[0], v[1], 0.0),
        _ => Vector3::new(v[0], v[1], v[2]),
    }
}

pub(crate) fn dv(v: Vector3<f64>) -> DVector<f64> {
    DVector::from_column_slice(v.as_slice())
}

/// Resample at `n` points equally spaced in arc length; the returned
/// parameters are arc length.
pub fn resample_by_arclength(curve: &SampledCurve, n: usize) -> Result<SampledCurve> {
    if n < 4 {
        return Err(GeoError::TooFewSamples { needed: 4, got: n });
    }
    let u = &curve.params;
    let speed: Vec<f64> = curve.derivative(1).iter().map(|v| v.norm()).collect();
    let s = quad::cumulative(u, &speed);
    let total = *s.last().unwrap();
    let targets = linspace(0.0, total, n);
    let mut points = Vec::with_capacity(n);
    for (j, &sj) in targets.iter().enumerate() {
        if j == 0 {
            points.push(curve.points[0].clone());
            continue;
        }
        if j == n - 1 {
            points.push(curve.points[curve.len() - 1].clone());
            continue;
        }
        // invert the running arc length on its interval: safeguarded Newton
        let i = match s.binary_search_by(|v| v.partial_cmp(&sj).unwrap()) {
            Ok(i) => i.min(u.len() - 2),
            Err(k) => k - 1,
        };
        let (mut lo, mut hi) = (u[i], u[i + 1]);
        let mut z = lo + (hi - lo) * (sj - s[i]) / (s[i + 1] - s[i]);
        for _ in 0..60 {
            let f = s[i] + quad::partial_interval(u, &speed, i, z) - sj;
            if f.abs() < 1e-14 * total.max(1.0) {
                break;
            }
            if f > 0.0 {
                hi = z;
            } else {
                lo = z;
            }
            let sp: f64 = quad::interp_cubic(u, &speed, z);
            let step = z - f / sp;
            z = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        }
        points.push(quad::interp_cubic(u, &curve.points, z));
    }
    SampledCurve::new(targets, points, curve.closed)
}

/// Frenet frame, curvature and torsion per sample.
#[derive(Debug, Clone)]
pub struct FrenetData {
    pub s: Vec<f64>,
    pub points: Vec<Vector3<f64>>,
    pub t: Vec<Vector3<f64>>,
    pub n: Vec<Vector3<f64>>,
    pub b: Vec<Vector3<f64>>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    pub kappa_defined: Vec<bool>,
    pub closed: bool,
}

impl FrenetData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn all_defined(&self) -> bool {
        self.kappa_defined.iter().all(|&d| d)
    }

    /// Derivative operator in arc length (periodic for closed curves).
    pub fn s_op(&self) -> DiffOp {
        if self.closed {
            DiffOp::periodic(&self.s)
        } else {
            DiffOp::new(&self.s)
        }
    }
}

/// Curvature and torsion from parameter derivatives, valid for any regular
/// parametrization. Planar input gets `tau = 0`.
pub fn frenet_apparatus(curve: &SampledCurve) -> Result<FrenetData> {
    let pts = curve.points3()?;
    let op = curve.diff_op();
    let d1 = op.apply(1, &pts);
    let d2 = op.apply(2, &pts);
    let d3 = op.apply(3, &pts);
    let planar = curve.ambient_dim() == 2;
    let n = curve.len();
    let mut out = FrenetData {
        s: Vec::new(),
        points: pts,
        t: Vec::with_capacity(n),
        n: Vec::with_capacity(n),
        b: Vec::with_capacity(n),
        kappa: Vec::with_capacity(n),
        tau: Vec::with_capacity(n),
        kappa_defined: Vec::with_capacity(n),
        closed: curve.closed,
    };
    let mut speed = Vec::with_capacity(n);
    for i in 0..n {
        let v = d1[i].norm();
        speed.push(v);
        let c = d1[i].cross(&d2[i]);
        let cn = c.norm();
        let kappa = cn / v.powi(3);
        let t = d1[i] / v;
        out.t.push(t);
        out.kappa.push(kappa);
        if kappa < KAPPA_EPS {
            out.kappa_defined.push(false);
            out.n.push(Vector3::zeros());
            out.b.push(Vector3::zeros());
            out.tau.push(0.0);
        } else {
            let b = c / cn;
            out.kappa_defined.push(true);
            out.n.push(b.cross(&t));
            out.b.push(b);
            out.tau
                .push(if planar { 0.0 } else { c.dot(&d3[i]) / (cn * cn) });
        }
    }
    out.s = quad::cumulative(&curve.params, &speed);
    Ok(out)
}

fn orthonormal_defect(f: &[Vector3<f64>; 3]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { 1.0 } else { 0.0 };
            d = d.max((f[i].dot(&f[j]) - target).abs());
        }
    }
    d
}

fn mgs3(f: &mut [Vector3<f64>; 3]) {
    f[0] = f[0].normalize();
    f[1] = (f[1] - f[0] * f[0].dot(&f[1])).normalize();
    f[2] = (f[2] - f[0] * f[0].dot(&f[2]) - f[1] * f[1].dot(&f[2])).normalize();
}

/// Frenet frames produced while integrating.
#[derive(Debug, Clone)]
pub struct IntegratedFrenet {
    pub curve: SampledCurve,
    pub frames: Vec<[Vector3<f64>; 3]>,
}

/// Integrate the Frenet equations and `alpha' = t` with RK4 on `[s0, s1]`.
/// The frame is re-orthonormalized after every step; the last step is
/// shortened so the grid ends exactly at `s1`.
pub fn integrate_frenet<K, T>(
    kappa: K,
    tau: T,
    init_point: Vector3<f64>,
    init_frame: [Vector3<f64>; 3],
    s0: f64,
    s1: f64,
    step: f64,
) -> Result<IntegratedFrenet>
where
    K: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    if !(step > 0.0) || !(s1 > s0) {
        return Err(GeoError::InvalidRange(format!(
            "need s1 > s0 and step > 0 (s0={s0}, s1={s1}, step={step})"
        )));
    }
    let defect = orthonormal_defect(&init_frame);
    if defect > 1e-10 {
        return Err(GeoError::InvalidFrame { defect });
    }
    let nsteps = ((s1 - s0) / step - 1e-9).ceil().max(3.0) as usize;
    let h = (s1 - s0) / nsteps as f64;
    let rhs = |s: f64, y: &[f64]| -> Vec<f64> {
        let (k, w) = (kappa(s), tau(s));
        let t = &y[3..6];
        let n = &y[6..9];
        let b = &y[9..12];
        let mut d = vec![0.0; 12];
        for i in 0..3 {
            d[i] = t[i];
            d[3 + i] = k * n[i];
            d[6 + i] = -k * t[i] + w * b[i];
            d[9 + i] = -w * n[i];
        }
        d
    };
    let mut y: Vec<f64> = init_point
        .iter()
        .chain(init_frame.iter().flat_map(|v| v.iter()))
        .copied()
        .collect();
    let mut params = Vec::with_capacity(nsteps + 1);
    let mut points = Vec::with_capacity(nsteps + 1);
    let mut frames = Vec::with_capacity(nsteps + 1);
    let push = |y: &[f64], params: &mut Vec<f64>, points: &mut Vec<DVector<f64>>, frames: &mut Vec<[Vector3<f64>; 3]>, s: f64| {
        params.push(s);
        points.push(DVector::from_column_slice(&y[0..3]));
        frames.push([
            Vector3::from_column_slice(&y[3..6]),
            Vector3::from_column_slice(&y[6..9]),
            Vector3::from_column_slice(&y[9..12]),
        ]);
    };
    push(&y, &mut params, &mut points, &mut frames, s0);
    for i in 0..nsteps {
        let s = s0 + i as f64 * h;
        y = crate::numeric::rk4_step(&rhs, s, &y, h);
        let mut f = [
            Vector3::from_column_slice(&y[3..6]),
            Vector3::from_column_slice(&y[6..9]),
            Vector3::from_column_slice(&y[9..12]),
        ];
        mgs3(&mut f);
        for (k, v) in f.iter().enumerate() {
            y[3 + 3 * k..6 + 3 * k].copy_from_slice(v.as_slice());
        }
        let s_next = if i + 1 == nsteps { s1 } else { s0 + (i + 1) as f64 * h };
        push(&y, &mut params, &mut points, &mut frames, s_next);
    }
    Ok(IntegratedFrenet {
        curve: SampledCurve::new(params, points, false)?,
        frames,
    })
}

/// Closed form of the plane curve with curvature `c0 / sqrt(s)`: a circle of
/// radius `1/(2 c0^2)` superposed on a spiral whose radius grows like
/// `sqrt(s)/c0`.
pub fn hydrogen_point(c0: f64, s: f64) -> [f64; 2] {
    let w = s.sqrt();
    let phi = 2.0 * c0 * w;
    let (sn, cs) = phi.sin_cos();
    let a = 1.0 / (2.0 * c0 * c0);
    [a * cs + w / c0 * sn, a * sn - w / c0 * cs]
}

/// Plane curve with curvature `c0 / s^p` on `[s0, s1]`, `n` samples.
/// `p = 1/2` uses the closed form; other exponents integrate the Frenet
/// equations from the origin with the identity frame at `s0`.
pub fn powerlaw_plane_curve(c0: f64, p: f64, s0: f64, s1: f64, n: usize) -> Result<SampledCurve> {
    if !(s0 > 0.0) || !(s1 > s0) {
        return Err(GeoError::InvalidRange(format!(
            "power-law curves need 0 < s0 < s1, got [{s0}, {s1}]"
        )));
    }
    if n < 4 {
        return Err(GeoError::TooFewSamples { needed: 4, got: n });
    }
    if (p - 0.5).abs() < 1e-15 {
        return SampledCurve::from_fn(
            |s| DVector::from_row_slice(&hydrogen_point(c0, s)),
            s0,
            s1,
            n,
            false,
        );
    }
    let h = (s1 - s0) / (n - 1) as f64;
    let out = integrate_frenet(
        |s| c0 / s.powf(p),
        |_| 0.0,
        Vector3::zeros(),
        [Vector3::x(), Vector3::y(), Vector3::z()],
        s0,
        s1,
        h,
    )?;
    let c = out.curve;
    c.map_points(|q| DVector::from_vec(vec![q[0], q[1]]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsculatingSphere {
    pub center: Vector3<f64>,
    pub radius: f64,
    pub finite: bool,
}

/// Osculating spheres at every sample; entries are `None` where the frame is
/// undefined.
pub fn osculating_spheres(fd: &FrenetData) -> Vec<Option<OsculatingSphere>> {
    let rho: Vec<f64> = fd
        .kappa
        .iter()
        .map(|&k| if k < KAPPA_EPS { 0.0 } else { 1.0 / k })
        .collect();
    let drho = fd.s_op().apply(1, &rho);
    (0..fd.len())
        .map(|i| {
            if !fd.kappa_defined[i] {
                return None;
            }
            if fd.tau[i].abs() < 1e-8 {
                return Some(OsculatingSphere {
                    center: Vector3::zeros(),
                    radius: f64::INFINITY,
                    finite: false,
                });
            }
            let q = drho[i] / fd.tau[i];
            Some(OsculatingSphere {
                center: fd.points[i] + fd.n[i] * rho[i] + fd.b[i] * q,
                radius: (rho[i] * rho[i] + q * q).sqrt(),
                finite: true,
            })
        })
        .collect()
}

/// Osculating sphere at arc length `s0`, interpolated between samples.
pub fn osculating_sphere(curve: &SampledCurve, s0: f64) -> Result<OsculatingSphere> {
    let fd = frenet_apparatus(curve)?;
    let (lo, hi) = (fd.s[0], *fd.s.last().unwrap());
    if s0 < lo || s0 > hi {
        return Err(GeoError::InvalidRange(format!(
            "s0 = {s0} outside [{lo}, {hi}]"
        )));
    }
    let spheres = osculating_spheres(&fd);
    let i = match fd.s.binary_search_by(|v| v.partial_cmp(&s0).unwrap()) {
        Ok(i) => i,
        Err(k) => k.min(fd.len() - 1),
    };
    let near = [i.saturating_sub(1), i];
    if near.iter().any(|&j| spheres[j].is_none()) {
        return Err(GeoError::UndefinedFrame { s: s0 });
    }
    if near.iter().any(|&j| !spheres[j].unwrap().finite) {
        return Ok(spheres[i].unwrap());
    }
    // interpolate over the finite, defined neighbourhood
    let w = 4.min(fd.len());
    let start = i.saturating_sub(2).min(fd.len() - w);
    let idx: Vec<usize> = (start..start + w).collect();
    if idx.iter().any(|&j| spheres[j].map_or(true, |sp| !sp.finite)) {
        return Ok(spheres[i].unwrap());
    }
    let xs: Vec<f64> = idx.iter().map(|&j| fd.s[j]).collect();
    let cs: Vec<Vector3<f64>> = idx.iter().map(|&j| spheres[j].unwrap().center).collect();
    let rs: Vec<f64> = idx.iter().map(|&j| spheres[j].unwrap().radius).collect();
    Ok(OsculatingSphere {
        center: quad::lagrange(&xs, &cs, s0),
        radius: quad::lagrange(&xs, &rs, s0),
        finite: true,
    })
}

/// Spherical curvature `J = <alpha - p, t x t_s>` of a curve lying on a sphere
/// centred at `center`, for any regular parametrization.
pub fn spherical_curvature_j(curve: &SampledCurve, center: &Vector3<f64>) -> Result<Vec<f64>> {
    let pts = curve.points3()?;
    let radii: Vec<f64> = pts.iter().map(|p| (p - center).norm()).collect();
    let rmax = radii.iter().cloned().fold(f64::MIN, f64::max);
    let rmin = radii.iter().cloned().fold(f64::MAX, f64::min);
    if rmax - rmin > 1e-6 * rmax.max(1.0) {
        return Err(GeoError::NotSpherical {
            spread: rmax - rmin,
        });
    }
    let op = curve.diff_op();
    let d1 = op.apply(1, &pts);
    let d2 = op.apply(2, &pts);
    Ok((0..pts.len())
        .map(|i| (pts[i] - center).dot(&d1[i].cross(&d2[i])) / d1[i].norm().powi(3))
        .collect())
}
