//! Curves in the round sphere `S^{m+1}(r) = {<q,q> = r^2}` and hyperbolic space
//! `H^{m+1}(r) = {<q,q>_1 = -r^2, q_0 > 0}`, both seen inside R^{m+2}. The
//! hyperbolic model uses the Lorentz metric with coordinate 0 as time.

use nalgebra::{DMatrix, DVector};

use crate::curve::SampledCurve;
use crate::error::{GeoError, Result};
use crate::numeric::fit::fit_hyperplane;
use crate::numeric::metric::{complete_basis, gram_schmidt, Metric};
use crate::numeric::{quad, rk4_step, DiffOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Sphere,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceForm {
    pub kind: FormKind,
    pub r: f64,
    /// Intrinsic dimension `m + 1`.
    pub dim: usize,
}

impl SpaceForm {
    pub fn sphere(r: f64, dim: usize) -> Self {
        SpaceForm {
            kind: FormKind::Sphere,
            r,
            dim,
        }
    }

    pub fn hyperbolic(r: f64, dim: usize) -> Self {
        SpaceForm {
            kind: FormKind::Hyperbolic,
            r,
            dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim + 1
    }

    pub fn metric(&self) -> Metric {
        match self.kind {
            FormKind::Sphere => Metric::Euclidean,
            FormKind::Hyperbolic => Metric::Lorentz { time: 0 },
        }
    }

    /// `<q, q>` on the form: `r^2` or `-r^2`.
    fn norm_sq(&self) -> f64 {
        match self.kind {
            FormKind::Sphere => self.r * self.r,
            FormKind::Hyperbolic => -self.r * self.r,
        }
    }

    /// `|<q,q> - (+-r^2)| / r^2`.
    pub fn defect(&self, q: &DVector<f64>) -> f64 {
        (self.metric().dotv(q, q) - self.norm_sq()).abs() / (self.r * self.r)
    }

    /// cos or cosh.
    pub fn c(&self, x: f64) -> f64 {
        match self.kind {
            FormKind::Sphere => x.cos(),
            FormKind::Hyperbolic => x.cosh(),
        }
    }

    /// sin or sinh.
    pub fn s(&self, x: f64) -> f64 {
        match self.kind {
            FormKind::Sphere => x.sin(),
            FormKind::Hyperbolic => x.sinh(),
        }
    }

    /// Tangential part of an ambient vector at `q`.
    pub fn project(&self, q: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let g = self.metric();
        v - q * (g.dotv(v, q) / self.norm_sq())
    }
}

/// `exp_p(u v)`: `c(u/r) p + r s(u/r) v`.
pub fn exp_map(form: &SpaceForm, p: &DVector<f64>, v: &DVector<f64>, u: f64) -> Result<DVector<f64>> {
    let g = form.metric();
    let defect = (g.dotv(p, v) / form.r).abs().max((g.dotv(v, v) - 1.0).abs());
    if defect > 1e-8 {
        return Err(GeoError::NotTangent { defect });
    }
    let x = u / form.r;
    Ok(p * form.c(x) + v * (form.r * form.s(x)))
}

/// Covariant derivative on the form from the ambient derivative `dv` of a
/// tangent field along a curve through `q` (the Gauss formula: drop the
/// component along `q`).
pub fn covariant_derivative(form: &SpaceForm, q: &DVector<f64>, dv: &DVector<f64>) -> DVector<f64> {
    form.project(q, dv)
}

/// RM frame of a curve on a space form: `nabla_t n_i = -kappa_i t`, with all
/// vectors tangent to the form.
#[derive(Debug, Clone)]
pub struct ManifoldRMData {
    pub form: SpaceForm,
    pub s: Vec<f64>,
    pub points: Vec<DVector<f64>>,
    pub t: Vec<DVector<f64>>,
    /// Covariant derivative of `t` in arc length.
    pub nabla_t: Vec<DVector<f64>>,
    pub normals: Vec<Vec<DVector<f64>>>,
    pub kappas: Vec<Vec<f64>>,
    pub closed: bool,
}

impl ManifoldRMData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn m(&self) -> usize {
        self.normals.len()
    }

    /// `|nabla_t t|`.
    pub fn kappa(&self) -> Vec<f64> {
        let g = self.form.metric();
        self.nabla_t.iter().map(|v| g.dotv(v, v).max(0.0).sqrt()).collect()
    }

    pub fn development_point(&self, k: usize) -> DVector<f64> {
        DVector::from_iterator(self.m(), self.kappas.iter().map(|ki| ki[k]))
    }

    /// Largest `|<v, q>| / r` over `t` and all normals.
    pub fn tangency_defect(&self) -> f64 {
        let g = self.form.metric();
        let mut d: f64 = 0.0;
        for k in 0..self.len() {
            let q = &self.points[k];
            d = d.max(g.dotv(&self.t[k], q).abs() / self.form.r);
            for nj in &self.normals {
                d = d.max(g.dotv(&nj[k], q).abs() / self.form.r);
            }
        }
        d
    }
}

/// Unit tangent and its ambient arc-length derivative, plus arc length.
fn tangent_data(form: &SpaceForm, curve: &SampledCurve) -> (Vec<f64>, Vec<DVector<f64>>, Vec<DVector<f64>>) {
    let g = form.metric();
    let op = curve.diff_op();
    let d1 = op.apply(1, &curve.points);
    let d2 = op.apply(2, &curve.points);
    let mut speed = Vec::with_capacity(d1.len());
    let mut t = Vec::with_capacity(d1.len());
    let mut dt = Vec::with_capacity(d1.len());
    for (a, b) in d1.iter().zip(&d2) {
        let v = g.dotv(a, a).abs().sqrt();
        let tk = a / v;
        dt.push((b - &tk * g.dotv(b, &tk)) / (v * v));
        t.push(tk);
        speed.push(v);
    }
    (quad::cumulative(&curve.params, &speed), t, dt)
}

/// Parallel transport of the normal bundle along a curve on the form. The
/// first normal starts at `init_normal` (made tangent and orthogonal to `t`)
/// when given; the rest complete an orthonormal basis of the normal space.
pub fn manifold_rm_frame(
    form: &SpaceForm,
    curve: &SampledCurve,
    init_normal: Option<&DVector<f64>>,
) -> Result<ManifoldRMData> {
    let dim = form.ambient_dim();
    if curve.ambient_dim() != dim {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    if let Some(defect) = curve.points.iter().map(|q| form.defect(q)).find(|d| *d > 1e-8) {
        return Err(GeoError::NotTangent { defect });
    }
    let g = form.metric();
    let (s, t, dt) = tangent_data(form, curve);
    let n = curve.len();
    let q0 = &curve.points[0] / form.r;
    let mut family = vec![q0.clone(), t[0].clone()];
    if let Some(v) = init_normal {
        if v.len() != dim {
            return Err(GeoError::DimensionMismatch { index: 0 });
        }
        let w = g.project_out(v, &family);
        if g.dotv(&w, &w) < 1e-20 * v.norm_squared() {
            return Err(GeoError::InvalidFrame { defect: 1.0 });
        }
        family.push(w.clone() / g.dotv(&w, &w).sqrt());
    }
    let start = complete_basis(g, &family, dim);
    let m = dim - 2;
    let mut normals: Vec<Vec<DVector<f64>>> = (0..m).map(|j| vec![start[j + 2].clone()]).collect();
    let rhs = |x: f64, y: &[f64]| -> Vec<f64> {
        let tk: DVector<f64> = quad::interp_cubic(&s, &t, x);
        let dk: DVector<f64> = quad::interp_cubic(&s, &dt, x);
        let mut out = Vec::with_capacity(y.len());
        for j in 0..m {
            let nj = DVector::from_column_slice(&y[j * dim..(j + 1) * dim]);
            out.extend((&tk * (-g.dotv(&dk, &nj))).iter());
        }
        out
    };
    for k in 0..n - 1 {
        let y: Vec<f64> = normals.iter().flat_map(|nj| nj[k].iter().copied()).collect();
        let y = rk4_step(&rhs, s[k], &y, s[k + 1] - s[k]);
        let q = &curve.points[k + 1] / form.r;
        let base = [q, t[k + 1].clone()];
        let raw: Vec<DVector<f64>> = (0..m)
            .map(|j| g.project_out(&DVector::from_column_slice(&y[j * dim..(j + 1) * dim]), &base))
            .collect();
        let next = gram_schmidt(g, &raw).ok_or(GeoError::InvalidFrame { defect: 1.0 })?;
        for (j, v) in next.into_iter().enumerate() {
            normals[j].push(v);
        }
    }
    let nabla_t: Vec<DVector<f64>> = (0..n).map(|k| form.project(&curve.points[k], &dt[k])).collect();
    let kappas = normals
        .iter()
        .map(|nj| (0..n).map(|k| g.dotv(&nabla_t[k], &nj[k])).collect())
        .collect();
    Ok(ManifoldRMData {
        form: *form,
        s,
        points: curve.points.clone(),
        t,
        nabla_t,
        normals,
        kappas,
        closed: curve.closed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeodesicSphere {
    OnGeodesicSphere {
        z0: f64,
        center: DVector<f64>,
        /// RMS residual of `sum a_i kappa_i + C` with `|a| = 1`.
        residual: f64,
    },
    No,
}

/// Relation `sum a_i kappa_i + C = 0` with `|a| = 1` and `C >= 0`, or `None`
/// when the development is not on an affine hyperplane.
fn development_line(rm: &ManifoldRMData) -> Option<(DVector<f64>, f64, f64, f64)> {
    let samples: Vec<DVector<f64>> = (0..rm.len()).map(|k| rm.development_point(k)).collect();
    let rms = (samples.iter().map(|p| p.norm_squared()).sum::<f64>() / samples.len() as f64).sqrt();
    let tol = 1e-3 * rms;
    let fit = fit_hyperplane(&samples);
    let (normal, offset, residual) = if fit.spread <= tol {
        // a single point: circles
        let c = fit.centroid.norm();
        if c < 1e-12 {
            return None;
        }
        (&fit.centroid / c, c, fit.spread)
    } else if rm.m() == 1 || fit.residual >= tol {
        return None;
    } else {
        (fit.normal.clone(), fit.offset, fit.residual)
    };
    // <normal, k> = offset  <=>  a.k + C = 0 with a = -sgn(offset) normal
    let sg = if offset < 0.0 { -1.0 } else { 1.0 };
    Some((-normal * sg, offset.abs(), residual, tol))
}

/// Geodesic sphere characterization: the normal development lies on a line
/// `sum a_i kappa_i + cot(z0/r)/r = 0` (coth on H), and then the center
/// `P = c(z0/r) alpha - r s(z0/r) sum a_i n_i` is constant.
pub fn geodesic_sphere_test(rm: &ManifoldRMData) -> Result<GeodesicSphere> {
    let form = rm.form;
    let r = form.r;
    let Some((a, cc, residual, tol)) = development_line(rm) else {
        return Ok(GeodesicSphere::No);
    };
    if cc < tol {
        // through the origin: totally geodesic, the "sphere" of radius pi r / 2
        return Ok(GeodesicSphere::No);
    }
    let z0 = match form.kind {
        FormKind::Sphere => r * (1.0 / (r * cc)).atan(),
        FormKind::Hyperbolic => {
            // r C <= 1: horospheres and equidistant surfaces, not spheres
            if r * cc <= 1.0 + 1e-9 {
                return Ok(GeodesicSphere::No);
            }
            r * (1.0 / (r * cc)).atanh()
        }
    };
    if form.kind == FormKind::Sphere && z0 >= std::f64::consts::FRAC_PI_2 * r {
        return Err(GeoError::RadiusOutOfRange {
            z0,
            limit: std::f64::consts::FRAC_PI_2 * r,
        });
    }
    let (cz, sz) = (form.c(z0 / r), form.s(z0 / r));
    let centers: Vec<DVector<f64>> = (0..rm.len())
        .map(|k| {
            let mut tb = DVector::zeros(form.ambient_dim());
            for (i, ni) in rm.normals.iter().enumerate() {
                tb += &ni[k] * a[i];
            }
            &rm.points[k] * cz - tb * (r * sz)
        })
        .collect();
    let mean = centers.iter().fold(DVector::zeros(form.ambient_dim()), |acc, c| acc + c) / centers.len() as f64;
    let drift = centers.iter().map(|c| (c - &mean).norm()).fold(0.0, f64::max);
    if drift > 1e-3 * r {
        return Ok(GeodesicSphere::No);
    }
    // put the averaged center back on the form
    let g = form.metric();
    let center = &mean * (r / g.dotv(&mean, &mean).abs().sqrt());
    Ok(GeodesicSphere::OnGeodesicSphere { z0, center, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub enum TotallyGeodesic {
    /// The curve lies on `{<x, u> = 0}`; `unconstrained` is set for
    /// geodesics, where every direction orthogonal to the curve works.
    Plane { direction: DVector<f64>, unconstrained: bool },
    No,
}

/// Plane-curve test: a development line through the origin `sum a_i k_i = 0`
/// makes `u = sum a_i n_i` a constant ambient vector.
pub fn totally_geodesic_test(rm: &ManifoldRMData) -> TotallyGeodesic {
    let samples: Vec<DVector<f64>> = (0..rm.len()).map(|k| rm.development_point(k)).collect();
    let kmax = samples.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let dim = rm.form.ambient_dim();
    let u_of = |a: &DVector<f64>| -> Vec<DVector<f64>> {
        (0..rm.len())
            .map(|k| {
                let mut u = DVector::zeros(dim);
                for (i, ni) in rm.normals.iter().enumerate() {
                    u += &ni[k] * a[i];
                }
                u
            })
            .collect()
    };
    if kmax < 1e-6 {
        let mut a = DVector::zeros(rm.m());
        a[0] = 1.0;
        return TotallyGeodesic::Plane {
            direction: u_of(&a)[0].clone(),
            unconstrained: true,
        };
    }
    let mut mom = DMatrix::zeros(rm.m(), rm.m());
    for p in &samples {
        mom += p * p.transpose();
    }
    let n = samples.len() as f64;
    let eig = nalgebra::SymmetricEigen::new(mom / n);
    let i = eig.eigenvalues.imin();
    let a = eig.eigenvectors.column(i).into_owned();
    let rms_res = eig.eigenvalues[i].max(0.0).sqrt();
    let rms = (samples.iter().map(|p| p.norm_squared()).sum::<f64>() / n).sqrt();
    if rms_res > 1e-3 * rms {
        return TotallyGeodesic::No;
    }
    let us = u_of(&a);
    let mean = us.iter().fold(DVector::zeros(dim), |acc, u| acc + u) / n;
    let drift = us.iter().map(|u| (u - &mean).norm()).fold(0.0, f64::max);
    if drift > 1e-3 {
        return TotallyGeodesic::No;
    }
    TotallyGeodesic::Plane {
        direction: &mean / mean.norm(),
        unconstrained: false,
    }
}

/// Frenet apparatus of a curve in a 3-dimensional space form.
#[derive(Debug, Clone)]
pub struct ManifoldFrenet3 {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

pub fn manifold_frenet_3d(form: &SpaceForm, curve: &SampledCurve) -> Result<ManifoldFrenet3> {
    if form.dim != 3 || curve.ambient_dim() != 4 {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    let g = form.metric();
    let (s, t, dt) = tangent_data(form, curve);
    let n = curve.len();
    let mut kappa = Vec::with_capacity(n);
    let mut nn = Vec::with_capacity(n);
    for k in 0..n {
        let a = form.project(&curve.points[k], &dt[k]);
        let kk = g.dotv(&a, &a).max(0.0).sqrt();
        if kk < 1e-9 {
            return Err(GeoError::UndefinedFrame { s: s[k] });
        }
        kappa.push(kk);
        nn.push(a / kk);
    }
    let op = if curve.closed { DiffOp::periodic(&s) } else { DiffOp::new(&s) };
    let dn = op.apply(1, &nn);
    let mut tau = Vec::with_capacity(n);
    for k in 0..n {
        let q = &curve.points[k] / form.r;
        let fam = [q.clone(), t[k].clone(), nn[k].clone()];
        let mut b = complete_basis(g, &fam, 4).pop().unwrap();
        // orientation: (q, t, n, b) positively oriented in R^4
        let det = DMatrix::from_columns(&[q, t[k].clone(), nn[k].clone(), b.clone()]).determinant();
        if det < 0.0 {
            b = -b;
        }
        // tau = -<nabla_t b, n> = <b, nabla_t n> and b is orthogonal to q
        tau.push(g.dotv(&b, &dn[k]));
    }
    Ok(ManifoldFrenet3 { s, kappa, tau })
}

/// RMS of `d/ds[(1/tau)(1/kappa)'] + tau/kappa`, which vanishes on geodesic
/// spheres of S^3(r) and H^3(r). Open arcs drop six samples at each end.
pub fn frenet_spherical_test_3d(form: &SpaceForm, curve: &SampledCurve) -> Result<f64> {
    let fr = manifold_frenet_3d(form, curve)?;
    let tmax = fr.tau.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    for (k, t) in fr.tau.iter().enumerate() {
        if t.abs() < 1e-6 * tmax.max(1.0) {
            return Err(GeoError::ZeroTorsion { s: fr.s[k] });
        }
    }
    let op = if curve.closed {
        DiffOp::periodic(&fr.s)
    } else {
        DiffOp::new(&fr.s)
    };
    let rho: Vec<f64> = fr.kappa.iter().map(|k| 1.0 / k).collect();
    let drho = op.apply(1, &rho);
    let inner: Vec<f64> = drho.iter().zip(&fr.tau).map(|(d, t)| d / t).collect();
    let outer = op.apply(1, &inner);
    let n = outer.len();
    // two nested one-sided stencils lose accuracy at the ends of open arcs
    let skip = if curve.closed { 0 } else { 6.min(n / 4) };
    let range = skip..n - skip;
    let cnt = range.len() as f64;
    let ms = range
        .map(|k| (outer[k] + fr.tau[k] / fr.kappa[k]).powi(2))
        .sum::<f64>()
        / cnt;
    Ok(ms.sqrt())
}
