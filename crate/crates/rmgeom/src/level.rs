//! Curves on level sets `F = c`: the Hessian/gradient criterion along an RM
//! frame, and membership in quadrics `<B (x - P), x - P> = rho` by reading the
//! quadric as a sphere of the metric `<B., .>`.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DVector, Matrix3, SymmetricEigen, Vector3};

use crate::curve::SampledCurve;
use crate::error::{GeoError, Result};
use crate::indefinite::{iso_apparatus, iso_sphere_classify, lorentz_rm_frame, lorentz_sphere_membership};
use crate::indefinite::{IsoClass, LorentzSphere};
use crate::rm::{drift, normal_development, rm_double_reflection, sphere_centers, RMFrameData};

type Scalar3 = Arc<dyn Fn(&Vector3<f64>) -> f64 + Send + Sync>;
type Grad3 = Arc<dyn Fn(&Vector3<f64>) -> Vector3<f64> + Send + Sync>;
type Hess3 = Arc<dyn Fn(&Vector3<f64>) -> Matrix3<f64> + Send + Sync>;

/// A smooth function on R^3. Gradient and Hessian default to five-point
/// central differences.
#[derive(Clone)]
pub struct ScalarField {
    f: Scalar3,
    grad: Option<Grad3>,
    hess: Option<Hess3>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("analytic_grad", &self.grad.is_some())
            .field("analytic_hess", &self.hess.is_some())
            .finish()
    }
}

fn step(p: &Vector3<f64>) -> f64 {
    1e-3 * (1.0 + p.norm())
}

fn central<T>(g: impl Fn(f64) -> T, h: f64) -> T
where
    T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    (g(-2.0 * h) - g(2.0 * h)) * (1.0 / (12.0 * h)) + (g(h) - g(-h)) * (8.0 / (12.0 * h))
}

impl ScalarField {
    pub fn new(f: impl Fn(&Vector3<f64>) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField {
            f: Arc::new(f),
            grad: None,
            hess: None,
        }
    }

    pub fn with_grad(mut self, g: impl Fn(&Vector3<f64>) -> Vector3<f64> + Send + Sync + 'static) -> Self {
        self.grad = Some(Arc::new(g));
        self
    }

    pub fn with_hess(mut self, h: impl Fn(&Vector3<f64>) -> Matrix3<f64> + Send + Sync + 'static) -> Self {
        self.hess = Some(Arc::new(h));
        self
    }

    /// `F(x) = <B (x - P), x - P>` with exact derivatives.
    pub fn quadratic(b: Matrix3<f64>, p: Vector3<f64>) -> Self {
        let b = (b + b.transpose()) * 0.5;
        ScalarField::new(move |x| (x - p).dot(&(b * (x - p))))
            .with_grad(move |x| b * (x - p) * 2.0)
            .with_hess(move |_| b * 2.0)
    }

    pub fn eval(&self, p: &Vector3<f64>) -> f64 {
        (self.f)(p)
    }

    pub fn grad(&self, p: &Vector3<f64>) -> Vector3<f64> {
        if let Some(g) = &self.grad {
            return g(p);
        }
        let h = step(p);
        Vector3::from_fn(|i, _| {
            let e = Vector3::ith(i, 1.0);
            central(|d| (self.f)(&(p + e * d)), h)
        })
    }

    pub fn hess(&self, p: &Vector3<f64>) -> Matrix3<f64> {
        if let Some(hf) = &self.hess {
            return hf(p);
        }
        let h = step(p);
        let mut m = Matrix3::zeros();
        for j in 0..3 {
            let e = Vector3::ith(j, 1.0);
            let col = central(|d| self.grad(&(p + e * d)), h);
            m.set_column(j, &col);
        }
        (m + m.transpose()) * 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricKind {
    Ellipsoid,
    OneSheet,
    TwoSheet,
    DegenerateCylinderLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadricClass {
    /// Number of negative eigenvalues.
    pub index: usize,
    pub degenerate: bool,
    pub kind: QuadricKind,
}

fn classify_eigen(ev: &Vector3<f64>) -> QuadricClass {
    let thr = 1e-8 * ev.norm();
    let index = ev.iter().filter(|&&l| l < -thr).count();
    let degenerate = ev.iter().any(|l| l.abs() <= thr);
    let kind = match (degenerate, index) {
        (true, _) => QuadricKind::DegenerateCylinderLike,
        (false, 0) | (false, 3) => QuadricKind::Ellipsoid,
        (false, 1) => QuadricKind::OneSheet,
        _ => QuadricKind::TwoSheet,
    };
    QuadricClass {
        index,
        degenerate,
        kind,
    }
}

/// Signature of the Hessian at `p`; eigenvalues below `1e-8 |Hess|` count as
/// zero.
pub fn hessian_index(field: &ScalarField, p: &Vector3<f64>) -> QuadricClass {
    classify_eigen(&SymmetricEigen::new(field.hess(p)).eigenvalues)
}

/// Normal curvature `<Hess v, v> / |grad F|` of the level set through `p` in
/// the tangent direction `v`.
pub fn normal_curvature(field: &ScalarField, p: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    let v = v.normalize();
    v.dot(&(field.hess(p) * v)) / field.grad(p).norm()
}

/// Coefficients of `b0 + b1 k1 + b2 k2 = 0` along a Euclidean RM frame.
#[derive(Debug, Clone)]
pub struct LevelCriterion {
    pub b0: Vec<f64>,
    pub b: [Vec<f64>; 2],
    /// `<grad F, t>`, which vanishes identically on a level set.
    pub tangential: Vec<f64>,
    /// RMS of `b0 + b1 k1 + b2 k2`.
    pub residual: f64,
    /// RMS size of the individual terms; thresholds are relative to it.
    pub scale: f64,
    /// Largest `|b_i' - <Hess t, n_i>|` relative to `max(1, |Hess t|)`.
    pub b_defect: f64,
}

pub fn level_criterion(rm: &RMFrameData, field: &ScalarField) -> Result<LevelCriterion> {
    if rm.m() != 2 {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    let n = rm.len();
    let v3 = |v: &DVector<f64>| Vector3::new(v[0], v[1], v[2]);
    let mut b0 = Vec::with_capacity(n);
    let mut b = [Vec::with_capacity(n), Vec::with_capacity(n)];
    let mut hb = [Vec::with_capacity(n), Vec::with_capacity(n)];
    let mut tangential = Vec::with_capacity(n);
    let (mut res2, mut scale2, mut hmax) = (0.0, 0.0, 1.0f64);
    for k in 0..n {
        let p = v3(&rm.points[k]);
        let t = v3(&rm.t[k]);
        let g = field.grad(&p);
        let ht = field.hess(&p) * t;
        hmax = hmax.max(ht.norm());
        b0.push(ht.dot(&t));
        tangential.push(g.dot(&t));
        let mut r = b0[k];
        let mut kap = 0.0;
        for i in 0..2 {
            let ni = v3(&rm.normals[i][k]);
            b[i].push(g.dot(&ni));
            hb[i].push(ht.dot(&ni));
            r += b[i][k] * rm.kappas[i][k];
            kap += rm.kappas[i][k].powi(2);
        }
        res2 += r * r;
        scale2 += (b0[k].abs() + g.norm() * kap.sqrt()).powi(2);
    }
    // RM normals need not close up around a closed curve, so no periodic stencil
    let op = crate::numeric::DiffOp::new(&rm.s);
    let mut b_defect: f64 = 0.0;
    for i in 0..2 {
        let db = op.apply(1, &b[i]);
        for k in 0..n {
            b_defect = b_defect.max((db[k] - hb[i][k]).abs() / hmax);
        }
    }
    Ok(LevelCriterion {
        b0,
        b,
        tangential,
        residual: (res2 / n as f64).sqrt(),
        scale: (scale2 / n as f64).sqrt(),
        b_defect,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum LevelMembership {
    OnLevelSet { c: f64, residual: f64 },
    Off { residual: f64 },
}

/// Euclidean-metric version of the level set criterion: the relation must
/// hold, `b_i' = <Hess t, n_i>` must hold, and `<grad F, t>` must vanish
/// somewhere.
pub fn level_membership_euclidean(rm: &RMFrameData, field: &ScalarField) -> Result<LevelMembership> {
    let crit = level_criterion(rm, field)?;
    let grad_scale = rm
        .points
        .iter()
        .map(|p| field.grad(&Vector3::new(p[0], p[1], p[2])).norm())
        .fold(1.0f64, f64::max);
    let touches = crit
        .tangential
        .iter()
        .any(|g| g.abs() < 1e-6 * grad_scale);
    let ok = crit.residual <= 1e-4 * crit.scale.max(1e-300) && crit.b_defect <= 1e-3 && touches;
    if !ok {
        return Ok(LevelMembership::Off {
            residual: crit.residual,
        });
    }
    let c = rm
        .points
        .iter()
        .map(|p| field.eval(&Vector3::new(p[0], p[1], p[2])))
        .sum::<f64>()
        / rm.len() as f64;
    Ok(LevelMembership::OnLevelSet {
        c,
        residual: crit.residual,
    })
}

/// Which geometry decided a quadric membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricRoute {
    /// Positive (or negative) definite `B`: a sphere for `<B., .>`.
    Riemannian,
    /// Index 1 or 2: a pseudo-sphere, pseudo-hyperbolic space or light cone
    /// of the Lorentz metric `+-<B., .>`.
    Lorentzian,
    /// One zero eigenvalue: a cylinder of simply isotropic space.
    Isotropic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadricMembership {
    OnQuadric { rho: f64, route: QuadricRoute },
    Off,
}

/// Decide whether a curve lies on `<B (x - P), x - P> = rho` for some `rho`,
/// and find `rho`. The curve is mapped to coordinates where `B` is a standard
/// (pseudo-, degenerate) metric and the matching sphere characterization is
/// applied; the center it produces must agree with `P`.
pub fn quadric_membership(curve: &SampledCurve, b: &Matrix3<f64>, p: &Vector3<f64>) -> Result<QuadricMembership> {
    if curve.ambient_dim() != 3 {
        return Err(GeoError::DimensionMismatch { index: 0 });
    }
    let b = (b + b.transpose()) * 0.5;
    let eig = SymmetricEigen::new(b);
    let class = classify_eigen(&eig.eigenvalues);
    let sign = if class.index >= 2 || (class.degenerate && class.index == 1 && eig.eigenvalues.iter().all(|l| *l <= 0.0)) {
        -1.0
    } else {
        1.0
    };
    let ev = eig.eigenvalues * sign;
    let thr = 1e-8 * ev.norm();
    let mut order: Vec<usize> = (0..3).collect();
    // positive eigenvalues first, then negative, then zero
    order.sort_by_key(|&i| if ev[i] > thr { 0 } else if ev[i] < -thr { 1 } else { 2 });
    let mut m = Matrix3::zeros();
    for (row, &i) in order.iter().enumerate() {
        let scale = if ev[i].abs() > thr { ev[i].abs().sqrt() } else { 1.0 };
        m.set_row(row, &(eig.eigenvectors.column(i).transpose() * scale));
    }
    let pos = ev.iter().filter(|&&l| l > thr).count();
    let neg = ev.iter().filter(|&&l| l < -thr).count();
    let mapped = curve.map_points(|x| {
        let y = m * Vector3::new(x[0], x[1], x[2]);
        DVector::from_column_slice(y.as_slice())
    })?;
    let py = m * p;
    match (pos, neg) {
        (3, 0) => riemannian(&mapped, &py, sign),
        (2, 1) => lorentzian(&mapped, &py, sign),
        (2, 0) => isotropic(&mapped, &py, sign),
        _ => Err(GeoError::UnsupportedSignature {
            eigenvalues: [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]],
        }),
    }
}

fn least_aligned_axis(t: &DVector<f64>) -> DVector<f64> {
    let i = t.iamin();
    let mut e = DVector::zeros(t.len());
    e[i] = 1.0;
    e
}

fn center_tol(radius: f64) -> f64 {
    1e-3 * radius.max(1.0)
}

fn riemannian(curve: &SampledCurve, py: &Vector3<f64>, sign: f64) -> Result<QuadricMembership> {
    let d1 = curve.derivative(1);
    let rm = rm_double_reflection(curve, &least_aligned_axis(&d1[0]))?;
    let dev = match normal_development(&rm) {
        Ok(d) => d,
        Err(GeoError::DegenerateFit { .. }) => return Ok(QuadricMembership::Off),
        Err(e) => return Err(e),
    };
    let (Some(r), Some(centers)) = (dev.sphere_radius(), sphere_centers(&rm, &dev)) else {
        return Ok(QuadricMembership::Off);
    };
    let mean = centers.iter().fold(DVector::zeros(3), |a, c| a + c) / centers.len() as f64;
    let gap = (Vector3::new(mean[0], mean[1], mean[2]) - py).norm();
    if drift(&centers) > center_tol(r) || gap > center_tol(r) {
        return Ok(QuadricMembership::Off);
    }
    Ok(QuadricMembership::OnQuadric {
        rho: sign * r * r,
        route: QuadricRoute::Riemannian,
    })
}

fn lorentzian(curve: &SampledCurve, py: &Vector3<f64>, sign: f64) -> Result<QuadricMembership> {
    let rm = lorentz_rm_frame(curve)?;
    let fit = match lorentz_sphere_membership(&rm) {
        Ok(f) => f,
        Err(GeoError::NoLineFit) => return Ok(QuadricMembership::Off),
        Err(e) => return Err(e),
    };
    let (center, q) = match fit.kind {
        LorentzSphere::PseudoSphere { center, radius } => (center, radius * radius),
        LorentzSphere::PseudoHyperbolic { center, radius } => (center, -radius * radius),
        LorentzSphere::LightCone { center } => (center, 0.0),
        LorentzSphere::None => return Ok(QuadricMembership::Off),
    };
    if (center - py).norm() > center_tol(q.abs().sqrt()) {
        return Ok(QuadricMembership::Off);
    }
    Ok(QuadricMembership::OnQuadric {
        rho: sign * q,
        route: QuadricRoute::Lorentzian,
    })
}

fn isotropic(curve: &SampledCurve, py: &Vector3<f64>, sign: f64) -> Result<QuadricMembership> {
    let iso = iso_apparatus(curve)?;
    let IsoClass::Cylindrical { radius } = iso_sphere_classify(&iso) else {
        return Ok(QuadricMembership::Off);
    };
    // the axis is only defined up to the isotropic direction: compare top views
    let n = iso.kappa.len();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let q = &curve.points[k];
        let c = [q[0] + iso.n[k].x / iso.kappa[k], q[1] + iso.n[k].y / iso.kappa[k]];
        worst = worst.max((c[0] - py.x).hypot(c[1] - py.y));
    }
    if worst > center_tol(radius) {
        return Ok(QuadricMembership::Off);
    }
    Ok(QuadricMembership::OnQuadric {
        rho: sign * radius * radius,
        route: QuadricRoute::Isotropic,
    })
}
