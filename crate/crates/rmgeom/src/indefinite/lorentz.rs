//! Curves in Lorentz-Minkowski space with metric `dx^2 + dy^2 - dz^2`.

use nalgebra::Vector3;

use crate::curve::SampledCurve;
use crate::error::{GeoError, Result};
use crate::numeric::{quad, rk4_step};

/// Relative threshold on `<v,v>` for calling a vector lightlike.
pub const LIGHTLIKE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalCharacter {
    /// `<v, v>` sign for non-null characters.
    pub fn eps(self) -> f64 {
        match self {
            CausalCharacter::Spacelike => 1.0,
            CausalCharacter::Timelike => -1.0,
            CausalCharacter::Lightlike => 0.0,
        }
    }
}

pub fn ldot(u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    u.x * v.x + u.y * v.y - u.z * v.z
}

pub fn causal_character(v: &Vector3<f64>) -> CausalCharacter {
    let q = ldot(v, v);
    if q.abs() <= LIGHTLIKE_TOL * v.norm_squared() {
        CausalCharacter::Lightlike
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

/// Lorentzian cross product, defined by `<u x v, w> = det(u, v, w)`.
pub fn lorentz_cross(u: &Vector3<f64>, v: &Vector3<f64>) -> Vector3<f64> {
    let c = u.cross(v);
    Vector3::new(c.x, c.y, -c.z)
}

fn lnormalize(v: &Vector3<f64>) -> Vector3<f64> {
    v / ldot(v, v).abs().sqrt()
}

fn uniform_character(vs: &[Vector3<f64>]) -> Result<CausalCharacter> {
    let first = causal_character(&vs[0]);
    match vs.iter().position(|v| causal_character(v) != first) {
        Some(index) => Err(GeoError::MixedCausalCharacter { index }),
        None => Ok(first),
    }
}

/// Reparametrize by arc length (space/timelike) or pseudo arc length
/// (lightlike, `<alpha'', alpha''> = 1`). Points are kept; only the
/// parameters change.
pub fn reparametrize_causal(curve: &SampledCurve) -> Result<(SampledCurve, CausalCharacter)> {
    let pts = curve.points3()?;
    let op = curve.diff_op();
    let d1 = op.apply(1, &pts);
    let kind = uniform_character(&d1)?;
    let rate: Vec<f64> = match kind {
        CausalCharacter::Lightlike => {
            let d2 = op.apply(2, &pts);
            let mut r = Vec::with_capacity(d2.len());
            for (v, a) in d1.iter().zip(&d2) {
                let q = ldot(a, a);
                // a null curve's acceleration is spacelike unless the curve is a line
                if q <= LIGHTLIKE_TOL * v.norm_squared().max(a.norm_squared()) {
                    return Err(GeoError::DegenerateLightlike);
                }
                r.push(q.powf(0.25));
            }
            r
        }
        _ => d1.iter().map(|v| ldot(v, v).abs().sqrt()).collect(),
    };
    let s = quad::cumulative(&curve.params, &rate);
    Ok((curve.with_params(s)?, kind))
}

/// RM frame of a space- or timelike curve: `n_i' = -eps <t', n_i> t`.
#[derive(Debug, Clone)]
pub struct LorentzRMData {
    pub s: Vec<f64>,
    pub points: Vec<Vector3<f64>>,
    pub t: Vec<Vector3<f64>>,
    pub dt: Vec<Vector3<f64>>,
    pub n1: Vec<Vector3<f64>>,
    pub n2: Vec<Vector3<f64>>,
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
    pub eps: f64,
    pub eps1: f64,
}

impl LorentzRMData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn eps2(&self) -> f64 {
        -self.eps * self.eps1
    }

    /// `<t', t'>`, i.e. `eta kappa^2`.
    pub fn signed_kappa_sq(&self) -> Vec<f64> {
        self.dt.iter().map(|d| ldot(d, d)).collect()
    }

    /// Largest violation of the frame relations.
    pub fn frame_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for k in 0..self.len() {
            let (t, a, b) = (&self.t[k], &self.n1[k], &self.n2[k]);
            d = d
                .max(ldot(t, a).abs())
                .max(ldot(t, b).abs())
                .max(ldot(a, b).abs())
                .max((ldot(t, t) - self.eps).abs())
                .max((ldot(a, a) - self.eps1).abs())
                .max((ldot(b, b) - self.eps2()).abs());
        }
        d
    }
}

/// Rotation minimizing frame of a non-lightlike curve. For spacelike curves
/// `n1` is timelike; for timelike curves both normals are spacelike.
pub fn lorentz_rm_frame(curve: &SampledCurve) -> Result<LorentzRMData> {
    let (c, kind) = reparametrize_causal(curve).map_err(|e| match e {
        GeoError::DegenerateLightlike => GeoError::LightlikeUnsupported,
        other => other,
    })?;
    if kind == CausalCharacter::Lightlike {
        return Err(GeoError::LightlikeUnsupported);
    }
    let eps = kind.eps();
    let pts = c.points3()?;
    let op = c.diff_op();
    let d1 = op.apply(1, &pts);
    let d2 = op.apply(2, &pts);
    let n = c.len();
    let mut t = Vec::with_capacity(n);
    let mut dt = Vec::with_capacity(n);
    for k in 0..n {
        let v = ldot(&d1[k], &d1[k]).abs().sqrt();
        let tk = d1[k] / v;
        let acc = d2[k] - tk * (eps * ldot(&d2[k], &tk));
        dt.push(acc / (v * v));
        t.push(tk);
    }
    let proj = |w: &Vector3<f64>, tk: &Vector3<f64>| w - tk * (eps * ldot(w, tk));
    // seed: a timelike normal for spacelike curves, a spacelike one otherwise
    let n1_0 = if eps > 0.0 {
        lnormalize(&proj(&Vector3::z(), &t[0]))
    } else {
        let cands = [Vector3::x(), Vector3::y(), Vector3::z()];
        let best = cands
            .iter()
            .map(|e| proj(e, &t[0]))
            .max_by(|a, b| ldot(a, a).partial_cmp(&ldot(b, b)).unwrap())
            .unwrap();
        lnormalize(&best)
    };
    let eps1 = ldot(&n1_0, &n1_0).signum();
    let n2_0 = lnormalize(&lorentz_cross(&t[0], &n1_0));
    let s = &c.params;
    let rhs = |x: f64, y: &[f64]| -> Vec<f64> {
        let tk: Vector3<f64> = quad::interp_cubic(s, &t, x);
        let dk: Vector3<f64> = quad::interp_cubic(s, &dt, x);
        let mut out = vec![0.0; 6];
        for j in 0..2 {
            let nj = Vector3::new(y[3 * j], y[3 * j + 1], y[3 * j + 2]);
            let f = tk * (-eps * ldot(&dk, &nj));
            out[3 * j..3 * j + 3].copy_from_slice(f.as_slice());
        }
        out
    };
    let mut n1 = vec![n1_0];
    let mut n2 = vec![n2_0];
    let guard = 50f64.cosh();
    for k in 0..n - 1 {
        let y: Vec<f64> = n1[k].iter().chain(n2[k].iter()).copied().collect();
        let y = rk4_step(&rhs, s[k], &y, s[k + 1] - s[k]);
        let tk = &t[k + 1];
        let a = proj(&Vector3::new(y[0], y[1], y[2]), tk);
        let a = lnormalize(&a);
        let b = proj(&Vector3::new(y[3], y[4], y[5]), tk);
        let b = b - a * (eps1 * ldot(&b, &a));
        let b = lnormalize(&b);
        if a.norm() > guard || b.norm() > guard {
            return Err(GeoError::HyperbolicOverflow { s: s[k + 1] });
        }
        n1.push(a);
        n2.push(b);
    }
    let kappa1 = (0..n).map(|k| ldot(&dt[k], &n1[k])).collect();
    let kappa2 = (0..n).map(|k| ldot(&dt[k], &n2[k])).collect();
    Ok(LorentzRMData {
        s: c.params.clone(),
        points: pts,
        t,
        dt,
        n1,
        n2,
        kappa1,
        kappa2,
        eps,
        eps1,
    })
}

/// Cartan-type frame `{t, z1, z2}` of a lightlike curve in pseudo arc length:
/// `t, z2` null with `<t, z2> = -1`, `z1` unit spacelike.
#[derive(Debug, Clone)]
pub struct NullFrameData {
    pub s: Vec<f64>,
    pub t: Vec<Vector3<f64>>,
    pub z1: Vec<Vector3<f64>>,
    pub z2: Vec<Vector3<f64>>,
    /// `|t'|`, which is 1 for a curve in pseudo arc length.
    pub kappa1: Vec<f64>,
    /// `<z1', z2>`
    pub kappa2: Vec<f64>,
    /// `<z2', t>`
    pub kappa3: Vec<f64>,
}

/// Null frame of a lightlike curve. A lightlike straight line (the case
/// `kappa_1 = 0`) is reported as [`GeoError::DegenerateLightlike`].
pub fn null_frame(curve: &SampledCurve) -> Result<NullFrameData> {
    let (c, kind) = reparametrize_causal(curve)?;
    if kind != CausalCharacter::Lightlike {
        return Err(GeoError::NotLightlike { index: 0 });
    }
    let pts = c.points3()?;
    let op = c.diff_op();
    let t = op.apply(1, &pts);
    let dt = op.apply(2, &pts);
    let n = c.len();
    let mut z1 = Vec::with_capacity(n);
    let mut z2 = Vec::with_capacity(n);
    let mut kappa1 = Vec::with_capacity(n);
    for k in 0..n {
        let q = ldot(&dt[k], &dt[k]);
        kappa1.push(q.max(0.0).sqrt());
        let a = lnormalize(&dt[k]);
        let w = Vector3::z();
        let w = w - a * ldot(&w, &a);
        let beta = -1.0 / ldot(&w, &t[k]);
        let mu = 0.5 * beta * beta * ldot(&w, &w);
        z1.push(a);
        z2.push(w * beta + t[k] * mu);
    }
    let dz1 = op.apply(1, &z1);
    let dz2 = op.apply(1, &z2);
    let kappa2 = (0..n).map(|k| ldot(&dz1[k], &z2[k])).collect();
    let kappa3 = (0..n).map(|k| ldot(&dz2[k], &t[k])).collect();
    Ok(NullFrameData {
        s: c.params.clone(),
        t,
        z1,
        z2,
        kappa1,
        kappa2,
        kappa3,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum LorentzSphere {
    PseudoSphere { center: Vector3<f64>, radius: f64 },
    PseudoHyperbolic { center: Vector3<f64>, radius: f64 },
    LightCone { center: Vector3<f64> },
    None,
}

#[derive(Debug, Clone)]
pub struct LorentzSphereFit {
    pub kind: LorentzSphere,
    /// Coefficients of the fitted line `a1 k1 + a2 k2 + eps = 0`.
    pub a: [f64; 2],
    pub residual: f64,
    pub center_drift: f64,
}

/// Decide whether a curve lies on a pseudo-sphere, a pseudo-hyperbolic space
/// or a light cone. The center is `P = alpha - a1 n1 - a2 n2` and must be
/// constant along the curve.
pub fn lorentz_sphere_membership(rm: &LorentzRMData) -> Result<LorentzSphereFit> {
    let n = rm.len();
    let rms = (rm
        .kappa1
        .iter()
        .zip(&rm.kappa2)
        .map(|(a, b)| a * a + b * b)
        .sum::<f64>()
        / n as f64)
        .sqrt();
    if rms < 1e-9 {
        return Err(GeoError::NoLineFit);
    }
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..n {
        let (x, y) = (rm.kappa1[k], rm.kappa2[k]);
        s11 += x * x;
        s12 += x * y;
        s22 += y * y;
        b1 -= rm.eps * x;
        b2 -= rm.eps * y;
    }
    let det = s11 * s22 - s12 * s12;
    let a = if det.abs() > 1e-12 * (s11 * s22).max(1e-300) {
        [(b1 * s22 - b2 * s12) / det, (s11 * b2 - s12 * b1) / det]
    } else {
        // samples on a ray: only the combination along it is determined
        let nrm = s11 + s22;
        [b1 / nrm, b2 / nrm]
    };
    let residual = ((0..n)
        .map(|k| (a[0] * rm.kappa1[k] + a[1] * rm.kappa2[k] + rm.eps).powi(2))
        .sum::<f64>()
        / n as f64)
        .sqrt();
    let centers: Vec<Vector3<f64>> = (0..n)
        .map(|k| rm.points[k] - rm.n1[k] * a[0] - rm.n2[k] * a[1])
        .collect();
    let mean = centers.iter().sum::<Vector3<f64>>() / n as f64;
    let center_drift = centers.iter().map(|c| (c - mean).norm()).fold(0.0, f64::max);
    let scale = a[0] * a[0] + a[1] * a[1];
    let kind = if residual > 1e-3 || center_drift > 1e-3 * scale.sqrt().max(1.0) {
        LorentzSphere::None
    } else {
        let q = rm.eps1 * a[0] * a[0] + rm.eps2() * a[1] * a[1];
        if q.abs() < 1e-3 * scale {
            LorentzSphere::LightCone { center: mean }
        } else if q > 0.0 {
            LorentzSphere::PseudoSphere {
                center: mean,
                radius: q.sqrt(),
            }
        } else {
            LorentzSphere::PseudoHyperbolic {
                center: mean,
                radius: (-q).sqrt(),
            }
        }
    };
    Ok(LorentzSphereFit {
        kind,
        a,
        residual,
        center_drift,
    })
}
