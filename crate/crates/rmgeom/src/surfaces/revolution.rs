//! Surfaces of revolution with prescribed `U = sqrt(H^2 - K)`, and the
//! complex first-order form of the prescribed-`U` equation.

use nalgebra::Vector3;

use crate::error::{GeoError, Result};
use crate::numeric::{linspace, quad, DiffOp, Func1D};

/// Sign choice for the free square roots of the inverse constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Graph `z = lambda(rho)` rotated about the `z` axis.
#[derive(Debug, Clone)]
pub struct RevolutionSurface {
    pub rho: Vec<f64>,
    pub lambda: Vec<f64>,
    /// `A = 2 \int U d rho / rho + a1`; equals the parallel curvature.
    pub a_fn: Vec<f64>,
    pub prescribed: Vec<f64>,
    /// `sqrt(H^2 - K)` recomputed from the sampled profile.
    pub gip_rebuilt: Vec<f64>,
    /// Profile arc length: the natural coordinate `u` with metric
    /// `du^2 + rho^2 dv^2`.
    pub u: Vec<f64>,
    pub branch: Branch,
}

impl RevolutionSurface {
    pub fn point(&self, i: usize, phi: f64) -> Vector3<f64> {
        Vector3::new(self.rho[i] * phi.cos(), self.rho[i] * phi.sin(), self.lambda[i])
    }

    pub fn gip_error(&self) -> f64 {
        self.prescribed
            .iter()
            .zip(&self.gip_rebuilt)
            .fold(0.0, |m, (a, b)| m.max((a.abs() - b).abs()))
    }

    /// Mean curvature along the profile: meridian curvature `(rho A)'` plus
    /// parallel curvature `A`, halved (sign follows the branch).
    pub fn mean(&self) -> Vec<f64> {
        let s = self.branch.sign();
        self.a_fn
            .iter()
            .zip(&self.prescribed)
            .map(|(a, u)| s * (a + u))
            .collect()
    }
}

/// Integrate the two-parameter family of profiles with `sqrt(H^2 - K) = U`:
/// `A(rho) = a1 + 2 \int_{rho_0}^{rho} U / rho`, and
/// `lambda = a2 +- \int rho A / sqrt(1 - rho^2 A^2)` on a uniform grid of
/// `n` radii.
pub fn revolution_from_u(
    u_fn: &Func1D,
    a1: f64,
    a2: f64,
    rho_range: (f64, f64),
    n: usize,
    branch: Branch,
) -> Result<RevolutionSurface> {
    let (r0, r1) = rho_range;
    if !(r0 > 0.0) || !(r1 > r0) || n < 8 {
        return Err(GeoError::InvalidRange(format!(
            "need 0 < rho0 < rho1 and n >= 8, got {rho_range:?}, n={n}"
        )));
    }
    let rho = linspace(r0, r1, n);
    let prescribed: Vec<f64> = rho.iter().map(|&r| u_fn.eval(r)).collect();
    let integrand: Vec<f64> = rho.iter().zip(&prescribed).map(|(r, u)| 2.0 * u / r).collect();
    let a_fn: Vec<f64> = quad::cumulative(&rho, &integrand).iter().map(|v| v + a1).collect();
    let mut slope = Vec::with_capacity(n);
    let mut speed = Vec::with_capacity(n);
    for (r, a) in rho.iter().zip(&a_fn) {
        let q = 1.0 - r * r * a * a;
        if q <= 0.0 {
            return Err(GeoError::DomainViolation { rho: *r });
        }
        slope.push(branch.sign() * r * a / q.sqrt());
        speed.push(1.0 / q.sqrt());
    }
    let lambda: Vec<f64> = quad::cumulative(&rho, &slope).iter().map(|v| v + a2).collect();
    let op = DiffOp::new(&rho);
    let d1 = op.apply(1, &lambda);
    let d2 = op.apply(2, &lambda);
    let gip_rebuilt = (0..n)
        .map(|i| {
            let w = (1.0 + d1[i] * d1[i]).sqrt();
            let k_mer = d2[i] / w.powi(3);
            let k_par = d1[i] / (rho[i] * w);
            0.5 * (k_mer - k_par).abs()
        })
        .collect();
    Ok(RevolutionSurface {
        u: quad::cumulative(&rho, &speed),
        rho,
        lambda,
        a_fn,
        prescribed,
        gip_rebuilt,
        branch,
    })
}

/// RMS over the samples of `Z' - 2 i U Z + |Z|^2` with `Z = (x' + i z') / x`
/// for a unit-speed profile `(x(s), z(s))`. The sign of `U` depends on the
/// orientation of the profile, so the smaller of the residuals for `U` and
/// `-U` is returned.
pub fn kenmotsu_residual(s: &[f64], x: &[f64], z: &[f64], u: &[f64]) -> f64 {
    let op = DiffOp::new(s);
    let dx = op.apply(1, x);
    let dz = op.apply(1, z);
    let zr: Vec<f64> = dx.iter().zip(x).map(|(a, b)| a / b).collect();
    let zi: Vec<f64> = dz.iter().zip(x).map(|(a, b)| a / b).collect();
    let dzr = op.apply(1, &zr);
    let dzi = op.apply(1, &zi);
    let rms = |sg: f64| {
        let mut acc = 0.0;
        for k in 0..s.len() {
            let m2 = zr[k] * zr[k] + zi[k] * zi[k];
            // -2iU(zr + i zi) = 2U zi - 2iU zr
            let re = dzr[k] + 2.0 * sg * u[k] * zi[k] + m2;
            let im = dzi[k] - 2.0 * sg * u[k] * zr[k];
            acc += re * re + im * im;
        }
        (acc / s.len() as f64).sqrt()
    };
    rms(1.0).min(rms(-1.0))
}
