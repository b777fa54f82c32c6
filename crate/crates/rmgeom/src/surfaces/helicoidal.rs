//! Helicoidal surfaces `(rho cos(w phi), rho sin(w phi), lambda(rho) + phi)`
//! in natural parameters `(xi, chi)`, where the metric is
//! `d xi^2 + U(xi)^2 d chi^2`: the Bour family and the minimal members.

use nalgebra::Vector3;

use super::revolution::Branch;
use crate::error::{GeoError, Result};
use crate::numeric::{linspace, quad, Func1D};

/// Samples within this many points of either end of the range may have a
/// slightly negative radicand clipped to zero; further in it is an error.
pub const GUARD_BAND: usize = 3;

#[derive(Debug, Clone)]
pub struct HelicoidalSurface {
    pub omega: f64,
    pub a: f64,
    pub branch: Branch,
    pub xi: Vec<f64>,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
    pub ddu: Vec<f64>,
    pub rho: Vec<f64>,
    pub lambda: Vec<f64>,
    /// `phi(xi, chi) = chi / a + psi(xi)`.
    pub psi: Vec<f64>,
    pub drho: Vec<f64>,
    pub dlambda: Vec<f64>,
    pub dpsi: Vec<f64>,
    /// `R = a^2 U^2 (w^2 - a^2 U'^2) - w^2`, after clipping.
    pub radicand: Vec<f64>,
    pub gauss: Vec<f64>,
    pub mean: Vec<f64>,
    /// Sample indices where the radicand was clipped.
    pub clipped: Vec<usize>,
}

impl HelicoidalSurface {
    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn point(&self, i: usize, chi: f64) -> Vector3<f64> {
        let phi = chi / self.a + self.psi[i];
        let t = self.omega * phi;
        Vector3::new(self.rho[i] * t.cos(), self.rho[i] * t.sin(), self.lambda[i] + phi)
    }

    /// Tangent vectors `(X_xi, X_chi)` from the closed-form first derivatives.
    pub fn tangents(&self, i: usize, chi: f64) -> (Vector3<f64>, Vector3<f64>) {
        let phi = chi / self.a + self.psi[i];
        let (sn, cs) = (self.omega * phi).sin_cos();
        let (r, w) = (self.rho[i], self.omega);
        let radial = Vector3::new(cs, sn, 0.0);
        let around = Vector3::new(-w * r * sn, w * r * cs, 1.0);
        let x_xi = radial * self.drho[i] + around * self.dpsi[i] + Vector3::z() * self.dlambda[i];
        let x_chi = around / self.a;
        (x_xi, x_chi)
    }

    /// First fundamental form `[g11, g12, g22]` in `(xi, chi)` from the
    /// embedding, not from `U`.
    pub fn first_form(&self, i: usize) -> [f64; 3] {
        let (a, b) = self.tangents(i, 0.0);
        [a.dot(&a), a.dot(&b), b.dot(&b)]
    }
}

/// Bour's construction: for `U > 0` and constants `(omega, a)`,
///
/// - `rho = sqrt(a^2 U^2 - 1) / omega`,
/// - `lambda' = a U sqrt(R) / (omega (a^2 U^2 - 1))`,
/// - `psi' = -sqrt(R) / (omega a U (a^2 U^2 - 1))`,
///
/// with `R = a^2 U^2 (omega^2 - a^2 U'^2) - omega^2`. `K = -U''/U` and
/// `H = (a^2 U U'' + a^2 U'^2 - omega^2) / (2 sqrt R)` for the normal
/// `U^{-1} X_chi x X_xi`. Where `R` vanishes to rounding (the helicoid has
/// `R = 0` identically) and the numerator does too, `H = 0`.
pub fn bour_surface(
    u_fn: &Func1D,
    omega: f64,
    a: f64,
    xi_range: (f64, f64),
    n: usize,
    branch: Branch,
) -> Result<HelicoidalSurface> {
    if omega == 0.0 || a == 0.0 || !(xi_range.1 > xi_range.0) || n < 8 {
        return Err(GeoError::InvalidRange(format!(
            "need omega, a != 0, xi1 > xi0, n >= 8 (omega={omega}, a={a}, {xi_range:?}, n={n})"
        )));
    }
    let xi = linspace(xi_range.0, xi_range.1, n);
    let sg = branch.sign();
    let (w2, a2) = (omega * omega, a * a);
    let mut s = HelicoidalSurface {
        omega,
        a,
        branch,
        xi: xi.clone(),
        u: Vec::with_capacity(n),
        du: Vec::with_capacity(n),
        ddu: Vec::with_capacity(n),
        rho: Vec::with_capacity(n),
        lambda: Vec::new(),
        psi: Vec::new(),
        drho: Vec::with_capacity(n),
        dlambda: Vec::with_capacity(n),
        dpsi: Vec::with_capacity(n),
        radicand: Vec::with_capacity(n),
        gauss: Vec::with_capacity(n),
        mean: Vec::with_capacity(n),
        clipped: Vec::new(),
    };
    for (i, &x) in xi.iter().enumerate() {
        let (u, du, ddu) = (u_fn.eval(x), u_fn.d1(x), u_fn.d2(x));
        let p = a2 * u * u - 1.0;
        if !(u > 0.0) || !(p > 0.0) {
            return Err(GeoError::BourDomainViolation { xi: x });
        }
        let scale = w2 * a2 * u * u;
        let mut r = a2 * u * u * (w2 - a2 * du * du) - w2;
        let tol = 1e-10 * scale;
        if r < 0.0 {
            let near_end = i < GUARD_BAND || i + GUARD_BAND >= n;
            if r < -tol && !near_end {
                return Err(GeoError::BourDomainViolation { xi: x });
            }
            if r < -tol {
                s.clipped.push(i);
            }
            r = 0.0;
        }
        let sr = r.sqrt();
        let rho = p.sqrt() / omega;
        s.u.push(u);
        s.du.push(du);
        s.ddu.push(ddu);
        s.rho.push(rho);
        s.drho.push(a2 * u * du / (w2 * rho));
        s.dlambda.push(sg * a * u * sr / (omega * p));
        s.dpsi.push(-sg * sr / (omega * a * u * p));
        s.radicand.push(r);
        s.gauss.push(-ddu / u);
        let num = a2 * u * ddu + a2 * du * du - w2;
        s.mean.push(if r > tol {
            sg * num / (2.0 * sr)
        } else if num.abs() <= 1e-6 * w2.max(a2 * u * ddu.abs()) {
            0.0
        } else {
            s.clipped.push(i);
            sg * num.signum() * f64::INFINITY
        });
    }
    s.clipped.sort_unstable();
    s.clipped.dedup();
    s.lambda = quad::cumulative(&xi, &s.dlambda);
    s.psi = quad::cumulative(&xi, &s.dpsi);
    Ok(s)
}

/// Minimal helicoidal surfaces: `U^2 = ((omega xi + omega1)^2 + b) / a^2`
/// with `b = omega0 - omega1^2 >= 1` (here `a = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalHelicoidal {
    pub omega: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub b: f64,
}

impl MinimalHelicoidal {
    pub fn new(omega: f64, omega0: f64, omega1: f64) -> Result<Self> {
        let b = omega0 - omega1 * omega1;
        if !(b >= 1.0 - 1e-12) || omega == 0.0 {
            return Err(GeoError::InvalidFamily { b });
        }
        Ok(MinimalHelicoidal { omega, omega0, omega1, b })
    }

    /// `(omega xi + omega1)^2 + b`.
    pub fn q(&self, xi: f64) -> f64 {
        (self.omega * xi + self.omega1).powi(2) + self.b
    }

    /// `U` with exact first and second derivatives.
    pub fn u_fn(&self) -> Func1D {
        let me = *self;
        let w = self.omega;
        Func1D::new(move |x| me.q(x).sqrt())
            .with_d1(move |x| w * (w * x + me.omega1) / me.q(x).sqrt())
            .with_d2(move |x| {
                let q = me.q(x);
                w * w * me.b / (q * q.sqrt())
            })
    }

    pub fn gauss(&self, xi: f64) -> f64 {
        -self.b * self.omega * self.omega / self.q(xi).powi(2)
    }

    /// Effective potential of the separated `xi` equation with angular
    /// quantum number `m` (units `hbar^2/2m = 1`).
    pub fn veff(&self, xi: f64, m: i64) -> f64 {
        let q = self.q(xi);
        let m2 = (m * m) as f64;
        -0.25 * self.omega * self.omega * (self.b / (q * q) + (1.0 - 4.0 * m2) / q)
    }

    /// `xi` of the helicoid coordinate `xt` under `xi = sqrt(b) xt - omega1/omega`.
    pub fn from_helicoid(&self, xt: f64) -> f64 {
        self.b.sqrt() * xt - self.omega1 / self.omega
    }
}

pub fn minimal_helicoidal_family(
    omega: f64,
    omega0: f64,
    omega1: f64,
    xi_range: (f64, f64),
    n: usize,
) -> Result<(MinimalHelicoidal, HelicoidalSurface)> {
    let fam = MinimalHelicoidal::new(omega, omega0, omega1)?;
    let surf = bour_surface(&fam.u_fn(), omega, 1.0, xi_range, n, Branch::Plus)?;
    Ok((fam, surf))
}
