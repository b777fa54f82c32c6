//! Independent oracles shared by the integration tests and the acceptance
//! run. Nothing here calls into the library's geometry code.
#![allow(dead_code)]

use nalgebra::Vector3;

/// Curvatures and first fundamental form of a parametrized surface from
/// central differences of the embedding.
#[derive(Debug, Clone, Copy)]
pub struct FdCurvature {
    pub gauss: f64,
    pub mean: f64,
    pub g: [f64; 3],
}

pub fn fd_curvature(x: &dyn Fn(f64, f64) -> Vector3<f64>, u: f64, v: f64, h: f64) -> FdCurvature {
    let xu = (x(u + h, v) - x(u - h, v)) / (2.0 * h);
    let xv = (x(u, v + h) - x(u, v - h)) / (2.0 * h);
    let x0 = x(u, v);
    let xuu = (x(u + h, v) - x0 * 2.0 + x(u - h, v)) / (h * h);
    let xvv = (x(u, v + h) - x0 * 2.0 + x(u, v - h)) / (h * h);
    let xuv = (x(u + h, v + h) - x(u + h, v - h) - x(u - h, v + h) + x(u - h, v - h)) / (4.0 * h * h);
    let (e, f, g) = (xu.dot(&xu), xu.dot(&xv), xv.dot(&xv));
    let nrm = xu.cross(&xv).normalize();
    let (l, m, n) = (xuu.dot(&nrm), xuv.dot(&nrm), xvv.dot(&nrm));
    let det = e * g - f * f;
    FdCurvature {
        gauss: (l * n - m * m) / det,
        mean: (e * n - 2.0 * f * m + g * l) / (2.0 * det),
        g: [e, f, g],
    }
}

/// Composite Simpson rule with a fixed panel count; smooth in the limits.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// Bour's helicoidal surface rebuilt from scratch: `U` and `U'` in closed
/// form, the profile integrals by Simpson from `xi0`.
pub struct BourOracle {
    pub u: Box<dyn Fn(f64) -> f64>,
    pub du: Box<dyn Fn(f64) -> f64>,
    pub omega: f64,
    pub a: f64,
    pub xi0: f64,
}

impl BourOracle {
    fn parts(&self, xi: f64) -> (f64, f64, f64) {
        let (w, a) = (self.omega, self.a);
        let rad = |x: f64| {
            let (u, du) = ((self.u)(x), (self.du)(x));
            (a * a * u * u * (w * w - a * a * du * du) - w * w).max(0.0).sqrt()
        };
        let lam = |x: f64| {
            let u = (self.u)(x);
            a * u * rad(x) / (w * (a * a * u * u - 1.0))
        };
        let psi = |x: f64| {
            let u = (self.u)(x);
            -rad(x) / (w * a * u * (a * a * u * u - 1.0))
        };
        let u = (self.u)(xi);
        let rho = (a * a * u * u - 1.0).sqrt() / w;
        (rho, simpson(&lam, self.xi0, xi, 400), simpson(&psi, self.xi0, xi, 400))
    }

    pub fn point(&self, xi: f64, chi: f64) -> Vector3<f64> {
        let (rho, lam, psi) = self.parts(xi);
        let phi = chi / self.a + psi;
        let t = self.omega * phi;
        Vector3::new(rho * t.cos(), rho * t.sin(), lam + phi)
    }
}

/// Critical point found on a grid: indices and class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridClass {
    Min,
    Max,
    Saddle,
}

/// Brute-force search on a sampled function `v[i][j]` over a uniform grid,
/// periodic in `j`: local minima of the squared finite-difference gradient
/// that are nearly stationary, classified by the finite-difference Hessian.
pub fn grid_critical_points(v: &[Vec<f64>], hs: f64, hp: f64) -> Vec<(usize, usize, GridClass)> {
    let ns = v.len();
    let np = v[0].len();
    let jp = |j: usize, d: isize| ((j as isize + d).rem_euclid(np as isize)) as usize;
    let grad2 = |i: usize, j: usize| {
        let gs = (v[i + 1][j] - v[i - 1][j]) / (2.0 * hs);
        let gp = (v[i][jp(j, 1)] - v[i][jp(j, -1)]) / (2.0 * hp);
        gs * gs + gp * gp
    };
    let mut gmax = 0.0f64;
    for i in 1..ns - 1 {
        for j in 0..np {
            gmax = gmax.max(grad2(i, j));
        }
    }
    let mut out = Vec::new();
    for i in 2..ns - 2 {
        for j in 0..np {
            let g0 = grad2(i, j);
            if g0 > 1e-4 * gmax {
                continue;
            }
            let mut is_min = true;
            for di in -1isize..=1 {
                for dj in -1isize..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    if grad2((i as isize + di) as usize, jp(j, dj)) < g0 {
                        is_min = false;
                    }
                }
            }
            if !is_min {
                continue;
            }
            let vss = (v[i + 1][j] - 2.0 * v[i][j] + v[i - 1][j]) / (hs * hs);
            let vpp = (v[i][jp(j, 1)] - 2.0 * v[i][j] + v[i][jp(j, -1)]) / (hp * hp);
            let vsp = (v[i + 1][jp(j, 1)] - v[i + 1][jp(j, -1)] - v[i - 1][jp(j, 1)] + v[i - 1][jp(j, -1)])
                / (4.0 * hs * hp);
            let det = vss * vpp - vsp * vsp;
            let class = if det < 0.0 {
                GridClass::Saddle
            } else if vss > 0.0 {
                GridClass::Min
            } else {
                GridClass::Max
            };
            out.push((i, j, class));
        }
    }
    out
}

/// Smallest angular distance between two angles.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * std::f64::consts::PI);
    d.min(2.0 * std::f64::consts::PI - d)
}
