//! Separated one-dimensional Schrodinger problems on invariant surfaces and
//! thin tubes, in units `hbar^2 / 2m = 1`.
//!
//! On a surface with metric `du^2 + f(u)^2 dv^2` the rescaled amplitude
//! `A = sqrt(f) psi` of a mode `e^{i k v}` obeys
//! `-A'' - U_eff A + lambda / f^2 A = E A` with
//! `U_eff = f'^2 / 4f^2 + f'' / 2f + H^2` (the `-K` of the geometric potential
//! cancels against the rescaling).

pub mod eigen;

use std::fmt;
use std::sync::Arc;

use crate::curve::{frenet_apparatus, SampledCurve};
use crate::error::{GeoError, Result};
use crate::numeric::{linspace, quad};
use crate::surfaces::{InvariantSurface, MinimalHelicoidal};

use eigen::Tridiagonal;

pub const MIN_GRID: usize = 200;
/// Energies above `-EPS_BOUND` do not count as bound.
pub const EPS_BOUND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Dirichlet,
    Periodic,
}

/// Transverse quantum data: either the separation constant itself or the
/// integer angular momentum `m`, which sets `lambda = m^2` (`m^2 omega^2` on
/// helicoidal surfaces, whose orbits close after `chi = 2 pi / omega`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transverse {
    Lambda(f64),
    Momentum(i64),
}

type Source = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;

/// `-A'' + (lambda / f^2 - U_eff) A = E A` on `domain`.
#[derive(Clone)]
pub struct SeparatedProblem {
    pub u: Vec<f64>,
    pub f: Vec<f64>,
    pub ueff: Vec<f64>,
    pub lambda: f64,
    pub bc: Boundary,
    pub domain: (f64, f64),
    /// Exact `(f, U_eff)` when known; lets the domain grow past the samples.
    source: Option<Source>,
}

impl fmt::Debug for SeparatedProblem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("SeparatedProblem")
            .field("samples", &self.u.len())
            .field("lambda", &self.lambda)
            .field("bc", &self.bc)
            .field("domain", &self.domain)
            .field("analytic", &self.source.is_some())
            .finish()
    }
}

impl SeparatedProblem {
    /// Problem from sampled data; the domain is the sample range.
    pub fn from_samples(u: Vec<f64>, f: Vec<f64>, ueff: Vec<f64>, lambda: f64, bc: Boundary) -> Result<Self> {
        if u.len() < 4 || f.len() != u.len() || ueff.len() != u.len() {
            return Err(GeoError::InvalidRange("need at least 4 matching samples".into()));
        }
        if u.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeoError::InvalidRange("u samples must increase".into()));
        }
        if let Some(i) = f.iter().position(|v| !(*v > 0.0)) {
            return Err(GeoError::InvalidRange(format!("f must be positive, f({}) = {}", u[i], f[i])));
        }
        let domain = (u[0], u[u.len() - 1]);
        Ok(SeparatedProblem { u, f, ueff, lambda, bc, domain, source: None })
    }

    /// Problem from closed-form `(f, U_eff)`; samples are kept for output.
    pub fn from_fn(
        fu: impl Fn(f64) -> (f64, f64) + Send + Sync + 'static,
        lambda: f64,
        domain: (f64, f64),
        bc: Boundary,
    ) -> Result<Self> {
        if !(domain.1 > domain.0) {
            return Err(GeoError::InvalidRange(format!("empty domain {domain:?}")));
        }
        let u = linspace(domain.0, domain.1, 1001);
        let (f, ueff): (Vec<f64>, Vec<f64>) = u.iter().map(|&x| fu(x)).unzip();
        if let Some(i) = f.iter().position(|v| !(*v > 0.0)) {
            return Err(GeoError::InvalidRange(format!("f must be positive, f({}) = {}", u[i], f[i])));
        }
        Ok(SeparatedProblem { u, f, ueff, lambda, bc, domain, source: Some(Arc::new(fu)) })
    }

    /// Free particle on an interval (`f = 1`, `U_eff = 0`).
    pub fn free(length: f64, bc: Boundary) -> Result<Self> {
        Self::from_fn(|_| (1.0, 0.0), 0.0, (0.0, length), bc)
    }

    pub fn is_analytic(&self) -> bool {
        self.source.is_some()
    }

    /// Same equation on another interval. Sampled problems cannot extend past
    /// their data.
    pub fn with_domain(&self, a: f64, b: f64) -> Result<Self> {
        if !(b > a) {
            return Err(GeoError::InvalidRange(format!("empty domain ({a}, {b})")));
        }
        match &self.source {
            Some(src) => {
                let src = src.clone();
                let mut p = Self::from_fn(move |x| src(x), self.lambda, (a, b), self.bc)?;
                p.source = self.source.clone();
                Ok(p)
            }
            None => {
                let (lo, hi) = (self.u[0], self.u[self.u.len() - 1]);
                let tol = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
                if a < lo - tol || b > hi + tol {
                    return Err(GeoError::InvalidRange(format!(
                        "domain ({a}, {b}) leaves the sampled range ({lo}, {hi})"
                    )));
                }
                let mut p = self.clone();
                p.domain = (a.max(lo), b.min(hi));
                Ok(p)
            }
        }
    }

    fn eval(&self, x: f64) -> (f64, f64) {
        match &self.source {
            Some(src) => src(x),
            None => (quad::interp_cubic(&self.u, &self.f, x), quad::interp_cubic(&self.u, &self.ueff, x)),
        }
    }

    /// `lambda / f^2 - U_eff`.
    pub fn potential(&self, x: f64) -> f64 {
        let (f, ue) = self.eval(x);
        self.lambda / (f * f) - ue
    }

    pub fn potential_samples(&self) -> Vec<f64> {
        self.f
            .iter()
            .zip(&self.ueff)
            .map(|(f, ue)| self.lambda / (f * f) - ue)
            .collect()
    }
}

/// Lowest eigenpairs of a separated problem.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Grid of the wavefunction samples; Dirichlet grids include the two
    /// boundary nodes, periodic grids omit the repeated endpoint.
    pub u: Vec<f64>,
    pub energies: Vec<f64>,
    /// Normalized so that `h sum |A|^2 = 1`.
    pub wavefunctions: Vec<Vec<f64>>,
    pub bc: Boundary,
    pub h: f64,
}

impl Spectrum {
    pub fn n_states(&self) -> usize {
        self.energies.len()
    }

    pub fn overlap(&self, i: usize, j: usize) -> f64 {
        self.h * self.wavefunctions[i].iter().zip(&self.wavefunctions[j]).map(|(a, b)| a * b).sum::<f64>()
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n_states();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.overlap(i, j) - target).abs());
            }
        }
        worst
    }

    /// `<|u - c|>` in state `k`.
    pub fn mean_abs_position(&self, k: usize, c: f64) -> f64 {
        self.h * self.wavefunctions[k].iter().zip(&self.u).map(|(a, x)| a * a * (x - c).abs()).sum::<f64>()
    }
}

/// Second-order finite differences on a uniform grid with `n_grid` unknowns.
pub fn solve_1d(problem: &SeparatedProblem, n_states: usize, n_grid: usize) -> Result<Spectrum> {
    if n_grid < MIN_GRID {
        return Err(GeoError::GridTooCoarse { needed: MIN_GRID, got: n_grid });
    }
    if n_states == 0 || n_states > n_grid {
        return Err(GeoError::InvalidRange(format!("n_states = {n_states} with {n_grid} grid points")));
    }
    let (a, b) = problem.domain;
    let (h, nodes): (f64, Vec<f64>) = match problem.bc {
        Boundary::Dirichlet => {
            let h = (b - a) / (n_grid + 1) as f64;
            (h, (1..=n_grid).map(|i| a + i as f64 * h).collect())
        }
        Boundary::Periodic => {
            let h = (b - a) / n_grid as f64;
            (h, (0..n_grid).map(|i| a + i as f64 * h).collect())
        }
    };
    let ih2 = 1.0 / (h * h);
    let mut d = Vec::with_capacity(n_grid);
    for &x in &nodes {
        let v = problem.potential(x);
        if !v.is_finite() {
            return Err(GeoError::Eigen(format!("potential not finite at u = {x}")));
        }
        d.push(2.0 * ih2 + v);
    }
    let t = Tridiagonal {
        d,
        e: vec![-ih2; n_grid - 1],
        corner: (problem.bc == Boundary::Periodic).then_some(-ih2),
    };
    let pairs = t.lowest(n_states);
    let mut energies = Vec::with_capacity(n_states);
    let mut wavefunctions = Vec::with_capacity(n_states);
    for (lam, mut v) in pairs {
        let scale = 1.0 / h.sqrt();
        // fix the sign: largest lobe positive
        let big = v.iter().cloned().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        let sg = if big < 0.0 { -scale } else { scale };
        v.iter_mut().for_each(|x| *x *= sg);
        if problem.bc == Boundary::Dirichlet {
            v.insert(0, 0.0);
            v.push(0.0);
        }
        energies.push(lam);
        wavefunctions.push(v);
    }
    let u = match problem.bc {
        Boundary::Dirichlet => {
            let mut u = vec![a];
            u.extend(nodes);
            u.push(b);
            u
        }
        Boundary::Periodic => nodes,
    };
    Ok(Spectrum { u, energies, wavefunctions, bc: problem.bc, h })
}

/// Separated `u` equation of an invariant surface.
pub fn separated_problem(surface: &InvariantSurface, transverse: Transverse) -> Result<SeparatedProblem> {
    let nat = surface.natural();
    let lambda = match transverse {
        Transverse::Lambda(l) => l,
        Transverse::Momentum(m) => {
            let m2 = (m * m) as f64;
            match surface {
                InvariantSurface::Helicoidal(h) => m2 * h.omega * h.omega,
                _ => m2,
            }
        }
    };
    let ueff = (0..nat.u.len())
        .map(|i| {
            let f = nat.f[i];
            nat.df[i] * nat.df[i] / (4.0 * f * f) + nat.ddf[i] / (2.0 * f) + nat.mean[i] * nat.mean[i]
        })
        .collect();
    SeparatedProblem::from_samples(nat.u, nat.f, ueff, lambda, Boundary::Dirichlet)
}

/// The `xi` equation of a minimal helicoidal surface with exact coefficients:
/// `V_eff = -(omega^2 / 4) [b / q^2 + (1 - 4 m^2) / q]`, `q = (omega xi + omega1)^2 + b`.
pub fn helicoidal_minimal_veff(family: &MinimalHelicoidal, m_chi: i64, xi_range: (f64, f64)) -> Result<SeparatedProblem> {
    let fam = *family;
    let w2 = fam.omega * fam.omega;
    SeparatedProblem::from_fn(
        move |x| {
            let q = fam.q(x);
            (q.sqrt(), 0.25 * w2 * (fam.b / (q * q) + 1.0 / q))
        },
        (m_chi * m_chi) as f64 * w2,
        xi_range,
        Boundary::Dirichlet,
    )
}

/// Outcome of [`bound_state_search`].
#[derive(Debug, Clone)]
pub enum BoundState {
    Bound { energy: f64, energy_doubled: f64, spectrum: Spectrum },
    None { lowest: f64, lowest_doubled: f64 },
}

impl BoundState {
    pub fn is_bound(&self) -> bool {
        matches!(self, BoundState::Bound { .. })
    }

    pub fn lowest(&self) -> f64 {
        match self {
            BoundState::Bound { energy, .. } => *energy,
            BoundState::None { lowest, .. } => *lowest,
        }
    }
}

/// Dirichlet ground state on `[c - L, c + L]` and on `[c - 2L, c + 2L]`
/// (twice the grid), `c` the middle of the problem's domain. A state is bound
/// when both energies lie below `-EPS_BOUND` and agree within 10%.
pub fn bound_state_search(problem: &SeparatedProblem, half_width: f64, n_grid: usize) -> Result<BoundState> {
    let c = 0.5 * (problem.domain.0 + problem.domain.1);
    let mut p1 = problem.with_domain(c - half_width, c + half_width)?;
    let mut p2 = problem.with_domain(c - 2.0 * half_width, c + 2.0 * half_width)?;
    p1.bc = Boundary::Dirichlet;
    p2.bc = Boundary::Dirichlet;
    let s1 = solve_1d(&p1, 1, n_grid)?;
    let s2 = solve_1d(&p2, 1, 2 * n_grid)?;
    let (e1, e2) = (s1.energies[0], s2.energies[0]);
    if e1 < -EPS_BOUND && e2 < -EPS_BOUND && (e1 - e2).abs() <= 0.1 * e2.abs() {
        Ok(BoundState::Bound { energy: e1, energy_doubled: e2, spectrum: s1 })
    } else {
        Ok(BoundState::None { lowest: e1, lowest_doubled: e2 })
    }
}

/// Zero-order thin-tube state: `Psi = psi_n(s) e^{i r l phi_RM}`.
#[derive(Debug, Clone)]
pub struct ThinTubeState {
    pub energy: f64,
    /// Energy of the flat `s` problem alone.
    pub longitudinal: f64,
    pub spectrum: Spectrum,
    /// Centerline arc length and `theta = \int tau` on it.
    pub s: Vec<f64>,
    pub theta: Vec<f64>,
    /// `r l theta(s)`, the phase relative to Frenet coordinates.
    pub phase: Vec<f64>,
}

impl ThinTubeState {
    pub fn total_phase(&self) -> f64 {
        self.phase[self.phase.len() - 1] - self.phase[0]
    }

    /// `e^{i r l theta}` at the end of the centerline, as `(re, im)`.
    pub fn phase_factor(&self) -> (f64, f64) {
        let p = self.total_phase();
        (p.cos(), p.sin())
    }
}

/// Thin-tube limit of the tube of radius `r` around `centerline`: the `n`-th
/// (1-based) state of the flat `s` problem, periodic for closed centerlines,
/// plus transverse energy `l^2` and the shift `-1 / 4r^2`. The torsion only
/// enters through the phase.
pub fn thin_tube_spectrum(
    centerline: &SampledCurve,
    r: f64,
    ell: i64,
    n: usize,
    n_grid: usize,
) -> Result<ThinTubeState> {
    if !(r > 0.0) || n == 0 {
        return Err(GeoError::InvalidRange(format!("need r > 0 and n >= 1, got r = {r}, n = {n}")));
    }
    let fd = frenet_apparatus(centerline)?;
    let kmax = fd.kappa.iter().cloned().fold(0.0, f64::max);
    if r * kmax >= 0.05 {
        return Err(GeoError::NotThin { value: r * kmax });
    }
    let theta = theta_along(&fd)?;
    let len = fd.s[fd.len() - 1] - fd.s[0];
    let bc = if fd.closed { Boundary::Periodic } else { Boundary::Dirichlet };
    let spectrum = solve_1d(&SeparatedProblem::free(len, bc)?, n, n_grid)?;
    let longitudinal = spectrum.energies[n - 1];
    let rl = r * ell as f64;
    Ok(ThinTubeState {
        energy: longitudinal + (ell * ell) as f64 - 0.25 / (r * r),
        longitudinal,
        spectrum,
        phase: theta.iter().map(|t| rl * t).collect(),
        s: fd.s,
        theta,
    })
}

fn theta_along(fd: &crate::curve::FrenetData) -> Result<Vec<f64>> {
    if let Some(i) = fd.kappa_defined.iter().position(|d| !d) {
        return Err(GeoError::UndefinedFrame { s: fd.s[i] });
    }
    Ok(quad::cumulative(&fd.s, &fd.tau))
}

/// `\int tau ds` along the curve: the rotation of an RM frame relative to the
/// Frenet frame.
pub fn geometric_phase(curve: &SampledCurve) -> Result<f64> {
    let fd = frenet_apparatus(curve)?;
    let theta = theta_along(&fd)?;
    Ok(theta[theta.len() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Func1D;
    use crate::surfaces::{minimal_helicoidal_family, revolution_from_u, Branch};
    use nalgebra::DVector;
    use std::f64::consts::PI;

    #[test]
    fn box_levels() {
        let l = 1.7;
        let s = solve_1d(&SeparatedProblem::free(l, Boundary::Dirichlet).unwrap(), 5, 4000).unwrap();
        for (k, e) in s.energies.iter().enumerate() {
            let exact = (PI * (k + 1) as f64 / l).powi(2);
            assert!(((e - exact) / exact).abs() < 1e-4);
        }
        assert!(s.orthonormality_error() < 1e-6);
        assert_eq!(s.u.len(), 4002);
        assert_eq!(s.wavefunctions[0][0], 0.0);
    }

    #[test]
    fn ring_levels_are_four_times_box_levels() {
        let l = 2.0;
        let d = solve_1d(&SeparatedProblem::free(l, Boundary::Dirichlet).unwrap(), 3, 4000).unwrap();
        let p = solve_1d(&SeparatedProblem::free(l, Boundary::Periodic).unwrap(), 7, 4000).unwrap();
        assert!(p.energies[0].abs() < 1e-9, "{:?}", &p.energies);
        for k in 1..=3 {
            let target = 4.0 * d.energies[k - 1];
            for e in [p.energies[2 * k - 1], p.energies[2 * k]] {
                assert!(((e - target) / target).abs() < 1e-4, "{k} {e} {target}");
            }
        }
        assert!(p.orthonormality_error() < 1e-6);
    }

    #[test]
    fn harmonic_oscillator() {
        let p = SeparatedProblem::from_fn(|x| (1.0, -x * x), 0.0, (-10.0, 10.0), Boundary::Dirichlet).unwrap();
        let s = solve_1d(&p, 5, 4000).unwrap();
        for (k, e) in s.energies.iter().enumerate() {
            assert!((e - (2 * k + 1) as f64).abs() < 1e-3, "{k} {e}");
        }
    }

    #[test]
    fn second_order_convergence() {
        let p = SeparatedProblem::from_fn(|x| (1.0, -x * x), 0.0, (-8.0, 8.0), Boundary::Dirichlet).unwrap();
        let e: Vec<Vec<f64>> = [400, 800, 1600]
            .iter()
            .map(|&n| solve_1d(&p, 3, n).unwrap().energies)
            .collect();
        for k in 0..3 {
            let d1 = (e[1][k] - e[0][k]).abs();
            let d2 = (e[2][k] - e[1][k]).abs();
            let ratio = d1 / d2;
            assert!(d2 < d1 && (3.5..4.5).contains(&ratio), "{k} {ratio}");
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let p = SeparatedProblem::free(1.0, Boundary::Dirichlet).unwrap();
        assert_eq!(solve_1d(&p, 1, 199).unwrap_err(), GeoError::GridTooCoarse { needed: 200, got: 199 });
    }

    #[test]
    fn sampled_and_analytic_problems_agree() {
        let u = linspace(-6.0, 6.0, 801);
        let f = vec![1.0; u.len()];
        let ue: Vec<f64> = u.iter().map(|x| 2.0 / x.cosh().powi(2)).collect();
        let sampled = SeparatedProblem::from_samples(u, f, ue, 0.0, Boundary::Dirichlet).unwrap();
        let exact = SeparatedProblem::from_fn(|x| (1.0, 2.0 / x.cosh().powi(2)), 0.0, (-6.0, 6.0), Boundary::Dirichlet).unwrap();
        let a = solve_1d(&sampled, 1, 2000).unwrap().energies[0];
        let b = solve_1d(&exact, 1, 2000).unwrap().energies[0];
        assert!((a - b).abs() < 1e-6);
        // Poschl-Teller well: single bound state at -1 (finite box shifts it slightly)
        assert!((b + 1.0).abs() < 1e-3, "{b}");
        assert!(sampled.with_domain(-7.0, 6.0).is_err());
    }

    #[test]
    fn unit_cylinder_potential() {
        let c = crate::surfaces::cylindrical_from_mean_curvature(
            &Func1D::constant(0.5),
            nalgebra::Vector3::z(),
            (0.0, 3.0),
            301,
        )
        .unwrap();
        let p = separated_problem(&InvariantSurface::Cylindrical(c), Transverse::Lambda(0.0)).unwrap();
        // H = kappa / 2, so U_eff = kappa^2 / 4
        assert!(p.ueff.iter().all(|v| (v - 0.25).abs() < 1e-12));
    }

    #[test]
    fn helicoid_potential_at_axis() {
        let fam = MinimalHelicoidal::new(1.0, 1.0, 0.0).unwrap();
        let p = helicoidal_minimal_veff(&fam, 0, (-2.0, 2.0)).unwrap();
        assert!((p.potential(0.0) + 0.5).abs() < 1e-15);
        // the general surface path reproduces the closed form (b = 2 keeps the
        // Bour radius away from the axis)
        let (fam, surf) = minimal_helicoidal_family(1.0, 2.0, 0.0, (-2.0, 2.0), 401).unwrap();
        let g = separated_problem(&InvariantSurface::Helicoidal(surf), Transverse::Momentum(1)).unwrap();
        for (x, v) in g.u.iter().zip(g.potential_samples()).step_by(10) {
            assert!((v - fam.veff(*x, 1)).abs() < 1e-6, "{x} {v} {}", fam.veff(*x, 1));
        }
    }

    #[test]
    fn helicoid_bound_states() {
        let fam = MinimalHelicoidal::new(1.0, 1.0, 0.0).unwrap();
        let l = 40.0;
        let p0 = helicoidal_minimal_veff(&fam, 0, (-l, l)).unwrap();
        let b0 = bound_state_search(&p0, l, 4000).unwrap();
        assert!(b0.is_bound(), "{b0:?}");
        let p1 = helicoidal_minimal_veff(&fam, 1, (-l, l)).unwrap();
        let b1 = bound_state_search(&p1, l, 4000).unwrap();
        assert!(!b1.is_bound() && b1.lowest() >= 0.0, "{b1:?}");
    }

    #[test]
    fn attractive_integral_implies_bound_state() {
        for (w, w0, w1) in [(1.0, 1.0, 0.0), (1.0, 2.0, 0.0), (2.0, 3.0, 0.5), (0.5, 1.5, 0.3), (1.0, 3.0, 0.5), (1.5, 2.5, 1.0)] {
            let fam = MinimalHelicoidal::new(w, w0, w1).unwrap();
            let (c, l) = (-w1 / w, 40.0 / w);
            let p = helicoidal_minimal_veff(&fam, 0, (c - l, c + l)).unwrap();
            let xs = linspace(c - l, c + l, 4001);
            let v: Vec<f64> = xs.iter().map(|&x| p.potential(x)).collect();
            assert!(quad::integrate(&xs, &v) < 0.0);
            let b = bound_state_search(&p, l, 4000).unwrap();
            assert!(b.is_bound(), "{w} {w0} {w1}: {b:?}");
        }
    }

    #[test]
    fn family_maps_onto_helicoid() {
        let fam = MinimalHelicoidal::new(1.0, 3.0, 0.5).unwrap();
        let hel = MinimalHelicoidal::new(1.0, 1.0, 0.0).unwrap();
        let l = 20.0;
        let eh = solve_1d(&helicoidal_minimal_veff(&hel, 0, (-l, l)).unwrap(), 1, 3000).unwrap().energies[0];
        let xr = (fam.from_helicoid(-l), fam.from_helicoid(l));
        let ef = solve_1d(&helicoidal_minimal_veff(&fam, 0, xr).unwrap(), 1, 3000).unwrap().energies[0];
        assert!((ef - eh / fam.b).abs() < 1e-3 * eh.abs() / fam.b, "{ef} {}", eh / fam.b);
    }

    #[test]
    fn momentum_pushes_density_outward() {
        let fam = MinimalHelicoidal::new(1.0, 2.0, 0.0).unwrap();
        let l = 30.0;
        let s0 = solve_1d(&helicoidal_minimal_veff(&fam, 0, (-l, l)).unwrap(), 1, 3000).unwrap();
        let s1 = solve_1d(&helicoidal_minimal_veff(&fam, 1, (-l, l)).unwrap(), 1, 3000).unwrap();
        let k = s0.wavefunctions[0].iter().enumerate().fold(0, |b, (i, v)| if v.abs() > s0.wavefunctions[0][b].abs() { i } else { b });
        assert!(s0.u[k].abs() < 0.5);
        assert!(s1.mean_abs_position(0, 0.0) > s0.mean_abs_position(0, 0.0));
    }

    #[test]
    fn rescaling_preserves_probability() {
        let surf = revolution_from_u(&Func1D::constant(0.3), -0.3, 0.0, (0.5, 1.5), 801, Branch::Plus).unwrap();
        let p = separated_problem(&InvariantSurface::Revolution(surf), Transverse::Momentum(0)).unwrap();
        let s = solve_1d(&p, 2, 1000).unwrap();
        // psi = A / sqrt(f), dS = f du dv: int |psi|^2 f du = int |A|^2 du
        let a = &s.wavefunctions[1];
        let psi2f: Vec<f64> = s
            .u
            .iter()
            .zip(a)
            .map(|(x, v)| {
                let f = quad::interp_cubic(&p.u, &p.f, *x);
                (v / f.sqrt()).powi(2) * f
            })
            .collect();
        assert!((quad::integrate(&s.u, &psi2f) - 1.0).abs() < 1e-6);
    }

    fn helix(a: f64, b: f64, turns: f64, n: usize) -> SampledCurve {
        SampledCurve::from_fn(
            |u| DVector::from_row_slice(&[a * u.cos(), a * u.sin(), b * u]),
            0.0,
            2.0 * PI * turns,
            n,
            false,
        )
        .unwrap()
    }

    #[test]
    fn phase_of_helix_and_plane_curve() {
        let (a, b) = (2.0, 0.5);
        let c2 = a * a + b * b;
        let g = geometric_phase(&helix(a, b, 1.0, 801)).unwrap();
        // tau = b / c^2 over length 2 pi c
        let exact = b / c2 * 2.0 * PI * c2.sqrt();
        assert!((g - exact).abs() < 1e-6, "{g} {exact}");
        let plane = helix(a, 0.0, 0.75, 401);
        assert!(geometric_phase(&plane).unwrap().abs() < 1e-12);
        let st = thin_tube_spectrum(&plane, 0.01, 2, 1, 400).unwrap();
        assert!(st.phase.iter().all(|p| p.abs() < 1e-12));
    }

    #[test]
    fn thin_tube_energy_ignores_torsion() {
        // equal curvature 1/4 and equal length, different torsion
        let a = helix(4.0, 0.0, 0.5, 401);
        // radius 3, pitch sqrt(3): kappa = 3/12, length 4 pi
        let b = helix(3.0, 3f64.sqrt(), 0.5 * 4.0 / (12f64).sqrt(), 401);
        let ea = thin_tube_spectrum(&a, 0.02, 1, 2, 1000).unwrap();
        let eb = thin_tube_spectrum(&b, 0.02, 1, 2, 1000).unwrap();
        assert!((ea.spectrum.u[ea.spectrum.u.len() - 1] - eb.spectrum.u[eb.spectrum.u.len() - 1]).abs() < 1e-6);
        assert!((ea.energy - eb.energy).abs() < 1e-8 * ea.energy.abs(), "{} {}", ea.energy, eb.energy);
        assert!(eb.total_phase().abs() > 1e-3);
        assert!(matches!(thin_tube_spectrum(&a, 0.3, 1, 1, 400), Err(GeoError::NotThin { .. })));
    }

    #[test]
    fn inflection_has_no_phase() {
        let c = SampledCurve::from_fn(|u| DVector::from_row_slice(&[u, u * u * u, 0.0]), -1.0, 1.0, 201, false).unwrap();
        assert!(matches!(geometric_phase(&c), Err(GeoError::UndefinedFrame { .. })));
    }
}
