//! Cylindrical surfaces `x(s, t) = alpha(s) + t a` with prescribed mean
//! curvature. The cross section lies in `z = 0`.

use nalgebra::Vector3;

use crate::error::{GeoError, Result};
use crate::numeric::{linspace, quad, rk4_step, DiffOp, Func1D};

#[derive(Debug, Clone)]
pub struct CylindricalSurface {
    /// Unit translation direction.
    pub a: Vector3<f64>,
    /// Arc length of the cross section.
    pub s: Vec<f64>,
    pub points: Vec<Vector3<f64>>,
    /// Turning angle of the cross section: `alpha' = (cos psi, sin psi, 0)`.
    pub psi: Vec<f64>,
    pub kappa: Vec<f64>,
    /// Sine of the angle between `a` and `alpha'`.
    pub sin_theta: Vec<f64>,
    /// Prescribed mean curvature at the samples.
    pub mean: Vec<f64>,
    /// Mean curvature recomputed from the sampled cross section.
    pub mean_rebuilt: Vec<f64>,
    /// Arc length orthogonal to the rulings, `\int sin(theta) ds`; with it the
    /// metric is `du^2 + dw^2`.
    pub u: Vec<f64>,
}

impl CylindricalSurface {
    pub fn point(&self, i: usize, t: f64) -> Vector3<f64> {
        self.points[i] + self.a * t
    }

    /// Largest deviation between prescribed and rebuilt mean curvature.
    pub fn mean_error(&self) -> f64 {
        self.mean
            .iter()
            .zip(&self.mean_rebuilt)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Build the cross section whose cylinder over `a` has mean curvature
/// `h(s)` (unit normal `a x alpha' / |a x alpha'|`). With `theta` the angle
/// between `a` and `alpha'`, the curvature of the cross section is
/// `kappa = 2 H sin^3(theta) / a_3`; for inclined `a`, `theta` varies along
/// the curve and the turning angle obeys an ODE that is integrated with RK4.
pub fn cylindrical_from_mean_curvature(
    h: &Func1D,
    a: Vector3<f64>,
    s_range: (f64, f64),
    n: usize,
) -> Result<CylindricalSurface> {
    let an = a.norm();
    if !(an > 0.0) || (a.z / an).abs() < 1e-12 {
        return Err(GeoError::DegenerateDirection);
    }
    if n < 8 || !(s_range.1 > s_range.0) {
        return Err(GeoError::InvalidRange(format!("need n >= 8 and s1 > s0, got n={n}, {s_range:?}")));
    }
    let a = a / an;
    let sin3 = |psi: f64| {
        let c = a.x * psi.cos() + a.y * psi.sin();
        (1.0 - c * c).max(0.0).powf(1.5)
    };
    let rhs = |s: f64, y: &[f64]| {
        let psi = y[2];
        vec![psi.cos(), psi.sin(), 2.0 * h.eval(s) * sin3(psi) / a.z]
    };
    let s = linspace(s_range.0, s_range.1, n);
    let mut y = vec![0.0, 0.0, 0.0];
    let mut points = vec![Vector3::zeros()];
    let mut psi = vec![0.0];
    for i in 0..n - 1 {
        y = rk4_step(&rhs, s[i], &y, s[i + 1] - s[i]);
        points.push(Vector3::new(y[0], y[1], 0.0));
        psi.push(y[2]);
    }
    let sin_theta: Vec<f64> = psi.iter().map(|&p| sin3(p).cbrt()).collect();
    let kappa: Vec<f64> = s
        .iter()
        .zip(&sin_theta)
        .map(|(&si, st)| 2.0 * h.eval(si) * st.powi(3) / a.z)
        .collect();
    // rebuild H from the samples alone
    let op = DiffOp::new(&s);
    let d1 = op.apply(1, &points);
    let d2 = op.apply(2, &points);
    let mean_rebuilt = (0..n)
        .map(|i| {
            let v = d1[i].norm();
            let k = (d1[i].x * d2[i].y - d1[i].y * d2[i].x) / v.powi(3);
            let st = a.cross(&(d1[i] / v)).norm();
            a.z * k / (2.0 * st.powi(3))
        })
        .collect();
    Ok(CylindricalSurface {
        a,
        mean: s.iter().map(|&si| h.eval(si)).collect(),
        u: quad::cumulative(&s, &sin_theta),
        s,
        points,
        psi,
        kappa,
        sin_theta,
        mean_rebuilt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_mean_curvature_gives_round_cylinder() {
        let h0 = 0.25;
        let c = cylindrical_from_mean_curvature(&Func1D::constant(h0), Vector3::z(), (0.0, 12.0), 1201).unwrap();
        // radius 1/(2 H0) = 2, starting tangent along x so the center is (0, 2)
        for p in &c.points {
            assert!(((p - Vector3::new(0.0, 2.0, 0.0)).norm() - 2.0).abs() < 1e-9);
        }
        assert!(c.mean_error() < 1e-6);
    }

    #[test]
    fn zero_mean_curvature_gives_plane() {
        let c = cylindrical_from_mean_curvature(
            &Func1D::constant(0.0),
            Vector3::new(0.3, -0.2, 1.0),
            (0.0, 5.0),
            101,
        )
        .unwrap();
        for p in &c.points {
            assert!(p.y.abs() < 1e-14);
        }
    }

    #[test]
    fn inclined_direction_rebuilds_prescribed_h() {
        let h = Func1D::new(|s: f64| 0.4 * (1.0 + 0.5 * s.sin()));
        let c = cylindrical_from_mean_curvature(&h, Vector3::new(0.5, 0.3, 0.8), (0.0, 8.0), 2001).unwrap();
        assert!(c.mean_error() < 1e-3, "{}", c.mean_error());
        // the inclination really enters: theta is not constant
        let (lo, hi) = c
            .sin_theta
            .iter()
            .fold((1.0f64, 0.0f64), |(l, u), v| (l.min(*v), u.max(*v)));
        assert!(hi - lo > 0.1);
    }

    #[test]
    fn horizontal_direction_is_rejected() {
        let r = cylindrical_from_mean_curvature(&Func1D::constant(1.0), Vector3::new(1.0, 1.0, 0.0), (0.0, 1.0), 20);
        assert!(matches!(r, Err(GeoError::DegenerateDirection)));
    }
}
