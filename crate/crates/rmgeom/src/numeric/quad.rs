//! Quadrature and local interpolation on sample grids.

use std::ops::{AddAssign, Mul};

/// Value at `z` of the Lagrange polynomial through `(xs, ys)`.
pub fn lagrange<T>(xs: &[f64], ys: &[T], z: f64) -> T
where
    T: Clone + AddAssign + Mul<f64, Output = T>,
{
    let mut acc = ys[0].clone() * 0.0;
    for j in 0..xs.len() {
        let mut l = 1.0;
        for m in 0..xs.len() {
            if m != j {
                l *= (z - xs[m]) / (xs[j] - xs[m]);
            }
        }
        acc += ys[j].clone() * l;
    }
    acc
}

fn window(n: usize, i: usize, w: usize) -> usize {
    i.saturating_sub(w / 2 - 1).min(n - w)
}

/// Cubic interpolation of sampled values at an arbitrary `z` inside the grid.
pub fn interp_cubic<T>(x: &[f64], vals: &[T], z: f64) -> T
where
    T: Clone + AddAssign + Mul<f64, Output = T>,
{
    let n = x.len();
    let w = 4.min(n);
    let i = match x.binary_search_by(|v| v.partial_cmp(&z).unwrap()) {
        Ok(i) => return vals[i].clone(),
        Err(0) => 0,
        Err(k) => (k - 1).min(n - 2),
    };
    let s = window(n, i, w);
    lagrange(&x[s..s + w], &vals[s..s + w], z)
}

/// Running integral `F[i] = \int_{x_0}^{x_i} y`, exact for cubics: each
/// interval integrates the cubic through its four nearest samples with a
/// three-point Gauss rule.
pub fn cumulative(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        out[i + 1] = out[i] + partial_interval(x, y, i, x[i + 1]);
    }
    out
}

/// Integral from `x[i]` to `z` (inside interval `i`) of the local cubic
/// interpolant used by [`cumulative`].
pub fn partial_interval(x: &[f64], y: &[f64], i: usize, z: f64) -> f64 {
    let n = x.len();
    let w = 4.min(n);
    let s = window(n, i, w);
    let g = (0.6f64).sqrt();
    let gw = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let (mid, half) = (0.5 * (x[i] + z), 0.5 * (z - x[i]));
    let mut acc = 0.0;
    for (k, gp) in [-g, 0.0, g].iter().enumerate() {
        acc += gw[k] * lagrange(&x[s..s + w], &y[s..s + w], mid + half * gp);
    }
    acc * half
}

/// Definite integral over the whole grid.
pub fn integrate(x: &[f64], y: &[f64]) -> f64 {
    *cumulative(x, y).last().unwrap_or(&0.0)
}

/// Composite Simpson rule on a uniform grid (odd sample count; an even
/// count closes with the 3/8 rule on the last three intervals).
pub fn simpson_uniform(h: f64, y: &[f64]) -> f64 {
    let n = y.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (y[0] + y[1]),
        3 => h / 3.0 * (y[0] + 4.0 * y[1] + y[2]),
        _ if n % 2 == 1 => {
            let mut s = y[0] + y[n - 1];
            for (i, v) in y.iter().enumerate().take(n - 1).skip(1) {
                s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            s * h / 3.0
        }
        _ => {
            let m = n - 3;
            simpson_uniform(h, &y[..m])
                + 3.0 * h / 8.0 * (y[m - 1] + 3.0 * y[m] + 3.0 * y[m + 1] + y[m + 2])
        }
    }
}

/// Trapezoid rule for one period of a periodic integrand sampled with the
/// end point repeated. Spectrally accurate for smooth periodic data.
pub fn periodic_trapezoid(x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() - 1 {
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    }
    s
}
