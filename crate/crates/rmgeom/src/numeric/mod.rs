//! Numerical building blocks shared by the geometry modules.

pub mod fd;
pub mod fit;
pub mod func;
pub mod metric;
pub mod quad;

pub use fd::DiffOp;
pub use func::Func1D;
pub use metric::Metric;

/// Classical RK4 step for `y' = f(x, y)` on plain vectors.
pub fn rk4_step<F>(f: &F, x: f64, y: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let k1 = f(x, y);
    let tmp: Vec<f64> = y.iter().zip(&k1).map(|(a, k)| a + 0.5 * h * k).collect();
    let k2 = f(x + 0.5 * h, &tmp);
    let tmp: Vec<f64> = y.iter().zip(&k2).map(|(a, k)| a + 0.5 * h * k).collect();
    let k3 = f(x + 0.5 * h, &tmp);
    let tmp: Vec<f64> = y.iter().zip(&k3).map(|(a, k)| a + h * k).collect();
    let k4 = f(x + h, &tmp);
    y.iter()
        .enumerate()
        .map(|(i, a)| a + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Uniform grid of `n` points on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Unwrap a sequence of angles so consecutive values differ by less than pi.
pub fn unwrap_angles(a: &mut [f64]) {
    use std::f64::consts::PI;
    for i in 1..a.len() {
        let mut d = a[i] - a[i - 1];
        while d > PI {
            a[i] -= 2.0 * PI;
            d -= 2.0 * PI;
        }
        while d < -PI {
            a[i] += 2.0 * PI;
            d += 2.0 * PI;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_exponential() {
        let mut y = vec![1.0];
        let h = 0.01;
        for i in 0..100 {
            y = rk4_step(&|_, y: &[f64]| vec![y[0]], i as f64 * h, &y, h);
        }
        assert!((y[0] - 1f64.exp()).abs() < 1e-9);
    }
}
