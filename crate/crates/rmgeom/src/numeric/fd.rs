//! Finite-difference derivatives on (possibly non-uniform) sample grids.
//!
//! Weights come from Fornberg's recursion, so the same code handles uniform
//! grids, arc-length grids and one-sided end stencils. Orders 1 and 2 use five
//! nodes (fourth order on uniform grids); order 3 uses seven so that it is
//! fourth order as well.

use std::ops::{AddAssign, Mul};

/// Fornberg weights: `w[k][j]` is the weight of node `j` for the `k`-th
/// derivative at `z`.
pub fn fornberg_weights(z: f64, x: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

#[derive(Debug, Clone)]
struct Stencil {
    idx: Vec<usize>,
    w: Vec<f64>,
}

/// Precomputed derivative stencils (orders 1..=3) for a fixed grid.
#[derive(Debug, Clone)]
pub struct DiffOp {
    n: usize,
    stencils: [Vec<Stencil>; 3],
}

fn width_for(order: usize) -> usize {
    if order <= 2 {
        5
    } else {
        7
    }
}

impl DiffOp {
    /// Stencils for an open grid: centered in the interior, one-sided at the ends.
    pub fn new(x: &[f64]) -> Self {
        let n = x.len();
        let mk = |order: usize| -> Vec<Stencil> {
            let w = width_for(order).min(n);
            (0..n)
                .map(|i| {
                    let start = i.saturating_sub(w / 2).min(n - w);
                    let nodes = &x[start..start + w];
                    let wts = fornberg_weights(x[i], nodes, order);
                    Stencil {
                        idx: (start..start + w).collect(),
                        w: wts[order].clone(),
                    }
                })
                .collect()
        };
        DiffOp {
            n,
            stencils: [mk(1), mk(2), mk(3)],
        }
    }

    /// Stencils for a closed grid whose last sample repeats the first.
    /// All stencils are centered, wrapping around the period.
    pub fn periodic(x: &[f64]) -> Self {
        let n = x.len();
        let m = n - 1;
        let period = x[n - 1] - x[0];
        let mk = |order: usize| -> Vec<Stencil> {
            let w = width_for(order).min(m);
            let half = (w / 2) as isize;
            (0..n)
                .map(|i| {
                    let ic = (i % m) as isize;
                    let mut idx = Vec::with_capacity(w);
                    let mut nodes = Vec::with_capacity(w);
                    for off in -half..=(w as isize - 1 - half) {
                        let j = ic + off;
                        let wraps = j.div_euclid(m as isize);
                        let jj = j.rem_euclid(m as isize) as usize;
                        idx.push(jj);
                        nodes.push(x[jj] + wraps as f64 * period);
                    }
                    let wts = fornberg_weights(x[i % m], &nodes, order);
                    Stencil {
                        idx,
                        w: wts[order].clone(),
                    }
                })
                .collect()
        };
        DiffOp {
            n,
            stencils: [mk(1), mk(2), mk(3)],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Derivative of the given order (1..=3) of sampled values.
    pub fn apply<T>(&self, order: usize, vals: &[T]) -> Vec<T>
    where
        T: Clone + AddAssign + Mul<f64, Output = T>,
    {
        assert!((1..=3).contains(&order), "derivative order must be 1..=3");
        assert_eq!(vals.len(), self.n);
        self.stencils[order - 1]
            .iter()
            .map(|st| {
                let mut acc = vals[0].clone() * 0.0;
                for (&j, &w) in st.idx.iter().zip(&st.w) {
                    acc += vals[j].clone() * w;
                }
                acc
            })
            .collect()
    }
}

/// Five-point central first derivative of a closure.
pub fn d1_central(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Five-point central second derivative of a closure.
pub fn d2_central(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}
