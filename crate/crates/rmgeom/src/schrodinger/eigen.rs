//! Lowest eigenpairs of symmetric tridiagonal matrices, optionally with the
//! two corner entries of a periodic (cyclic) chain. Eigenvalues come from
//! bisection on the inertia count, eigenvectors from inverse iteration.

/// Symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`
/// (`e[i]` couples `i` and `i+1`). With `corner = Some(c)` the entries
/// `(0, n-1)` and `(n-1, 0)` are `c`.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub corner: Option<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    fn tiny(&self) -> f64 {
        f64::MIN_POSITIVE.sqrt() * (1.0 + self.gershgorin().1.abs())
    }

    /// Bounds containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.e[i - 1].abs();
            }
            if i + 1 < n {
                r += self.e[i].abs();
            }
            if let Some(c) = self.corner {
                if i == 0 || i + 1 == n {
                    r += c.abs();
                }
            }
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`: the number of negative
    /// pivots of an `LDL^T` factorization of `A - x I` (Sylvester inertia).
    /// The cyclic case eliminates with an extra dense last column.
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.len();
        let tiny = self.tiny();
        let guard = |p: f64| if p == 0.0 { -tiny } else { p };
        let mut count = 0;
        match self.corner {
            None => {
                let mut q = guard(self.d[0] - x);
                if q < 0.0 {
                    count += 1;
                }
                for i in 1..n {
                    q = guard(self.d[i] - x - self.e[i - 1] * self.e[i - 1] / q);
                    if q < 0.0 {
                        count += 1;
                    }
                }
            }
            Some(c) => {
                let mut a: Vec<f64> = self.d.iter().map(|v| v - x).collect();
                // w[i]: entry (i, n-1) outside the tridiagonal band
                let mut w = vec![0.0; n];
                w[0] = c;
                for i in 0..n - 2 {
                    let p = guard(a[i]);
                    if p < 0.0 {
                        count += 1;
                    }
                    a[i + 1] -= self.e[i] * self.e[i] / p;
                    w[i + 1] -= self.e[i] * w[i] / p;
                    a[n - 1] -= w[i] * w[i] / p;
                }
                let p = guard(a[n - 2]);
                if p < 0.0 {
                    count += 1;
                }
                let t = self.e[n - 2] + w[n - 2];
                a[n - 1] -= t * t / p;
                if guard(a[n - 1]) < 0.0 {
                    count += 1;
                }
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 4.0 * f64::EPSILON * scale {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut y: Vec<f64> = (0..n).map(|i| self.d[i] * x[i]).collect();
        for i in 0..n - 1 {
            y[i] += self.e[i] * x[i + 1];
            y[i + 1] += self.e[i] * x[i];
        }
        if let Some(c) = self.corner {
            y[0] += c * x[n - 1];
            y[n - 1] += c * x[0];
        }
        y
    }

    /// Solve `(A - sigma I) y = b`.
    fn shifted_solve(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = self.tiny();
        let d: Vec<f64> = self.d.iter().map(|v| v - sigma).collect();
        match self.corner {
            None => solve_tridiagonal(&d, &self.e, b, tiny),
            Some(c) => {
                // Sherman-Morrison: A = T' + u v^T with u = (g,0..,0,c), v = (1,0..,0,c/g)
                let g = -d[0].abs().max(1.0);
                let mut dd = d.clone();
                dd[0] -= g;
                dd[n - 1] -= c * c / g;
                let y = solve_tridiagonal(&dd, &self.e, b, tiny);
                let mut u = vec![0.0; n];
                u[0] = g;
                u[n - 1] = c;
                let z = solve_tridiagonal(&dd, &self.e, &u, tiny);
                let vy = y[0] + c / g * y[n - 1];
                let vz = z[0] + c / g * z[n - 1];
                let mut den = 1.0 + vz;
                if den.abs() < tiny {
                    den = tiny;
                }
                y.iter().zip(&z).map(|(a, b)| a - vy / den * b).collect()
            }
        }
    }

    /// Lowest `k` eigenpairs. Eigenvectors are unit vectors in the Euclidean
    /// norm; vectors of (near-)degenerate eigenvalues are orthogonalized.
    pub fn lowest(&self, k: usize) -> Vec<(f64, Vec<f64>)> {
        let n = self.len();
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        let mut out: Vec<(f64, Vec<f64>)> = Vec::with_capacity(k);
        for j in 0..k.min(n) {
            let lam = self.eigenvalue(j);
            let sigma = lam + 1e-13 * scale;
            // deterministic, non-symmetric start so that no mode is missed
            let mut x: Vec<f64> = (0..n)
                .map(|i| 1.0 + 0.37 * ((i as f64 + 0.5) * 1.618).sin() + 0.11 * (i % 7) as f64)
                .collect();
            for _ in 0..4 {
                for (l, v) in &out {
                    if (l - lam).abs() <= 1e-8 * scale {
                        let p: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
                        x.iter_mut().zip(v).for_each(|(a, b)| *a -= p * b);
                    }
                }
                let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                x.iter_mut().for_each(|v| *v /= nrm);
                x = self.shifted_solve(sigma, &x);
                let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                x.iter_mut().for_each(|v| *v /= nrm);
            }
            for (l, v) in &out {
                if (l - lam).abs() <= 1e-8 * scale {
                    let p: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
                    x.iter_mut().zip(v).for_each(|(a, b)| *a -= p * b);
                }
            }
            let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= nrm);
            // the cyclic inertia count cancels in its last pivot; the Rayleigh
            // quotient of the converged vector is accurate to the residual squared
            let lam = if self.corner.is_some() {
                self.matvec(&x).iter().zip(&x).map(|(a, b)| a * b).sum()
            } else {
                lam
            };
            out.push((lam, x));
        }
        out
    }

    /// `|A x - lambda x|` for diagnostics.
    pub fn residual(&self, lam: f64, x: &[f64]) -> f64 {
        self.matvec(x)
            .iter()
            .zip(x)
            .map(|(a, b)| (a - lam * b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Gaussian elimination with partial pivoting for a symmetric tridiagonal
/// system (fill-in limited to a second superdiagonal).
fn solve_tridiagonal(d: &[f64], e: &[f64], b: &[f64], tiny: f64) -> Vec<f64> {
    let n = d.len();
    if n == 1 {
        return vec![b[0] / if d[0] == 0.0 { tiny } else { d[0] }];
    }
    // row i: (diag, up1, up2)
    let mut diag = d.to_vec();
    let mut up1: Vec<f64> = e.to_vec();
    up1.push(0.0);
    let mut up2 = vec![0.0; n];
    let mut low: Vec<f64> = e.to_vec();
    let mut rhs = b.to_vec();
    for i in 0..n - 1 {
        if low[i].abs() > diag[i].abs() {
            // swap rows i and i+1
            std::mem::swap(&mut diag[i], &mut low[i]);
            let (a1, a2) = (up1[i], up2[i]);
            up1[i] = diag[i + 1];
            up2[i] = if i + 1 < n - 1 { up1[i + 1] } else { 0.0 };
            diag[i + 1] = a1;
            if i + 1 < n - 1 {
                up1[i + 1] = a2;
            }
            rhs.swap(i, i + 1);
        }
        let piv = if diag[i] == 0.0 { tiny } else { diag[i] };
        diag[i] = piv;
        let m = low[i] / piv;
        diag[i + 1] -= m * up1[i];
        if i + 1 < n - 1 {
            up1[i + 1] -= m * up2[i];
        }
        rhs[i + 1] -= m * rhs[i];
    }
    if diag[n - 1] == 0.0 {
        diag[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= up1[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= up2[i] * x[i + 2];
        }
        x[i] = s / diag[i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense(t: &Tridiagonal) -> DMatrix<f64> {
        let n = t.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = t.d[i];
            if i + 1 < n {
                m[(i, i + 1)] = t.e[i];
                m[(i + 1, i)] = t.e[i];
            }
        }
        if let Some(c) = t.corner {
            m[(0, n - 1)] += c;
            m[(n - 1, 0)] += c;
        }
        m
    }

    fn random(n: usize, cyclic: bool, seed: u64) -> Tridiagonal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Tridiagonal {
            d: (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            e: (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            corner: cyclic.then(|| rng.gen_range(-1.0..1.0)),
        }
    }

    #[test]
    fn matches_dense_solver() {
        for (seed, cyclic) in [(1, false), (2, true), (3, true), (4, false)] {
            let t = random(40, cyclic, seed);
            let mut ev: Vec<f64> = SymmetricEigen::new(dense(&t)).eigenvalues.iter().cloned().collect();
            ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (k, (lam, v)) in t.lowest(6).iter().enumerate() {
                assert!((lam - ev[k]).abs() < 1e-12, "{seed} {k} {lam} {}", ev[k]);
                assert!(t.residual(*lam, v) < 1e-9, "{}", t.residual(*lam, v));
            }
        }
    }

    #[test]
    fn degenerate_ring_modes_are_orthogonal() {
        // free ring: eigenvalues 2 - 2 cos(2 pi k / n), doubly degenerate
        let n = 64;
        let t = Tridiagonal {
            d: vec![2.0; n],
            e: vec![-1.0; n - 1],
            corner: Some(-1.0),
        };
        let pairs = t.lowest(5);
        for (k, (lam, v)) in pairs.iter().enumerate() {
            let m = ((k + 1) / 2) as f64;
            let exact = 2.0 - 2.0 * (2.0 * std::f64::consts::PI * m / n as f64).cos();
            assert!((lam - exact).abs() < 1e-12, "{k} {lam} {exact}");
            assert!(t.residual(*lam, v) < 1e-9);
        }
        for i in 0..pairs.len() {
            for j in 0..i {
                let p: f64 = pairs[i].1.iter().zip(&pairs[j].1).map(|(a, b)| a * b).sum();
                assert!(p.abs() < 1e-8);
            }
        }
    }
}
