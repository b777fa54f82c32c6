//! Flat metrics used throughout: Euclidean and Lorentzian (one negative
//! direction). Vectors are plain slices so the same code serves 3D curves and
//! the ambient spaces of space forms.

use nalgebra::DVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Euclidean,
    /// Signature with `-1` on coordinate `time`.
    Lorentz { time: usize },
}

impl Metric {
    pub fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut s: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        if let Metric::Lorentz { time } = *self {
            s -= 2.0 * a[time] * b[time];
        }
        s
    }

    pub fn dotv(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        self.dot(a.as_slice(), b.as_slice())
    }

    /// Sign of `<v, v>`, or 0 when it is below `tol * |v|^2` (Euclidean).
    pub fn sign(&self, v: &DVector<f64>, tol: f64) -> i32 {
        let q = self.dotv(v, v);
        if q.abs() <= tol * v.norm_squared() {
            0
        } else if q > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Apply the metric matrix `G` to a vector (lowers an index).
    pub fn lower(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut w = v.clone();
        if let Metric::Lorentz { time } = *self {
            w[time] = -w[time];
        }
        w
    }

    /// `v` normalized so that `|<v,v>| = 1`; `None` for null vectors.
    pub fn normalize(&self, v: &DVector<f64>) -> Option<DVector<f64>> {
        let q = self.dotv(v, v);
        if q.abs() < 1e-300 {
            return None;
        }
        Some(v / q.abs().sqrt())
    }

    /// Remove the components of `v` along an orthonormal (non-null) family.
    pub fn project_out(&self, v: &DVector<f64>, basis: &[DVector<f64>]) -> DVector<f64> {
        let mut w = v.clone();
        for e in basis {
            let ee = self.dotv(e, e);
            w -= e * (self.dotv(&w, e) / ee);
        }
        w
    }
}

/// Modified Gram-Schmidt in a (possibly indefinite) metric. Fails when a
/// vector becomes null or vanishes after projection.
pub fn gram_schmidt(metric: Metric, vs: &[DVector<f64>]) -> Option<Vec<DVector<f64>>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vs.len());
    for v in vs {
        let w = metric.project_out(v, &out);
        let q = metric.dotv(&w, &w);
        if q.abs() < 1e-24 * v.norm_squared().max(1e-300) {
            return None;
        }
        out.push(w / q.abs().sqrt());
    }
    Some(out)
}

/// Complete an orthonormal family to a basis of the whole space using the
/// coordinate vectors, preferring those least aligned with the family.
pub fn complete_basis(metric: Metric, family: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    let mut out = family.to_vec();
    let mut cands: Vec<DVector<f64>> = (0..dim)
        .map(|i| {
            let mut e = DVector::zeros(dim);
            e[i] = 1.0;
            e
        })
        .collect();
    while out.len() < dim {
        let mut best: Option<(f64, DVector<f64>)> = None;
        for e in &cands {
            let w = metric.project_out(e, &out);
            let q = metric.dotv(&w, &w).abs();
            if best.as_ref().map_or(true, |(b, _)| q > *b) {
                best = Some((q, w));
            }
        }
        let (q, w) = best.expect("basis completion needs candidates");
        out.push(w / q.sqrt());
        cands.retain(|e| metric.project_out(e, &out).norm() > 1e-8);
    }
    out
}
