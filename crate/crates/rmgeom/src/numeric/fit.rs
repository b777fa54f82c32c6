//! Orthogonal (total least squares) fits of point clouds by affine
//! hyperplanes. In two dimensions a hyperplane is a line, which is how
//! normal developments are classified.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

#[derive(Debug, Clone)]
pub struct HyperplaneFit {
    /// Unit normal `a`; the fitted set is `<a, x> = offset`.
    pub normal: DVector<f64>,
    pub offset: f64,
    /// RMS orthogonal distance of the samples to the hyperplane.
    pub residual: f64,
    /// RMS distance along the best-spread direction (size of the cloud).
    pub spread: f64,
    pub centroid: DVector<f64>,
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let vals = idx.iter().map(|&i| eig.eigenvalues[i].max(0.0)).collect();
    let vecs = DMatrix::from_columns(
        &idx.iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    (vals, vecs)
}

/// Affine hyperplane fit through the centroid.
pub fn fit_hyperplane(pts: &[DVector<f64>]) -> HyperplaneFit {
    let m = pts[0].len();
    let n = pts.len() as f64;
    let centroid = pts.iter().fold(DVector::zeros(m), |acc, p| acc + p) / n;
    let mut cov = DMatrix::zeros(m, m);
    for p in pts {
        let d = p - &centroid;
        cov += &d * d.transpose();
    }
    cov /= n;
    let (vals, vecs) = sorted_eigen(cov);
    let normal = vecs.column(0).into_owned();
    let offset = normal.dot(&centroid);
    // distances computed directly: sqrt of a tiny eigenvalue loses half the digits
    let ms: f64 = pts.iter().map(|p| (normal.dot(p) - offset).powi(2)).sum::<f64>() / n;
    HyperplaneFit {
        residual: ms.sqrt(),
        spread: vals[m - 1].sqrt(),
        offset,
        normal,
        centroid,
    }
}

/// Best hyperplane through the origin: `<a, x> = 0`.
pub fn fit_hyperplane_origin(pts: &[DVector<f64>]) -> (DVector<f64>, f64) {
    let m = pts[0].len();
    let mut mom = DMatrix::zeros(m, m);
    for p in pts {
        mom += p * p.transpose();
    }
    mom /= pts.len() as f64;
    let (_, vecs) = sorted_eigen(mom);
    let a = vecs.column(0).into_owned();
    let ms: f64 = pts.iter().map(|p| a.dot(p).powi(2)).sum::<f64>() / pts.len() as f64;
    (a, ms.sqrt())
}

/// Ordinary least squares for `A x ~ b`, returning the solution and the RMS
/// residual. Small dense systems only.
pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<(DVector<f64>, f64)> {
    let svd = a.clone().svd(true, true);
    let x = svd.solve(b, 1e-12).ok()?;
    let r = a * &x - b;
    Some((x, (r.norm_squared() / b.len() as f64).sqrt()))
}
