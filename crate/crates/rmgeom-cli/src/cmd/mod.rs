pub mod classify;
pub mod frames;
pub mod generate;
pub mod phase;
pub mod prescribe;
pub mod spectrum;
pub mod tube;

use std::path::{Path, PathBuf};

use clap::Args;
use nalgebra::DVector;
use rmgeom::curve::SampledCurve;
use rmgeom::numeric::quad::interp_cubic;
use rmgeom::numeric::Func1D;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{input, Result};
use crate::io::{self, Format};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct OutArgs {
    /// Main output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; defaults to the extension of --out, else CSV.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Where to write the summary JSON. Defaults to stdout when --out is set.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

impl OutArgs {
    pub fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }

    /// Summary goes to its own file, or to stdout if stdout is not already
    /// taken by the main table.
    pub fn emit_summary(&self, v: &Value) -> Result<()> {
        match (&self.summary, &self.out) {
            (Some(p), _) => io::write_summary(Some(p), v),
            (None, Some(_)) => io::write_summary(None, v),
            (None, None) => Ok(()),
        }
    }
}

pub fn range2(v: &Option<Vec<f64>>, default: (f64, f64), name: &str) -> Result<(f64, f64)> {
    match v.as_deref() {
        None => Ok(default),
        Some([a, b]) if a.is_finite() && b.is_finite() && b > a => Ok((*a, *b)),
        Some(other) => input(format!("--{name} needs two increasing numbers 'a,b', got {other:?}")),
    }
}

pub fn positive(x: f64, name: &str) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        input(format!("--{name} must be positive, got {x}"))
    }
}

pub fn nonzero(x: f64, name: &str) -> Result<f64> {
    if x.is_finite() && x != 0.0 {
        Ok(x)
    } else {
        input(format!("--{name} must be finite and nonzero, got {x}"))
    }
}

pub fn at_least(n: usize, min: usize, name: &str) -> Result<usize> {
    if n >= min {
        Ok(n)
    } else {
        input(format!("--{name} must be at least {min}, got {n}"))
    }
}

/// A prescribed function of one variable: polynomial coefficients
/// `c0,c1,c2,...` or a two-column table `x,value` interpolated by cubics.
/// With `squared` the data describes the square of the function.
pub fn function_from(coeffs: &Option<Vec<f64>>, table: &Option<PathBuf>, squared: bool, name: &str) -> Result<Func1D> {
    let base = match (coeffs, table) {
        (Some(c), None) if !c.is_empty() && c.iter().all(|x| x.is_finite()) => polynomial(c.clone()),
        (None, Some(path)) => tabulated(path)?,
        (None, None) => return input(format!("give --{name} coefficients or --{name}-table")),
        (Some(_), Some(_)) => return input(format!("--{name} and --{name}-table are exclusive")),
        (Some(c), None) => return input(format!("--{name}: bad coefficients {c:?}")),
    };
    if !squared {
        return Ok(base);
    }
    let (p0, p1, p2) = (base.clone(), base.clone(), base);
    Ok(Func1D::new(move |x| p0.eval(x).sqrt())
        .with_d1(move |x| 0.5 * p1.d1(x) / p1.eval(x).sqrt())
        .with_d2(move |x| {
            let u = p2.eval(x).sqrt();
            let d = p2.d1(x);
            0.5 * p2.d2(x) / u - 0.25 * d * d / (u * u * u)
        }))
}

fn polynomial(c: Vec<f64>) -> Func1D {
    let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
    let d1: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect();
    let d2: Vec<f64> = d1.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect();
    Func1D::new(move |x| horner(&c, x))
        .with_d1(move |x| horner(&d1, x))
        .with_d2(move |x| horner(&d2, x))
}

fn tabulated(path: &Path) -> Result<Func1D> {
    let t = io::read_csv_table(path)?;
    if t.columns.len() != 2 || t.n_rows() < 4 {
        return input(format!("{}: need two columns and at least 4 rows", path.display()));
    }
    let (x, y) = (t.data[0].clone(), t.data[1].clone());
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return input(format!("{}: abscissae must increase", path.display()));
    }
    Ok(Func1D::new(move |z| interp_cubic(&x, &y, z)))
}

/// First normal for an RM frame: the given vector, else a coordinate axis
/// least aligned with the initial tangent, made orthogonal to it.
pub fn initial_normal(curve: &SampledCurve, given: &Option<Vec<f64>>) -> Result<DVector<f64>> {
    let t0 = curve.derivative(1)[0].normalize();
    let dim = t0.len();
    let v = match given {
        Some(v) if v.len() == dim => DVector::from_vec(v.clone()),
        Some(v) => return input(format!("--init-normal has {} components, curve has {dim}", v.len())),
        None => {
            let k = t0.iamin();
            let mut e = DVector::zeros(dim);
            e[k] = 1.0;
            e
        }
    };
    let w = &v - &t0 * t0.dot(&v);
    if w.norm() < 1e-8 * v.norm().max(1.0) {
        return input("--init-normal is parallel to the initial tangent");
    }
    Ok(w.normalize())
}
