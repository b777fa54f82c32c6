use std::path::PathBuf;

use clap::Args;
use rmgeom::curve::frenet_apparatus;
use rmgeom::rm::{holonomy, rm_double_reflection, total_torsion};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{initial_normal, OutArgs};
use crate::error::Result;
use crate::io::{read_curve, Table};

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct FramesArgs {
    /// Curve file (CSV `s,x,y,z` or JSON).
    pub curve: PathBuf,
    /// Rotation minimizing frame by double reflection instead of Frenet.
    #[arg(long)]
    pub rm: bool,
    /// First RM normal at the start, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub init_normal: Option<Vec<f64>>,
    /// Treat the curve as closed (default: detected from the end points).
    #[arg(long)]
    pub closed: Option<bool>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

pub fn run(a: FramesArgs) -> Result<()> {
    let curve = &read_curve(&a.curve, a.closed)?;
    let mut summary = json!({
        "samples": curve.len(),
        "closed": curve.closed,
        "dimension": curve.ambient_dim(),
    });
    let table = if a.rm {
        let n0 = initial_normal(curve, &a.init_normal)?;
        let rm = rm_double_reflection(curve, &n0)?;
        let mut t = Table::new().col("s", rm.s.clone()).vec_cols("", &rm.points).vec_cols("t", &rm.t);
        for (j, nj) in rm.normals.iter().enumerate() {
            t = t.vec_cols(&format!("n{}", j + 1), nj);
        }
        for (j, kj) in rm.kappas.iter().enumerate() {
            t = t.col(format!("kappa{}", j + 1), kj.clone());
        }
        if let Some(theta) = &rm.theta {
            t = t.col("theta", theta.clone());
        }
        summary["frame"] = json!("rm");
        summary["length"] = json!(rm.s.last().copied().unwrap_or(0.0) - rm.s[0]);
        summary["orthonormality_defect"] = json!(rm.orthonormality_defect());
        if curve.closed {
            summary["holonomy"] = json!(holonomy(&rm));
            if let Ok(tt) = total_torsion(curve) {
                summary["total_torsion"] = json!(tt);
            }
        }
        t
    } else {
        let fd = frenet_apparatus(curve)?;
        let to_d = |v: &[nalgebra::Vector3<f64>]| {
            v.iter().map(|x| nalgebra::DVector::from_column_slice(x.as_slice())).collect::<Vec<_>>()
        };
        summary["frame"] = json!("frenet");
        summary["length"] = json!(fd.s.last().copied().unwrap_or(0.0) - fd.s[0]);
        summary["all_defined"] = json!(fd.all_defined());
        if curve.closed {
            if let Ok(tt) = total_torsion(curve) {
                summary["total_torsion"] = json!(tt);
            }
        }
        Table::new()
            .col("s", fd.s.clone())
            .vec_cols("", &to_d(&fd.points))
            .vec_cols("t", &to_d(&fd.t))
            .vec_cols("n", &to_d(&fd.n))
            .vec_cols("b", &to_d(&fd.b))
            .col("kappa", fd.kappa.clone())
            .col("tau", fd.tau.clone())
            .int_col("kappa_defined", fd.kappa_defined.iter().map(|&d| if d { 1.0 } else { 0.0 }).collect())
    };
    table.write(a.output.out(), a.output.format)?;
    a.output.emit_summary(&summary)
}
