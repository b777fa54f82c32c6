use std::path::PathBuf;

use clap::Args;
use rmgeom::rm::{holonomy, rm_double_reflection, total_torsion};
use rmgeom::schrodinger::{geometric_phase, thin_tube_spectrum, MIN_GRID};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{at_least, initial_normal, positive, OutArgs};
use crate::error::{input, Result};
use crate::io::{read_curve, Table};

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct PhaseArgs {
    /// Centerline file.
    pub curve: PathBuf,
    /// Tube radius; enables the thin-tube state.
    #[arg(long)]
    pub r: Option<f64>,
    /// Circumferential wave number.
    #[arg(long, allow_negative_numbers = true)]
    pub ell: Option<i64>,
    /// Longitudinal level, counted from 1.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_grid: Option<usize>,
    #[arg(long)]
    pub closed: Option<bool>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

pub fn run(a: PhaseArgs) -> Result<()> {
    let curve = read_curve(&a.curve, a.closed)?;
    let mut summary = json!({"closed": curve.closed});
    match geometric_phase(&curve) {
        Ok(p) => summary["geometric_phase"] = json!(p),
        Err(e) => summary["geometric_phase_error"] = json!(e.to_string()),
    }
    if curve.closed && curve.ambient_dim() == 3 {
        if let Ok(tt) = total_torsion(&curve) {
            summary["total_torsion"] = json!(tt);
        }
        let rm = rm_double_reflection(&curve, &initial_normal(&curve, &None)?)?;
        summary["holonomy"] = json!(holonomy(&rm));
    }
    match a.r {
        Some(r) => {
            let r = positive(r, "r")?;
            let n = at_least(a.n.unwrap_or(1), 1, "n")?;
            let n_grid = at_least(a.n_grid.unwrap_or(2000), MIN_GRID, "n-grid")?;
            let ell = a.ell.unwrap_or(1);
            let st = thin_tube_spectrum(&curve, r, ell, n, n_grid)?;
            let (re, im) = st.phase_factor();
            summary["thin_tube"] = json!({
                "r": r,
                "ell": ell,
                "n": n,
                "energy": st.energy,
                "longitudinal": st.longitudinal,
                "total_phase": st.total_phase(),
                "phase_factor": [re, im],
            });
            Table::new()
                .col("s", st.s.clone())
                .col("theta", st.theta.clone())
                .col("phase", st.phase.clone())
                .write(a.output.out(), a.output.format)?;
            if a.output.out.is_none() && a.output.summary.is_none() {
                return Ok(());
            }
            a.output.emit_summary(&summary)
        }
        None => {
            if a.output.out.is_some() {
                return input("--out needs --r (the phase profile belongs to a thin-tube state)");
            }
            crate::io::write_summary(a.output.summary.as_ref(), &summary)
        }
    }
}
