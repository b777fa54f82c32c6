use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rmgeom::surfaces::{tube_geometry, vgip_critical_points, CriticalClass, FrameKind};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{at_least, positive, OutArgs};
use crate::error::Result;
use crate::io::{read_curve, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    Frenet,
    Rm,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct TubeArgs {
    /// Centerline file.
    pub curve: PathBuf,
    /// Tube radius.
    #[arg(long)]
    pub r: Option<f64>,
    /// Frame spanning the cross sections.
    #[arg(long, value_enum)]
    pub frame: Option<Frame>,
    /// Angular samples per cross section.
    #[arg(long)]
    pub n_phi: Option<usize>,
    #[arg(long)]
    pub closed: Option<bool>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

pub fn run(a: TubeArgs) -> Result<()> {
    let r = positive(a.r.unwrap_or(0.1), "r")?;
    let n_phi = at_least(a.n_phi.unwrap_or(64), 8, "n-phi")?;
    let kind = match a.frame.unwrap_or(Frame::Frenet) {
        Frame::Frenet => FrameKind::Frenet,
        Frame::Rm => FrameKind::Rm,
    };
    let curve = read_curve(&a.curve, a.closed)?;
    let tube = tube_geometry(&curve, r, kind, n_phi)?;

    let (ns, np) = (tube.s.len(), tube.phi.len());
    let mut cols: [Vec<f64>; 8] = Default::default();
    for i in 0..ns {
        for j in 0..np {
            let p = tube.point(i, tube.phi[j]);
            for (c, v) in cols.iter_mut().zip([
                tube.s[i],
                tube.phi[j],
                p.x,
                p.y,
                p.z,
                tube.gauss[i][j],
                tube.mean[i][j],
                tube.vgip[i][j],
            ]) {
                c.push(v);
            }
        }
    }
    let mut t = Table::new();
    for (name, c) in ["s", "phi", "x", "y", "z", "gauss", "mean", "vgip"].into_iter().zip(cols) {
        t = t.col(name, c);
    }
    t.write(a.output.out(), a.output.format)?;

    let kmax = tube.kappa.iter().cloned().fold(0.0, f64::max);
    let mut summary = json!({
        "r": r,
        "frame": if kind == FrameKind::Frenet { "frenet" } else { "rm" },
        "samples": ns,
        "n_phi": np,
        "r_kappa_max": r * kmax,
    });
    // critical points need the principal normal; skip when it is undefined
    if let Ok(cps) = vgip_critical_points(&tube) {
        let list: Vec<_> = cps
            .iter()
            .filter(|c| c.class != CriticalClass::Degenerate)
            .map(|c| {
                let class = match c.class {
                    CriticalClass::Min => "min",
                    CriticalClass::Max => "max",
                    CriticalClass::Saddle => "saddle",
                    CriticalClass::Degenerate => "degenerate",
                };
                json!({"s": c.s, "phi": c.phi, "class": class})
            })
            .collect();
        summary["critical_points"] = json!(list);
    }
    a.output.emit_summary(&summary)
}
