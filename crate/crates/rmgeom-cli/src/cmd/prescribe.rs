use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use nalgebra::Vector3;
use rmgeom::surfaces::{
    bour_surface, cylindrical_from_mean_curvature, minimal_helicoidal_family, revolution_from_u, Branch,
    HelicoidalSurface,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{at_least, function_from, nonzero, range2, OutArgs};
use crate::error::{input, Result};
use crate::io::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Prescribe {
    /// Cylinder whose mean curvature is H(s) along the cross section.
    Cylindrical(CylindricalArgs),
    /// Surface of revolution with sqrt(H^2 - K) = U(rho).
    Revolution(RevolutionArgs),
    /// Helicoidal surface in Bour's family with prescribed metric U(xi).
    Bour(BourArgs),
    /// Minimal member of the helicoidal family.
    MinimalHelicoidal(MinimalArgs),
}

impl Prescribe {
    pub fn name(&self) -> &'static str {
        match self {
            Prescribe::Cylindrical(_) => "cylindrical",
            Prescribe::Revolution(_) => "revolution",
            Prescribe::Bour(_) => "bour",
            Prescribe::MinimalHelicoidal(_) => "minimal_helicoidal",
        }
    }
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct CylindricalArgs {
    /// Polynomial coefficients of H(s), constant term first.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub h: Option<Vec<f64>>,
    /// Two-column CSV `s,H` instead of coefficients.
    #[arg(long)]
    pub h_table: Option<PathBuf>,
    /// Translation direction.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub direction: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub s_range: Option<Vec<f64>>,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct RevolutionArgs {
    /// Polynomial coefficients of U(rho).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub u: Option<Vec<f64>>,
    #[arg(long)]
    pub u_table: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rho_range: Option<Vec<f64>>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct BourArgs {
    /// Polynomial coefficients of U(xi) (of U^2 with --squared).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub u: Option<Vec<f64>>,
    #[arg(long)]
    pub u_table: Option<PathBuf>,
    /// The coefficients or table give U^2.
    #[arg(long)]
    pub squared: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub xi_range: Option<Vec<f64>>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct MinimalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega1: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub xi_range: Option<Vec<f64>>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Angular quantum number for the V_eff column.
    #[arg(long, allow_negative_numbers = true)]
    pub m_chi: Option<i64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

pub fn run(p: Prescribe) -> Result<()> {
    match p {
        Prescribe::Cylindrical(a) => cylindrical(a),
        Prescribe::Revolution(a) => revolution(a),
        Prescribe::Bour(a) => bour(a),
        Prescribe::MinimalHelicoidal(a) => minimal(a),
    }
}

fn cylindrical(a: CylindricalArgs) -> Result<()> {
    let h = function_from(&a.h, &a.h_table, false, "h")?;
    let dir = match a.direction.as_deref() {
        None => Vector3::z(),
        Some([x, y, z]) if (x * x + y * y + z * z) > 0.0 => Vector3::new(*x, *y, *z).normalize(),
        Some(d) => return input(format!("--direction needs three components, not all zero: {d:?}")),
    };
    let range = range2(&a.s_range, (0.0, 2.0 * std::f64::consts::PI), "s-range")?;
    let n = at_least(a.n.unwrap_or(1001), 8, "n")?;
    let c = cylindrical_from_mean_curvature(&h, dir, range, n)?;
    let pick = |k: usize| c.points.iter().map(|p| p[k]).collect::<Vec<_>>();
    Table::new()
        .col("s", c.s.clone())
        .col("x", pick(0))
        .col("y", pick(1))
        .col("z", pick(2))
        .col("psi", c.psi.clone())
        .col("kappa", c.kappa.clone())
        .col("sin_theta", c.sin_theta.clone())
        .col("mean", c.mean.clone())
        .col("mean_rebuilt", c.mean_rebuilt.clone())
        .col("u", c.u.clone())
        .write(a.output.out(), a.output.format)?;
    a.output.emit_summary(&json!({
        "surface": "cylindrical",
        "direction": [c.a.x, c.a.y, c.a.z],
        "samples": n,
        "mean_error": c.mean_error(),
    }))
}

fn revolution(a: RevolutionArgs) -> Result<()> {
    let u = function_from(&a.u, &a.u_table, false, "u")?;
    let range = range2(&a.rho_range, (0.5, 1.5), "rho-range")?;
    if range.0 <= 0.0 {
        return input("--rho-range must be positive");
    }
    let n = at_least(a.n.unwrap_or(1001), 8, "n")?;
    let s = revolution_from_u(
        &u,
        a.a1.unwrap_or(0.0),
        a.a2.unwrap_or(0.0),
        range,
        n,
        a.branch.unwrap_or(BranchArg::Plus).into(),
    )?;
    Table::new()
        .col("rho", s.rho.clone())
        .col("lambda", s.lambda.clone())
        .col("a", s.a_fn.clone())
        .col("u", s.u.clone())
        .col("prescribed", s.prescribed.clone())
        .col("gip_rebuilt", s.gip_rebuilt.clone())
        .col("mean", s.mean())
        .write(a.output.out(), a.output.format)?;
    a.output.emit_summary(&json!({
        "surface": "revolution",
        "samples": n,
        "gip_error": s.gip_error(),
        "arc_length": s.u.last().copied().unwrap_or(0.0) - s.u[0],
    }))
}

fn helicoidal_table(s: &HelicoidalSurface) -> Table {
    Table::new()
        .col("xi", s.xi.clone())
        .col("u", s.u.clone())
        .col("rho", s.rho.clone())
        .col("lambda", s.lambda.clone())
        .col("psi", s.psi.clone())
        .col("radicand", s.radicand.clone())
        .col("gauss", s.gauss.clone())
        .col("mean", s.mean.clone())
}

fn bour(a: BourArgs) -> Result<()> {
    let u = function_from(&a.u, &a.u_table, a.squared, "u")?;
    let omega = nonzero(a.omega.unwrap_or(1.0), "omega")?;
    let aa = nonzero(a.a.unwrap_or(1.0), "a")?;
    let range = range2(&a.xi_range, (0.0, 1.0), "xi-range")?;
    let n = at_least(a.n.unwrap_or(1001), 8, "n")?;
    let s = bour_surface(&u, omega, aa, range, n, a.branch.unwrap_or(BranchArg::Plus).into())?;
    helicoidal_table(&s).write(a.output.out(), a.output.format)?;
    a.output.emit_summary(&json!({
        "surface": "bour",
        "omega": omega,
        "a": aa,
        "samples": n,
        "clipped": s.clipped,
    }))
}

fn minimal(a: MinimalArgs) -> Result<()> {
    let omega = nonzero(a.omega.unwrap_or(1.0), "omega")?;
    let range = range2(&a.xi_range, (-2.0, 2.0), "xi-range")?;
    let n = at_least(a.n.unwrap_or(1001), 8, "n")?;
    let m = a.m_chi.unwrap_or(0);
    let (fam, s) = minimal_helicoidal_family(omega, a.omega0.unwrap_or(1.0), a.omega1.unwrap_or(0.0), range, n)?;
    helicoidal_table(&s)
        .col("veff", s.xi.iter().map(|&x| fam.veff(x, m)).collect())
        .write(a.output.out(), a.output.format)?;
    let max_mean = s.mean.iter().fold(0.0f64, |m, h| m.max(h.abs()));
    a.output.emit_summary(&json!({
        "surface": "minimal_helicoidal",
        "omega": omega,
        "b": fam.b,
        "m_chi": m,
        "samples": n,
        "max_abs_mean": max_mean,
    }))
}
