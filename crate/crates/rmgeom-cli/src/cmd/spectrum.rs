use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use rmgeom::schrodinger::{
    bound_state_search, helicoidal_minimal_veff, solve_1d, Boundary, SeparatedProblem, Spectrum, MIN_GRID,
};
use rmgeom::surfaces::MinimalHelicoidal;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{at_least, nonzero, positive};
use crate::error::Result;
use crate::io::{require_dir, write_json, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bc {
    Dirichlet,
    Periodic,
}

impl From<Bc> for Boundary {
    fn from(b: Bc) -> Boundary {
        match b {
            Bc::Dirichlet => Boundary::Dirichlet,
            Bc::Periodic => Boundary::Periodic,
        }
    }
}

/// Options shared by every surface.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SolveArgs {
    #[arg(long)]
    pub n_states: Option<usize>,
    #[arg(long)]
    pub n_grid: Option<usize>,
    /// Energy unit hbar^2 / 2m* (and length unit 1) for the physical columns.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Directory for energies.csv, wavefunctions.csv and veff.csv.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Summary file; stdout when absent.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SpectrumSurface {
    /// Particle in a box of length L.
    Pib(PibArgs),
    /// The helicoid U^2 = omega^2 xi^2 + 1.
    Helicoid(HelicoidArgs),
    /// Minimal helicoidal surface with parameters omega, omega0, omega1.
    MinimalHelicoidal(MinimalSpectrumArgs),
}

impl SpectrumSurface {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumSurface::Pib(_) => "pib",
            SpectrumSurface::Helicoid(_) => "helicoid",
            SpectrumSurface::MinimalHelicoidal(_) => "minimal_helicoidal",
        }
    }
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct PibArgs {
    #[arg(long = "L", alias = "length")]
    #[serde(rename = "L", alias = "length")]
    pub length: Option<f64>,
    #[arg(long, value_enum)]
    pub bc: Option<Bc>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solve: SolveArgs,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct HelicoidArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m_chi: Option<i64>,
    /// The strip is [-L, L]; the bound-state check also solves on [-2L, 2L].
    #[arg(long)]
    pub half_width: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solve: SolveArgs,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct MinimalSpectrumArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m_chi: Option<i64>,
    #[arg(long)]
    pub half_width: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solve: SolveArgs,
}

pub fn run(s: SpectrumSurface) -> Result<()> {
    match s {
        SpectrumSurface::Pib(a) => {
            let l = positive(a.length.unwrap_or(1.0), "L")?;
            let bc = a.bc.unwrap_or(Bc::Dirichlet);
            let problem = SeparatedProblem::free(l, bc.into())?;
            let summary = json!({"surface": "pib", "L": l});
            solve_and_emit(&problem, &a.solve, summary, None)
        }
        SpectrumSurface::Helicoid(a) => {
            let omega = nonzero(a.omega.unwrap_or(1.0), "omega")?;
            let fam = MinimalHelicoidal::new(omega, 1.0, 0.0)?;
            helicoidal(fam, a.m_chi.unwrap_or(0), a.half_width, &a.solve, "helicoid")
        }
        SpectrumSurface::MinimalHelicoidal(a) => {
            let omega = nonzero(a.omega.unwrap_or(1.0), "omega")?;
            let fam = MinimalHelicoidal::new(omega, a.omega0.unwrap_or(1.0), a.omega1.unwrap_or(0.0))?;
            helicoidal(fam, a.m_chi.unwrap_or(0), a.half_width, &a.solve, "minimal_helicoidal")
        }
    }
}

fn helicoidal(fam: MinimalHelicoidal, m: i64, half_width: Option<f64>, solve: &SolveArgs, name: &str) -> Result<()> {
    let l = positive(half_width.unwrap_or(40.0), "half-width")?;
    // centred on the axis of the surface, where U is smallest
    let c = -fam.omega1 / fam.omega;
    let problem = helicoidal_minimal_veff(&fam, m, (c - l, c + l))?;
    let summary = json!({
        "surface": name,
        "omega": fam.omega,
        "omega0": fam.omega0,
        "omega1": fam.omega1,
        "b": fam.b,
        "m_chi": m,
    });
    solve_and_emit(&problem, solve, summary, Some(l))
}

fn solve_and_emit(problem: &SeparatedProblem, a: &SolveArgs, mut summary: Value, bound_check: Option<f64>) -> Result<()> {
    let n_grid = at_least(a.n_grid.unwrap_or(4000), MIN_GRID, "n-grid")?;
    let n_states = at_least(a.n_states.unwrap_or(5), 1, "n-states")?;
    let scale = positive(a.scale.unwrap_or(1.0), "scale")?;
    let spec = solve_1d(problem, n_states.min(n_grid), n_grid)?;

    summary["bc"] = json!(match spec.bc {
        Boundary::Dirichlet => "dirichlet",
        Boundary::Periodic => "periodic",
    });
    summary["domain"] = json!([problem.domain.0, problem.domain.1]);
    summary["lambda"] = json!(problem.lambda);
    summary["n_grid"] = json!(n_grid);
    summary["scale"] = json!(scale);
    summary["energies"] = json!(spec.energies);
    summary["ground_energy"] = json!(spec.energies[0]);
    summary["ground_energy_scaled"] = json!(spec.energies[0] * scale);
    summary["orthonormality_error"] = json!(spec.orthonormality_error());
    if let Some(l) = bound_check {
        let b = bound_state_search(problem, l, n_grid)?;
        summary["bound"] = json!(b.is_bound());
        summary["bound_check_lowest"] = json!(b.lowest());
    }
    if let Some(dir) = &a.out_dir {
        require_dir(dir)?;
        energies_table(&spec, scale).write(Some(&dir.join("energies.csv")), None)?;
        wavefunction_table(&spec).write(Some(&dir.join("wavefunctions.csv")), None)?;
        veff_table(problem, scale).write(Some(&dir.join("veff.csv")), None)?;
        summary["files"] = json!({
            "energies": dir.join("energies.csv"),
            "wavefunctions": dir.join("wavefunctions.csv"),
            "veff": dir.join("veff.csv"),
        });
    }
    write_json(a.summary.as_deref(), &summary)
}

fn energies_table(spec: &Spectrum, scale: f64) -> Table {
    Table::new()
        .int_col("n", (1..=spec.n_states()).map(|k| k as f64).collect())
        .col("energy", spec.energies.clone())
        .col("energy_scaled", spec.energies.iter().map(|e| e * scale).collect())
}

fn wavefunction_table(spec: &Spectrum) -> Table {
    let mut t = Table::new().col("x", spec.u.clone());
    for (k, psi) in spec.wavefunctions.iter().enumerate() {
        t = t.col(format!("psi{k}"), psi.clone());
    }
    t
}

fn veff_table(problem: &SeparatedProblem, scale: f64) -> Table {
    let v = problem.potential_samples();
    Table::new()
        .col("x", problem.u.clone())
        .col("veff", v.clone())
        .col("veff_scaled", v.iter().map(|x| x * scale).collect())
}
