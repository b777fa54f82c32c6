mod cmd;
mod config;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use cmd::classify::ClassifyArgs;
use cmd::frames::FramesArgs;
use cmd::generate::GenerateArgs;
use cmd::phase::PhaseArgs;
use cmd::prescribe::Prescribe;
use cmd::spectrum::SpectrumSurface;
use cmd::tube::TubeArgs;
use config::merge;
use error::Result;

#[derive(Debug, Parser)]
#[command(name = "rmgeom", version, about = "Rotation minimizing frames, curve classification, invariant surfaces and their quantum spectra")]
struct Cli {
    /// JSON file with option defaults; command line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frenet or rotation minimizing frame along a sampled curve.
    Frames(FramesArgs),
    /// Decide which sphere (or plane) of a space a curve lies on.
    Classify(ClassifyArgs),
    /// Tube around a curve: curvatures and the geometric potential.
    Tube(TubeArgs),
    /// Build a surface from a prescribed curvature function.
    #[command(subcommand)]
    Prescribe(Prescribe),
    /// Spectrum of the separated Schrodinger equation on a surface.
    #[command(subcommand)]
    Spectrum(SpectrumSurface),
    /// Geometric phase and thin-tube state along a curve.
    Phase(PhaseArgs),
    /// Sample a test curve.
    Generate(GenerateArgs),
}

fn dispatch(cli: Cli) -> Result<()> {
    let cfg: Option<Value> = cli.config.as_deref().map(config::load).transpose()?;
    let cfg = cfg.as_ref();
    match cli.command {
        Command::Frames(a) => cmd::frames::run(merge(a, cfg, &["frames"])?),
        Command::Classify(a) => cmd::classify::run(merge(a, cfg, &["classify"])?),
        Command::Tube(a) => cmd::tube::run(merge(a, cfg, &["tube"])?),
        Command::Phase(a) => cmd::phase::run(merge(a, cfg, &["phase"])?),
        Command::Generate(a) => cmd::generate::run(merge(a, cfg, &["generate"])?),
        Command::Prescribe(p) => {
            let name = p.name();
            let path = ["prescribe", name];
            cmd::prescribe::run(match p {
                Prescribe::Cylindrical(a) => Prescribe::Cylindrical(merge(a, cfg, &path)?),
                Prescribe::Revolution(a) => Prescribe::Revolution(merge(a, cfg, &path)?),
                Prescribe::Bour(a) => Prescribe::Bour(merge(a, cfg, &path)?),
                Prescribe::MinimalHelicoidal(a) => Prescribe::MinimalHelicoidal(merge(a, cfg, &path)?),
            })
        }
        Command::Spectrum(s) => {
            let name = s.name();
            let path = ["spectrum", name];
            cmd::spectrum::run(match s {
                SpectrumSurface::Pib(a) => SpectrumSurface::Pib(merge(a, cfg, &path)?),
                SpectrumSurface::Helicoid(a) => SpectrumSurface::Helicoid(merge(a, cfg, &path)?),
                SpectrumSurface::MinimalHelicoidal(a) => SpectrumSurface::MinimalHelicoidal(merge(a, cfg, &path)?),
            })
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on bad usage by itself
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rmgeom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
