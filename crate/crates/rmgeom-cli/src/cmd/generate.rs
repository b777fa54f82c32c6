use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmgeom::curve::{powerlaw_plane_curve, SampledCurve};
use serde::{Deserialize, Serialize};

use super::{at_least, positive, range2};
use crate::error::{input, Result};
use crate::io::{write_curve, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    /// (a cos u, a sin u, b u) over `turns` turns.
    Helix,
    /// (p, q) torus knot on the torus with radii `radius` and `a`.
    TorusKnot,
    /// Closed wavy loop on the sphere of radius `radius`.
    Spherical,
    /// Circle at geodesic distance z0 from the pole of the sphere of radius `radius`.
    Latitude,
    /// Closed curve with random Fourier modes; reproducible through --seed.
    Random,
    /// Plane curve with curvature c0 / s^exponent.
    Powerlaw,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: CurveKind,
    /// Number of samples.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long)]
    pub turns: Option<f64>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub z0: Option<f64>,
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub c0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub exponent: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub s_range: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn v3(x: f64, y: f64, z: f64) -> DVector<f64> {
    DVector::from_row_slice(&[x, y, z])
}

pub fn build(a: &GenerateArgs) -> Result<(&'static str, SampledCurve)> {
    let n = at_least(a.n.unwrap_or(401), 8, "n")?;
    let tau = 2.0 * PI;
    let curve = match a.kind {
        CurveKind::Helix => {
            let (ra, b) = (positive(a.a.unwrap_or(1.0), "a")?, a.b.unwrap_or(0.5));
            let turns = positive(a.turns.unwrap_or(2.0), "turns")?;
            SampledCurve::from_fn(|u| v3(ra * u.cos(), ra * u.sin(), b * u), 0.0, tau * turns, n, false)?
        }
        CurveKind::TorusKnot => {
            let (p, q) = (a.p.unwrap_or(2) as f64, a.q.unwrap_or(3) as f64);
            let big = positive(a.radius.unwrap_or(2.0), "radius")?;
            let small = positive(a.a.unwrap_or(0.7), "a")?;
            if small >= big || p == 0.0 || q == 0.0 {
                return input("torus knot needs 0 < a < radius and p, q >= 1");
            }
            SampledCurve::from_fn(
                |u| {
                    let r = big + small * (q * u).cos();
                    v3(r * (p * u).cos(), r * (p * u).sin(), small * (q * u).sin())
                },
                0.0,
                tau,
                n,
                true,
            )?
        }
        CurveKind::Spherical => {
            let r = positive(a.radius.unwrap_or(2.0), "radius")?;
            let c = a.amplitude.unwrap_or(0.4);
            let k = a.p.unwrap_or(3) as f64;
            SampledCurve::from_fn(
                |u| {
                    let lat = c * (k * u).sin();
                    v3(r * u.cos() * lat.cos(), r * u.sin() * lat.cos(), r * lat.sin())
                },
                0.0,
                tau,
                n,
                true,
            )?
        }
        CurveKind::Latitude => {
            let r = positive(a.radius.unwrap_or(1.0), "radius")?;
            let z0 = positive(a.z0.unwrap_or(0.6), "z0")?;
            if z0 >= PI * r {
                return input("--z0 must be below pi * radius");
            }
            let (sz, cz) = ((z0 / r).sin(), (z0 / r).cos());
            SampledCurve::from_fn(|u| v3(r * sz * u.cos(), r * sz * u.sin(), r * cz), 0.0, tau, n, true)?
        }
        CurveKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed.unwrap_or(0));
            let modes = at_least(a.modes.unwrap_or(3), 1, "modes")?;
            let amp = a.amplitude.unwrap_or(0.3);
            // base circle plus decaying harmonics keeps the curve regular
            let coef: Vec<[f64; 6]> = (0..modes).map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0))).collect();
            SampledCurve::from_fn(
                |u| {
                    let mut p = v3(u.cos(), u.sin(), 0.0);
                    for (j, c) in coef.iter().enumerate() {
                        let k = (j + 2) as f64;
                        let w = amp / (k * k);
                        let (ck, sk) = ((k * u).cos(), (k * u).sin());
                        p += v3(c[0] * ck + c[1] * sk, c[2] * ck + c[3] * sk, c[4] * ck + c[5] * sk) * w;
                    }
                    p
                },
                0.0,
                tau,
                n,
                true,
            )?
        }
        CurveKind::Powerlaw => {
            let c0 = a.c0.unwrap_or(1.0);
            let p = a.exponent.unwrap_or(0.5);
            let (s0, s1) = range2(&a.s_range, (0.5, 20.0), "s-range")?;
            if s0 <= 0.0 {
                return input("--s-range must start above 0");
            }
            let c = powerlaw_plane_curve(c0, p, s0, s1, n)?;
            return Ok(("s", c));
        }
    };
    Ok(("u", curve))
}

pub fn run(a: GenerateArgs) -> Result<()> {
    let (param, curve) = build(&a)?;
    write_curve(a.out.as_deref(), a.format, param, &curve)
}
