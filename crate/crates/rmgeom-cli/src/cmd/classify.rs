use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use nalgebra::DVector;
use rmgeom::indefinite::isotropic::{iso_apparatus, iso_sphere_classify, IsoClass};
use rmgeom::indefinite::lorentz::{lorentz_rm_frame, lorentz_sphere_membership, LorentzSphere};
use rmgeom::rm::{drift, normal_development, rm_double_reflection, sphere_centers, FitKind};
use rmgeom::spaceform::{geodesic_sphere_test, manifold_rm_frame, totally_geodesic_test, GeodesicSphere, SpaceForm, TotallyGeodesic};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::initial_normal;
use crate::error::{input, CliError, Result};
use crate::io::{read_curve, write_json};

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ClassifyArgs {
    /// Curve file (CSV `s,x,y,z` or JSON).
    pub curve: PathBuf,
    /// Ambient space: euclid, lorentz, isotropic, sphere:R or hyperbolic:R.
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub closed: Option<bool>,
    /// Verdict file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Space {
    Euclid,
    Lorentz,
    Isotropic,
    Sphere(f64),
    Hyperbolic(f64),
}

impl FromStr for Space {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let radius = |r: &str| match r.parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => input(format!("bad radius in space tag '{s}'")),
        };
        match s.split_once(':') {
            None => match s {
                "euclid" => Ok(Space::Euclid),
                "lorentz" => Ok(Space::Lorentz),
                "isotropic" => Ok(Space::Isotropic),
                "sphere" => Ok(Space::Sphere(1.0)),
                "hyperbolic" => Ok(Space::Hyperbolic(1.0)),
                _ => input(format!("unknown space '{s}'")),
            },
            Some(("sphere", r)) => Ok(Space::Sphere(radius(r)?)),
            Some(("hyperbolic", r)) => Ok(Space::Hyperbolic(radius(r)?)),
            _ => input(format!("unknown space '{s}'")),
        }
    }
}

fn vecj(v: &DVector<f64>) -> Value {
    json!(v.iter().collect::<Vec<_>>())
}

fn euclid(curve: &rmgeom::curve::SampledCurve) -> Result<Value> {
    let rm = rm_double_reflection(curve, &initial_normal(curve, &None)?)?;
    let dev = normal_development(&rm)?;
    let mut out = json!({
        "space": "euclid",
        "residual": dev.fit_residual,
        "tolerance": dev.tol,
    });
    if let Some(p) = &dev.constant_point {
        out["kind"] = json!("circle");
        out["fit_kind"] = json!("point");
        out["radius"] = json!(1.0 / p.norm());
        out["through_origin"] = json!(false);
    }
    match &dev.fit_kind {
        FitKind::LineNotThroughOrigin { distance, normal } => {
            let centers = sphere_centers(&rm, &dev).unwrap_or_default();
            let n = centers.len().max(1) as f64;
            let mean = centers.iter().fold(DVector::zeros(curve.ambient_dim()), |acc, c| acc + c) / n;
            if dev.constant_point.is_none() {
                out["kind"] = json!("sphere");
                out["fit_kind"] = json!("line_not_through_origin");
                out["radius"] = json!(1.0 / distance);
                out["through_origin"] = json!(false);
            }
            out["distance"] = json!(distance);
            out["normal"] = vecj(normal);
            out["center"] = vecj(&mean);
            out["center_drift"] = json!(if centers.is_empty() { 0.0 } else { drift(&centers) });
        }
        FitKind::LineThroughOrigin { normal } => {
            out["kind"] = json!("plane");
            out["fit_kind"] = json!("line_through_origin");
            out["through_origin"] = json!(true);
            out["normal"] = vecj(normal);
        }
        FitKind::NotALine => {
            out["kind"] = json!("none");
            out["fit_kind"] = json!("not_a_line");
            out["through_origin"] = json!(false);
        }
    }
    Ok(out)
}

fn lorentz(curve: &rmgeom::curve::SampledCurve) -> Result<Value> {
    let rm = lorentz_rm_frame(curve)?;
    let fit = lorentz_sphere_membership(&rm)?;
    let v3 = |c: &nalgebra::Vector3<f64>| json!([c.x, c.y, c.z]);
    let mut out = json!({
        "space": "lorentz",
        "residual": fit.residual,
        "center_drift": fit.center_drift,
        "line": fit.a,
        "causal": if rm.eps < 0.0 { "timelike" } else { "spacelike" },
    });
    match &fit.kind {
        LorentzSphere::PseudoSphere { center, radius } => {
            out["kind"] = json!("pseudo_sphere");
            out["radius"] = json!(radius);
            out["center"] = v3(center);
        }
        LorentzSphere::PseudoHyperbolic { center, radius } => {
            out["kind"] = json!("pseudo_hyperbolic");
            out["radius"] = json!(radius);
            out["center"] = v3(center);
        }
        LorentzSphere::LightCone { center } => {
            out["kind"] = json!("light_cone");
            out["center"] = v3(center);
        }
        LorentzSphere::None => out["kind"] = json!("none"),
    }
    Ok(out)
}

fn isotropic(curve: &rmgeom::curve::SampledCurve) -> Result<Value> {
    let iso = iso_apparatus(curve)?;
    Ok(match iso_sphere_classify(&iso) {
        IsoClass::Cylindrical { radius } => json!({"space": "isotropic", "kind": "cylindrical", "radius": radius}),
        IsoClass::Parabolic { normal, distance } => json!({
            "space": "isotropic", "kind": "parabolic", "normal": normal, "distance": distance,
        }),
        IsoClass::Plane { normal } => json!({
            "space": "isotropic", "kind": "plane", "normal": normal, "through_origin": true,
        }),
        IsoClass::None => json!({"space": "isotropic", "kind": "none"}),
    })
}

fn space_form(curve: &rmgeom::curve::SampledCurve, form: SpaceForm, tag: &str) -> Result<Value> {
    let rm = manifold_rm_frame(&form, curve, None)?;
    let mut out = json!({"space": tag, "radius_of_space": form.r});
    match geodesic_sphere_test(&rm)? {
        GeodesicSphere::OnGeodesicSphere { z0, center, residual } => {
            out["kind"] = json!("geodesic_sphere");
            out["z0"] = json!(z0);
            out["center"] = vecj(&center);
            out["residual"] = json!(residual);
            return Ok(out);
        }
        GeodesicSphere::No => {}
    }
    match totally_geodesic_test(&rm) {
        TotallyGeodesic::Plane { direction, unconstrained } => {
            out["kind"] = json!("totally_geodesic");
            out["direction"] = vecj(&direction);
            out["through_origin"] = json!(true);
            out["geodesic"] = json!(unconstrained);
        }
        TotallyGeodesic::No => out["kind"] = json!("none"),
    }
    Ok(out)
}

pub fn run(a: ClassifyArgs) -> Result<()> {
    let space: Space = a.space.as_deref().unwrap_or("euclid").parse()?;
    let curve = read_curve(&a.curve, a.closed)?;
    let dim = curve.ambient_dim();
    let verdict = match space {
        Space::Euclid => euclid(&curve)?,
        Space::Lorentz => lorentz(&curve)?,
        Space::Isotropic => isotropic(&curve)?,
        Space::Sphere(r) => space_form(&curve, SpaceForm::sphere(r, dim - 1), "sphere")?,
        Space::Hyperbolic(r) => space_form(&curve, SpaceForm::hyperbolic(r, dim - 1), "hyperbolic")?,
    };
    write_json(a.out.as_deref(), &verdict)
}
