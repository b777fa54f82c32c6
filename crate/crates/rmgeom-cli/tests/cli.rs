use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rmgeom(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmgeom"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str], dir: &Path) -> Value {
    let out = rmgeom(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn read_columns(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let mut cols = vec![Vec::new(); header.len()];
    for l in lines {
        for (c, f) in cols.iter_mut().zip(l.split(',')) {
            c.push(f.parse::<f64>().unwrap());
        }
    }
    (header, cols)
}

fn write_curve(path: &Path, pts: impl Iterator<Item = (f64, [f64; 3])>) {
    let mut s = String::from("u,x,y,z\n");
    for (u, p) in pts {
        s += &format!("{u:.16e},{:.16e},{:.16e},{:.16e}\n", p[0], p[1], p[2]);
    }
    fs::write(path, s).unwrap();
}

#[test]
fn box_ground_state_is_pi_squared() {
    let d = TempDir::new().unwrap();
    let v = ok_json(&["spectrum", "pib", "--L", "1", "--bc", "dirichlet"], d.path());
    let e1 = v["ground_energy"].as_f64().unwrap();
    assert!((e1 - PI * PI).abs() < 1e-4, "{e1}");
}

#[test]
fn helicoid_binds_without_angular_momentum() {
    let d = TempDir::new().unwrap();
    let v = ok_json(&["spectrum", "helicoid", "--m-chi", "0", "--out-dir", "out"], d.path());
    assert!(v["ground_energy"].as_f64().unwrap() < 0.0);
    assert_eq!(v["bound"], Value::Bool(true));
    for f in ["energies.csv", "wavefunctions.csv", "veff.csv"] {
        assert!(d.path().join("out").join(f).is_file(), "{f}");
    }
}

#[test]
fn minimal_helicoidal_potential_is_repulsive_for_unit_momentum() {
    let d = TempDir::new().unwrap();
    ok_json(
        &["spectrum", "minimal-helicoidal", "--omega", "1", "--omega0", "3", "--omega1", "0", "--m-chi", "1", "--out-dir", "o"],
        d.path(),
    );
    let (h, cols) = read_columns(&d.path().join("o/veff.csv"));
    assert_eq!(h[..2], ["x", "veff"]);
    for (x, v) in cols[0].iter().zip(&cols[1]) {
        // lambda / f^2 - U_eff with q = xi^2 + 3, lambda = 1, f^2 = q
        let q = x * x + 3.0;
        let oracle = 1.0 / q - 0.25 * (3.0 / (q * q) + 1.0 / q);
        assert!(*v > 0.0);
        assert!((v - oracle).abs() < 1e-12 * oracle.abs().max(1.0), "{x}: {v} vs {oracle}");
    }
}

#[test]
fn helix_frenet_table() {
    let d = TempDir::new().unwrap();
    let (a, b) = (1.5, 0.5);
    let c = (a * a + b * b) as f64;
    write_curve(
        &d.path().join("helix.csv"),
        (0..600).map(|k| {
            let u = 4.0 * PI * k as f64 / 599.0;
            (u, [a * u.cos(), a * u.sin(), b * u])
        }),
    );
    let out = rmgeom(&["frames", "helix.csv", "--out", "f.csv"], d.path());
    assert!(out.status.success());
    let (h, cols) = read_columns(&d.path().join("f.csv"));
    assert_eq!(h[0], "s");
    let k = h.iter().position(|c| c == "kappa").unwrap();
    let t = h.iter().position(|c| c == "tau").unwrap();
    for i in 10..590 {
        assert!((cols[k][i] - a / c).abs() < 1e-4);
        assert!((cols[t][i] - b / c).abs() < 1e-4);
    }
}

/// Total torsion of a (2,3) torus knot from its closed form, by central
/// differences and the periodic trapezoid rule.
fn knot_total_torsion() -> f64 {
    let x = |u: f64| {
        let r = 2.0 + 0.7 * (3.0 * u).cos();
        [r * (2.0 * u).cos(), r * (2.0 * u).sin(), 0.7 * (3.0 * u).sin()]
    };
    let h = 1e-3;
    let d = |u: f64, k: usize| -> [f64; 3] {
        let f = |j: usize, t: f64| x(t)[j];
        std::array::from_fn(|j| match k {
            1 => (f(j, u + h) - f(j, u - h)) / (2.0 * h),
            2 => (f(j, u + h) - 2.0 * f(j, u) + f(j, u - h)) / (h * h),
            _ => (f(j, u + 2.0 * h) - 2.0 * f(j, u + h) + 2.0 * f(j, u - h) - f(j, u - 2.0 * h)) / (2.0 * h * h * h),
        })
    };
    let cross = |a: [f64; 3], b: [f64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let n = 4000;
    (0..n)
        .map(|k| {
            let u = 2.0 * PI * k as f64 / n as f64;
            let (d1, d2, d3) = (d(u, 1), d(u, 2), d(u, 3));
            let c = cross(d1, d2);
            // tau |alpha'| du
            dot(c, d3) / dot(c, c) * dot(d1, d1).sqrt()
        })
        .sum::<f64>()
        * 2.0
        * PI
        / n as f64
}

#[test]
fn closed_curve_holonomy_matches_total_torsion() {
    let d = TempDir::new().unwrap();
    assert!(rmgeom(&["generate", "torus-knot", "--n", "801", "--out", "k.csv"], d.path()).status.success());
    let v = ok_json(&["frames", "k.csv", "--rm", "--out", "rm.csv"], d.path());
    let hol = v["holonomy"].as_f64().unwrap();
    let tt = knot_total_torsion();
    let gap = (hol - tt).rem_euclid(2.0 * PI);
    assert!(gap.min(2.0 * PI - gap) < 1e-3, "holonomy {hol}, total torsion {tt}");
}

#[test]
fn malformed_row_names_its_line() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("bad.csv"), "s,x,y,z\n0,0,0,0\n1,1,oops,0\n2,2,0,0\n3,3,1,0\n").unwrap();
    let out = rmgeom(&["frames", "bad.csv"], d.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    fs::write(d.path().join("short.csv"), "s,x,y,z\n0,0,0,0\n1,1,0\n").unwrap();
    let out = rmgeom(&["frames", "short.csv"], d.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn emitted_files_round_trip_bit_for_bit() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    for args in [
        ["generate", "random", "--seed", "11", "--out", "a.csv"],
        ["generate", "random", "--seed", "11", "--out", "a.json"],
        ["generate", "random", "--seed", "11", "--out", "b.csv"],
        ["generate", "random", "--seed", "12", "--out", "c.csv"],
    ] {
        assert!(rmgeom(&args, p).status.success());
    }
    let a = fs::read_to_string(p.join("a.csv")).unwrap();
    assert_eq!(a, fs::read_to_string(p.join("b.csv")).unwrap(), "same seed, same bytes");
    assert_ne!(a, fs::read_to_string(p.join("c.csv")).unwrap());

    // CSV text re-parses and re-prints identically; JSON holds the same bits
    let (_, cols) = read_columns(&p.join("a.csv"));
    let j: Value = serde_json::from_str(&fs::read_to_string(p.join("a.json")).unwrap()).unwrap();
    for (line, row) in a.lines().skip(1).enumerate() {
        let again: Vec<String> = row.split(',').map(|f| format!("{:.16e}", f.parse::<f64>().unwrap())).collect();
        assert_eq!(again.join(","), row);
        assert_eq!(j["params"][line].as_f64().unwrap().to_bits(), cols[0][line].to_bits());
        for k in 0..3 {
            assert_eq!(j["points"][line][k].as_f64().unwrap().to_bits(), cols[k + 1][line].to_bits());
        }
    }

    // a frame file survives the same check, and a JSON curve feeds the reader
    assert!(rmgeom(&["frames", "a.json", "--rm", "--out", "f.csv"], p).status.success());
    let f = fs::read_to_string(p.join("f.csv")).unwrap();
    for row in f.lines().skip(1) {
        let again: Vec<String> = row.split(',').map(|x| format!("{:.16e}", x.parse::<f64>().unwrap())).collect();
        assert_eq!(again.join(","), row);
    }
}

#[test]
fn spherical_curve_reports_its_radius() {
    let d = TempDir::new().unwrap();
    assert!(rmgeom(&["generate", "spherical", "--radius", "2", "--out", "s.csv"], d.path()).status.success());
    let v = ok_json(&["classify", "s.csv"], d.path());
    assert_eq!(v["kind"], "sphere");
    assert!((v["radius"].as_f64().unwrap() - 2.0).abs() < 1e-3);
}

#[test]
fn plane_curve_is_through_origin() {
    let d = TempDir::new().unwrap();
    // ellipse in a tilted plane
    write_curve(
        &d.path().join("e.csv"),
        (0..401).map(|k| {
            let u = 2.0 * PI * k as f64 / 400.0;
            let (x, y) = if k == 400 { (2.0, 0.0) } else { (2.0 * u.cos(), u.sin()) };
            (u, [x, y * 0.6, y * 0.8])
        }),
    );
    let v = ok_json(&["classify", "e.csv"], d.path());
    assert_eq!(v["kind"], "plane");
    assert_eq!(v["through_origin"], Value::Bool(true));
}

#[test]
fn geodesic_circle_on_the_unit_sphere_has_z0() {
    let d = TempDir::new().unwrap();
    assert!(rmgeom(&["generate", "latitude", "--radius", "1", "--z0", "0.6", "--out", "l.csv"], d.path()).status.success());
    let v = ok_json(&["classify", "l.csv", "--space", "sphere:1"], d.path());
    assert_eq!(v["kind"], "geodesic_sphere");
    assert!((v["z0"].as_f64().unwrap() - 0.6).abs() < 1e-4);
}

#[test]
fn config_fills_gaps_and_flags_win() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("c.json"), r#"{"spectrum": {"pib": {"n_states": 2, "L": 2.0}}}"#).unwrap();
    let v = ok_json(&["--config", "c.json", "spectrum", "pib", "--L", "1"], d.path());
    let e: Vec<f64> = v["energies"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(e.len(), 2);
    assert!((e[0] - PI * PI).abs() < 1e-4);
    let v = ok_json(&["spectrum", "pib", "--config", "c.json"], d.path());
    assert!((v["ground_energy"].as_f64().unwrap() - PI * PI / 4.0).abs() < 1e-4);

    fs::write(d.path().join("typo.json"), r#"{"spectrum": {"pib": {"n_state": 2}}}"#).unwrap();
    assert_eq!(rmgeom(&["--config", "typo.json", "spectrum", "pib"], d.path()).status.code(), Some(2));
}

#[test]
fn exit_codes_separate_input_from_domain_errors() {
    let d = TempDir::new().unwrap();
    // U^2 = 1 + xi^2 with a = omega = 1: rho = |xi| vanishes at 0
    let out = rmgeom(
        &["prescribe", "bour", "--u", "1,0,1", "--squared", "--xi-range=-1,1", "--out", "b.csv"],
        d.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Bour"));

    assert_eq!(rmgeom(&["spectrum", "pib", "--n-grid", "50"], d.path()).status.code(), Some(2));
    assert_eq!(rmgeom(&["classify", "missing.csv"], d.path()).status.code(), Some(2));
    assert_eq!(rmgeom(&["spectrum", "pib", "--L", "-1"], d.path()).status.code(), Some(2));
    assert_eq!(rmgeom(&["frames"], d.path()).status.code(), Some(2));

    assert!(rmgeom(&["generate", "torus-knot", "--out", "k.csv"], d.path()).status.success());
    assert_eq!(rmgeom(&["tube", "k.csv", "--r", "5", "--out", "t.csv"], d.path()).status.code(), Some(3));
}

#[test]
fn minimal_member_is_minimal() {
    let d = TempDir::new().unwrap();
    let v = ok_json(
        &["prescribe", "minimal-helicoidal", "--omega", "2", "--omega0", "3", "--omega1", "0.5", "--out", "m.csv"],
        d.path(),
    );
    assert!((v["b"].as_f64().unwrap() - 2.75).abs() < 1e-15);
    assert!(v["max_abs_mean"].as_f64().unwrap() < 1e-8);
}

#[test]
fn tube_summary_lists_critical_points() {
    let d = TempDir::new().unwrap();
    // ellipse: curvature extrema at the vertices
    write_curve(
        &d.path().join("e.csv"),
        (0..801).map(|k| {
            let u = 2.0 * PI * k as f64 / 800.0;
            let (x, y) = if k == 800 { (2.0, 0.0) } else { (2.0 * u.cos(), u.sin()) };
            (u, [x, y, 0.0])
        }),
    );
    let v = ok_json(&["tube", "e.csv", "--r", "0.05", "--n-phi", "32", "--out", "t.csv"], d.path());
    let cps = v["critical_points"].as_array().unwrap();
    assert_eq!(cps.len(), 8, "{cps:?}");
    let (h, cols) = read_columns(&d.path().join("t.csv"));
    assert_eq!(h, ["s", "phi", "x", "y", "z", "gauss", "mean", "vgip"]);
    assert_eq!(cols[0].len(), 801 * 32);
}

#[test]
fn thin_ring_phase() {
    let d = TempDir::new().unwrap();
    let radius = 3.0;
    write_curve(
        &d.path().join("ring.csv"),
        (0..601).map(|k| {
            let u = 2.0 * PI * k as f64 / 600.0;
            let (c, s) = if k == 600 { (1.0, 0.0) } else { (u.cos(), u.sin()) };
            (u, [radius * c, radius * s, 0.0])
        }),
    );
    let out = rmgeom(&["phase", "ring.csv", "--r", "0.01", "--ell", "2", "--out", "ph.csv", "--summary", "p.json"], d.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p: Value = serde_json::from_str(&fs::read_to_string(d.path().join("p.json")).unwrap()).unwrap();
    let e = p["thin_tube"]["energy"].as_f64().unwrap();
    // flat ring ground state 0, plus ell^2, minus 1/(4 r^2)
    assert!((e - (4.0 - 0.25 / 1e-4)).abs() < 1e-4, "{e}");
    assert!(p["geometric_phase"].as_f64().unwrap().abs() < 1e-9);
}
