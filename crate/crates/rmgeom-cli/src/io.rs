//! Tables and curves on disk. Floats go out with 17 significant digits so
//! every file parses back to the same bits.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use nalgebra::DVector;
use rmgeom::curve::SampledCurve;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{input, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    /// Explicit choice first, then the file extension.
    pub fn resolve(explicit: Option<Format>, path: Option<&Path>) -> Format {
        explicit.unwrap_or_else(|| match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        })
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    Int,
}

/// Column-major numeric table with named columns.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<(String, Kind)>,
    pub data: Vec<Vec<f64>>,
}

impl Table {
    pub fn new() -> Self {
        Table::default()
    }

    pub fn col(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.columns.push((name.into(), Kind::Float));
        self.data.push(values);
        self
    }

    pub fn int_col(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.columns.push((name.into(), Kind::Int));
        self.data.push(values);
        self
    }

    /// One column per vector component, `prefix` + `x`, `y`, `z` (or a
    /// numeric index past three components).
    pub fn vec_cols(mut self, prefix: &str, values: &[DVector<f64>]) -> Self {
        let dim = values.first().map_or(0, |v| v.len());
        for k in 0..dim {
            let name = if dim <= 3 {
                format!("{prefix}{}", ["x", "y", "z"][k])
            } else {
                format!("{prefix}{k}")
            };
            self = self.col(name, values.iter().map(|v| v[k]).collect());
        }
        self
    }

    pub fn n_rows(&self) -> usize {
        self.data.first().map_or(0, |c| c.len())
    }

    fn cell(&self, col: usize, row: usize) -> String {
        let x = self.data[col][row];
        match self.columns[col].1 {
            Kind::Int if x.is_finite() => format!("{}", x as i64),
            _ => fmt_f64(x),
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io_err = |e: csv::Error| CliError::Input(format!("csv write: {e}"));
        wr.write_record(self.columns.iter().map(|(c, _)| c.as_str())).map_err(io_err)?;
        for r in 0..self.n_rows() {
            wr.write_record((0..self.columns.len()).map(|c| self.cell(c, r))).map_err(io_err)?;
        }
        wr.flush().map_err(|e| CliError::io("output", e))?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows = (0..self.n_rows())
            .map(|r| {
                let mut m = Map::new();
                for (c, (name, kind)) in self.columns.iter().enumerate() {
                    let x = self.data[c][r];
                    let v = match kind {
                        Kind::Int if x.is_finite() => Value::from(x as i64),
                        _ => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
                    };
                    m.insert(name.clone(), v);
                }
                Value::Object(m)
            })
            .collect();
        Value::Array(rows)
    }

    pub fn write(&self, out: Option<&Path>, format: Option<Format>) -> Result<()> {
        match Format::resolve(format, out) {
            Format::Csv => with_output(out, |w| self.write_csv(w)),
            Format::Json => write_json(out, &self.to_json()),
        }
    }
}

/// Run `f` on the file at `out`, or on stdout.
pub fn with_output(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(p) => {
            let mut file = File::create(p).map_err(|e| CliError::io(p.display().to_string(), e))?;
            f(&mut file)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}

pub fn write_json(out: Option<&Path>, v: &Value) -> Result<()> {
    with_output(out, |w| {
        serde_json::to_writer_pretty(&mut *w, v).map_err(|e| CliError::Input(format!("json write: {e}")))?;
        writeln!(w).map_err(|e| CliError::io("output", e))
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(path.display().to_string(), e))
}

fn parse_err(path: &Path, line: u64, msg: impl Into<String>) -> CliError {
    CliError::Parse { path: path.display().to_string(), line, msg: msg.into() }
}

/// Read a numeric CSV table. Errors carry the 1-based line of the file.
pub fn read_csv_table(path: &Path) -> Result<Table> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(open(path)?);
    let header = rd
        .headers()
        .map_err(|e| parse_err(path, 1, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect::<Vec<_>>();
    if header.is_empty() || header.iter().any(|h| h.is_empty()) {
        return Err(parse_err(path, 1, "empty column name in header"));
    }
    let mut data = vec![Vec::new(); header.len()];
    for rec in rd.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(parse_err(path, line, format!("expected {} fields, found {}", header.len(), rec.len())));
        }
        for (k, field) in rec.iter().enumerate() {
            let x: f64 = field
                .parse()
                .map_err(|_| parse_err(path, line, format!("column '{}': not a number: '{field}'", header[k])))?;
            data[k].push(x);
        }
    }
    Ok(Table { columns: header.into_iter().map(|h| (h, Kind::Float)).collect(), data })
}

/// On-disk JSON form of a curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveJson {
    #[serde(default = "default_param")]
    pub param: String,
    pub params: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub closed: bool,
}

fn default_param() -> String {
    "s".into()
}

/// Read a curve from CSV (`s,x,y,z` or `u,x,y,z`, any number of coordinate
/// columns) or JSON. A closed curve repeats its first point at the end;
/// `closed` overrides the automatic detection.
pub fn read_curve(path: &Path, closed: Option<bool>) -> Result<SampledCurve> {
    let (params, points, json_closed) = if Format::resolve(None, Some(path)) == Format::Json {
        let cj: CurveJson = serde_json::from_reader(open(path)?)
            .map_err(|e| parse_err(path, e.line() as u64, e.to_string()))?;
        (cj.params, cj.points.into_iter().map(DVector::from_vec).collect::<Vec<_>>(), Some(cj.closed))
    } else {
        let t = read_csv_table(path)?;
        if t.columns.len() < 3 {
            return Err(parse_err(path, 1, "need a parameter column and at least two coordinates"));
        }
        let param = t.columns[0].0.clone();
        if !matches!(param.as_str(), "s" | "u" | "t") {
            return Err(parse_err(path, 1, format!("first column must be 's' or 'u', found '{param}'")));
        }
        let n = t.n_rows();
        let points = (0..n)
            .map(|r| DVector::from_iterator(t.columns.len() - 1, t.data[1..].iter().map(|c| c[r])))
            .collect();
        (t.data[0].clone(), points, None)
    };
    let n = points.len();
    let auto = n > 1 && (&points[0] - &points[n - 1]).norm() <= 1e-9;
    let closed = closed.or(json_closed).unwrap_or(auto);
    Ok(SampledCurve::new(params, points, closed)?)
}

pub fn curve_table(param: &str, curve: &SampledCurve) -> Table {
    let dim = curve.ambient_dim();
    let mut t = Table::new().col(param, curve.params.clone());
    for k in 0..dim {
        let name = if dim <= 3 { ["x", "y", "z"][k].to_string() } else { format!("x{k}") };
        t = t.col(name, curve.points.iter().map(|p| p[k]).collect());
    }
    t
}

pub fn write_curve(out: Option<&Path>, format: Option<Format>, param: &str, curve: &SampledCurve) -> Result<()> {
    match Format::resolve(format, out) {
        Format::Csv => curve_table(param, curve).write(out, Some(Format::Csv)),
        Format::Json => {
            let cj = CurveJson {
                param: param.into(),
                params: curve.params.clone(),
                points: curve.points.iter().map(|p| p.iter().cloned().collect()).collect(),
                closed: curve.closed,
            };
            write_json(out, &serde_json::to_value(cj).map_err(|e| CliError::Input(e.to_string()))?)
        }
    }
}

/// Write a summary JSON next to the main output, or to stdout.
pub fn write_summary(path: Option<&PathBuf>, v: &Value) -> Result<()> {
    write_json(path.map(|p| p.as_path()), v)
}

pub fn require_dir(dir: &Path) -> Result<()> {
    if dir.is_dir() {
        return Ok(());
    }
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
    if !dir.is_dir() {
        return input(format!("{} is not a directory", dir.display()));
    }
    Ok(())
}
