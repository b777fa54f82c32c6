use rmgeom::error::GeoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}: {msg}")]
    Parse { path: String, line: u64, msg: String },
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Geo(#[from] GeoError),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for anything the user can fix by changing the input, 3 when the
    /// numerics hit a domain limit of the geometry.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Geo(e) if !is_input_error(e) => 3,
            _ => 2,
        }
    }
}

fn is_input_error(e: &GeoError) -> bool {
    matches!(
        e,
        GeoError::TooFewSamples { .. }
            | GeoError::NonMonotoneParams { .. }
            | GeoError::DimensionMismatch { .. }
            | GeoError::InvalidRange(_)
            | GeoError::InvalidFrame { .. }
            | GeoError::NotTangent { .. }
            | GeoError::InvalidFamily { .. }
            | GeoError::GridTooCoarse { .. }
            | GeoError::NotClosed { .. }
    )
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Input(msg.into()))
}
