//! Crate-wide error type. Each variant carries a stable diagnostic code so
//! the CLI can emit machine-readable failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group construction: {0}")]
    Group(String),
    #[error("bicovariance violated: {}", format_violations(.0))]
    Bicovariance(Vec<(String, String, String)>),
    #[error("lattice: {0}")]
    Lattice(String),
    #[error("metric: {0}")]
    Metric(String),
    #[error("connection: {0}")]
    Connection(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("coordinates: {0}")]
    Coordinates(String),
    #[error("development: {0}")]
    Development(String),
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("arrow-set mismatch: {0}")]
    ArrowMismatch(String),
    #[error("io: {0}")]
    Io(String),
}

fn format_violations(v: &[(String, String, String)]) -> String {
    let items: Vec<String> =
        v.iter().map(|(h, hp, adh)| format!("(h={h}, h'={hp}, ad(h)h'={adh})")).collect();
    items.join(", ")
}

impl Error {
    /// Stable diagnostic code for machine consumption.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Group(_) => "E_GROUP",
            Error::Bicovariance(_) => "E_BICOVARIANCE",
            Error::Lattice(_) => "E_LATTICE",
            Error::Metric(_) => "E_METRIC",
            Error::Connection(_) => "E_CONNECTION",
            Error::Solver(_) => "E_SOLVER",
            Error::Coordinates(_) => "E_COORDINATES",
            Error::Development(_) => "E_DEVELOPMENT",
            Error::FileNotFound(_) => "E_FILE_NOT_FOUND",
            Error::Schema(_) => "E_SCHEMA",
            Error::ArrowMismatch(_) => "E_ARROW_MISMATCH",
            Error::Io(_) => "E_IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
