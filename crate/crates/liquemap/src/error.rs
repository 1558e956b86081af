//! Crate-wide error type aggregating the per-module errors.

use thiserror::Error;

/// Top-level error, convertible from every module error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Grid(#[from] crate::grid::GridError),
    #[error(transparent)]
    Ingest(#[from] crate::ingest::IngestError),
    #[error(transparent)]
    Geotech(#[from] crate::geotech::GeotechError),
    #[error(transparent)]
    Surrogate(#[from] crate::surrogate::SurrogateError),
    #[error(transparent)]
    Kriging(#[from] crate::kriging::KrigingError),
    #[error(transparent)]
    Stats(#[from] crate::stats::StatsError),
    #[error(transparent)]
    Impact(#[from] crate::impact::ImpactError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
}

impl Error {
    /// Wrap an I/O error with the path or action it concerns.
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit code: 2 for input/validation problems, 3 for numeric
    /// failures inside otherwise valid computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Geotech(e) if e.is_numeric() => 3,
            Error::Surrogate(e) if e.is_numeric() => 3,
            Error::Kriging(e) if e.is_numeric() => 3,
            Error::Stats(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
