use std::path::PathBuf;

use crate::grid::{EnergySource, Resolution};
use crate::intensity::BucketKind;
use crate::stec::SpatialLevel;

pub type Result<T> = std::result::Result<T, Error>;

/// One rejected row of an ingested file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: u64,
    pub message: String,
}

impl std::fmt::Display for RowError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "row {}: {}", self.line, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Malformed { context: String, message: String },

    #[error("{context}: {}{}", errors[0], if errors.len() > 1 { format!(" (+{} more)", errors.len() - 1) } else { String::new() })]
    Rows { context: String, errors: Vec<RowError> },

    #[error("unknown source: {0}")]
    UnknownSource(String),

    #[error("negative factor: {0}")]
    NegativeFactor(EnergySource),

    #[error("missing factor: {0}")]
    MissingFactor(EnergySource),

    #[error("no generation")]
    NoGeneration,

    #[error("negative energy for {0}")]
    NegativeEnergy(EnergySource),

    #[error("resolution: have {have}, need \u{2264} {need}")]
    ResolutionTooCoarse { have: Resolution, need: Resolution },

    #[error("bucket kind {to} is not coarser than {from}")]
    NotCoarser { from: BucketKind, to: BucketKind },

    #[error("zone {zone}: missing coverage for regions [{}]", regions.join(", "))]
    MissingCoverage { zone: String, regions: Vec<String> },

    #[error("unit {unit}: no coverage for year {year}")]
    MissingYear { unit: String, year: i32 },

    #[error("unknown region: {0}")]
    UnknownRegion(String),

    #[error("unknown zone: {0}")]
    UnknownZone(String),

    #[error("zone {0}: empty member list")]
    EmptyZone(String),

    #[error("unsupported granularity: ({spatial}, {temporal}); supported cells: (country, day), (country, season), (treaty_zone, year), (global, year)")]
    UnsupportedGranularity {
        spatial: SpatialLevel,
        temporal: BucketKind,
    },

    #[error("unknown hardware: {0}")]
    UnknownHardware(String),

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("empty series")]
    EmptySeries,

    #[error("non-positive baseline: {0}")]
    NonPositiveBaseline(f64),

    #[error("affine fit needs at least 2 points with distinct ci values")]
    DegenerateFit,

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(context: impl Into<String>, message: impl ToString) -> Self {
        Error::Malformed {
            context: context.into(),
            message: message.to_string(),
        }
    }
}
