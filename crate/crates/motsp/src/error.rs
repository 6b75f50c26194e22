use std::path::PathBuf;

use thiserror::Error;

/// Recoverable failures: malformed input files, inconsistent configuration,
/// and I/O problems.
///
/// Violations of internal contracts (mismatched vector lengths between
/// objects that were built together, unset ranks, out-of-range move indices)
/// panic instead; those are programming errors, not runtime conditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line_no}: malformed header entry `{line}`")]
    MalformedHeader { line_no: usize, line: String },

    #[error("missing `{key}` entry")]
    MissingHeader { key: &'static str },

    #[error("line {line_no}: unsupported edge weight type in `{line}` (only EUC_2D is supported)")]
    UnsupportedEdgeWeightType { line_no: usize, line: String },

    #[error("line {line_no}: malformed node line `{line}` (expected `id x y`)")]
    MalformedNode { line_no: usize, line: String },

    #[error("line {line_no}: duplicate node id in `{line}`")]
    DuplicateNodeId { line_no: usize, line: String },

    #[error("line {line_no}: node id out of range in `{line}` (ids must be 1..=DIMENSION)")]
    NodeIdOutOfRange { line_no: usize, line: String },

    #[error("NODE_COORD_SECTION has {found} nodes but DIMENSION is {expected}")]
    CoordCountMismatch { expected: usize, found: usize },

    #[error("DIMENSION is {dimension}, but at least 3 cities are required")]
    DimensionTooSmall { dimension: usize },

    #[error("objective files disagree on city count: {0:?}")]
    ObjectiveDimensionMismatch(Vec<usize>),

    #[error("sequence is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("operation requires exactly 2 objectives, got {0}")]
    NotBiObjective(usize),

    #[error("front must contain at least {required} points, got {got}")]
    FrontTooSmall { required: usize, got: usize },

    #[error("front csv row {row}: {message}")]
    MalformedFrontCsv { row: usize, message: String },

    #[error("reading {path}: {source}")]
    ReadFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
