use thiserror::Error;

use crate::model::PartitionViolation;

pub type Result<T> = std::result::Result<T, StormError>;

#[derive(Debug, Error)]
pub enum StormError {
    #[error("invalid class set: {0}")]
    ClassSet(String),

    #[error("invalid dataset: {0}")]
    Dataset(String),

    #[error("invalid label partition: {0}")]
    Partition(PartitionViolation),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown instance `{0}`")]
    UnknownInstance(String),

    #[error("instance `{instance}` has no view `{view}`")]
    MissingView { instance: String, view: String },

    #[error("machine `{machine}` needs view `{view}`, which the input does not provide")]
    MachineViewMissing { machine: String, view: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("representation mismatch: {0}")]
    Representation(String),

    #[error("cannot normalize densities of class `{0}`: total density is zero")]
    ZeroDensity(String),

    #[error("reports cover different instance sets: {0}")]
    ReportMismatch(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("training failed for machine `{machine}`: {reason}")]
    Training { machine: String, reason: String },

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("unsupported format version {found} (expected {expected})")]
    FormatVersion { found: u32, expected: u32 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl StormError {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, StormError::Invariant(_))
    }
}
