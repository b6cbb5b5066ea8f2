use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate ink: {0}")]
    DegenerateInk(String),
    #[error("parameter {value} lies outside [-1, 1]")]
    OutOfDomain { value: f64 },
    #[error("incompatible bases: {0}")]
    IncompatibleBasis(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("training data contains a single class")]
    SingleClassData,
    #[error("missing classes: {0:?}")]
    MissingClass(Vec<u8>),
    #[error("feature metadata mismatch: {0}")]
    MetaMismatch(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{reason} (at {path})")]
    Schema { path: String, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn out_of_domain<T: num_traits::ToPrimitive>(value: T) -> Self {
        Error::OutOfDomain {
            value: value.to_f64().unwrap_or(f64::NAN),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
