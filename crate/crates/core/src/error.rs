use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The variants split into two families: input errors (malformed documents,
/// bad dimensions, invalid gate words) and numerical validity errors (a
/// matrix that is supposed to be a state is not one). [`Error::is_numerical`]
/// tells them apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("operator is not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace must be one, got {0}")]
    Trace(f64),

    #[error("Laplacian trace {0} is not positive")]
    Normalization(f64),

    #[error("signed convention requires real weights; edge ({u}, {v}) has weight {re}{im:+}i")]
    Convention { u: usize, v: usize, re: f64, im: f64 },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("invalid gate: {0}")]
    Gate(String),

    #[error("invalid decomposition: {0}")]
    Decomposition(String),

    #[error("invalid tolerance: {0}")]
    Tolerance(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    /// True for errors that describe a numerically invalid state rather than
    /// malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_) | Error::NotPsd(_) | Error::Trace(_) | Error::Normalization(_)
        )
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
