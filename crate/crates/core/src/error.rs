use std::path::PathBuf;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite input value {0}")]
    NonFinite(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("requested {requested} elements exceeds the size cap of {cap}")]
    SizeCap { requested: u128, cap: u128 },

    #[error("spectrum tolerance {tol:e} unreachable within k <= {cap} (tail {tail:e})")]
    ToleranceUnreachable { tol: f64, cap: usize, tail: f64 },

    #[error("map `{0}` cannot be quantized: {1}")]
    Unquantizable(String, &'static str),

    #[error("incompatible embeddings: {0}")]
    Incompatible(String),

    #[error("hamming distance requires binary embeddings")]
    NotBinary,

    #[error("distance map is not monotone near d = {at}")]
    NonMonotone { at: f64 },

    #[error("unknown map description `{0}`")]
    UnknownMap(String),

    #[error("embedding file format error: {0}")]
    Format(String),

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("config error: {0}")]
    ConfigValue(String),

    #[error("degenerate retrieval dataset: {0}")]
    DegenerateDataset(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn io_at(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
