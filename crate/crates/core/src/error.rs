use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {0} is not inside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("symbol is not a self-map of the disk: |phi({witness})| = {modulus}")]
    SelfMapViolation { witness: Complex64, modulus: f64 },

    #[error("symbol value too close to the unit circle at z = {witness} (1-|phi|^2 = {gap:e})")]
    NearBoundarySymbol { witness: Complex64, gap: f64 },

    #[error("sampling scheme needs {requested} points, cap is {cap}")]
    ResourceBound { requested: usize, cap: usize },

    #[error("non-finite value {value} at z = {witness}")]
    NonFinite { witness: Complex64, value: f64 },

    #[error("hyperbolic distance is not representable for pseudo-hyperbolic distance {0}")]
    DistanceOverflow(f64),

    #[error("dictionary is empty")]
    EmptyDictionary,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("I/O failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::ParameterDomain(_) | Error::ResourceBound { .. } => 2,
            Error::Parse(_) | Error::SelfMapViolation { .. } | Error::NearBoundarySymbol { .. } => 3,
            Error::Io(_) => 5,
            _ => 1,
        }
    }
}
