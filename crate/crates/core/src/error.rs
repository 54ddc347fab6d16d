use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated a precondition (ring mismatch, bad modulus, point off the variety, ...).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// A Groebner computation exceeded its configured caps.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The rounded divisor multiplier lies in the defining ideal.
    #[error("degenerate divisor: {0}")]
    DegenerateDivisor(String),

    #[error("instance outside oracle scope: {0}")]
    OracleScope(String),

    #[error("quotient is not Artinian: no pure power of {variable} among leading terms")]
    NotArtinian { variable: String },

    #[error("unit ideal has no dimension (empty scheme)")]
    EmptyScheme,

    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
