use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid ring {ring}: {reason}")]
    InvalidRing { ring: usize, reason: String },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("operation requires a non-empty shape")]
    EmptyShape,

    #[error("operation requires a shape with positive area")]
    ZeroArea,

    #[error("parameter {name} out of range: {value}")]
    Parameter { name: &'static str, value: f64 },

    #[error("{method} morph failed at alpha={alpha}: {source}")]
    Morph {
        method: &'static str,
        alpha: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(String),

    #[error("csv error: {0}")]
    Csv(String),
}

impl Error {
    /// True for errors caused by malformed input text or parameters rather than
    /// by the geometry itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::InvalidRing { .. }
                | Error::InvalidGeometry(_)
                | Error::Parameter { .. }
                | Error::Io(_)
                | Error::Csv(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}
