use thiserror::Error;

/// Errors raised by the physics library.
///
/// The variants split into two families: configuration/domain problems that
/// are detected before any computation, and numerical failures that occur
/// while a computation is running.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("outside the model domain: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("degenerate field: {0}")]
    DegenerateField(String),

    #[error("field has nodes at z = {locations:?}; polar decomposition is undefined across a node")]
    Node { locations: Vec<f64> },

    #[error("CFL violation at t = {time}: dt = {dt} exceeds bound {bound}")]
    Cfl { time: f64, dt: f64, bound: f64 },
}

impl Error {
    /// True for failures raised while integrating (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Node { .. } | Error::Cfl { .. } | Error::DegenerateField(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
