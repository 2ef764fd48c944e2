//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid model or operation parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The coupling does not dominate the vertex weights, so the ground
    /// state is not guaranteed to encode the optimum.
    #[error("encoding invalid: {0}")]
    Encoding(String),

    /// Problem size exceeds what the requested representation can handle.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Eigensolver failure at a specific anneal parameter.
    #[error("numerical error at s={s}{}: {detail}", match instance_id { Some(id) => format!(" (instance {id})"), None => String::new() })]
    Numerical {
        s: f64,
        instance_id: Option<String>,
        detail: String,
    },

    /// Statistics requested on an empty (or fully rejected) record set.
    #[error("statistics error: {0}")]
    Statistics(String),

    /// Malformed instance or results file content.
    #[error("data error: {0}")]
    Data(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attach an instance id to a numerical error bubbling out of a batch.
    pub fn with_instance(self, id: &str) -> Self {
        match self {
            Error::Numerical { s, detail, .. } => Error::Numerical {
                s,
                instance_id: Some(id.to_string()),
                detail,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
