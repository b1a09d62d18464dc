use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("capacity exceeded: {qubits} qubits requested, at most {max} supported")]
    Capacity { qubits: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported partition: {0}")]
    UnsupportedPartition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
