use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("limit not regular: {0}")]
    NotRegular(String),
    #[error("direction-dependent limit: {0}")]
    DirectionDependent(String),
    #[error("zero table: {0}")]
    ZeroTable(String),
    #[error("insufficient coverage: table reaches {have}, need {need}")]
    Coverage { have: f64, need: f64 },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
