use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: part {0} is not positive")]
    InvalidPartition(i64),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("incomparable shapes: {0}")]
    IncomparableShapes(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible matrix indices")]
    IncompatibleIndices,
    #[error("invalid subpartition: part {0} is smaller than 2")]
    InvalidSubpartition(u32),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("enumeration bound exceeded: {0}")]
    EnumerationBoundExceeded(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
