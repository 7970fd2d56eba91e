use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("ChebV expansion has a nonzero coefficient on V_{index}, outside the divided-difference image")]
    NotInImage { index: usize },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("no certified deformation after {halvings} halvings of epsilon (last epsilon {last_epsilon})")]
    EpsilonExhausted { halvings: u32, last_epsilon: String },

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("crossing parameters out of order: {0}")]
    OrderingViolation(String),

    #[error("crossing coincidence check failed: {0}")]
    Coincidence(String),

    #[error("crossing sign check failed: {0}")]
    SignViolation(String),

    #[error("expected {expected} crossings, found {found}")]
    CrossingCount { expected: usize, found: usize },

    #[error("argument {value} outside the domain {domain}")]
    DomainError { value: String, domain: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}
