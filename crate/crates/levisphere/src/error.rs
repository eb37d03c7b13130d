use thiserror::Error;

/// Errors surfaced by constructions and checks.
///
/// Budget overruns are kept separate from ordinary invalid input so the
/// command-line driver can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("relation set is not a partial order: {0}")]
    NotAPoset(String),

    #[error("map is not order-preserving: {0}")]
    NotOrderPreserving(String),

    #[error("permutation is not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("simplices have no common apartment: {0}")]
    NoCommonApartment(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}
