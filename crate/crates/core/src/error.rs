use thiserror::Error;

/// Errors surfaced by the workbench.
///
/// Verification failures are *not* errors: `verify`-style operations return a
/// [`Decision`](crate::ibs::Decision) so experiments can count rejects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("elements belong to different group descriptions")]
    GroupMismatch,

    #[error("zero is not invertible")]
    NonInvertible,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("hash collision: h1 = h2, coefficient system is singular")]
    HashCollision,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("encoding error: {0}")]
    Encoding(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn encoding(msg: impl Into<String>) -> Self {
        Error::Encoding(msg.into())
    }
}
