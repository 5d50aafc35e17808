use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Mathematical outcomes ("the hypothesis fails", "no lift exists") are never
/// errors; they are reported through return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ring mismatch between operands")]
    RingMismatch,

    #[error("S-pair budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },

    #[error("matrix does not define a morphism: {0}")]
    NotWellDefined(String),

    #[error("morphism is not an epimorphism")]
    NotEpi,

    #[error("module is not torsion-free: generator {witness} of the torsion submodule is nonzero")]
    NotTorsionFree { witness: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported for this ring: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
