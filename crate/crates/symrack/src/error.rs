use crate::rack::ValidationReport;
use crate::sqmod::ModuleReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: dimension mismatches, out-of-range indices, bad
    /// coordinate lengths. Distinct from an axiom violation.
    #[error("structural error: {0}")]
    Structure(String),

    #[error("rack validation failed: {0}")]
    RackInvalid(ValidationReport),

    #[error("module validation failed: {0}")]
    ModuleInvalid(ModuleReport),

    #[error("factor set validation failed: {0}")]
    FactorSetInvalid(String),

    #[error("algebra relation {relation} violated at {witness:?}")]
    RelationViolated { relation: String, witness: Vec<usize> },

    #[error("generator {generator} is not contained in the subgroup")]
    NotContained { generator: usize },

    #[error("coefficient module is not homogeneous")]
    NonHomogeneous,

    #[error("resource guard: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
