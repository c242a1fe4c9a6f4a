use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("cannot map {value} into characteristic {characteristic}")]
    NotRepresentable { value: String, characteristic: u64 },

    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),

    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("{0}")]
    RelationViolated(String),

    #[error("character is not multiplicative on the centralizer: {0}")]
    NotMultiplicative(String),

    #[error("invalid braiding: {0}")]
    InvalidBraiding(String),

    #[error("operator does not preserve the braiding: {0}")]
    NotBraided(String),

    #[error("degree {requested} is beyond the computed layers (top computed degree {available})")]
    DegreeOutOfRange { requested: usize, available: usize },

    #[error("dense symmetrizer size {size} exceeds the cap {cap}")]
    OracleTooLarge { size: u128, cap: u128 },

    #[error("top layer is {0}-dimensional; duality needs a one-dimensional integral")]
    TopLayerNotOneDimensional(usize),

    #[error("algebra is not complete: no zero layer reached up to degree {0}")]
    Incomplete(usize),

    #[error("duality completion mismatch at degree {degree}")]
    DualityMismatch { degree: usize },

    #[error("root extraction failed: {0}")]
    RootExtraction(String),

    #[error("operator does not permute the root system: {0}")]
    NotNormalizing(String),

    #[error("modified shift check failed: {0}")]
    ShiftCheck(String),

    #[error("{path}:{line}: {message}")]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("cache: {0}")]
    Cache(String),

    #[error("malformed factorization `{0}`")]
    MalformedFactorization(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
