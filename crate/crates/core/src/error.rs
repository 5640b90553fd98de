use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qudit dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("{what} of dimension {dim} exceeds the size cap of {cap}")]
    SizeCap { what: &'static str, dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("wire `{0}` is not part of the register")]
    UnknownWire(String),

    #[error("wire `{0}` appears more than once")]
    DuplicateWire(String),

    #[error("wire index {index} out of range for a register of {len} wires")]
    WireIndex { index: usize, len: usize },

    #[error("partial trace needs at least one wire to keep")]
    EmptyKeep,

    #[error("states live on different registers")]
    RegisterMismatch,

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator structure violated: {0}")]
    Structure(String),

    #[error("matrix is not a valid density matrix: {0}")]
    InvalidDensity(String),
}
