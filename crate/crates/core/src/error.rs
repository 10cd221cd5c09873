use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("group too large: order {order} exceeds the hard bound {bound}")]
    GroupTooLarge { order: u128, bound: u64 },

    #[error("enumeration required: group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationRequired { order: u64, bound: u64 },

    #[error("not a subgroup: element {index} fails the ambient membership test")]
    NotSubgroup { index: usize },

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("group is not solvable: derived series stabilizes at order {stable_order}")]
    NotSolvable { stable_order: u64 },

    #[error("{0}")]
    BadArgument(String),

    #[error("unknown catalog name: {0}")]
    UnknownName(String),

    #[error("group of order {0} is out of catalog scope")]
    OutOfCatalog(u64),

    #[error("matrix is not symplectic: form not preserved on pair ({u:?}, {v:?})")]
    NotSymplectic { u: Vec<u64>, v: Vec<u64> },

    #[error("class function belongs to a different table")]
    TableMismatch,

    #[error("not a character: constituent {row} has negative multiplicity")]
    NotACharacter { row: usize },

    #[error("character table construction failed: {0}")]
    TableConstruction(String),

    #[error("structural search failed: {0}")]
    SearchFailure(String),

    #[error("group spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
