use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("vector of length {found} where length {expected} was expected")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generators span a rank {rank} lattice inside rank {ambient} coordinates")]
    NotFullDimensional { rank: usize, ambient: usize },
    #[error("vector {0:?} does not lie in the group of the monoid")]
    NotInLattice(Vec<i64>),
    #[error("monoid is not sharp")]
    NotSharp,
    #[error("monoid is not saturated")]
    NotSaturated,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("expected a monoid of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("prime ideal has height {0}, expected a height one prime")]
    WrongHeight(usize),
    #[error("ideal is not divisorial")]
    NotDivisorial,
    #[error("ideals have different parent monoids")]
    ParentMismatch,
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("invalid parameters for `{kind}`: {reason}")]
    InvalidParameters { kind: String, reason: String },
    #[error("unknown monoid kind `{0}`")]
    UnknownKind(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
}

impl Error {
    /// Stable machine-readable identifier of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "empty_generators",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotFullDimensional { .. } => "not_full_dimensional",
            Error::NotInLattice(_) => "not_in_lattice",
            Error::NotSharp => "not_sharp",
            Error::NotSaturated => "not_saturated",
            Error::NotPointed => "not_pointed",
            Error::WrongRank { .. } => "wrong_rank",
            Error::WrongHeight(_) => "wrong_height",
            Error::NotDivisorial => "not_divisorial",
            Error::ParentMismatch => "parent_mismatch",
            Error::EmptyIdeal => "empty_ideal",
            Error::InvalidParameters { .. } => "invalid_parameters",
            Error::UnknownKind(_) => "unknown_kind",
            Error::Overflow => "overflow",
            Error::OracleMismatch(_) => "oracle_mismatch",
        }
    }
}
