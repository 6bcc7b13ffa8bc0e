use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid simple type {0:?}")]
    ParseType(String),

    #[error("rank {rank} out of bounds for family {family}")]
    InvalidType { family: char, rank: usize },

    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: u64, cap: u64 },

    #[error("vector {0:?} is not a root of the ambient root system")]
    RootNotInSystem(Vec<i64>),

    #[error("permutation {0:?} is not an automorphism of the Dynkin diagram")]
    NotDiagramAutomorphism(Vec<usize>),

    #[error("unsupported fold: {0}")]
    UnsupportedFold(String),

    #[error("circle direction is zero")]
    ZeroDirection,

    #[error("regular subalgebra has rank {found} but the group has rank {required}")]
    RankDeficient { required: usize, found: usize },

    #[error("regular subalgebra has rank {found}, exceeding the group rank {required}")]
    RankExceeded { required: usize, found: usize },

    #[error("unsupported pair: {0}")]
    UnsupportedPair(String),

    #[error("degree multiset {sub} is not contained in {sup}")]
    MultisetNotContained { sub: String, sup: String },

    #[error("Weil image product {0} is not an integer")]
    NonIntegerProduct(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("|H| = {h_order} is not divisible by |W(K)| = {k_weyl_order}")]
    NonIntegralComponents { h_order: u64, k_weyl_order: u64 },

    #[error("subspace mismatch: {0}")]
    SubspaceMismatch(String),

    #[error("subspace must be nonzero")]
    EmptySubspace,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid pair specification: {0}")]
    InvalidSpec(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
