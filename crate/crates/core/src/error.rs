use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("image list is not a bijection of 1..={0}")]
    NotABijection(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBound { order: u128, bound: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("group is not regular")]
    NotRegular,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("non-transitive entry: group {index} of degree {degree}")]
    NonTransitiveEntry { degree: usize, index: usize },
    #[error("catalog entries {first} and {second} of degree {degree} are conjugate")]
    DuplicateEntry { degree: usize, first: usize, second: usize },
    #[error("unsupported group order {0}")]
    UnsupportedOrder(usize),
    #[error("unknown group type {label:?} of order {order}")]
    UnknownType { order: usize, label: String },
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("type order {type_order} differs from the extension degree {degree}")]
    TypeOrderMismatch { type_order: usize, degree: usize },
    #[error("records belong to different extension contexts")]
    MixedContexts,
    #[error("no catalog available for degree {0}")]
    MissingCatalog(usize),
    #[error("time budget of {0:.1}s exhausted")]
    TimeBudget(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by a configured resource limit rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::DegreeCap { .. } | Error::OrderBound { .. } | Error::TimeBudget(_)
        )
    }
}
