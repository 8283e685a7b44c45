use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a group needs at least one cyclic factor")]
    EmptyModuli,
    #[error("modulus at position {0} is zero")]
    ZeroModulus(usize),
    #[error("coordinate vector has length {got}, group dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {index} = {value} is outside [0, {modulus})")]
    CoordinateOutOfRange {
        index: usize,
        value: i64,
        modulus: u32,
    },
    #[error("operands live in different groups: {left:?} vs {right:?}")]
    GroupMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("invalid functional: {0}")]
    InvalidFunctional(String),
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("divisor {divisor} does not divide modulus {modulus} at coordinate {index}")]
    NotDivisor {
        index: usize,
        divisor: u32,
        modulus: u32,
    },
    #[error("|A|·|T| = {product} but the group has order {order}")]
    CardinalityMismatch { product: usize, order: usize },
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("group order {order} exceeds the limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error("verification step `{step}` failed: {detail}")]
    StepFailed { step: String, detail: String },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
