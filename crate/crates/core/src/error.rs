use thiserror::Error;

/// Errors produced by the enumerator engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("reduction polynomial is reducible over GF({p})")]
    NotIrreducible { p: u32 },
    #[error("reduction polynomial must be monic of degree {expected}, got {found}")]
    DegreeMismatch { expected: u32, found: String },
    #[error("field of order {0} is not supported (maximum is 2^20)")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("value {value} is not an element of a field of order {order}")]
    ElementOutOfRange { value: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("code length {n} exceeds the {max} nonzero field elements")]
    LengthExceedsField { n: usize, max: usize },
    #[error("invalid code dimensions n={n}, k={k}")]
    InvalidDimension { n: usize, k: usize },
    #[error("generator has {rows} rows but rank {rank}")]
    RankDeficient { rows: usize, rank: usize },
    #[error("enumerating {codewords} codewords exceeds the budget of {budget}")]
    BudgetExceeded { codewords: String, budget: u64 },
    #[error("partition does not match the code: {0}")]
    PartitionMismatch(String),

    #[error("profile out of range: {0}")]
    ProfileOutOfRange(String),
    #[error("internal arithmetic error: {0}")]
    InternalError(String),
    #[error("field order {q} is not a power of two")]
    NotCharTwo { q: u64 },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("incomplete enumerator table: {0}")]
    IncompleteTable(String),
    #[error("transform produced a non-integer count: {0}")]
    NonIntegerResult(String),
    #[error("expected {expected} conditions, got {found}")]
    ConditionCountMismatch { expected: usize, found: usize },
    #[error("invalid condition: {0}")]
    InvalidCondition(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
