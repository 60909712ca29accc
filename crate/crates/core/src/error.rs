use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation order must be at least 1")]
    InvalidOrder,
    #[error("test vector index k must be at least 1, got {0}")]
    InvalidTestIndex(i64),
    #[error("k = {k} must exceed every exponent (max {max})")]
    IndexOutOfRange { k: u32, max: u32 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("the two monomials must be distinct")]
    RepeatedMonomial,
    #[error("symbol is not a harmonic polynomial")]
    NotHarmonic,
    #[error("exponent differences must agree (n1 - m1 = n2 - m2)")]
    OffsetMismatch,
    #[error("exponents must differ")]
    EqualExponents,
    #[error("exponents must be positive")]
    NonPositiveExponent,
    #[error("parameter must be nonnegative")]
    NegativeParameter,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("malformed rational at position {pos}: {message}")]
    MalformedRational { pos: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
