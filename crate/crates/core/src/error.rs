use core::fmt;

/// Errors raised by field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `p` is not prime, `m` is zero, or `p^m` exceeds 2^16.
    Unsupported { p: u32, m: u32 },
    /// A caller-supplied modulus is not a monic irreducible polynomial of degree `m`.
    Reducible,
    /// The element index is not below the field size (typically an element of another field).
    NotAnElement { index: u32, q: u32 },
    /// Inverse of zero.
    ZeroInverse,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Unsupported { p, m } => write!(f, "unsupported field GF({p}^{m})"),
            FieldError::Reducible => f.write_str("modulus is not irreducible"),
            FieldError::NotAnElement { index, q } => {
                write!(f, "element index {index} does not belong to a field of size {q}")
            }
            FieldError::ZeroInverse => f.write_str("zero has no multiplicative inverse"),
        }
    }
}

impl core::error::Error for FieldError {}

/// Errors raised by code construction, encoding and decoding entry points.
///
/// Decoder failure is not an error: decoders return `Ok(None)` for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    LengthMismatch {
        expected: usize,
        actual: usize,
    },
    /// Generator rows are linearly dependent.
    RankDeficient {
        rows: usize,
        rank: usize,
    },
    /// `q^dim` is larger than the enumeration budget.
    BudgetExceeded {
        words: u128,
        budget: u128,
    },
    InvalidParameters(&'static str),
    Field(FieldError),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::LengthMismatch { expected, actual } => {
                write!(f, "length mismatch: expected {expected}, got {actual}")
            }
            CodeError::RankDeficient { rows, rank } => {
                write!(f, "generator has {rows} rows but rank {rank}")
            }
            CodeError::BudgetExceeded { words, budget } => {
                write!(f, "enumeration of {words} words exceeds the budget of {budget}")
            }
            CodeError::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            CodeError::Field(e) => write!(f, "field error: {e}"),
        }
    }
}

impl core::error::Error for CodeError {}

impl From<FieldError> for CodeError {
    fn from(e: FieldError) -> Self {
        CodeError::Field(e)
    }
}

/// Errors from the planted-model samplers and the tuple encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlantedError {
    /// `2m` exceeds 64 or `m` is zero.
    Layout {
        m: u32,
    },
    IndexOutOfRange {
        index: usize,
        n: usize,
    },
    TailTooWide {
        tail: u64,
        bits: u32,
    },
    /// The code does not match the layout (`n = q = 2^m` is required).
    Mismatch(&'static str),
}

impl fmt::Display for PlantedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlantedError::Layout { m } => write!(f, "tuple layout needs 1 <= m <= 32, got {m}"),
            PlantedError::IndexOutOfRange { index, n } => {
                write!(f, "index {index} out of range for n = {n}")
            }
            PlantedError::TailTooWide { tail, bits } => {
                write!(f, "tail {tail:#x} does not fit in {bits} bits")
            }
            PlantedError::Mismatch(msg) => write!(f, "layout/code mismatch: {msg}"),
        }
    }
}

impl core::error::Error for PlantedError {}

/// Errors from the noise operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoiseError {
    /// A parameter lies outside `[0, 1]` (or is NaN).
    OutOfRange { name: &'static str },
    /// The adversary planned more changes than `floor(delta * n)`.
    BudgetExceeded { planned: usize, budget: usize },
    /// The adversary named a coordinate twice or one outside the sample.
    InvalidPlan { position: usize },
    /// The operator is not defined on this kind of sample.
    WrongSampleKind(&'static str),
}

impl fmt::Display for NoiseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseError::OutOfRange { name } => write!(f, "{name} must lie in [0, 1]"),
            NoiseError::BudgetExceeded { planned, budget } => {
                write!(f, "adversary planned {planned} changes with a budget of {budget}")
            }
            NoiseError::InvalidPlan { position } => {
                write!(f, "adversary plan names invalid or repeated position {position}")
            }
            NoiseError::WrongSampleKind(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for NoiseError {}
