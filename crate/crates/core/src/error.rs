use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order must be at least 2, got {0}")]
    InvalidOrder(i64),
    #[error("exponent {value} at position {index} is not in 1..={max}")]
    InvalidExponent { index: usize, value: i64, max: u32 },
    #[error("exponents sum to {sum}, which is not divisible by {d}")]
    NonzeroSum { sum: u64, d: u32 },
    #[error("exponents generate a subgroup of index {gcd} over a rational base; the cover is disconnected")]
    NotGenerating { gcd: u32 },
    #[error("{r} branch point(s) over a base of genus {genus_base} is not allowed")]
    TooFewBranchPoints { genus_base: u32, r: usize },
    #[error("multiplicity of character {index} is {numerator}/{d}, not an integer")]
    NonIntegralMultiplicity { index: u32, numerator: i64, d: u32 },
    #[error("base genus is zero; there is no handle to pinch")]
    BaseGenusZero,
    #[error("family is zero-dimensional")]
    ZeroDimensionalFamily,
    #[error("search space estimate {estimate} exceeds cap {cap}; narrow the bounds")]
    BoundsTooLarge { estimate: u128, cap: u64 },
    #[error("{0}")]
    Parse(String),
    #[error("datum {0} is not in canonical form")]
    NotCanonical(String),
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("atlas schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("corrupt atlas at line {line}: {reason}")]
    CorruptAtlas { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::InvalidExponent { .. } => "InvalidExponent",
            Error::NonzeroSum { .. } => "NonzeroSum",
            Error::NotGenerating { .. } => "NotGenerating",
            Error::TooFewBranchPoints { .. } => "TooFewBranchPoints",
            Error::NonIntegralMultiplicity { .. } => "NonIntegralMultiplicity",
            Error::BaseGenusZero => "BaseGenusZero",
            Error::ZeroDimensionalFamily => "ZeroDimensionalFamily",
            Error::BoundsTooLarge { .. } => "BoundsTooLarge",
            Error::Parse(_) => "ParseError",
            Error::NotCanonical(_) => "NotCanonical",
            Error::InvalidBounds(_) => "InvalidBounds",
            Error::SchemaMismatch(_) => "SchemaMismatch",
            Error::CorruptAtlas { .. } => "CorruptAtlas",
            Error::Io(_) => "Io",
            Error::Internal(_) => "Internal",
        }
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonIntegralMultiplicity { .. } | Error::Internal(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
