use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
///
/// Variants split into two families: violations of an operation's
/// preconditions (bad user input) and [`Error::Internal`], which means a
/// closed-form prediction disagreed with a direct computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("polynomial {0} is divisible by x")]
    DivisibleByX(String),
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("size limit exceeded: {what} needs {size}, limit is {limit}")]
    SizeExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("the coefficient of x^(n-1) must be zero")]
    TraceNonzero,
    #[error("degree {n} is divisible by the characteristic {p}")]
    DegreeDivisibleByP { n: usize, p: u64 },
    #[error("{0} is a square in the base field")]
    NotANonsquare(String),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{0}")]
    Parse(ParseError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True when the error signals a bug or a falsified identity rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

/// A syntax error at a byte offset of the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(input: &str, pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.input[..self.pos.min(self.input.len())].chars().count();
        writeln!(f, "parse error: {}", self.message)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(col))
    }
}

impl std::error::Error for ParseError {}
