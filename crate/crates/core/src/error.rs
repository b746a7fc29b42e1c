use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra and graph routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    CompositeCharacteristic(u64),
    ReducibleModulus,
    InvalidModulus(&'static str),
    FieldTooLarge,
    FieldMismatch,
    DivisionByZero,
    EvenCharacteristic,
    ZeroPolynomial,
    ElementOutOfRange(u64),
    NotInSubfield,
    InvalidVertex,
    NotGeneric,
    InvalidParameters(String),
    DegreeBoundExceeded,
    BudgetExceeded { used: u64, budget: u64 },
    TooLarge { size: u64, limit: u64 },
    DegenerateGraph,
    NotFound(&'static str),
    InvariantViolation(String),
    BadCharacteristic(u64),
    PoleInput,
    NotInSpecialSet,
    PreconditionViolated(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CompositeCharacteristic(p) => write!(f, "characteristic {p} is not prime"),
            Error::ReducibleModulus => f.write_str("modulus is reducible"),
            Error::InvalidModulus(why) => write!(f, "invalid modulus: {why}"),
            Error::FieldTooLarge => f.write_str("field order does not fit in 63 bits"),
            Error::FieldMismatch => f.write_str("operands belong to different fields"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::EvenCharacteristic => f.write_str("operation requires odd characteristic"),
            Error::ZeroPolynomial => f.write_str("zero polynomial"),
            Error::ElementOutOfRange(v) => write!(f, "element encoding {v} out of range"),
            Error::NotInSubfield => f.write_str("element is not in the expected subfield"),
            Error::InvalidVertex => f.write_str("invalid vertex"),
            Error::NotGeneric => f.write_str("vertex set is not generic"),
            Error::InvalidParameters(why) => write!(f, "invalid parameters: {why}"),
            Error::DegreeBoundExceeded => f.write_str("multivariate degree bound exceeded"),
            Error::BudgetExceeded { used, budget } => {
                write!(f, "work budget exceeded ({used} > {budget})")
            }
            Error::TooLarge { size, limit } => write!(f, "instance size {size} exceeds limit {limit}"),
            Error::DegenerateGraph => f.write_str("degenerate graph (q = 2)"),
            Error::NotFound(what) => write!(f, "not found: {what}"),
            Error::InvariantViolation(what) => write!(f, "invariant violated: {what}"),
            Error::BadCharacteristic(p) => write!(f, "characteristic {p} is not supported here"),
            Error::PoleInput => f.write_str("input is a pole of the map"),
            Error::NotInSpecialSet => f.write_str("element is not a non-rational member of S_4(1, -1)"),
            Error::PreconditionViolated(why) => write!(f, "precondition violated: {why}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
