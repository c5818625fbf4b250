use alloc::string::String;
use core::fmt;

/// Errors raised by the core engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    ModulusTooLarge(u64),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// A documented precondition of an operation was violated.
    Precondition(String),
    /// The field characteristic is below the nilpotency class.
    PrimeBelowClass {
        p: u32,
        c: usize,
    },
    /// Weight beyond what word coordinates can hold.
    WeightTooLarge(usize),
    /// The work estimate or the running node count passed the configured ceiling.
    BudgetExceeded {
        estimate: u128,
        budget: u128,
    },
    Parse(String),
    InsufficientPrimes {
        class: String,
        needed: usize,
        found: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::ModulusTooLarge(n) => write!(f, "modulus {n} does not fit below 2^31"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::PrimeBelowClass { p, c } => write!(
                f,
                "p = {p} is below the class c = {c}; the structural lemmas assume p >= c"
            ),
            Error::WeightTooLarge(n) => {
                write!(f, "weight {n} exceeds the word-coordinate cap of 16")
            }
            Error::BudgetExceeded { estimate, budget } => write!(
                f,
                "work estimate {estimate} nodes exceeds the budget of {budget}; try a smaller prime"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InsufficientPrimes {
                class,
                needed,
                found,
            } => write!(
                f,
                "residue class {class} has {found} primes, needs at least {needed}"
            ),
        }
    }
}

impl core::error::Error for Error {}
