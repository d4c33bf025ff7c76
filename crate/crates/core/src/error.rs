use thiserror::Error;

/// Errors raised by the arithmetic kernel and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime in [2, 251]")]
    InvalidPrime(u32),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element is not integral at {0}")]
    NotIntegral(String),
    #[error("polynomial {0} is not irreducible over F_p(t)")]
    NotIrreducible(String),
    #[error("factorization limit exceeded: {0}")]
    FactorLimit(String),
    #[error("τ-valuation {valuation} is smaller than the requested root order {k}")]
    PrecisionGrid { valuation: usize, k: usize },
    #[error("the zero map has no inseparability data")]
    ZeroMap,
    #[error("precision underflow: {0}")]
    PrecisionUnderflow(String),
    #[error("division by an element that is zero to precision")]
    DivisionByZeroToPrecision,
    #[error("no residue root at {0}")]
    NoResidueRoot(String),
    #[error("residue fields of degree {0} over F are not supported")]
    ResidueDegree(u32),
    #[error("bad reduction at {0}")]
    BadReduction(String),
    #[error("Drinfeld module is not of generic characteristic")]
    NotGeneric,
    #[error("Drinfeld module is not of special characteristic")]
    NotSpecial,
    #[error("module is not full up to the search bounds: {0}")]
    NotFullUpToBounds(String),
    #[error("invalid Drinfeld module: {0}")]
    InvalidModule(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
}

pub type Result<T> = std::result::Result<T, Error>;
