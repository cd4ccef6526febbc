use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime {0} is outside the supported range 2..=7")]
    PrimeOutOfRange(u32),
    #[error("level must be at least 1, got {0}")]
    InvalidLevel(u32),
    #[error("modulus {p}^{n} exceeds 2^16")]
    ModulusTooLarge { p: u32, n: u32 },
    #[error("the p-adic valuation of 0 is infinite")]
    ZeroValuation,
    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: u32, modulus: u32 },
    #[error("operands live in different rings ({left} vs {right})")]
    ContextMismatch { left: String, right: String },
    #[error("table of length {len} does not match modulus {modulus}")]
    BadTableLength { len: usize, modulus: u32 },
    #[error("table value {value} is not a residue modulo {modulus}")]
    ValueOutOfRange { value: u32, modulus: u32 },
    #[error("function does not preserve congruences modulo {0}")]
    NotCongruencePreserving(u32),
    #[error("function is not induced by a polynomial")]
    NotPolynomial,
    #[error("level {n} exceeds p = {p}; layerwise comparison does not characterize equality there")]
    LevelAbovePrime { p: u32, n: u32 },
    #[error("operation requires level at least {min}, got {n}")]
    LevelTooLow { min: u32, n: u32 },
    #[error("not a permutation")]
    NotPermutation,
    #[error("not a unit: first component must be bijective and second component nonvanishing")]
    NotAUnit,
    #[error("enumeration needs {needed} elements but the budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("invalid polynomial text {0:?}")]
    ParsePoly(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("no subgroup of order {0} found; this contradicts Sylow's theorem")]
    SylowNotFound(String),
}
