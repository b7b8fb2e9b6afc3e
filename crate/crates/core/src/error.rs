//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size exceeds the supported 2^63 cap ({0}^{1})")]
    DegreeOverflow(u64, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field levels")]
    MixedFields,
    #[error("length {n} does not divide q^m - 1 = {group}")]
    LengthMismatch { n: u64, group: u64 },
    #[error("gcd({q}, {n}) != 1")]
    NotCoprime { q: u64, n: u64 },
    #[error("residue {t} out of range for modulus {n}")]
    ResidueOutOfRange { t: u64, n: u64 },
    #[error("enumeration budget exceeded (needed {needed}, cap {cap})")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("width {m} too small for value {t} in base {q}")]
    WidthTooSmall { t: u64, q: u64, m: u32 },
    #[error("operation requires a different length family: {0}")]
    WrongFamily(&'static str),
    #[error("rank {i} out of the admissible range for m = {m}")]
    RankOutOfRange { i: u32, m: u32 },
    #[error("value {0} lies outside the band covered by the classification")]
    OutOfBand(u64),
    #[error("parity of s is wrong for this classification")]
    WrongParity,
    #[error("not covered by a closed form: {0}")]
    Unsupported(String),
    #[error("designed distance {delta} invalid for n = {n} with b = {b}")]
    DeltaOutOfRange { delta: u64, n: u64, b: u64 },
    #[error("root range b..b+delta-2 wraps around modulo n")]
    RangeWraparound,
    #[error("formula produced a non-integer: {0}")]
    IntegralityViolation(String),
    #[error("scalar redundancy {0} exceeds the supported 64 rows")]
    RedundancyTooLarge(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
