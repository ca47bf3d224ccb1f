use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot specialize at q=0")]
    ZeroSpecialization,
    #[error("pole at q={at} (factor {factor})")]
    Pole { at: String, factor: String },
    #[error("q-factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("variable count mismatch: {0} vs {1}")]
    VarCount(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("theta factor has identically zero denominator")]
    ThetaZeroDenominator,
    #[error("not polynomial: denominator factor {0} does not divide the numerator")]
    NotPolynomial(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("margin mismatch: {0}")]
    Margin(String),
    #[error("no 3-arrays with the given marginals")]
    EmptyThreeArrays,
    #[error("no unique maximum among candidate compositions: {0}")]
    NonUniqueMaximum(String),
    #[error("matrix is not elementary: {0}")]
    NotElementary(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("t={0} is a root of unity (cyclotomic factor of order {1})")]
    RootOfUnity(String, u32),
}
