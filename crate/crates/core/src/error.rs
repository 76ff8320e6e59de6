use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("e = {e} does not divide p - 1 = {}", .p - 1)]
    BadOrder { p: u64, e: u64 },
    #[error("p = 2 forces e = 1 (got e = {0})")]
    TwoBlocked(u64),
    #[error("n must be at least 1")]
    ZeroExponent,
    #[error("p^n = {p}^{n} is too large for this engine")]
    TooLarge { p: u64, n: u32 },
    #[error("level {level} out of range 0..={max}")]
    BadLevel { level: u32, max: u32 },
    #[error("{0} is not a unit modulo the relevant prime power")]
    NotUnit(u64),
    #[error("matrix is not invertible over {0}")]
    NotInvertible(String),
    #[error("{a} is not coprime to {m}")]
    BadGaloisIndex { a: u64, m: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elements belong to different parameter sets")]
    ParamsMismatch,
    #[error("elements belong to different scalar rings ({0} vs {1})")]
    ScalarMismatch(String, String),
    #[error("character on star product depends on the connecting element at {0}")]
    CharacterIllDefined(String),
    #[error("subgroup of order {order} does not match any induction shape: {detail}")]
    UnrecognizedShape { order: usize, detail: String },
    #[error("field characteristic equals p = {0}")]
    CharIsP(u64),
    #[error("central idempotent scan needs {count} primitive idempotents, bound is {bound}")]
    ScanTooLarge { count: usize, bound: usize },
    #[error("element is supported inside T_<={0}")]
    SupportInIdeal(u32),
    #[error("violation: {0}")]
    Violation(String),
}
