use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("division by a p-adic zero")]
    DivisionByZero,
    #[error("{0} is not in Z_p")]
    NotInZp(String),
    #[error("series variables differ: {0} vs {1}")]
    ChartMismatch(String, String),
    #[error("order underflow: order {order} below lower index {lower}")]
    OrderUnderflow { order: i64, lower: i64 },
    #[error("constant term is not invertible")]
    NonUnitConstant,
    #[error("series known to order {have}, order {need} requested")]
    InsufficientOrder { have: i64, need: i64 },
    #[error("substitution {0} is not defined on a series in {1}")]
    UndeclaredConvention(String, String),
    #[error("Pochhammer symbol ({0})_{1} vanishes")]
    PochhammerZero(String, u64),
    #[error("resonant exponent difference {diff} at {point}")]
    Resonance { point: String, diff: String },
    #[error("orbit does not close within {0} steps")]
    PeriodNotFound(usize),
    #[error("pole: {0}")]
    Pole(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("pi exponent {0} does not cancel")]
    PiExponent(u32),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no rational reconstruction within degree {0}")]
    Reconstruction(usize),
    #[error("iteration did not converge within {0} steps")]
    NonConvergence(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
