use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("parse error on line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("polynomial is not squarefree (gcd with derivative has degree {gcd_degree})")]
    NonSquarefree { gcd_degree: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} exceeds the configured cap {cap}")]
    PrimeAboveCap { p: u64, cap: u64 },

    #[error("coefficient a_{index} is not positive")]
    NegativeCoefficient { index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bracket [{lo}, {hi}] does not enclose a sign change")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("upper curve below lower curve at c = {at}: {upper} < {lower}")]
    OrderingViolation { at: f64, upper: f64, lower: f64 },

    #[error("degenerate tuple: minimum gap {min_gap:e} below threshold {threshold:e}")]
    DegenerateInput { min_gap: f64, threshold: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
