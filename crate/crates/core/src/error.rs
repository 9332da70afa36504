use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in Q(lambda)")]
    ZeroDivision,
    #[error("element is not an algebraic integer: {0}")]
    NotIntegral(String),
    #[error("point {0} lies outside [0,1)")]
    OutOfDomain(String),
    #[error("residue modulus mismatch ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("iteration cap of {0} steps exceeded")]
    CapExceeded(usize),
    #[error("interval [{lo}, {hi}) straddles a discontinuity at step {step}")]
    Straddle { lo: String, hi: String, step: usize },
    #[error("inadmissible symbol sequence at position {0}")]
    Inadmissible(usize),
    #[error("invalid symbol ({0},{1})")]
    InvalidSymbol(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("memory budget exceeded: need ~{need_mb} MB, cap {cap_mb} MB")]
    Budget { need_mb: u64, cap_mb: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
