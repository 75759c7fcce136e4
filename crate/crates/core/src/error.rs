use crate::algebra::Rational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("bad prime {0}")]
    BadPrime(u64),

    #[error("coefficient of t^{exponent} ({coefficient}) is not {p}-integral")]
    IntegralityViolation {
        p: u64,
        exponent: usize,
        coefficient: Rational,
    },

    #[error("real multiplication vanishing pattern violated at p={p}: c_{index} is not identically zero")]
    RmActionViolation { p: u64, index: usize },

    #[error("formula for {what} at p={p} gave non-integral or negative value {value}")]
    FormulaConsistency {
        what: String,
        p: u64,
        value: Rational,
    },

    #[error("lift verification failed for p={p}, j={j}: lift roots {lift} vs brute force {brute}")]
    LiftVerification {
        p: u64,
        j: u8,
        lift: String,
        brute: String,
    },

    #[error("Dwork congruence failed for p={p}, j={j}: {reason}")]
    DworkViolation { p: u64, j: u8, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
