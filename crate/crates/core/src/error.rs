use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("2-adic valuation of zero is undefined")]
    ValuationOfZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size cap exceeded: {what} = {value} (max {max})")]
    SizeCap {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("field model mismatch: {0} vs {1}")]
    ModelMismatch(String, String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
