use thiserror::Error;

/// Errors produced by constructions and checks in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),

    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("d = {d} exceeds the brute-force cap {cap}")]
    CapExceeded { d: u32, cap: u32 },

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(d: u32) -> Result<()> {
    if d < 2 {
        Err(Error::DimensionTooSmall(d))
    } else {
        Ok(())
    }
}

pub(crate) fn check_same(left: u32, right: u32) -> Result<()> {
    if left != right {
        Err(Error::DimensionMismatch { left, right })
    } else {
        Ok(())
    }
}

pub(crate) fn check_range(what: &'static str, value: i64, lo: i64, hi: i64) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::OutOfRange {
            what,
            value,
            range: format!("[{lo}, {hi}]"),
        })
    } else {
        Ok(())
    }
}
