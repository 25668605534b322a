use thiserror::Error;

/// Largest norm bound accepted by any enumeration or sweep.
pub const NORM_CAP: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: bad field or extension spec, non-prime argument,
    /// unknown class label, foreign prime ideal.
    #[error("usage error: {0}")]
    Usage(String),

    /// A bound, norm or divisor count exceeds what the 64-bit carriers allow.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Dickman rho requested beyond the underflow guard; the value is 0.
    #[error("dickman rho underflow guard at beta = {0}")]
    Underflow(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}

pub(crate) fn check_bound(x: u64) -> Result<()> {
    if x > NORM_CAP {
        Err(capacity(format!("norm bound {x} exceeds 2^40")))
    } else {
        Ok(())
    }
}
