use thiserror::Error;

/// Errors raised by constructors and solvers in this crate.
///
/// Verification routines never return these for a failed identity; failed
/// identities are recorded in a [`crate::VerifyReport`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the supported range (max {max})")]
    SizeGuard {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("series has a zero constant term and cannot be inverted")]
    NonUnit,
    #[error("continued fraction did not stabilise within {steps} steps")]
    NoConvergence { steps: usize },
    #[error("leading principal minor of order {0} vanishes")]
    SingularMinor(usize),
    #[error("entry overflow in small-integer matrix product")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, value: u64, max: u64) -> Result<()> {
    if value > max {
        Err(Error::SizeGuard { what, value, max })
    } else {
        Ok(())
    }
}
