use thiserror::Error;

/// Which side of a gamma ratio an argument belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioSide {
    Numerator,
    Denominator,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma pole in {side:?} argument #{index} (value {value})")]
    Pole {
        side: RatioSide,
        index: usize,
        value: f64,
    },

    #[error("series did not converge after {terms} terms ({what})")]
    NoConvergence { what: &'static str, terms: usize },

    #[error("integrand returned a non-finite value at x = {0}")]
    Evaluation(f64),

    #[error("incompatible function metadata: {0}")]
    Metadata(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite, got {x}"))
    }
}
