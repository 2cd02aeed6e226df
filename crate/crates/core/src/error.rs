use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The accuracy contract could not be met; carries the achieved bound.
    #[error("accuracy target {target:.3e} not reached (achieved {achieved:.3e}): {context}")]
    Accuracy {
        context: String,
        target: f64,
        achieved: f64,
    },
    #[error("invalid geometry: {0}")]
    Geometry(String),
    /// The asymptotic model produced a meaningless value (negative state sum, etc.).
    #[error("model invalid: {0}")]
    Model(String),
    #[error("near-singular denominator in {what}: {value:.3e}")]
    Singularity { what: &'static str, value: f64 },
    #[error("no bracket: {0}")]
    NoBracket(String),
    #[error("particle-number equation is not monotone: {0}")]
    NonMonotone(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("iteration did not converge: {0}")]
    Convergence(String),
    #[error("spectrum truncation too coarse: {0}")]
    Truncation(String),
}

impl Error {
    /// True for failures of the numerical machinery itself rather than of
    /// the inputs or of the physical model.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Accuracy { .. } | Error::Convergence(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
