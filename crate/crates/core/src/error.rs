use thiserror::Error;

/// Errors raised by the geometry, special-function, mode and scattering layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the representable or supported range.
    #[error("range error: {0}")]
    Range(String),

    /// An input violates a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical method could not reach the requested accuracy.
    #[error("accuracy error: {what} (estimate {estimate:e}, error bound {error:e})")]
    Accuracy {
        what: String,
        estimate: f64,
        error: f64,
    },

    /// The transverse wavenumber vanishes; the mode must be built with
    /// [`crate::modes::plane_wave_special`].
    #[error("degenerate mode: {0}")]
    Degenerate(String),

    /// Least-squares or local fit whose design is too poorly conditioned.
    #[error("ill-conditioned fit: {0}")]
    Conditioning(String),

    /// The incoming amplitude vanishes, so the reflection ratio is undefined.
    #[error("reflection coefficient undefined: {0}")]
    UndefinedReflection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
