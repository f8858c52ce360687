use thiserror::Error;

use crate::states::ResourceKind;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The EPR variance never crosses 1 on (0, 1) for this resource.
    #[error("no crossover: EPR variance of `{0}` never crosses 1 on (0, 1)")]
    NoCrossover(ResourceKind),

    /// Successive quadrature refinements failed to settle.
    #[error(
        "quadrature did not converge: estimates {coarse:.17e} and {fine:.17e} differ by {delta:.3e}"
    )]
    Convergence { coarse: f64, fine: f64, delta: f64 },

    /// The integration box clips a non-negligible part of the integrand.
    #[error("integration box too small: boundary integrand magnitude {magnitude:.3e} exceeds {limit:.1e}")]
    BoxTooSmall { magnitude: f64, limit: f64 },

    /// A truncated Fock-space sum would drop a non-negligible tail.
    #[error("Fock cutoff {cutoff} insufficient: tail bound {tail:.3e} exceeds {limit:.1e}")]
    Cutoff {
        cutoff: usize,
        tail: f64,
        limit: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
