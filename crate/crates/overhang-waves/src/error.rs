//! Library-wide error type.
//!
//! Numerical failures carry enough context (location, residual, margin) to
//! diagnose a run without re-executing it; validation failures enumerate the
//! violated assumptions by name.

use thiserror::Error;

/// Convenience alias used by all fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by builders and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// One or more standing parameter assumptions are violated.
    /// Each entry names the assumption and the offending value.
    #[error("invalid parameters: {0:?}")]
    InvalidParams(Vec<String>),

    /// A scalar root-find had no admissible root (e.g. the neck scale is too
    /// large for the matching quadratic to have a positive solution).
    #[error("no admissible root for {what}: {detail}")]
    NoRoot { what: &'static str, detail: String },

    /// Newton iteration failed to converge.
    #[error("Newton iteration for {what} failed at ({x}, {y}): residual {residual:.3e} after {iters} iterations")]
    NewtonFailure {
        what: &'static str,
        x: f64,
        y: f64,
        residual: f64,
        iters: usize,
    },

    /// A quadrature or series evaluation did not reach its tolerance.
    #[error("quadrature for {what} did not converge near ({x}, {y}): error estimate {estimate:.3e}")]
    QuadratureFailure {
        what: &'static str,
        x: f64,
        y: f64,
        estimate: f64,
    },

    /// A spectral solve is too ill-conditioned to trust (e.g. the vorticity
    /// is too close to the first Robin eigenvalue of the strip).
    #[error("ill-conditioned solve for {what}: margin {margin:.3e}")]
    IllConditioned { what: &'static str, margin: f64 },

    /// An iterative (perturbation or outer-coupling) scheme failed to
    /// contract within its iteration budget.
    #[error("iteration for {what} did not contract: factor {factor:.3} after {iters} iterations")]
    NoContraction {
        what: &'static str,
        factor: f64,
        iters: usize,
    },

    /// A geometric consistency check failed (curves cross, point off-domain,
    /// a runtime invariant such as a kernel normalization degenerated).
    #[error("invariant violated in {what}: {detail}")]
    InvariantViolation { what: &'static str, detail: String },

    /// The coupled three-block outer iteration failed to contract; carries
    /// the last per-block solution magnitudes for diagnosis.
    #[error(
        "coupled outer iteration did not contract: factor {factor:.3} after {iters} sweeps \
         (block magnitudes: hairpin {hairpin_norm:.3e}, strip {strip_norm:.3e}, disk {disk_norm:.3e})"
    )]
    OuterNoContraction {
        factor: f64,
        iters: usize,
        hairpin_norm: f64,
        strip_norm: f64,
        disk_norm: f64,
    },
}
