//! Shared numerical infrastructure: quadrature, special functions, complex
//! Taylor series, slope/extrapolation fits, and FFT conveniences.
//!
//! These are deliberately small, well-tested building blocks; all
//! problem-specific numerics live in the domain modules.

pub mod banded;
pub mod fft;
pub mod fit;
pub mod quad;
pub mod series;
pub mod special;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
