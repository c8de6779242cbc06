//! Numerical construction of overhanging solitary gravity water waves with
//! constant vorticity.
//!
//! The construction glues three exact solutions of the overdetermined
//! free-boundary problem `-ΔΨ = ω`, `Ψ = 0`, `|∇Ψ| = 1` on the free surface:
//!
//! * a **disk** of fluid in rigid rotation,
//! * a **shear-flow strip** of unit depth, and
//! * a **hairpin** neck domain carrying a harmonic stream function with unit
//!   boundary gradient, realized as the image of a vertical strip under the
//!   conformal map `F(w) = w + sin(w)`.
//!
//! The library is organized bottom-up:
//!
//! 1. [`params`] / [`cutoff`] — the scalar parameter set with all standing
//!    inequalities, the matching constants, and the smooth cutoff family used
//!    by every later stage.
//! 2. [`hairpin`], [`disk`], [`strip`] — exact block fields, their correction
//!    problems (closed-form complex-analytic on the disk, Fourier-integral on
//!    the strip), and far-field asymptotics.
//! 3. [`gluing`] — the assembled approximate domain and stream function, plus
//!    the slightly modified solver domains used by the linear theory.
//! 4. [`norms`], [`linear`] — weighted sup-norms and the linearized Robin
//!    solvers (hairpin / disk / strip cores and the coupled three-stage
//!    solver).
//! 5. [`collar`], [`nonlinear`] — boundary-perturbation coordinates, the
//!    error functional and quadratic remainders, the Picard refinement, and
//!    reconstruction of the final wave.
//!
//! Everything is plain `f64` numerics; fields are evaluated lazily through
//! closed forms and spectral representations rather than on a global mesh.

pub mod conjugate;
pub mod cutoff;
pub mod disk;
pub mod error;
pub mod field;
pub mod gluing;
pub mod hairpin;
pub mod linear;
pub mod norms;
pub mod numerics;
pub mod params;
pub mod strip;

pub use error::{Error, Result};
pub use field::{BoundaryCurve, Field2, Point2};
pub use params::PhysicalParams;
