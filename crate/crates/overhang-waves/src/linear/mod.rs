//! Linear solvers for the three model problems (hairpin, strip, disk) and
//! for the coupled system that glues them together.
//!
//! Each block solver is exact up to discretization on its own geometry:
//!
//! * [`hairpin`] — oblique-derivative problem on the hairpin, solved in the
//!   conformal preimage strip by a Dirichlet finite-difference stage plus an
//!   explicit analytic correction stage;
//! * [`strip`] — Robin problem on the near-flat lower strip, solved by a
//!   horizontal FFT with per-mode vertical two-point boundary problems;
//! * [`disk`] — projected Robin problem on the perturbed disk, solved by a
//!   Fourier-mode decomposition on the ball with a boundary-perturbation
//!   iteration; the projection direction yields the gravity-like scalar `g`;
//! * [`coupled`] — the outer iteration combining the three blocks through
//!   cutoff transfers, producing the full solution decomposition.

pub mod disk;
pub mod grid;
pub mod hairpin;
pub mod spectral;
pub mod strip;

pub use disk::{DiskProjectedSolver, DiskSolution};
pub use hairpin::{HairpinRobinSolver, HairpinSolution};
pub use strip::{StripRobinSolver, StripSolution};
