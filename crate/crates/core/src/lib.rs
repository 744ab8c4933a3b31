//! Numerical laboratory for Yang–Mills index and energy bounds on four-manifolds.
//!
//! The crate is organised around four kernels:
//!
//! * [`lieforms`]: Lie-algebra-valued forms on an orthonormal frame, their inner
//!   products and brackets, the sharp bracket inequalities and the sampled
//!   constants `gamma0` and `gamma1`.
//! * [`quadrupole`]: the reduced energy of quadrupole-symmetric connections on
//!   `S^4`, explicit test profiles and a constrained minimiser.
//! * [`spectral`]: sector-decomposed radial eigenproblems on the round `S^4`,
//!   eigenvalue counting, heat traces and conformal gauge fixing.
//! * [`invariants`]: curvature records of model four-manifolds and the index,
//!   energy and Betti-number bound evaluators.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod invariants;
pub mod lieforms;
pub mod quadrature;
pub mod quadrupole;
pub mod spectral;

pub use error::{Error, Result};

pub use invariants::{BoundReport, GeometryRecord, Provenance, Quantity};
pub use lieforms::{GValuedOneForm, GValuedTwoForm, LieAlgebra, SymTwoTensor};
pub use quadrupole::{EnergyBreakdown, Profile, QuadrupoleBundle};
pub use spectral::{GaugeProblem, RadialPotential, SectorProblem, SpectrumResult};

/// Euler's number squared, the constant that appears in every counting bound.
pub const E2: f64 = std::f64::consts::E * std::f64::consts::E;
