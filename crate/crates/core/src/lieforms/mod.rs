//! Lie-algebra-valued forms and the sharp algebraic inequalities for brackets.
//!
//! An algebra `g_E` is fixed by a faithful antisymmetric representation on the
//! fiber of `E`. Forms on an `n`-dimensional base store their components in the
//! orthonormal generator basis, so all inner products are Euclidean sums and
//! brackets use the structure constants. The full matrices are reconstructed
//! only by the oracles that cross-check these fast paths.

mod algebra;
pub mod estimate;
pub mod forms;
pub mod jacobi;
pub mod suite;

pub use algebra::{commutator, fiber_inner, LieAlgebra};
pub use estimate::{estimate_gamma0, estimate_gamma1, gamma1_ratio, stream_rng};
pub use forms::{
    bracket_one_forms, bracket_two_forms, endo_action, endo_matrix, Endo, FormInner, GValuedOneForm, GValuedTwoForm,
    SymTwoTensor,
};
pub use jacobi::{
    alpha, bsharp_residual, f2_coefficient, jacobi_potential, q_poly, sharp_bracket_margin, JacobiPotential,
    GAMMA1_MAX,
};
pub use suite::{run_suite, PropertyCheck, SuiteConfig, SuiteReport};
