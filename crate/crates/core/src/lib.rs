//! Exact graded Lie algebras and generalized Spencer cohomology.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod obstruction;
pub mod poly;
pub mod prolongation;
pub mod scalar;
pub mod spencer;

pub use error::{Error, Result};
pub use lie::{GradedLieAlgebra, GradingKind, GradingViolation, JacobiViolation, Terms};
pub use linalg::{Factorization, Matrix, Solution, Subspace};
pub use models::{
    conformal_algebra, conformal_identification, cr_algebra, cr_extend_cochain, cr_integrability_residual,
    cr_integrability_test, cr_integrable_subspace, gl_complex, r21_submodule, space_form_algebra, ComplexStructureData,
};
pub use obstruction::{
    admissibility_residuals, bianchi_check, canonical_omega_minus1, level_decompose, solve_against, solve_next,
    strong_equiv_transport, total_curvature, total_curvature_in, AdmissibleTuple, BianchiReport, ConstantForm,
    CurvatureDecomposition, SolveOutcome,
};
pub use prolongation::{build_graded_algebra, prolong_dims, prolong_step, LinearLieAlgebra, ProlongationResult};
pub use scalar::Scalar;
pub use spencer::{Cochain, CohomologyReport, SpencerComplex, Subsets};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;
pub type RMatrix = Matrix<Rational>;
pub type RSubspace = Subspace<Rational>;
pub type RAlgebra = GradedLieAlgebra<Rational>;
