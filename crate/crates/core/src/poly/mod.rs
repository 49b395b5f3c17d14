//! Polynomial multivector and form calculus on ℝ^m.
//!
//! Smooth functions are replaced by polynomials with exact rational
//! coefficients, so every identity is decided by finite expansion. Operator
//! identities on these infinite-dimensional spaces are checked by applying
//! both sides to a test basis of monomial tensors.

mod courant;
mod modular;
mod poisson;
mod polynomial;
mod tensor;

pub use courant::{
    courant_axiom_check_poly, courant_bg_bracket, default_trial_functions, default_trial_sections,
    PolySection,
};
pub use modular::{
    boundary_nu, forms_generator_check, koszul_brylinski, modular_field, modular_report,
    standard_volume, triangular_deriving_checks, BoundaryNu, KoszulBrylinski,
};
pub use poisson::{
    anchor_factorization_check, eval_on_forms, koszul_bracket, koszul_morphism_identity,
    morphism_residual, pairing_bracket, pi_sharp, pi_sharp_psi, poisson_bg_report,
    psi_poisson_residual, solve_psi, twisted_covector_jacobi, twisted_d_mu,
    twisted_double_brackets, wedge_pi_sharp, PsiSolve, TwistedBrackets,
};
pub use polynomial::{monomials_up_to, Exponents, Poly};
pub(crate) use tensor::mask_order;
pub use tensor::{
    de_rham, interior, lie_derivative, monomial_tensors, schouten, Kind, PolyForm, PolyMultivector,
    PolyTensor, MAX_POLY_DIM,
};
