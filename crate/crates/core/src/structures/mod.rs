//! Leibniz algebras, their semidirect doubles and the vector fields that
//! encode them.

mod algebra;
mod field;

pub use algebra::{check_invariance, check_leibniz, pairing_minus, semidirect_double, InvarianceOutcome, LeibnizAlgebra};
pub use field::{
    derived_bracket, field_from_bracket, first_term_field, invariance_theorem_check, is_anticyclic, is_cohomological,
    is_leibniz_field, lambda_bracket, lambda_tensor, leibniz_3form, psi, psi_lemma_check, psi_of_degree,
    skew_bracket, skew_bracket_consistency, structure_field, structure_vector_field, theta, three_form_cyclic_check, CohomologicalOutcome,
    StructureField,
};

pub(crate) use algebra::{omega, unit};
