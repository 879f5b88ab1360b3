//! Lagrangian splittings of `W = V ⊕ V*`, canonical doubles, r-matrices
//! and the flows they generate.

mod decompose;
mod rmatrix;
mod semisimple;
mod subspace;

pub use decompose::{bidegree_decompose, splitting_flow, BidegreeDecomposition, CoordinateForms, SplittingData};
pub use rmatrix::{
    flow_transform, hh_check, is_anti_triangular, lybe_check, lybe_search, predicted_flow_components,
    r_to_hamiltonian, symmetric_grid, third_order_check, FlowResult, HhOutcome, LybeOutcome, RMatrix,
};
pub use semisimple::{is_invariant_form, killing_form, killing_r_matrix, semisimple_double};
pub use subspace::{
    factorize, is_canonical_pair, is_lagrangian, subalgebra_check, CanonicalFrame, Factorization, Subspace,
};
