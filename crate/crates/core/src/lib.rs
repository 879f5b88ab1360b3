//! Leibniz algebras on the linear symplectic plane.
//!
//! Every finite-dimensional Leibniz algebra can be encoded as a quadratic
//! vector field `L` on the plane `K[p_1..p_n, q^1..q^n]` whose derived
//! bracket `[l1, l2]_L = {L(l1), l2}` reproduces the algebra on linear
//! functions. This crate implements that dictionary with exact rational
//! arithmetic and checks each identity by direct computation:
//!
//! * [`poly`]: sparse polynomials, the canonical Poisson bracket, bidegrees.
//! * [`fields`]: vector fields, bivectors, forms, the Schouten-Nijenhuis
//!   bracket and nilpotent exponential flows.
//! * [`complex`]: Leibniz cochains, the composition `M ∘̄ N` and the graded
//!   bracket that turns Leibniz brackets into Maurer-Cartan elements.
//! * [`structures`]: algebras by structure constants, the semidirect double,
//!   the map `psi` from fields to cochains, and the cohomological /
//!   anti-cyclic conditions.
//! * [`doubles`]: Lagrangian splittings, canonical doubles, r-matrices and
//!   the Leibniz Yang-Baxter equation.
//! * [`nijenhuis`]: torsion, complex structures and deformations.
//! * [`io`]: the JSON schemas shared with the command-line tool.

pub mod check;
pub mod complex;
pub mod doubles;
pub mod error;
pub mod fields;
pub mod io;
pub mod linalg;
pub mod nijenhuis;
pub mod poly;
pub mod rational;
pub mod structures;

pub use check::{CheckOutcome, Defect, DefectValue};
pub use complex::{Cochain, CochainComplex};
pub use error::{Error, Result};
pub use fields::{DifferentialForm, Multivector, VectorField};
pub use linalg::Matrix;
pub use poly::{Bidegree, Monomial, Polynomial};
pub use rational::Rational;
pub use structures::{LeibnizAlgebra, StructureField};
