//! Exact symbolic computation in the Weyl algebra.
//!
//! Polynomials in canonical symbols `Q_k`, `P_k` are handled in two layers:
//! the free algebra ([`FreePoly`]) with its occurrence-replacement calculus,
//! and the quotient by `Q_kP_l − P_lQ_k = iℏδ_kl` ([`WeylElement`]) in
//! normal order. On top of these sit vector fields preserving the
//! commutation relations, the Θ operator, Poisson-like brackets, Noether
//! symmetries and exact matrix evaluation for identity testing.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod fields;
pub mod free_algebra;
pub mod hamiltonian;
pub mod matrix_eval;
pub mod random;
pub mod syntax;
pub mod verify;
pub mod weyl;

pub use coeff::{Coefficient, GaussRat};
pub use error::{Error, Result};
pub use fields::{
    is_vector_field, lie_bracket, lie_derivative, MembershipReport, ScalarField, VectorField,
};
pub use free_algebra::{FreePoly, Generator, Kind, Word};
pub use hamiltonian::{
    flow_taylor, free_theta_pairing, grad_components, heisenberg_generator, is_conserved,
    noether_symmetry, noetherian_identity_check, poisson_bracket, theta_apply, theta_of,
    FlowSeries, GradientCovector,
};
pub use matrix_eval::{eval_derivative, eval_free, separate, Assignment, ExactMatrix};
pub use random::Sampler;
pub use syntax::{parse, parse_weyl, print_free, print_tuple, print_weyl};
pub use weyl::{
    closed_commutator, commutator, hbar_check, ideal_sample, normal_form, NormalMonomial,
    WeylElement,
};
