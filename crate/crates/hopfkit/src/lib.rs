//! Exact computer algebra for finite-dimensional Hopf algebras over small
//! finite fields: structure-constant algebras, duals, smash/crossed products,
//! Sweedler cocycle trivialization, Drinfeld twists, and verification suites.

pub mod algebra;
pub mod catalog;
pub mod crossed;
pub mod drinfeld;
pub mod field;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod suites;

pub use field::{make_field, root_of_unity, solve_additive, Field, FieldElement};
pub use linalg::{Matrix, Subspace};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad argument or unsatisfied precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A structural axiom or post-condition failed on concrete data.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Result only exists after a base-field extension the caller disallowed.
    #[error("needs field extension: {0}")]
    NeedsExtension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
