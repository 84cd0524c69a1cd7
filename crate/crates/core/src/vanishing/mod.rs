//! Explicit linear algebra for the vanishing of `H⁰(C_ℓ)` and `H¹(C_ℓ)` at
//! small `n`, and the injectivity of `W`.
//!
//! This is a verifier only; nothing else in the crate depends on it.

pub mod complex;
pub mod modules;
pub mod sparse;
pub mod wmatrix;

pub use complex::{build_complex, check_vanishing, ComplexCl, VanishingResult};
pub use modules::{a_n, case_module, exterior, Case, GradedModule};
pub use wmatrix::{submodule_model, w_injectivity, w_matrix, w_rank, SubmoduleModel, WVerdict};

#[cfg(test)]
mod tests;
