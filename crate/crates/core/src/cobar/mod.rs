//! The cobar construction: the cofree coalgebra `C` on the fiber, the free
//! Gerstenhaber algebra `A` on `C[−2]`, and the strict BV^□ operators `d_A`,
//! `h_A` on it.
//!
//! Truncation: `d_A` and `h_A` never increase the V-letter count, so all
//! identities among them can be checked exactly on elements with at most `W`
//! V-letters, provided ν and μ are known through arity `W`.

pub mod algebra;
pub mod checks;
pub mod coalgebra;

pub use algebra::{AAlg, CAlphabet, Cobar};
pub use checks::{run_checks, CobarReport};
pub use coalgebra::{CoOp, Cofree};

#[cfg(test)]
mod tests;
