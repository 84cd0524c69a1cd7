//! The BV∞^□ structure on the fiber model: θ₂ from the product, θₙ from
//! linear solves, ν and μ, and evaluation of the A/B/C axioms.

pub mod axioms;
pub mod certificate;
pub mod primal;
pub mod theta;

pub use axioms::{axiom, verify_all, AxiomKind, AxiomReport, AxiomVerdict};
pub use certificate::ThetaCertificate;
pub use primal::{s_map, theta3_primal, PrimalMap, Wave};
pub use theta::{build, d_star, h_star, solve_theta, theta2, theta_ansatz, BvData, ThetaSolve};

#[cfg(test)]
mod tests;
