//! Plane-wave trees on the fiber model: the propagator `h♯ = h/k²`, the
//! ternary maps `S_n` and their primitives `T_n`, and color-ordered partial
//! amplitudes.

pub mod amplitude;
pub mod bcj;
pub mod kinematics;
pub mod trees;

pub use amplitude::{partial_amplitude, Amplitude, ExternalLeg};
pub use bcj::{chain_and_exactness, homology_vanishing, s_identities, SIdentities, VanishingVerdict};
pub use kinematics::{null_configuration, random_null};
pub use trees::{e_trees, p_trees, plane_wave, ternary_trees, Machine, Node};

#[cfg(test)]
mod tests;
