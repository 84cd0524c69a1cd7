//! Free Gerstenhaber algebra on a graded alphabet with a Hopf action, with
//! normal forms over a Lie basis embedded in the tensor algebra, and the
//! second-order operators α, β, γ, K and equivariant derivations.

pub mod atoms;
pub mod calculus;
pub mod element;
pub mod ops;
pub mod vstar;

pub use atoms::{Alphabet, AtomId, AtomTable, Letter};
pub use calculus::{sample_calculus, CalculusReport};
pub use element::{FreeGerst, GElement, GWord};
pub use ops::{eval_operator, Evaluator, LetterAction, LieAnomaly, MulAnomaly, OpSpec};
pub use vstar::{
    big_gamma, commutator, curvature, decorate, dgen, gen, valg, DecoratedGenerator, VAlg, VDerivation, VOp, VStar,
    DECORATION_CAP,
};
