//! The sixteen-dimensional fiber model of the Yang-Mills dgca: structure
//! tables, the differential at a momentum, the homotopy `h` and plane-wave
//! homology.

pub mod fiber;
pub mod homology;
pub mod homotopy;
pub mod tables;

pub use fiber::{basis_vec, fiber_product, FiberVec, Momentum4};
pub use homology::{check_kih_and_iso, homology_at, Homology, KihReport};
pub use homotopy::{solve_h, verify_h, HReport, HSolution, PolyMat};
pub use tables::{load_structure_tables, StructureTables, DIM};
