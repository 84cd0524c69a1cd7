//! Exact construction and certification of the homotopy BV structure on the
//! sixteen-dimensional fiber model of the Yang-Mills dgca, together with
//! amplitude, cobar and vanishing checks built on it.

pub mod error;
pub mod amplitudes;
pub mod bv_infinity;
pub mod cli;
pub mod cobar;
pub mod exact_arith;
pub mod gerstenhaber;
pub mod vanishing;
pub mod ym_complex;

pub use error::{Result, YmError};
