//! Thermal oven models with observer-based temperature control.
//!
//! The crate builds three-state lumped models (air, wall, food), places
//! controller and observer poles on them, and simulates open- and
//! closed-loop responses. All numerics are implemented here on a small
//! dense [`matrix::Matrix`]; nothing links to BLAS/LAPACK.
//!
//! Batch work (pole sweeps, report checks) runs on rayon when the
//! `parallel` feature is enabled and falls back to a plain loop otherwise.

// Negated float comparisons are used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod control;
pub mod error;
pub mod heat;
pub mod matrix;
pub mod output;
pub mod plant;
pub mod reference;
pub mod repro;
pub mod scenario;
pub mod sim;
pub mod sweep;

pub use error::{Error, Result};
pub use matrix::Matrix;
