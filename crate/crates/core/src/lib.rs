//! Exact computations around Koszul-type diagonal resolutions of weighted
//! projective stacks: graded algebra, free complexes, strand checks and
//! equivariant cohomology of the cover.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod complexes;
pub mod error;
pub mod graded;
pub mod koszul;
pub mod strand;
pub mod wps;

pub use error::{Error, Result};
