//! Graded algebras `S/I`, finitely presented graded modules over them, and
//! minimal free resolutions computed degree by degree.

mod free;
mod module;
mod resolution;

pub use free::{check_homogeneous, strand_matrix, FreePiece, Generator, PolyMatrix};
pub use module::{GradedAlgebra, GradedMap, GradedModule, ModulePiece, Relation};
pub use resolution::{free_resolution, resolve};
