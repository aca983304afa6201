//! Exact rational linear algebra and weighted monomial combinatorics.

pub mod labeled;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod weights;

pub use labeled::labeled_kernel;
pub use linalg::{rat, rat_frac, EchelonBasis, Matrix, Rational, Rref, SpanSolver};
pub use poly::{monomial_basis, Monomial, Poly};
pub use ring::{character_of, MonomialBasis, Ring};
pub use weights::{Character, CharacterGroup, WeightVector};
