//! Koszul spaces, the syzygy pieces `R_m`, and strandwise certificates for
//! the resolution of the diagonal.

mod algebra;
mod checks;
mod data;
mod euler;

pub use algebra::{veronese, PiecewiseAlgebra};
pub use checks::{
    ar_strand_check, cover_koszul_data, diagonal_strand_check, equivariant_strand_check,
    koszul_check, seq_sheaf_check, seq_sheaf_strand, DiagonalStrand, KoszulVerdict,
};
pub use data::{b_spaces, tensor_labels, KoszulData, LabeledBasis};
pub use euler::{euler_from_resolution, euler_kernel_check, EulerVerdict};
