//! Bounded complexes of graded free modules: strands, cones, derived Hom
//! and convolutions of complexes of complexes.

mod complex;
mod convolution;
mod hom;

pub use complex::{check_complex, cone, ChainMap, ComplexVerdict, FreeComplex};
pub use convolution::{
    all_bracketings, convolve_in_order, default_r_max, hypothesis_report, left_convolution,
    right_convolution, totalization, ComplexOfComplexes, ConvolutionTrace, HypothesisEntry,
    HypothesisReport,
};
pub use hom::{hom_derived, hom_derived_in_degree};
