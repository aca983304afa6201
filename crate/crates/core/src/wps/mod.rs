mod beilinson;
mod cohomology;
mod stack;

pub use beilinson::{
    beilinson_e1, left_resolution, right_resolution, CohomologyTable, E1Options,
    ResolutionCertificate, Side, TableEntry,
};
pub use cohomology::{
    bott_eigen, canonical_twist, cover_algebra, exterior_basis, exterior_label, module_cohomology,
    omega_module, pull_back, tensor, CharacterConvention, Cohomology, FiniteLength,
};
pub use stack::{
    cover_piece_characters, line_cohomology, stabilizer_cover, validate_weights, CharacterInfo,
    StackDescriptor,
};
