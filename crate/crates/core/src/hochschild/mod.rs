//! Hochschild cochain complexes, cohomology and `Ext` over enveloping algebras.

pub mod bar;
pub mod complex;
pub mod les;

pub use bar::{
    bar_cochain_complex, coefficient_map, decode, encode, ext_complex, ext_dims, hh_dims,
    hochschild_differential, BarBasis, LetterActions,
};
pub use complex::{
    cohomology, cohomology_dims, induced_map, Budget, ChainMap, CochainComplex, CohomologyDims,
    CohomologyResult, DegreeCohomology,
};
pub use les::{connecting_map, long_exact_sequence, verify_short_exact, NodeLabels, SeqNode, SequenceReport};
