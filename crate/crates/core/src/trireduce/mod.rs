//! Triangular reductions: the relative bar complex, the triangular cochain complex, cone
//! complexes over bimodule families, modified cohomology and the exact sequences and
//! splittings relating them.

pub mod blocks;
pub mod cone;
pub mod relative_bar;
pub mod sequences;
pub mod split;
pub mod tri;

pub use blocks::{coordinate_map, BlockCone, ConeShape, FamilyCones, Piece};
pub use cone::{triangle_les_report, ConeComplex};
pub use relative_bar::{evaluate_cochain, relative_bar, RelElem, RelativeBar};
pub use sequences::{
    check_cover, cone_les_report, cover_sequence, direct_sum_sequence, functoriality_check, happel_sequence,
    lambda_cone, mayer_vietoris_sequence, modified_cohomology, partition_sequence, shape_sequence,
    subfamily_sequence, FunctorialityReport, SequenceCheck, SequenceKind,
};
pub use tri::{triangular_cochain, TriangularCochainComplex};
pub use split::{
    cone_equivalence_check, exchange_check, is_summand_of_power, multiplicity_split_check,
    off_diagonal_split_check, triangular_hh, EquivalenceReport, ExchangeReport, SplitReport,
};
