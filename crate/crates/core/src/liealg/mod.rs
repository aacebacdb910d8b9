//! Derivations of triangular algebras and the Lie algebra `HH¹`.

pub mod decomposition;
pub mod delta;
pub mod derivations;
pub mod prime;
mod system;
pub mod triangular;

pub use decomposition::{
    block_decomposition, inner_count, restriction_bracket_search, restriction_transitivity, BlockDecomposition,
    BlockSummary, InnerCountReport, RestrictionBracketReport, TransitivityReport,
};
pub use delta::{
    delta_closure_checks, delta_report, free_module_extension, is_member, ClosureReport, DeltaReport, ExtensionSystem,
    PairClosure,
};
pub use derivations::{derivation_space, triangular_derivation_space, DerivationSpace};
pub use prime::PrimeDerivations;
pub use system::{commutator, is_derivation};
pub use triangular::{bracket_check, decompose_derivation, follows_block_pattern, TriangularDerivation};
