//! Finite-dimensional algebras, bimodules and the constructions relating them.

pub mod algebra;
pub mod bimodule;
pub mod family;
pub mod triangular;

pub use algebra::{
    center, intertwiners, mat_to_vec, opposite, product_algebra, tensor_algebra, validate_algebra,
    vec_to_mat, BasisAlgebra, ValidationReport, Violation,
};
pub use bimodule::{
    end_algebra, enveloping, hom_coefficient_bimodule, hom_over_left, hom_over_right, hom_space,
    hom_subspace, kron, same_algebra, sandwich, validate_bimodule, Bimodule, EndAlgebra, EndSide,
};
pub use family::BimoduleFamily;
pub use triangular::{kronecker, triangular_algebra, TriangularAlgebra};
