//! Deterministic exact linear algebra over the rationals and prime fields.

pub mod echelon;
pub mod field;
pub mod sparse;

pub use echelon::{image, kernel_basis, quotient_dim, rank, solve, Echelon, Quotient, Reduction, Solver, Subspace};
pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use sparse::{prefix_sums, Mat, SparseVec};
