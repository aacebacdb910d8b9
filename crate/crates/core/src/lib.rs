//! Exact computations of Hochschild cohomology, Ext groups and derivation Lie algebras for
//! triangular algebras `[A M; 0 B]`, together with machine checks of the exact sequences
//! relating them.

pub mod algcore;
pub mod error;
pub mod exactla;
pub mod hochschild;
pub mod liealg;
pub mod series;
pub mod trireduce;

pub use error::{Error, Result};
