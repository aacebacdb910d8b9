//! Truncated Poincaré series of Hochschild cohomology and the identities relating the series
//! of `[A M^k; 0 B]` for varying `k`.

mod checks;
mod poly;

pub use checks::{
    ext_series, kronecker_series_check, modp_periodicity_check, multiplicity_family, over_endomorphisms,
    poincare_poly, projective_split_check, PeriodicityReport, ProjectiveSplitReport, SeriesCheck,
};
pub use poly::PoincarePoly;
