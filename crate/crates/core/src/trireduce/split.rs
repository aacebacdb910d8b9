//! Dimension identities between `HH` of triangular algebras, modified cohomology and `Ext`.

use std::sync::Arc;

use serde::Serialize;

use super::blocks::{coordinate_map, ConeShape, FamilyCones};
use crate::algcore::{hom_space, mat_to_vec, triangular_algebra, Bimodule, BimoduleFamily};
use crate::error::{Error, Result};
use crate::exactla::{rank, Field, Mat, Subspace};
use crate::hochschild::{cohomology, cohomology_dims, ext_dims, hh_dims, induced_map, Budget};

/// `mid = lhs + rhs` checked degreewise, where the three sides were computed independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub lhs_dims: Vec<usize>,
    pub mid_dims: Vec<usize>,
    pub rhs_dims: Vec<usize>,
    pub identity_holds: Vec<bool>,
    /// Whether the restriction `mid → rhs` was found surjective on cohomology, so that it
    /// splits as a map of graded vector spaces.
    pub section_found: bool,
}

impl SplitReport {
    fn new(lhs_dims: Vec<usize>, mid_dims: Vec<usize>, rhs_dims: Vec<usize>, section_found: bool) -> Self {
        let identity_holds = (0..mid_dims.len()).map(|n| mid_dims[n] == lhs_dims[n] + rhs_dims[n]).collect();
        SplitReport { lhs_dims, mid_dims, rhs_dims, identity_holds, section_found }
    }

    pub fn holds(&self) -> bool {
        self.identity_holds.iter().all(|b| *b)
    }
}

/// `HH` of `[A M; 0 B]` from the bar complex.
pub fn triangular_hh<F: Field>(m: &Bimodule<F>, n_max: usize, budget: Budget) -> Result<Vec<usize>> {
    let t = triangular_algebra(m.left_algebra(), m.right_algebra(), m)?;
    hh_dims(&Arc::new(t), n_max, budget)
}

/// `Ext^{n−1}` read from a list of `Ext` dimensions, zero in degree 0.
fn shifted(ext: &[usize], n: usize) -> usize {
    if n == 0 {
        0
    } else {
        ext.get(n - 1).copied().unwrap_or(0)
    }
}

/// Whether the restriction from the cone of `big` onto the cone of `small` is onto in cohomology.
fn restriction_onto<F: Field>(cones: &FamilyCones<F>, big: &ConeShape, small: &ConeShape) -> Result<bool> {
    let (b, s) = (cones.cone(big)?, cones.cone(small)?);
    let rho = coordinate_map(&b, &s);
    let (hb, hs) = (cohomology(b.complex()), cohomology(s.complex()));
    Ok((0..hs.reported()).all(|n| rank(&induced_map(&rho, &hb, &hs, n)) == hs.dims[n]))
}

/// For `M = ⊕ M_i^{m_i}` and `M' = ⊕ M_i`:
/// `dim HH^n(T_M) = dim HH^n(T_{M'}) + Σ_{i,j} (m_i m_j − 1) dim Ext^{n−1}(M_i, M_j)`.
/// `mid` is `HH(T_M)`, `rhs` is `HH(T_{M'})`, `lhs` is the `Ext` sum.
pub fn multiplicity_split_check<F: Field>(family: &BimoduleFamily<F>, n_max: usize, budget: Budget) -> Result<SplitReport> {
    let mid = triangular_hh(&family.direct_sum(), n_max, budget)?;
    let rhs = triangular_hh(&family.base_sum(), n_max, budget)?;
    let mult = family.multiplicities();
    let members = family.members();
    let mut lhs = vec![0; mid.len()];
    for (i, mi) in members.iter().enumerate() {
        for (j, mj) in members.iter().enumerate() {
            let weight = mult[i] * mult[j] - 1;
            if weight == 0 {
                continue;
            }
            let ext = ext_dims(mi, mj, n_max, budget)?;
            for (n, l) in lhs.iter_mut().enumerate() {
                *l += weight * shifted(&ext, n);
            }
        }
    }
    let cones = FamilyCones::for_family(family, n_max, budget)?;
    let firsts: Vec<usize> = mult.iter().scan(0, |start, m| {
        let s = *start;
        *start += m;
        Some(s)
    }).collect();
    let section_found = restriction_onto(&cones, &ConeShape::full(&cones.all()), &ConeShape::full(&firsts))?;
    Ok(SplitReport::new(lhs, mid, rhs, section_found))
}

/// `dim HH^n(T_Ē) = dim 𝓗^nE + Σ_{i≠j} dim Ext^{n−1}(M_i, M_j)` for a family (members with
/// multiplicity). `mid` is `HH(T_Ē)`, `rhs` is `𝓗E`, `lhs` is the off-diagonal `Ext` sum.
pub fn off_diagonal_split_check<F: Field>(family: &BimoduleFamily<F>, n_max: usize, budget: Budget) -> Result<SplitReport> {
    let mid = triangular_hh(&family.direct_sum(), n_max, budget)?;
    let cones = FamilyCones::for_family(family, n_max, budget)?;
    let all = cones.all();
    let rhs = cohomology_dims(cones.cone(&ConeShape::modified(&all))?.complex());
    let members = cones.members();
    let mut lhs = vec![0; mid.len()];
    for (i, mi) in members.iter().enumerate() {
        for (j, mj) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            let ext = ext_dims(mi, mj, n_max, budget)?;
            for (n, l) in lhs.iter_mut().enumerate() {
                *l += shifted(&ext, n);
            }
        }
    }
    let section_found = restriction_onto(&cones, &ConeShape::full(&all), &ConeShape::modified(&all))?;
    Ok(SplitReport::new(lhs, mid, rhs, section_found))
}

/// Cohomology of the cone of `λ_{M}` next to `HH` of `[A M; 0 B]` from the bar complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub cone_dims: Vec<usize>,
    pub bar_dims: Vec<usize>,
    pub equal: bool,
}

pub fn cone_equivalence_check<F: Field>(m: &Arc<Bimodule<F>>, n_max: usize, budget: Budget) -> Result<EquivalenceReport> {
    let cones = FamilyCones::new(m.left_algebra().clone(), m.right_algebra().clone(), vec![m.clone()], n_max, budget)?;
    let cone_dims = cohomology_dims(cones.cone(&ConeShape::modified(&[0]))?.complex());
    let bar_dims = triangular_hh(m, n_max, budget)?;
    let equal = cone_dims == bar_dims;
    Ok(EquivalenceReport { cone_dims, bar_dims, equal })
}

/// Whether `M` is a direct summand of a finite power of `N`, decided by
/// `id_M ∈ span{p ∘ i : i ∈ Hom(M, N), p ∈ Hom(N, M)}`.
pub fn is_summand_of_power<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, budget: Budget) -> Result<bool> {
    let into = hom_space(m, n)?;
    let back = hom_space(n, m)?;
    let cost = into.len() as u128 * back.len() as u128 * (m.dim() * m.dim()) as u128;
    if cost > budget.0 {
        return Err(Error::HypothesisUnverifiable(format!(
            "summand test needs {cost} entries (budget {})",
            budget.0
        )));
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let f = *m.field();
    let products: Vec<_> = into.iter().flat_map(|i| back.iter().map(move |p| mat_to_vec(&p.mul(i)))).collect();
    let span = Subspace::span(f, m.dim() * m.dim(), products.iter());
    Ok(span.contains(&mat_to_vec(&Mat::identity(f, m.dim()))))
}

/// `dim HH^n(T_M) + dim Ext^{n−1}(N, N) = dim HH^n(T_N) + dim Ext^{n−1}(M, M)` when each of
/// `M`, `N` is a summand of a power of the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeReport {
    pub lhs_dims: Vec<usize>,
    pub rhs_dims: Vec<usize>,
    pub holds: Vec<bool>,
}

impl ExchangeReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|b| *b)
    }
}

pub fn exchange_check<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, n_max: usize, budget: Budget) -> Result<ExchangeReport> {
    m.check_compatible(n)?;
    if !is_summand_of_power(m, n, budget)? {
        return Err(Error::HypothesisFailed("M is not a summand of a power of N".into()));
    }
    if !is_summand_of_power(n, m, budget)? {
        return Err(Error::HypothesisFailed("N is not a summand of a power of M".into()));
    }
    let (hm, hn) = (triangular_hh(m, n_max, budget)?, triangular_hh(n, n_max, budget)?);
    let (em, en) = (ext_dims(m, m, n_max, budget)?, ext_dims(n, n, n_max, budget)?);
    let lhs_dims: Vec<usize> = (0..hm.len()).map(|d| hm[d] + shifted(&en, d)).collect();
    let rhs_dims: Vec<usize> = (0..hn.len()).map(|d| hn[d] + shifted(&em, d)).collect();
    let holds = lhs_dims.iter().zip(&rhs_dims).map(|(a, b)| a == b).collect();
    Ok(ExchangeReport { lhs_dims, rhs_dims, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::BasisAlgebra;
    use crate::exactla::{PrimeField, Rationals};

    fn ground<F: Field>(f: F) -> Arc<BasisAlgebra<F>> {
        Arc::new(BasisAlgebra::ground(f))
    }

    #[test]
    fn multiplicities_of_a_line() {
        let k = ground(Rationals);
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        for mult in 2..=3 {
            let fam = BimoduleFamily::new(k.clone(), k.clone(), vec![m.clone()], vec![mult]).unwrap();
            let r = multiplicity_split_check(&fam, 4, Budget::DEFAULT).unwrap();
            assert!(r.holds() && r.section_found);
            assert_eq!(r.lhs_dims, vec![0, mult * mult - 1, 0]);
        }
    }

    #[test]
    fn unit_multiplicities_degenerate() {
        let k = ground(Rationals);
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 2));
        let fam = BimoduleFamily::simple(k.clone(), k, vec![m]).unwrap();
        let r = multiplicity_split_check(&fam, 4, Budget::DEFAULT).unwrap();
        assert_eq!(r.mid_dims, r.rhs_dims);
        assert!(r.lhs_dims.iter().all(|d| *d == 0));
    }

    #[test]
    fn off_diagonal_identity_two_lines() {
        let k = ground(Rationals);
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        let fam = BimoduleFamily::simple(k.clone(), k, vec![m.clone(), m]).unwrap();
        let r = off_diagonal_split_check(&fam, 4, Budget::DEFAULT).unwrap();
        assert!(r.holds() && r.section_found);
        assert_eq!(r.rhs_dims, vec![1, 1, 0]);
    }

    #[test]
    fn cone_equivalence_over_f2() {
        let k = ground(PrimeField::new(2).unwrap());
        for d in 0..=2 {
            let r = cone_equivalence_check(&Arc::new(Bimodule::scalar_power(k.clone(), d)), 4, Budget::DEFAULT).unwrap();
            assert!(r.equal, "{r:?}");
        }
    }

    #[test]
    fn exchange_between_powers() {
        let k = ground(Rationals);
        let (m, n) = (Bimodule::scalar_power(k.clone(), 1), Bimodule::scalar_power(k.clone(), 2));
        let r = exchange_check(&m, &n, 4, Budget::DEFAULT).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.lhs_dims, vec![1, 4, 0]);
        let z = Bimodule::zero(k.clone(), k);
        assert!(matches!(exchange_check(&m, &z, 4, Budget::DEFAULT), Err(Error::HypothesisFailed(_))));
        assert!(matches!(is_summand_of_power(&m, &n, Budget(1)), Err(Error::HypothesisUnverifiable(_))));
    }
}
