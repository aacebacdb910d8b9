//! Short exact sequences of family cones and their long exact cohomology sequences.

use std::collections::BTreeSet;

use serde::Serialize;

use super::blocks::{coordinate_map, sum_or_zero, BlockCone, ConeShape, FamilyCones};
use super::cone::ConeComplex;
use crate::algcore::BimoduleFamily;
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::hochschild::{
    cohomology, long_exact_sequence, Budget, ChainMap, CohomologyResult, NodeLabels, SequenceReport,
};

/// The kinds of long exact sequences that can be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// `HH(T) → HH(A) × HH(B) → Ext(M, M) → HH^{+1}(T)` for a single bimodule.
    Happel,
    /// `Ext^{−1}(N,M) × Ext^{−1}(M,M) × Ext^{−1}(M,N) → HH(T_{M⊕N}) → HH(T_N)`.
    DirectSum,
    /// `Π_{L ∈ E∖F} Ext^{−1}(L, L) → 𝓗E → 𝓗F`.
    Subfamily,
    /// `𝓗(F∪G) → 𝓗F × 𝓗G → 𝓗(F∩G)`.
    MayerVietoris,
    /// `𝓗E → Π 𝓗U_i → Π_{i≥1} 𝓗(U_0 ∩ U_i)` for a cover with `U_i ∩ U_j ⊆ U_0`.
    Cover,
    /// The cover sequence for a partition, where every `𝓗(U_0 ∩ U_i)` is `HH(A) × HH(B)`.
    Partition,
}

/// A verified long exact sequence together with its kind.
#[derive(Clone, Debug)]
pub struct SequenceCheck<F: Field> {
    pub kind: SequenceKind,
    pub report: SequenceReport<F>,
}

impl<F: Field> SequenceCheck<F> {
    pub fn all_exact(&self) -> bool {
        self.report.all_exact()
    }
}

/// `0 → (big ∖ quot) → big → quot → 0` for two shapes where `quot` is a quotient of `big`.
pub fn shape_sequence<F: Field>(
    cones: &FamilyCones<F>,
    big: &ConeShape,
    quot: &ConeShape,
    labels: &NodeLabels,
) -> Result<SequenceReport<F>> {
    let kernel = big.minus(quot);
    let (k, b, q) = (cones.cone(&kernel)?, cones.cone(big)?, cones.cone(quot)?);
    let iota = coordinate_map(&k, &b);
    let pi = coordinate_map(&b, &q);
    long_exact_sequence(k.complex(), b.complex(), q.complex(), &iota, &pi, labels)
}

/// The cone of `λ` for a family, members taken with multiplicity.
pub fn lambda_cone<F: Field>(family: &BimoduleFamily<F>, n_max: usize, budget: Budget) -> Result<ConeComplex<F>> {
    let cones = FamilyCones::for_family(family, n_max, budget)?;
    Ok(cones.cone(&ConeShape::modified(&cones.all()))?.cone)
}

/// The modified cohomology `𝓗*E`: cohomology of the cone of `λ_E`.
pub fn modified_cohomology<F: Field>(
    family: &BimoduleFamily<F>,
    n_max: usize,
    budget: Budget,
) -> Result<CohomologyResult<F>> {
    Ok(cohomology(&lambda_cone(family, n_max, budget)?.cone))
}

/// The long exact sequence of a family cone with ends relative to its `C(A) × C(B)` quotient:
/// `… → H^n(Σ-part) → H^n(cone) → HH^n(A) × HH^n(B) → H^{n+1}(Σ-part) → …`.
/// For a single bimodule the `Σ`-part has cohomology `Ext^{n−1}(M, M)`.
pub fn cone_les_report<F: Field>(cone: &BlockCone<F>, cones: &FamilyCones<F>) -> Result<SequenceReport<F>> {
    if !cone.shape.ends {
        return Err(Error::InvalidArgument("the cone has no C(A) × C(B) quotient".into()));
    }
    shape_sequence(cones, &cone.shape, &ConeShape::ends_only(), &NodeLabels::new("Ext^{*-1}", "H(cone)", "HH(A)xHH(B)"))
}

/// The sequence for one bimodule: `… → HH^n(T) → HH^n(A) × HH^n(B) → Ext^n(M, M) → HH^{n+1}(T) → …`.
pub fn happel_sequence<F: Field>(cones: &FamilyCones<F>, member: usize) -> Result<SequenceCheck<F>> {
    let shape = ConeShape::modified(&[member]);
    let report = shape_sequence(
        cones,
        &shape,
        &ConeShape::ends_only(),
        &NodeLabels::new("Ext^{*-1}(M,M)", "HH(T)", "HH(A)xHH(B)"),
    )?;
    Ok(SequenceCheck { kind: SequenceKind::Happel, report })
}

/// The sequence for `M ⊕ N` relative to `N`; `cones` must have members `[M, N]`.
pub fn direct_sum_sequence<F: Field>(cones: &FamilyCones<F>) -> Result<SequenceCheck<F>> {
    if cones.members().len() != 2 {
        return Err(Error::InvalidArgument("the direct-sum sequence needs exactly two members".into()));
    }
    let report = shape_sequence(
        cones,
        &ConeShape::full(&[0, 1]),
        &ConeShape::full(&[1]),
        &NodeLabels::new("Ext^{*-1}(N,M)xExt^{*-1}(M,M)xExt^{*-1}(M,N)", "HH(T_{M+N})", "HH(T_N)"),
    )?;
    Ok(SequenceCheck { kind: SequenceKind::DirectSum, report })
}

fn as_set(indices: &[usize]) -> BTreeSet<usize> {
    indices.iter().copied().collect()
}

/// The sequence for `F ⊆ E` (member indices).
pub fn subfamily_sequence<F: Field>(cones: &FamilyCones<F>, e: &[usize], f: &[usize]) -> Result<SequenceCheck<F>> {
    if !as_set(f).is_subset(&as_set(e)) {
        return Err(Error::InvalidArgument("the subfamily is not contained in the family".into()));
    }
    let report = shape_sequence(
        cones,
        &ConeShape::modified(e),
        &ConeShape::modified(f),
        &NodeLabels::new("Ext^{*-1}(L,L) over E\\F", "H(E)", "H(F)"),
    )?;
    Ok(SequenceCheck { kind: SequenceKind::Subfamily, report })
}

/// Checks that `cover` covers `e` and that `U_i ∩ U_j ⊆ U_0` for `i ≠ j`.
pub fn check_cover(e: &[usize], cover: &[Vec<usize>]) -> Result<()> {
    let e = as_set(e);
    let sets: Vec<BTreeSet<usize>> = cover.iter().map(|u| as_set(u)).collect();
    let first = sets.first().ok_or_else(|| Error::CoverConditionViolated("the cover is empty".into()))?;
    let union: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    if union != e {
        return Err(Error::CoverConditionViolated("the union of the cover is not the family".into()));
    }
    for i in 1..sets.len() {
        for j in i + 1..sets.len() {
            if !sets[i].intersection(&sets[j]).all(|x| first.contains(x)) {
                return Err(Error::CoverConditionViolated(format!("U_{i} ∩ U_{j} is not contained in U_0")));
            }
        }
    }
    Ok(())
}

/// The sequence `0 → 𝓒E → Π_i 𝓒U_i → Π_{i≥1} 𝓒(U_0 ∩ U_i) → 0` with `ρ_+ = (ρ_{U_i,E})_i` and
/// `ρ_− = (ρ_{U_0∩U_i,U_0} − ρ_{U_0∩U_i,U_i})_{i≥1}`.
pub fn cover_sequence<F: Field>(cones: &FamilyCones<F>, e: &[usize], cover: &[Vec<usize>]) -> Result<SequenceCheck<F>> {
    check_cover(e, cover)?;
    let f = cones.field();
    let top = cones.n_max() - 1;
    let whole = cones.cone(&ConeShape::modified(e))?;
    let parts: Vec<BlockCone<F>> = cover.iter().map(|u| cones.cone(&ConeShape::modified(u))).collect::<Result<_>>()?;
    let u0 = as_set(&cover[0]);
    let meets: Vec<BlockCone<F>> = cover[1..]
        .iter()
        .map(|u| {
            let inter: Vec<usize> = as_set(u).intersection(&u0).copied().collect();
            cones.cone(&ConeShape::modified(&inter))
        })
        .collect::<Result<_>>()?;
    let mid = sum_or_zero(f, top, &parts.iter().map(|c| c.complex().clone()).collect::<Vec<_>>())?;
    let quot = sum_or_zero(f, top, &meets.iter().map(|c| c.complex().clone()).collect::<Vec<_>>())?;
    let rho_plus: Vec<ChainMap<F>> = parts.iter().map(|p| coordinate_map(&whole, p)).collect();
    let from_u0: Vec<ChainMap<F>> = meets.iter().map(|m| coordinate_map(&parts[0], m)).collect();
    let from_ui: Vec<ChainMap<F>> = meets.iter().zip(&parts[1..]).map(|(m, p)| coordinate_map(p, m)).collect();
    let mut plus = Vec::with_capacity(top + 1);
    let mut minus = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let part_dims: Vec<usize> = parts.iter().map(|p| p.complex().dim(n)).collect();
        let meet_dims: Vec<usize> = meets.iter().map(|m| m.complex().dim(n)).collect();
        let col: Vec<Vec<Option<&Mat<F>>>> = rho_plus.iter().map(|r| vec![Some(&r.maps[n])]).collect();
        plus.push(Mat::block(f, &part_dims, &[whole.complex().dim(n)], &col));
        let negated: Vec<Mat<F>> = from_ui.iter().map(|r| r.maps[n].neg()).collect();
        let rows: Vec<Vec<Option<&Mat<F>>>> = (0..meets.len())
            .map(|i| {
                let mut row: Vec<Option<&Mat<F>>> = vec![None; parts.len()];
                row[0] = Some(&from_u0[i].maps[n]);
                row[i + 1] = Some(&negated[i]);
                row
            })
            .collect();
        minus.push(Mat::block(f, &meet_dims, &part_dims, &rows));
    }
    let report = long_exact_sequence(
        whole.complex(),
        &mid,
        &quot,
        &ChainMap::new(plus),
        &ChainMap::new(minus),
        &NodeLabels::new("H(E)", "prod H(U_i)", "prod H(U_0 & U_i)"),
    )?;
    Ok(SequenceCheck { kind: SequenceKind::Cover, report })
}

/// The cover sequence for `U_0 = F`, `U_1 = G`, `E = F ∪ G`.
pub fn mayer_vietoris_sequence<F: Field>(cones: &FamilyCones<F>, f: &[usize], g: &[usize]) -> Result<SequenceCheck<F>> {
    let e: Vec<usize> = as_set(f).union(&as_set(g)).copied().collect();
    let mut check = cover_sequence(cones, &e, &[f.to_vec(), g.to_vec()])?;
    check.kind = SequenceKind::MayerVietoris;
    Ok(check)
}

/// The cover sequence for a partition of `e`.
pub fn partition_sequence<F: Field>(cones: &FamilyCones<F>, e: &[usize], parts: &[Vec<usize>]) -> Result<SequenceCheck<F>> {
    let mut seen = BTreeSet::new();
    for p in parts {
        for x in p {
            if !seen.insert(*x) {
                return Err(Error::CoverConditionViolated(format!("member {x} lies in two parts")));
            }
        }
    }
    let mut check = cover_sequence(cones, e, parts)?;
    check.kind = SequenceKind::Partition;
    Ok(check)
}

/// Outcome of the cochain-level identities between restriction maps `ρ` and sections `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    /// `ρ_{G,F} ∘ ρ_{F,E} = ρ_{G,E}`.
    pub restriction_composes: bool,
    /// `σ_{E,F} ∘ σ_{F,G} = σ_{E,G}`.
    pub section_composes: bool,
    /// `ρ_{F,E} ∘ σ_{E,F} = id`.
    pub section_splits: bool,
    /// `ρ_{F,E} ∘ σ_{E,G} = σ_{F,F∩G} ∘ ρ_{F∩G,G}` for the two given subfamilies.
    pub section_identity: bool,
    /// Every `ρ` commutes with the differentials.
    pub restrictions_are_chain_maps: bool,
}

impl FunctorialityReport {
    pub fn all_hold(&self) -> bool {
        self.restriction_composes
            && self.section_composes
            && self.section_splits
            && self.section_identity
            && self.restrictions_are_chain_maps
    }
}

fn maps_equal<F: Field>(x: &ChainMap<F>, y: &ChainMap<F>) -> bool {
    x.maps.len() == y.maps.len() && x.maps.iter().zip(&y.maps).all(|(a, b)| a == b)
}

/// Verifies the identities between `ρ` and `σ` as matrix equations for `G ⊆ F ⊆ E` and for
/// the pair `(F, H)` of subfamilies of `E`.
pub fn functoriality_check<F: Field>(
    cones: &FamilyCones<F>,
    e: &[usize],
    f: &[usize],
    g: &[usize],
    h: &[usize],
) -> Result<FunctorialityReport> {
    let (se, sf, sg, sh) = (as_set(e), as_set(f), as_set(g), as_set(h));
    if !sg.is_subset(&sf) || !sf.is_subset(&se) || !sh.is_subset(&se) {
        return Err(Error::InvalidArgument("expected G ⊆ F ⊆ E and H ⊆ E".into()));
    }
    let fh: Vec<usize> = sf.intersection(&sh).copied().collect();
    let ce = cones.cone(&ConeShape::modified(e))?;
    let cf = cones.cone(&ConeShape::modified(f))?;
    let cg = cones.cone(&ConeShape::modified(g))?;
    let ch = cones.cone(&ConeShape::modified(h))?;
    let cfh = cones.cone(&ConeShape::modified(&fh))?;
    let rho = coordinate_map::<F>;
    let sigma = coordinate_map::<F>;
    let restriction_composes = maps_equal(&rho(&ce, &cf).compose(&rho(&cf, &cg)), &rho(&ce, &cg));
    let section_composes = maps_equal(&sigma(&cg, &cf).compose(&sigma(&cf, &ce)), &sigma(&cg, &ce));
    let id = ChainMap::new((0..=cf.top()).map(|n| Mat::identity(cones.field(), cf.complex().dim(n))).collect());
    let section_splits = maps_equal(&sigma(&cf, &ce).compose(&rho(&ce, &cf)), &id);
    let lhs = sigma(&ch, &ce).compose(&rho(&ce, &cf));
    let rhs = rho(&ch, &cfh).compose(&sigma(&cfh, &cf));
    let section_identity = maps_equal(&lhs, &rhs);
    let restrictions_are_chain_maps = [(&ce, &cf), (&cf, &cg), (&ce, &cg), (&ch, &cfh), (&ce, &ch)]
        .iter()
        .all(|(x, y)| rho(x, y).commutes(x.complex(), y.complex()));
    Ok(FunctorialityReport {
        restriction_composes,
        section_composes,
        section_splits,
        section_identity,
        restrictions_are_chain_maps,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algcore::{BasisAlgebra, Bimodule};
    use crate::exactla::Rationals;
    use crate::hochschild::cohomology_dims;

    fn ground() -> Arc<BasisAlgebra<Rationals>> {
        Arc::new(BasisAlgebra::ground(Rationals))
    }

    fn scalar_cones(dims: &[usize]) -> FamilyCones<Rationals> {
        let k = ground();
        let members = dims.iter().map(|d| Arc::new(Bimodule::scalar_power(k.clone(), *d))).collect();
        FamilyCones::new(k.clone(), k, members, 4, Budget::DEFAULT).unwrap()
    }

    #[test]
    fn happel_for_k2() {
        let cones = scalar_cones(&[2]);
        let s = happel_sequence(&cones, 0).unwrap();
        assert!(s.all_exact());
        assert_eq!(&s.report.dims()[..7], &[0, 0, 1, 2, 4, 3, 0]);
    }

    #[test]
    fn direct_sum_of_two_lines() {
        let cones = scalar_cones(&[1, 1]);
        let s = direct_sum_sequence(&cones).unwrap();
        assert!(s.all_exact());
        // Degree 1 kernel node carries the three Ext^0 terms.
        assert_eq!(s.report.nodes[4].dim, 3);
    }

    #[test]
    fn subfamily_and_mayer_vietoris() {
        let cones = scalar_cones(&[1, 1]);
        let s = subfamily_sequence(&cones, &[0, 1], &[0]).unwrap();
        assert!(s.all_exact());
        let mv = mayer_vietoris_sequence(&cones, &[0], &[1]).unwrap();
        assert!(mv.all_exact());
        assert_eq!(mv.kind, SequenceKind::MayerVietoris);
        let empty = cones.cone(&ConeShape::modified(&[])).unwrap();
        assert_eq!(cohomology_dims(empty.complex()), vec![2, 0, 0]);
    }

    #[test]
    fn cover_conditions() {
        let cones = scalar_cones(&[1, 1, 1]);
        let ok = cover_sequence(&cones, &[0, 1, 2], &[vec![0], vec![0, 1], vec![0, 2]]).unwrap();
        assert!(ok.all_exact());
        let bad = cover_sequence(&cones, &[0, 1, 2], &[vec![0], vec![1, 2], vec![1, 2]]);
        assert!(matches!(bad, Err(Error::CoverConditionViolated(_))));
        let part = partition_sequence(&cones, &[0, 1, 2], &[vec![0], vec![1], vec![2]]).unwrap();
        assert!(part.all_exact());
        assert!(partition_sequence(&cones, &[0, 1], &[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn functoriality_identities() {
        let cones = scalar_cones(&[1, 1, 2]);
        let r = functoriality_check(&cones, &[0, 1, 2], &[0, 1], &[0], &[1, 2]).unwrap();
        assert!(r.all_hold(), "{r:?}");
    }
}
