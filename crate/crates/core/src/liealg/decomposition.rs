//! Block decomposition of the derivations of `[A M⊕N; 0 B]`, restriction maps between the
//! `HH¹` of triangular algebras, and the count of inner derivations.

use std::sync::Arc;

use serde::Serialize;

use super::prime::PrimeDerivations;
use crate::algcore::{center, hom_space, Bimodule, TriangularAlgebra};
use crate::error::Result;
use crate::exactla::{Field, Mat, SparseVec, Subspace};
use crate::liealg::system::Equations;

/// Subspaces of `Der′[A M⊕N; 0 B]`, all in the coordinates of `ambient`:
/// `diagonal` has `γ = μ ⊕ ν`, `upper` has only a `Λ`-linear block `M → N`, `lower` only `N → M`.
#[derive(Clone, Debug)]
pub struct BlockDecomposition<F: Field> {
    pub ambient: PrimeDerivations<F>,
    pub diagonal: Subspace<F>,
    pub upper: Subspace<F>,
    pub lower: Subspace<F>,
    pub summary: BlockSummary,
}

/// Dimensions and verdicts of a [`BlockDecomposition`]. The `h1_*` fields are dimensions of the
/// images in `HH¹` (each subspace contains the inner part).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BlockSummary {
    pub hh1_dim: usize,
    pub diagonal_dim: usize,
    pub upper_dim: usize,
    pub lower_dim: usize,
    pub h1_diagonal_dim: usize,
    pub h1_upper_dim: usize,
    pub h1_lower_dim: usize,
    /// `(diagonal + upper) + (diagonal + lower)` is everything.
    pub sum_identity: bool,
    /// `(diagonal + upper) ∩ (diagonal + lower) = diagonal`.
    pub intersection_identity: bool,
    /// `diagonal`, `diagonal + upper` and `diagonal + lower` are closed under brackets.
    pub subalgebras_closed: bool,
    /// `[upper, upper] = 0` and `[lower, lower] = 0`.
    pub off_diagonal_abelian: bool,
    /// Restricting `diagonal + upper` and `diagonal + lower` to either summand respects brackets
    /// modulo inner derivations.
    pub restrictions_respect_brackets: bool,
}

impl BlockSummary {
    pub fn all_hold(&self) -> bool {
        self.sum_identity
            && self.intersection_identity
            && self.subalgebras_closed
            && self.off_diagonal_abelian
            && self.restrictions_respect_brackets
    }
}

pub fn block_decomposition<F: Field>(m: &Arc<Bimodule<F>>, n: &Arc<Bimodule<F>>) -> Result<BlockDecomposition<F>> {
    m.check_compatible(n)?;
    let (a, b) = (m.left_algebra().clone(), m.right_algebra().clone());
    let parts = vec![m.clone(), n.clone()];
    let ambient = PrimeDerivations::new(a.clone(), b.clone(), parts.clone(), false)?;
    let diag = PrimeDerivations::new(a.clone(), b.clone(), parts, true)?;
    let f = *a.field();
    let total = ambient.coordinate_dim();
    let diagonal = diag.space().clone();
    let embed = |maps: Vec<Mat<F>>, from: usize, to: usize| {
        let vecs: Vec<_> = maps.iter().map(|phi| ambient.embed_block(phi, from, to)).collect();
        Subspace::span(f, total, vecs.iter())
    };
    let upper = embed(hom_space(m, n)?, 0, 1);
    let lower = embed(hom_space(n, m)?, 1, 0);

    let d_mn = diagonal.sum(&upper);
    let d_nm = diagonal.sum(&lower);
    let space = ambient.space();
    let inner = ambient.inner().dim();
    let sum = d_mn.sum(&d_nm);
    let sum_identity = sum.dim() == space.dim() && sum.is_subspace_of(space);
    let meet = d_mn.intersection(&d_nm);
    let intersection_identity = meet.dim() == diagonal.dim() && diagonal.is_subspace_of(&meet);

    let closed = |s: &Subspace<F>| brackets_within(&ambient, s, s, s);
    let subalgebras_closed = closed(&diagonal) && closed(&d_mn) && closed(&d_nm);
    let zero = Subspace::zero(f, total);
    let off_diagonal_abelian = brackets_within(&ambient, &upper, &upper, &zero)
        && brackets_within(&ambient, &lower, &lower, &zero);

    let mut restrictions_respect_brackets = true;
    for (i, part) in [m, n].into_iter().enumerate() {
        let target = PrimeDerivations::new(a.clone(), b.clone(), vec![part.clone()], false)?;
        for s in [&d_mn, &d_nm] {
            restrictions_respect_brackets &= restriction_respects_brackets(&ambient, &target, &[i], s.basis());
        }
    }

    let summary = BlockSummary {
        hh1_dim: ambient.hh1().dim(),
        diagonal_dim: diagonal.dim(),
        upper_dim: upper.dim(),
        lower_dim: lower.dim(),
        h1_diagonal_dim: diagonal.dim() - inner,
        h1_upper_dim: d_mn.dim() - inner,
        h1_lower_dim: d_nm.dim() - inner,
        sum_identity,
        intersection_identity,
        subalgebras_closed,
        off_diagonal_abelian,
        restrictions_respect_brackets,
    };
    Ok(BlockDecomposition { ambient, diagonal, upper, lower, summary })
}

/// `[x, y] ∈ target` for all basis vectors `x` of `s` and `y` of `t`.
fn brackets_within<F: Field>(p: &PrimeDerivations<F>, s: &Subspace<F>, t: &Subspace<F>, target: &Subspace<F>) -> bool {
    s.basis().iter().all(|x| t.basis().iter().all(|y| target.contains(&p.bracket(x, y))))
}

/// Whether `r([x, y]) − [r x, r y]` is inner in `target` for all pairs from `vectors`.
fn restriction_respects_brackets<F: Field>(
    source: &PrimeDerivations<F>,
    target: &PrimeDerivations<F>,
    keep: &[usize],
    vectors: &[SparseVec<F::Elem>],
) -> bool {
    let f = *source.left_algebra().field();
    vectors.iter().all(|x| {
        vectors.iter().all(|y| {
            let lhs = source.restrict(&source.bracket(x, y), keep);
            let rhs = target.bracket(&source.restrict(x, keep), &source.restrict(y, keep));
            target.is_inner(&lhs.sub(&f, &rhs))
        })
    })
}

/// Outcome of comparing brackets through the restriction `HH¹[A M⊕N; 0 B] → HH¹[A M; 0 B]`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RestrictionBracketReport {
    pub pairs_checked: usize,
    pub failures: usize,
    /// The first pair of representatives, by index, whose bracket is not preserved.
    pub first_failure: Option<(usize, usize)>,
}

impl RestrictionBracketReport {
    pub fn respects_brackets(&self) -> bool {
        self.failures == 0
    }
}

/// Checks on all pairs of `HH¹` representatives whether restricting to `M` preserves brackets.
pub fn restriction_bracket_search<F: Field>(
    m: &Arc<Bimodule<F>>,
    n: &Arc<Bimodule<F>>,
) -> Result<RestrictionBracketReport> {
    m.check_compatible(n)?;
    let (a, b) = (m.left_algebra().clone(), m.right_algebra().clone());
    let source = PrimeDerivations::new(a.clone(), b.clone(), vec![m.clone(), n.clone()], false)?;
    let target = PrimeDerivations::new(a, b, vec![m.clone()], false)?;
    let reps = source.hh1().reps();
    let mut report = RestrictionBracketReport { pairs_checked: 0, failures: 0, first_failure: None };
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            report.pairs_checked += 1;
            if !restriction_respects_brackets(&source, &target, &[0], &[reps[i].clone(), reps[j].clone()]) {
                report.failures += 1;
                report.first_failure.get_or_insert((i, j));
            }
        }
    }
    Ok(report)
}

/// The restriction maps on `HH¹` for `M ⊕ M′ ⊕ M″` down to `M ⊕ M′`, `M ⊕ M″` and `M`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TransitivityReport {
    pub dims: [usize; 4],
    /// Through `M ⊕ M′` the composite equals the direct restriction.
    pub through_first: bool,
    /// Through `M ⊕ M″` the composite equals the direct restriction.
    pub through_second: bool,
}

impl TransitivityReport {
    pub fn commutes(&self) -> bool {
        self.through_first && self.through_second
    }
}

pub fn restriction_transitivity<F: Field>(
    m: &Arc<Bimodule<F>>,
    m1: &Arc<Bimodule<F>>,
    m2: &Arc<Bimodule<F>>,
) -> Result<TransitivityReport> {
    m.check_compatible(m1)?;
    m.check_compatible(m2)?;
    let (a, b) = (m.left_algebra().clone(), m.right_algebra().clone());
    let make = |parts: Vec<Arc<Bimodule<F>>>| PrimeDerivations::new(a.clone(), b.clone(), parts, false);
    let all = make(vec![m.clone(), m1.clone(), m2.clone()])?;
    let first = make(vec![m.clone(), m1.clone()])?;
    let second = make(vec![m.clone(), m2.clone()])?;
    let base = make(vec![m.clone()])?;
    let direct = all.restriction_on_hh1(&base, &[0])?;
    let via_first = first.restriction_on_hh1(&base, &[0])?.mul(&all.restriction_on_hh1(&first, &[0, 1])?);
    let via_second = second.restriction_on_hh1(&base, &[0])?.mul(&all.restriction_on_hh1(&second, &[0, 2])?);
    Ok(TransitivityReport {
        dims: [all.hh1().dim(), first.hh1().dim(), second.hh1().dim(), base.hh1().dim()],
        through_first: via_first == direct,
        through_second: via_second == direct,
    })
}

/// `Z(A) × Z(B)` and its subspace `{(a, b) : am = mb for all m}` (the center of `[A M; 0 B]`),
/// in coordinates `a | b`.
pub(crate) fn central_pairs<F: Field>(m: &Bimodule<F>) -> (Subspace<F>, Subspace<F>) {
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let f = *a.field();
    let (da, db, dm) = (a.dim(), b.dim(), m.dim());
    let za = center(a);
    let zb = center(b);
    let both: Vec<SparseVec<F::Elem>> = za
        .basis()
        .iter()
        .cloned()
        .chain(zb.basis().iter().map(|v| v.shifted(da)))
        .collect();
    let product = Subspace::span(f, da + db, both.iter());
    let mut eqs = Equations::new(f, da + db);
    for i in 0..da {
        let comm = a.right_mult(&a.basis_vec(i)).sub(&a.left_mult(&a.basis_vec(i)));
        for r in comm.row_vectors() {
            eqs.push(r.entries().to_vec());
        }
    }
    for j in 0..db {
        let comm = b.right_mult(&b.basis_vec(j)).sub(&b.left_mult(&b.basis_vec(j)));
        for r in comm.row_vectors() {
            eqs.push(r.entries().iter().map(|(c, v)| (c + da, v.clone())).collect());
        }
    }
    for r in 0..dm {
        for c in 0..dm {
            let mut pairs = Vec::new();
            for s in 0..da {
                pairs.push((s, m.left_basis_action(s).get(r, c)));
            }
            for s in 0..db {
                pairs.push((da + s, f.neg(&m.right_basis_action(s).get(r, c))));
            }
            eqs.push(pairs);
        }
    }
    (product, eqs.solutions())
}

/// Dimension counts for the inner derivations of `T = [A M; 0 B]`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InnerCountReport {
    pub int_dim: usize,
    /// `dim(A × B) − dim Z(T) + dim M`.
    pub general_count: usize,
    /// `dim(Z(A) × Z(B)) − dim Z(T) + dim M`; agrees with `int_dim` when `A` and `B` have no
    /// inner derivations, in particular when both are commutative.
    pub central_count: usize,
    pub blocks_commutative: bool,
}

impl InnerCountReport {
    pub fn holds(&self) -> bool {
        self.int_dim == self.general_count && (!self.blocks_commutative || self.int_dim == self.central_count)
    }
}

pub fn inner_count<F: Field>(t: &TriangularAlgebra<F>) -> InnerCountReport {
    let space = super::derivation_space(&t.algebra);
    let (product, center_t) = central_pairs(&t.m);
    InnerCountReport {
        int_dim: space.int_dim(),
        general_count: t.dim_a() + t.dim_b() - center_t.dim() + t.dim_m(),
        central_count: product.dim() - center_t.dim() + t.dim_m(),
        blocks_commutative: t.a.is_commutative() && t.b.is_commutative(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{kronecker, BasisAlgebra};
    use crate::exactla::Rationals;

    fn k() -> Arc<BasisAlgebra<Rationals>> {
        Arc::new(BasisAlgebra::ground(Rationals))
    }

    #[test]
    fn scalars_split_into_three_lines() {
        let k = k();
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        let d = block_decomposition(&m, &m).unwrap();
        let s = &d.summary;
        assert_eq!(s.hh1_dim, 3);
        assert_eq!((s.upper_dim, s.lower_dim), (1, 1));
        assert_eq!((s.h1_diagonal_dim, s.h1_upper_dim, s.h1_lower_dim), (1, 2, 2));
        assert!(s.all_hold());
    }

    #[test]
    fn zero_second_summand_collapses() {
        let k = k();
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 2));
        let zero = Arc::new(Bimodule::zero(k.clone(), k.clone()));
        let d = block_decomposition(&m, &zero).unwrap();
        let s = &d.summary;
        assert_eq!((s.hh1_dim, s.h1_diagonal_dim, s.h1_upper_dim, s.h1_lower_dim), (3, 3, 3, 3));
        assert_eq!((s.upper_dim, s.lower_dim), (0, 0));
        assert!(s.all_hold());
    }

    #[test]
    fn transitivity_on_scalars() {
        let k = k();
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        let m2 = Arc::new(Bimodule::scalar_power(k.clone(), 2));
        let r = restriction_transitivity(&m, &m2, &m).unwrap();
        assert_eq!(r.dims, [15, 8, 3, 0]);
        assert!(r.commutes());
    }

    #[test]
    fn restriction_search_reports() {
        let k = k();
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        let r = restriction_bracket_search(&m, &m).unwrap();
        assert_eq!(r.pairs_checked, 3);
    }

    #[test]
    fn inner_counts() {
        for m in 0..=3 {
            let r = inner_count(&kronecker(Rationals, m));
            assert!(r.holds(), "{r:?}");
        }
        // [T₂ T₂; 0 K] with T₂ upper triangular: T₂ has inner derivations, so only the general
        // count applies. Z(T) is the scalars, so Int(T) has dimension 7 − 1.
        let t2 = Arc::new(BasisAlgebra::upper_triangular(Rationals, 2));
        let col = Arc::new(Bimodule::free_rank_one(t2.clone(), k()));
        let t = TriangularAlgebra::new(col);
        let r = inner_count(&t);
        assert_eq!(r.int_dim, 6);
        assert!(r.holds() && !r.blocks_commutative && r.central_count != r.int_dim);
    }
}
