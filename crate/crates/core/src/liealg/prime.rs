//! Derivations `[α γ; 0 β]` of `[A X; 0 B]` with vanishing `m₀` part, for `X` a direct sum of
//! bimodules. They are encoded as triples `(α, β, γ)` with `α ∈ Der A`, `β ∈ Der B`,
//! `γ ∈ End_K(X)` and `γ(ax) = α(a)x + aγ(x)`, `γ(xb) = γ(x)b + xβ(b)`.

use std::sync::Arc;

use super::system::{commutator, push_leibniz, Equations, Multiplications};
use super::triangular::TriangularDerivation;
use crate::algcore::{mat_to_vec, vec_to_mat, BasisAlgebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::{prefix_sums, Field, Mat, Quotient, SparseVec, Subspace};

/// The space `Der′` of such triples, its inner part `Int′` and the quotient `HH¹ = Der′/Int′`.
/// Coordinates are `vec(α) | vec(β) | vec(γ)`, each row-major.
#[derive(Clone, Debug)]
pub struct PrimeDerivations<F: Field> {
    a: Arc<BasisAlgebra<F>>,
    b: Arc<BasisAlgebra<F>>,
    parts: Vec<Arc<Bimodule<F>>>,
    x: Bimodule<F>,
    offsets: Vec<usize>,
    block_diagonal: bool,
    space: Subspace<F>,
    inner: Subspace<F>,
    hh1: Quotient<F>,
}

impl<F: Field> PrimeDerivations<F> {
    /// With `block_diagonal`, `γ` is required to preserve each summand of `X`.
    pub fn new(
        a: Arc<BasisAlgebra<F>>,
        b: Arc<BasisAlgebra<F>>,
        parts: Vec<Arc<Bimodule<F>>>,
        block_diagonal: bool,
    ) -> Result<Self> {
        let mut x = Bimodule::zero(a.clone(), b.clone());
        for p in &parts {
            x = x.direct_sum(p)?;
        }
        let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
        let offsets = prefix_sums(&dims);
        let layout = Layout { da: a.dim(), db: b.dim(), dx: x.dim() };
        let space = solve_space(&a, &b, &x, &offsets, block_diagonal, layout);
        let inner = inner_space(&a, &b, &x, layout);
        let hh1 = Quotient::new(&space, &inner)
            .map_err(|e| Error::BlockStructureViolated(format!("inner part is not contained: {e}")))?;
        Ok(PrimeDerivations { a, b, parts, x, offsets, block_diagonal, space, inner, hh1 })
    }

    pub fn left_algebra(&self) -> &Arc<BasisAlgebra<F>> {
        &self.a
    }

    pub fn right_algebra(&self) -> &Arc<BasisAlgebra<F>> {
        &self.b
    }

    pub fn parts(&self) -> &[Arc<Bimodule<F>>] {
        &self.parts
    }

    /// The direct sum `X` of the parts.
    pub fn module(&self) -> &Bimodule<F> {
        &self.x
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.block_diagonal
    }

    /// `Der′` as a subspace of the coordinate space.
    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// `Int′`: the triples `(ad a₀, ad b₀, x ↦ a₀x − xb₀)`.
    pub fn inner(&self) -> &Subspace<F> {
        &self.inner
    }

    pub fn hh1(&self) -> &Quotient<F> {
        &self.hh1
    }

    pub fn coordinate_dim(&self) -> usize {
        self.layout().total()
    }

    fn layout(&self) -> Layout {
        Layout { da: self.a.dim(), db: self.b.dim(), dx: self.x.dim() }
    }

    fn field(&self) -> F {
        *self.a.field()
    }

    /// Coordinate range of part `i` inside `X`.
    pub fn part_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.parts[i].dim()
    }

    pub fn pack(&self, alpha: &Mat<F>, beta: &Mat<F>, gamma: &Mat<F>) -> SparseVec<F::Elem> {
        let l = self.layout();
        SparseVec::concat(&[
            (&mat_to_vec(alpha), l.da * l.da),
            (&mat_to_vec(beta), l.db * l.db),
            (&mat_to_vec(gamma), l.dx * l.dx),
        ])
    }

    pub fn unpack(&self, v: &SparseVec<F::Elem>) -> (Mat<F>, Mat<F>, Mat<F>) {
        let f = self.field();
        let l = self.layout();
        let (o1, o2) = (l.da * l.da, l.da * l.da + l.db * l.db);
        (
            vec_to_mat(f, &v.slice(0, o1), l.da, l.da),
            vec_to_mat(f, &v.slice(o1, o2), l.db, l.db),
            vec_to_mat(f, &v.slice(o2, l.total()), l.dx, l.dx),
        )
    }

    /// The block form `[α (γ, 0); 0 β]` of a coordinate vector.
    pub fn to_triangular(&self, v: &SparseVec<F::Elem>) -> TriangularDerivation<F> {
        let (alpha, beta, mu) = self.unpack(v);
        TriangularDerivation { alpha, beta, mu, m0: SparseVec::zero() }
    }

    /// The componentwise commutator, which is the bracket of derivations when `m₀ = 0`.
    pub fn bracket(&self, u: &SparseVec<F::Elem>, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let (a0, b0, g0) = self.unpack(u);
        let (a1, b1, g1) = self.unpack(v);
        self.pack(&commutator(&a0, &a1), &commutator(&b0, &b1), &commutator(&g0, &g1))
    }

    /// A triple `(0, 0, γ)` whose only block is `φ : part from → part to`.
    pub fn embed_block(&self, phi: &Mat<F>, from: usize, to: usize) -> SparseVec<F::Elem> {
        let l = self.layout();
        let (r0, c0) = (self.offsets[to], self.offsets[from]);
        let gamma = Mat::from_triplets(
            self.field(),
            l.dx,
            l.dx,
            phi.triplets().map(|(r, c, v)| (r + r0, c + c0, v.clone())),
        );
        self.pack(&Mat::zeros(self.field(), l.da, l.da), &Mat::zeros(self.field(), l.db, l.db), &gamma)
    }

    /// Keeps `α`, `β` and the part of `γ` between the summands listed in `keep`, giving
    /// coordinates for the derivations of `[A X'; 0 B]` with `X'` the sum of those summands.
    pub fn restrict(&self, v: &SparseVec<F::Elem>, keep: &[usize]) -> SparseVec<F::Elem> {
        let f = self.field();
        let (alpha, beta, gamma) = self.unpack(v);
        let idx: Vec<usize> = keep.iter().flat_map(|&i| self.part_range(i)).collect();
        let d = idx.len();
        let mut trip = Vec::new();
        for (r2, &r) in idx.iter().enumerate() {
            for (c2, &c) in idx.iter().enumerate() {
                let x = gamma.get(r, c);
                if !f.is_zero(&x) {
                    trip.push((r2, c2, x));
                }
            }
        }
        let g = Mat::from_triplets(f, d, d, trip);
        let l = self.layout();
        SparseVec::concat(&[(&mat_to_vec(&alpha), l.da * l.da), (&mat_to_vec(&beta), l.db * l.db), (&mat_to_vec(&g), d * d)])
    }

    /// The matrix of the induced map `HH¹ → HH¹` of [`Self::restrict`], in the quotient bases.
    pub fn restriction_on_hh1(&self, target: &PrimeDerivations<F>, keep: &[usize]) -> Result<Mat<F>> {
        self.check_target(target, keep)?;
        let images: Vec<_> = self.hh1.reps().iter().map(|r| self.restrict(r, keep)).collect();
        target
            .hh1
            .matrix_of(&images)
            .ok_or_else(|| Error::BlockStructureViolated("restriction leaves the derivations".into()))
    }

    fn check_target(&self, target: &PrimeDerivations<F>, keep: &[usize]) -> Result<()> {
        let ok = keep.len() == target.parts.len()
            && keep
                .iter()
                .zip(&target.parts)
                .all(|(&i, p)| self.parts.get(i).is_some_and(|q| Arc::ptr_eq(q, p) || **q == **p));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("restriction target does not match the kept summands".into()))
        }
    }

    /// Whether the class of `v` in `HH¹` vanishes.
    pub fn is_inner(&self, v: &SparseVec<F::Elem>) -> bool {
        self.inner.contains(v)
    }
}

#[derive(Clone, Copy)]
struct Layout {
    da: usize,
    db: usize,
    dx: usize,
}

impl Layout {
    fn total(&self) -> usize {
        self.da * self.da + self.db * self.db + self.dx * self.dx
    }
    fn alpha(&self, r: usize, c: usize) -> usize {
        r * self.da + c
    }
    fn beta(&self, r: usize, c: usize) -> usize {
        self.da * self.da + r * self.db + c
    }
    fn gamma(&self, r: usize, c: usize) -> usize {
        self.da * self.da + self.db * self.db + r * self.dx + c
    }
}

fn solve_space<F: Field>(
    a: &BasisAlgebra<F>,
    b: &BasisAlgebra<F>,
    x: &Bimodule<F>,
    offsets: &[usize],
    block_diagonal: bool,
    l: Layout,
) -> Subspace<F> {
    let f = *a.field();
    let mut eqs = Equations::new(f, l.total());
    push_leibniz(&mut eqs, a, 0);
    push_leibniz(&mut eqs, b, l.da * l.da);
    // γ L_i − L_i γ − L_{α(a_i)} = 0 and γ R_j − R_j γ − R_{β(b_j)} = 0, entrywise.
    let lefts = x.left_matrices();
    let rights = x.right_matrices();
    let sides: [(&[Mat<F>], &dyn Fn(usize, usize) -> usize); 2] =
        [(lefts, &|s, i| l.alpha(s, i)), (rights, &|s, j| l.beta(s, j))];
    for (acts, derivation_var) in sides {
        for (i, act) in acts.iter().enumerate() {
            let act_t = act.transpose();
            for r in 0..l.dx {
                for c in 0..l.dx {
                    let mut pairs: Vec<(usize, F::Elem)> =
                        act_t.row(c).entries().iter().map(|(t, v)| (l.gamma(r, *t), v.clone())).collect();
                    pairs.extend(act.row(r).entries().iter().map(|(t, v)| (l.gamma(*t, c), f.neg(v))));
                    for (s, other) in acts.iter().enumerate() {
                        let v = other.get(r, c);
                        if !f.is_zero(&v) {
                            pairs.push((derivation_var(s, i), f.neg(&v)));
                        }
                    }
                    eqs.push(pairs);
                }
            }
        }
    }
    if block_diagonal {
        let part_of = |i: usize| offsets.partition_point(|&o| o <= i);
        for r in 0..l.dx {
            for c in 0..l.dx {
                if part_of(r) != part_of(c) {
                    eqs.push(vec![(l.gamma(r, c), f.one())]);
                }
            }
        }
    }
    eqs.solutions()
}

fn inner_space<F: Field>(a: &BasisAlgebra<F>, b: &BasisAlgebra<F>, x: &Bimodule<F>, l: Layout) -> Subspace<F> {
    let f = *a.field();
    let ma = Multiplications::of(a);
    let mb = Multiplications::of(b);
    let mut gens = Vec::new();
    let zero_a = Mat::zeros(f, l.da, l.da);
    let zero_b = Mat::zeros(f, l.db, l.db);
    let pack = |al: &Mat<F>, be: &Mat<F>, ga: &Mat<F>| {
        SparseVec::concat(&[
            (&mat_to_vec(al), l.da * l.da),
            (&mat_to_vec(be), l.db * l.db),
            (&mat_to_vec(ga), l.dx * l.dx),
        ])
    };
    for i in 0..l.da {
        gens.push(pack(&ma.left[i].sub(&ma.right[i]), &zero_b, x.left_basis_action(i)));
    }
    for j in 0..l.db {
        gens.push(pack(&zero_a, &mb.left[j].sub(&mb.right[j]), &x.right_basis_action(j).neg()));
    }
    Subspace::span(f, l.total(), gens.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::kronecker;
    use crate::exactla::Rationals;

    fn k() -> Arc<BasisAlgebra<Rationals>> {
        Arc::new(BasisAlgebra::ground(Rationals))
    }

    #[test]
    fn kronecker_prime_derivations() {
        // Over A = B = K every triple is (0, 0, γ) with γ arbitrary, and Int′ is the scalars.
        for m in 0..=3 {
            let k = k();
            let x = Arc::new(Bimodule::scalar_power(k.clone(), m));
            let p = PrimeDerivations::new(k.clone(), k, vec![x], false).unwrap();
            assert_eq!(p.space().dim(), m * m);
            assert_eq!(p.inner().dim(), usize::from(m > 0));
            assert_eq!(p.hh1().dim(), (m * m).saturating_sub(1));
        }
    }

    #[test]
    fn block_diagonal_constraint() {
        let k = k();
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 2));
        let n = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        let full = PrimeDerivations::new(k.clone(), k.clone(), vec![m.clone(), n.clone()], false).unwrap();
        let diag = PrimeDerivations::new(k.clone(), k, vec![m, n], true).unwrap();
        assert_eq!(full.space().dim(), 9);
        assert_eq!(diag.space().dim(), 5);
        assert!(diag.inner().dim() == 1 && diag.hh1().dim() == 4);
    }

    #[test]
    fn triples_are_derivations_of_the_triangular_algebra() {
        let t = kronecker(Rationals, 2);
        let p = PrimeDerivations::new(t.a.clone(), t.b.clone(), vec![t.m.clone()], false).unwrap();
        for v in p.space().basis() {
            let d = p.to_triangular(v);
            assert!(d.satisfies_compatibility(&t));
            assert!(crate::liealg::system::is_derivation(&t.algebra, &d.recompose(&t)));
        }
    }

    #[test]
    fn upper_triangular_coefficients() {
        // A = B = T₂ (upper triangular 2×2), X = A: derivations exist beyond the inner ones
        // only through γ, and the restriction to X keeps brackets.
        let a = Arc::new(BasisAlgebra::upper_triangular(Rationals, 2));
        let x = Arc::new(Bimodule::regular(a.clone()));
        let p = PrimeDerivations::new(a.clone(), a.clone(), vec![x.clone()], false).unwrap();
        let basis = p.space().basis().to_vec();
        for u in &basis {
            for v in &basis {
                assert!(p.space().contains(&p.bracket(u, v)));
            }
        }
        assert!(p.inner().is_subspace_of(p.space()));
    }

    #[test]
    fn restriction_to_a_summand() {
        let k = k();
        let m = Arc::new(Bimodule::scalar_power(k.clone(), 2));
        let n = Arc::new(Bimodule::scalar_power(k.clone(), 1));
        let big = PrimeDerivations::new(k.clone(), k.clone(), vec![m.clone(), n], false).unwrap();
        let small = PrimeDerivations::new(k.clone(), k, vec![m], false).unwrap();
        let r = big.restriction_on_hh1(&small, &[0]).unwrap();
        assert_eq!((r.rows(), r.cols()), (3, 8));
        assert_eq!(crate::exactla::rank(&r), 3);
    }
}
