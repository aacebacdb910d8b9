//! The triangular cochain complex `C_tri(M, N) = Hom_{A⊗B^o}(C^{A,B^o}_* M, N)`.
//!
//! In degree `n` it has three blocks, stored in this order:
//! * the `A`-block `C^n(A, Hom_{B^o}(M, N))`,
//! * the `B`-block `C^n(B, Hom_A(M, N))`,
//! * the `K`-block `⊕_{p+q=n−1} Hom_K(Ā^{⊗p} ⊗ M ⊗ B̄^{⊗q}, N)`.
//!
//! The `K`-block is a subcomplex (the kernel of `i* = (i^A*, i^B*)`), and the `A`- and
//! `B`-blocks are quotient complexes equal to plain Hochschild complexes.

use std::sync::Arc;

use crate::algcore::{hom_over_left, hom_over_right, hom_subspace, BasisAlgebra, Bimodule, EndSide};
use crate::error::Result;
use crate::exactla::{Field, Mat, SparseVec, Subspace};
use crate::hochschild::{
    bar_cochain_complex, decode, encode, hochschild_differential, BarBasis, Budget, ChainMap,
    CochainComplex, LetterActions,
};

/// `C_tri(M, N)` with the block layout and the two projections onto Hochschild complexes.
#[derive(Clone, Debug)]
pub struct TriangularCochainComplex<F: Field> {
    pub complex: CochainComplex<F>,
    /// `C^*(A, Hom_{B^o}(M, N))`, also the quotient by the `B`- and `K`-blocks' complement.
    pub a_complex: CochainComplex<F>,
    /// `C^*(B, Hom_A(M, N))`.
    pub b_complex: CochainComplex<F>,
    pub a_dims: Vec<usize>,
    pub b_dims: Vec<usize>,
    pub k_dims: Vec<usize>,
    pub(crate) layout: KLayout,
    /// `Hom_{B^o}(M, N)` inside `Hom_K(M, N)` (row-major `dim N × dim M` coordinates).
    pub hom_a: Subspace<F>,
    /// `Hom_A(M, N)` inside `Hom_K(M, N)`.
    pub hom_b: Subspace<F>,
}

impl<F: Field> TriangularCochainComplex<F> {
    pub fn top(&self) -> usize {
        self.complex.top()
    }

    /// The projection `i^A*` onto the `A`-block in degree `n`.
    pub fn proj_a(&self, n: usize) -> Mat<F> {
        let f = *self.complex.field();
        let (a, b, k) = (self.a_dims[n], self.b_dims[n], self.k_dims[n]);
        let id = Mat::identity(f, a);
        Mat::block(f, &[a], &[a, b, k], &[vec![Some(&id), None, None]])
    }

    /// The projection `i^{B^o}*` onto the `B`-block in degree `n`.
    pub fn proj_b(&self, n: usize) -> Mat<F> {
        let f = *self.complex.field();
        let (a, b, k) = (self.a_dims[n], self.b_dims[n], self.k_dims[n]);
        let id = Mat::identity(f, b);
        Mat::block(f, &[b], &[a, b, k], &[vec![None, Some(&id), None]])
    }

    pub fn inclusion_a(&self) -> ChainMap<F> {
        ChainMap::new((0..=self.top()).map(|n| self.proj_a(n)).collect())
    }

    pub fn inclusion_b(&self) -> ChainMap<F> {
        ChainMap::new((0..=self.top()).map(|n| self.proj_b(n)).collect())
    }

    /// `Ker i*`, i.e. the `K`-block subcomplex. Its cohomology is `Ext^{*−1}(M, N)`.
    pub fn kernel_complex(&self) -> CochainComplex<F> {
        let diffs = (0..self.top())
            .map(|n| {
                let r0 = self.a_dims[n + 1] + self.b_dims[n + 1];
                let c0 = self.a_dims[n] + self.b_dims[n];
                self.complex.diff(n).sub_block(r0, r0 + self.k_dims[n + 1], c0, c0 + self.k_dims[n])
            })
            .collect();
        let labels = (0..=self.top()).map(|n| format!("Ker i*^{n}")).collect();
        CochainComplex::new(*self.complex.field(), self.k_dims.clone(), diffs, labels)
            .expect("block shapes are consistent")
    }

    /// Whether `i*` is surjective in every degree.
    pub fn inclusion_is_surjective(&self) -> bool {
        (0..=self.top()).all(|n| {
            crate::exactla::rank(&self.proj_a(n)) == self.a_dims[n]
                && crate::exactla::rank(&self.proj_b(n)) == self.b_dims[n]
        })
    }
}

/// Sizes and offsets of the pieces `Hom(Ā^p ⊗ M ⊗ B̄^q, N)` of the `K`-block.
#[derive(Clone, Debug)]
pub(crate) struct KLayout {
    pub(crate) ka: usize,
    pub(crate) kb: usize,
    pub(crate) dm: usize,
    pub(crate) dn: usize,
}

impl KLayout {
    pub(crate) fn piece_dim(&self, p: usize, q: usize) -> usize {
        self.ka.pow(p as u32) * self.dm * self.kb.pow(q as u32) * self.dn
    }

    /// Total dimension of the `K`-block in degree `n` (pieces with `p + q = n − 1`).
    pub(crate) fn dim(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        (0..n).map(|p| self.piece_dim(p, n - 1 - p)).sum()
    }

    pub(crate) fn offset(&self, n: usize, p: usize) -> usize {
        (0..p).map(|pp| self.piece_dim(pp, n - 1 - pp)).sum()
    }

    /// Index of `(aw, m, bw, y)` in the degree-`n` block with `p = len aw`.
    pub(crate) fn index(&self, n: usize, p: usize, aw: usize, m: usize, bw: usize, y: usize) -> usize {
        let q = n - 1 - p;
        self.offset(n, p) + ((aw * self.dm + m) * self.kb.pow(q as u32) + bw) * self.dn + y
    }
}

/// Builds `C_tri(M, N)` in degrees `0..n_max−1`.
pub fn triangular_cochain<F: Field>(
    m: &Bimodule<F>,
    n: &Bimodule<F>,
    n_max: usize,
    budget: Budget,
) -> Result<TriangularCochainComplex<F>> {
    m.check_compatible(n)?;
    let f = *m.field();
    let a: Arc<BasisAlgebra<F>> = m.left_algebra().clone();
    let b: Arc<BasisAlgebra<F>> = m.right_algebra().clone();
    let hom_a = hom_subspace(m, n, EndSide::OverB)?;
    let hom_b = hom_subspace(m, n, EndSide::OverA)?;
    let bim_a = hom_over_right(m, n)?;
    let bim_b = hom_over_left(m, n)?;
    let a_complex = bar_cochain_complex(&a, &bim_a, n_max, true, budget)?;
    let b_complex = bar_cochain_complex(&b, &bim_b, n_max, true, budget)?;
    let bar_a = BarBasis::new(a.clone(), true);
    let bar_b = BarBasis::new(b.clone(), true);
    let lay = KLayout { ka: bar_a.len(), kb: bar_b.len(), dm: m.dim(), dn: n.dim() };
    let a_dims = a_complex.dims().to_vec();
    let b_dims = b_complex.dims().to_vec();
    let k_dims: Vec<usize> = (0..n_max).map(|d| lay.dim(d)).collect();
    let dims: Vec<usize> = (0..n_max).map(|d| a_dims[d] + b_dims[d] + k_dims[d]).collect();
    for d in 0..n_max - 1 {
        budget.check(d, dims[d + 1], dims[d])?;
    }
    let act_a = LetterActions::new(&bar_a, &bim_a);
    let act_b = LetterActions::new(&bar_b, &bim_b);
    let mut diffs = Vec::with_capacity(n_max - 1);
    for deg in 0..n_max - 1 {
        let mut trip: Vec<(usize, usize, F::Elem)> = Vec::new();
        let da = hochschild_differential(&bar_a, &act_a, deg);
        for (r, c, v) in da.triplets() {
            trip.push((r, c, v.clone()));
        }
        let db = hochschild_differential(&bar_b, &act_b, deg);
        for (r, c, v) in db.triplets() {
            trip.push((a_dims[deg + 1] + r, a_dims[deg] + c, v.clone()));
        }
        let ctx = KRows {
            f,
            m,
            n,
            bar_a: &bar_a,
            bar_b: &bar_b,
            lay: &lay,
            hom_a: &hom_a,
            hom_b: &hom_b,
            row_off: a_dims[deg + 1] + b_dims[deg + 1],
            col_b: a_dims[deg],
            col_k: a_dims[deg] + b_dims[deg],
        };
        ctx.push_k_rows(deg, &mut trip);
        diffs.push(Mat::from_triplets(f, dims[deg + 1], dims[deg], trip));
    }
    let labels = (0..n_max).map(|d| format!("C_tri^{d}(M,N)")).collect();
    let complex = CochainComplex::new(f, dims, diffs, labels)?;
    Ok(TriangularCochainComplex { complex, a_complex, b_complex, a_dims, b_dims, k_dims, layout: lay, hom_a, hom_b })
}

struct KRows<'a, F: Field> {
    f: F,
    m: &'a Bimodule<F>,
    n: &'a Bimodule<F>,
    bar_a: &'a BarBasis<F>,
    bar_b: &'a BarBasis<F>,
    lay: &'a KLayout,
    hom_a: &'a Subspace<F>,
    hom_b: &'a Subspace<F>,
    row_off: usize,
    col_b: usize,
    col_k: usize,
}

impl<F: Field> KRows<'_, F> {
    /// Rows of `δ^deg` landing in the `K`-block of degree `deg + 1`. For `F` in the `K`-block,
    /// `G` in the `A`-block and `H` in the `B`-block, and `p + q = deg`:
    ///
    /// `(δf)(a_1..a_p, m, b_1..b_q) = [p≥1] a_1·F(a_2..a_p, m, b) + Σ_{i=1}^{p−1} (−1)^i F(..a_i a_{i+1}..)
    ///   + [p≥1] (−1)^p F(a_1..a_{p−1}, a_p m, b) + [p=0] H(b_1..b_q)(m)
    ///   + (−1)^{p+1} ( [q≥1] F(a, m b_1, b_2..b_q) + Σ_{j=1}^{q−1} (−1)^j F(..b_j b_{j+1}..)
    ///   + [q≥1] (−1)^q F(a, m, b_1..b_{q−1})·b_q + [q=0] G(a_1..a_p)(m) )`.
    fn push_k_rows(&self, deg: usize, trip: &mut Vec<(usize, usize, F::Elem)>) {
        let f = &self.f;
        let lay = self.lay;
        let (ka, kb, dm, dn) = (lay.ka, lay.kb, lay.dm, lay.dn);
        let one = f.one();
        let minus = f.neg(&one);
        let sign = |e: usize| if e.is_multiple_of(2) { one.clone() } else { minus.clone() };
        let src = deg; // degree of the source cochain
        let tgt = deg + 1;
        for p in 0..=deg {
            let q = deg - p;
            let sigma = sign(p + 1);
            for awi in 0..ka.pow(p as u32) {
                let aw = decode(awi, p, ka);
                for bwi in 0..kb.pow(q as u32) {
                    let bw = decode(bwi, q, kb);
                    for mi in 0..dm {
                        for y in 0..dn {
                            let row = self.row_off + lay.index(tgt, p, awi, mi, bwi, y);
                            let mut push = |col: usize, v: F::Elem| trip.push((row, col, v));
                            if p >= 1 {
                                let a1 = self.bar_a.letters[aw[0]];
                                let tail = encode(&aw[1..], ka);
                                for (x, v) in self.n.left_basis_action(a1).row(y).entries() {
                                    push(self.col_k + lay.index(src, p - 1, tail, mi, bwi, *x), v.clone());
                                }
                                for i in 1..p {
                                    for (s, c) in self.bar_a.letter_product(aw[i - 1], aw[i]).entries() {
                                        let mut merged = aw[..i - 1].to_vec();
                                        merged.push(*s);
                                        merged.extend_from_slice(&aw[i + 1..]);
                                        let col = lay.index(src, p - 1, encode(&merged, ka), mi, bwi, y);
                                        push(self.col_k + col, f.mul(&sign(i), c));
                                    }
                                }
                                let ap = self.bar_a.letters[aw[p - 1]];
                                let head = encode(&aw[..p - 1], ka);
                                for (m2, c) in self.m.left_basis_action(ap).column(mi).entries() {
                                    let col = lay.index(src, p - 1, head, *m2, bwi, y);
                                    push(self.col_k + col, f.mul(&sign(p), c));
                                }
                            } else {
                                let h = self.hom_b.dim();
                                for (s, hs) in self.hom_b.basis().iter().enumerate() {
                                    if let Some(v) = hs.get(y * dm + mi) {
                                        push(self.col_b + bwi * h + s, v.clone());
                                    }
                                }
                            }
                            if q >= 1 {
                                let b1 = self.bar_b.letters[bw[0]];
                                let tail = encode(&bw[1..], kb);
                                for (m2, c) in self.m.right_basis_action(b1).column(mi).entries() {
                                    let col = lay.index(src, p, awi, *m2, tail, y);
                                    push(self.col_k + col, f.mul(&sigma, c));
                                }
                                for j in 1..q {
                                    for (s, c) in self.bar_b.letter_product(bw[j - 1], bw[j]).entries() {
                                        let mut merged = bw[..j - 1].to_vec();
                                        merged.push(*s);
                                        merged.extend_from_slice(&bw[j + 1..]);
                                        let col = lay.index(src, p, awi, mi, encode(&merged, kb), y);
                                        push(self.col_k + col, f.mul(&f.mul(&sigma, &sign(j)), c));
                                    }
                                }
                                let bq = self.bar_b.letters[bw[q - 1]];
                                let head = encode(&bw[..q - 1], kb);
                                let coef = f.mul(&sigma, &sign(q));
                                for (x, v) in self.n.right_basis_action(bq).row(y).entries() {
                                    let col = lay.index(src, p, awi, mi, head, *x);
                                    push(self.col_k + col, f.mul(&coef, v));
                                }
                            } else {
                                let h = self.hom_a.dim();
                                for (s, gs) in self.hom_a.basis().iter().enumerate() {
                                    if let Some(v) = gs.get(y * dm + mi) {
                                        push(awi * h + s, f.mul(&sigma, v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Coordinates of `φ` (a `dim N × dim M` matrix) in the basis of a Hom subspace.
pub(crate) fn hom_coords<F: Field>(space: &Subspace<F>, phi: &Mat<F>) -> Option<SparseVec<F::Elem>> {
    let v = crate::algcore::mat_to_vec(phi);
    space.coordinates(&v).map(|c| SparseVec::from_dense(space.field(), &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::hochschild::{cohomology_dims, ext_dims};

    fn ground() -> Arc<BasisAlgebra<Rationals>> {
        Arc::new(BasisAlgebra::ground(Rationals))
    }

    #[test]
    fn zero_bimodules_give_zero_kernel() {
        let k = ground();
        let z = Bimodule::zero(k.clone(), k.clone());
        let t = triangular_cochain(&z, &z, 4, Budget::DEFAULT).unwrap();
        assert!(t.complex.is_complex());
        assert_eq!(t.k_dims, vec![0, 0, 0, 0]);
        assert!(t.complex.dims().iter().all(|d| *d == 0));
    }

    #[test]
    fn kernel_computes_shifted_ext() {
        let k = ground();
        for m in 1..=2 {
            let km = Bimodule::scalar_power(k.clone(), m);
            let t = triangular_cochain(&km, &km, 4, Budget::DEFAULT).unwrap();
            assert!(t.complex.is_complex());
            assert!(t.inclusion_is_surjective());
            assert_eq!(cohomology_dims(&t.kernel_complex()), vec![0, m * m, 0]);
        }
    }

    #[test]
    fn kernel_matches_ext_over_nontrivial_algebras() {
        let q = Rationals;
        let u = Arc::new(BasisAlgebra::upper_triangular(q, 2));
        let d = Arc::new(BasisAlgebra::dual_numbers(q));
        let cases = vec![
            (Bimodule::regular(u.clone()), Bimodule::regular(u.clone())),
            (Bimodule::regular(d.clone()), Bimodule::regular(d.clone())),
            (Bimodule::free_rank_one(u.clone(), d.clone()), Bimodule::free_rank_one(u.clone(), d.clone())),
        ];
        for (m, n) in &cases {
            let t = triangular_cochain(m, n, 4, Budget::DEFAULT).unwrap();
            assert!(t.complex.is_complex());
            assert!(t.inclusion_a().commutes(&t.complex, &t.a_complex));
            assert!(t.inclusion_b().commutes(&t.complex, &t.b_complex));
            let kernel = cohomology_dims(&t.kernel_complex());
            let ext = ext_dims(m, n, 3, Budget::DEFAULT).unwrap();
            assert_eq!(kernel[0], 0);
            assert_eq!(&kernel[1..], &ext[..]);
        }
    }
}
