//! The relative bar chain complex `C^{A,B^o}_* M`.
//!
//! In degree `k` it is `⊕_{p+q=k+1} P_{p,q}` with
//! `P_{p,q} = A ⊗ Ā^{⊗p−1} ⊗ M ⊗ B̄^{⊗q−1} ⊗ B` for `p, q ≥ 1`,
//! `P_{p,0} = A ⊗ Ā^{⊗p−1} ⊗ M` and `P_{0,q} = M ⊗ B̄^{⊗q−1} ⊗ B`.
//! The boundary is `d_A + (−1)^p d_B`, where `d_A` and `d_B` are the bar boundaries of the
//! two one-sided resolutions of `M`.

use crate::algcore::Bimodule;
use crate::error::Result;
use crate::exactla::{rank, Field, Mat, SparseVec};
use crate::hochschild::{decode, encode, BarBasis, Budget};

/// A basis element of `P_{p,q}`. Absent components are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelElem {
    pub p: usize,
    pub q: usize,
    pub a0: usize,
    pub aw: Vec<usize>,
    pub m: usize,
    pub bw: Vec<usize>,
    pub bl: usize,
}

/// `C^{A,B^o}_* M` in degrees `0..n_max−1`.
#[derive(Clone, Debug)]
pub struct RelativeBar<F: Field> {
    field: F,
    da: usize,
    db: usize,
    ka: usize,
    kb: usize,
    dm: usize,
    pub dims: Vec<usize>,
    /// `boundaries[k] : C_{k+1} → C_k`.
    pub boundaries: Vec<Mat<F>>,
}

impl<F: Field> RelativeBar<F> {
    fn piece_dim(&self, p: usize, q: usize) -> usize {
        let a = if p >= 1 { self.da * self.ka.pow(p as u32 - 1) } else { 1 };
        let b = if q >= 1 { self.kb.pow(q as u32 - 1) * self.db } else { 1 };
        a * self.dm * b
    }

    fn degree_dim(&self, k: usize) -> usize {
        (0..=k + 1).map(|p| self.piece_dim(p, k + 1 - p)).sum()
    }

    fn offset(&self, k: usize, p: usize) -> usize {
        (0..p).map(|pp| self.piece_dim(pp, k + 1 - pp)).sum()
    }

    /// Index of `e` in its degree `p + q − 1`.
    pub fn encode(&self, e: &RelElem) -> usize {
        let k = e.p + e.q - 1;
        let aw_len = self.ka.pow(e.p.saturating_sub(1) as u32);
        let bw_len = self.kb.pow(e.q.saturating_sub(1) as u32);
        let db = if e.q >= 1 { self.db } else { 1 };
        let inner = (((e.a0 * aw_len + encode(&e.aw, self.ka)) * self.dm + e.m) * bw_len
            + encode(&e.bw, self.kb))
            * db
            + e.bl;
        self.offset(k, e.p) + inner
    }

    /// Basis element with index `i` in degree `k`.
    pub fn decode(&self, k: usize, mut i: usize) -> RelElem {
        let mut p = 0;
        while i >= self.piece_dim(p, k + 1 - p) {
            i -= self.piece_dim(p, k + 1 - p);
            p += 1;
        }
        let q = k + 1 - p;
        let db = if q >= 1 { self.db } else { 1 };
        let bw_len = self.kb.pow(q.saturating_sub(1) as u32);
        let aw_len = self.ka.pow(p.saturating_sub(1) as u32);
        let bl = i % db;
        i /= db;
        let bwi = i % bw_len;
        i /= bw_len;
        let m = i % self.dm;
        i /= self.dm;
        let awi = i % aw_len;
        let a0 = i / aw_len;
        RelElem {
            p,
            q,
            a0,
            aw: decode(awi, p.saturating_sub(1), self.ka),
            m,
            bw: decode(bwi, q.saturating_sub(1), self.kb),
            bl,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Homology dimensions in degrees `0..dims.len()−1` (the top degree has no incoming boundary).
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(rank).collect();
        (0..self.boundaries.len())
            .map(|k| {
                let out = if k == 0 { 0 } else { ranks[k - 1] };
                self.dims[k] - out - ranks[k]
            })
            .collect()
    }

    /// Whether `∂∘∂ = 0` in every computed degree.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Builds `C^{A,B^o}_* M` in degrees `0..n_max−1`.
pub fn relative_bar<F: Field>(m: &Bimodule<F>, n_max: usize, budget: Budget) -> Result<RelativeBar<F>> {
    let f = *m.field();
    let (a, b) = (m.left_algebra().clone(), m.right_algebra().clone());
    let bar_a = BarBasis::new(a.clone(), true);
    let bar_b = BarBasis::new(b.clone(), true);
    let mut rb = RelativeBar {
        field: f,
        da: a.dim(),
        db: b.dim(),
        ka: bar_a.len(),
        kb: bar_b.len(),
        dm: m.dim(),
        dims: Vec::new(),
        boundaries: Vec::new(),
    };
    rb.dims = (0..n_max).map(|k| rb.degree_dim(k)).collect();
    for k in 1..n_max {
        budget.check(k, rb.dims[k - 1], rb.dims[k])?;
        let mut trip = Vec::new();
        for col in 0..rb.dims[k] {
            let e = rb.decode(k, col);
            for (t, c) in boundary_of(&rb, m, &bar_a, &bar_b, &e) {
                trip.push((rb.encode(&t), col, c));
            }
        }
        rb.boundaries.push(Mat::from_triplets(f, rb.dims[k - 1], rb.dims[k], trip));
    }
    Ok(rb)
}

fn boundary_of<F: Field>(
    rb: &RelativeBar<F>,
    m: &Bimodule<F>,
    bar_a: &BarBasis<F>,
    bar_b: &BarBasis<F>,
    e: &RelElem,
) -> Vec<(RelElem, F::Elem)> {
    let f = rb.field;
    let a = &bar_a.algebra;
    let b = &bar_b.algebra;
    let sign = |k: usize| if k.is_multiple_of(2) { f.one() } else { f.neg(&f.one()) };
    let mut out = Vec::new();
    let p = e.p;
    let q = e.q;
    // d_A: merge the A-side tensor factors, the last one acting on m.
    if p >= 1 {
        if p == 1 {
            if q >= 1 {
                for (m2, c) in m.left_basis_action(e.a0).column(e.m).entries() {
                    out.push((RelElem { p: 0, a0: 0, m: *m2, ..e.clone() }, c.clone()));
                }
            }
        } else {
            let a1 = bar_a.letters[e.aw[0]];
            for (s, c) in a.product(e.a0, a1).entries() {
                out.push((RelElem { p: p - 1, a0: *s, aw: e.aw[1..].to_vec(), ..e.clone() }, c.clone()));
            }
            for i in 1..p - 1 {
                for (s, c) in bar_a.letter_product(e.aw[i - 1], e.aw[i]).entries() {
                    let mut aw = e.aw[..i - 1].to_vec();
                    aw.push(*s);
                    aw.extend_from_slice(&e.aw[i + 1..]);
                    out.push((RelElem { p: p - 1, aw, ..e.clone() }, f.mul(&sign(i), c)));
                }
            }
            let last = bar_a.letters[e.aw[p - 2]];
            for (m2, c) in m.left_basis_action(last).column(e.m).entries() {
                let aw = e.aw[..p - 2].to_vec();
                out.push((RelElem { p: p - 1, aw, m: *m2, ..e.clone() }, f.mul(&sign(p - 1), c)));
            }
        }
    }
    // (−1)^p d_B: merge the B-side tensor factors, the first one acting on m.
    if q >= 1 {
        let s0 = sign(p);
        if q == 1 {
            if p >= 1 {
                for (m2, c) in m.right_basis_action(e.bl).column(e.m).entries() {
                    out.push((RelElem { q: 0, bl: 0, m: *m2, ..e.clone() }, f.mul(&s0, c)));
                }
            }
        } else {
            let b1 = bar_b.letters[e.bw[0]];
            for (m2, c) in m.right_basis_action(b1).column(e.m).entries() {
                out.push((RelElem { q: q - 1, m: *m2, bw: e.bw[1..].to_vec(), ..e.clone() }, f.mul(&s0, c)));
            }
            for j in 1..q - 1 {
                for (s, c) in bar_b.letter_product(e.bw[j - 1], e.bw[j]).entries() {
                    let mut bw = e.bw[..j - 1].to_vec();
                    bw.push(*s);
                    bw.extend_from_slice(&e.bw[j + 1..]);
                    out.push((RelElem { q: q - 1, bw, ..e.clone() }, f.mul(&f.mul(&s0, &sign(j)), c)));
                }
            }
            let last = bar_b.letters[e.bw[q - 2]];
            for (s, c) in b.product(last, e.bl).entries() {
                let bw = e.bw[..q - 2].to_vec();
                out.push((RelElem { q: q - 1, bw, bl: *s, ..e.clone() }, f.mul(&f.mul(&s0, &sign(q - 1)), c)));
            }
        }
    }
    out
}

/// Evaluates a cochain of `C_tri^k(M, N)` on the basis of `C^{A,B^o}_k M`, giving the
/// `dim N × dim C_k` matrix of the corresponding `A⊗B^o`-linear map.
pub fn evaluate_cochain<F: Field>(
    tri: &super::TriangularCochainComplex<F>,
    rb: &RelativeBar<F>,
    m: &Bimodule<F>,
    n: &Bimodule<F>,
    k: usize,
    cochain: &SparseVec<F::Elem>,
) -> Mat<F> {
    let f = *m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let lay = &tri.layout;
    let col_b = tri.a_dims[k];
    let col_k = tri.a_dims[k] + tri.b_dims[k];
    let hom_value = |space: &crate::exactla::Subspace<F>, base: usize, mi: usize| -> SparseVec<F::Elem> {
        let mut acc = SparseVec::zero();
        for (s, h) in space.basis().iter().enumerate() {
            let c = cochain.value(&f, base + s);
            if f.is_zero(&c) {
                continue;
            }
            let col = SparseVec::from_pairs(
                &f,
                (0..dn).filter_map(|y| h.get(y * dm + mi).map(|v| (y, v.clone()))),
            );
            acc = acc.add_scaled(&f, &col, &c);
        }
        acc
    };
    let mut cols = Vec::with_capacity(rb.dims[k]);
    for i in 0..rb.dims[k] {
        let e = rb.decode(k, i);
        let value = if e.p >= 1 && e.q >= 1 {
            let (awi, bwi) = (encode(&e.aw, lay.ka), encode(&e.bw, lay.kb));
            let v = SparseVec::from_pairs(
                &f,
                (0..dn)
                    .map(|y| (y, cochain.value(&f, col_k + lay.index(k, e.p - 1, awi, e.m, bwi, y))))
                    ,
            );
            n.left_basis_action(e.a0).mul_vec(&n.right_basis_action(e.bl).mul_vec(&v))
        } else if e.q == 0 {
            let base = encode(&e.aw, lay.ka) * tri.hom_a.dim();
            n.left_basis_action(e.a0).mul_vec(&hom_value(&tri.hom_a, base, e.m))
        } else {
            let base = col_b + encode(&e.bw, lay.kb) * tri.hom_b.dim();
            n.right_basis_action(e.bl).mul_vec(&hom_value(&tri.hom_b, base, e.m))
        };
        cols.push(value);
    }
    Mat::from_columns(f, dn, &cols)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algcore::BasisAlgebra;
    use crate::exactla::Rationals;
    use crate::trireduce::triangular_cochain;

    fn ground() -> Arc<BasisAlgebra<Rationals>> {
        Arc::new(BasisAlgebra::ground(Rationals))
    }

    #[test]
    fn zero_bimodule_gives_zero_complex() {
        let k = ground();
        let rb = relative_bar(&Bimodule::zero(k.clone(), k), 4, Budget::DEFAULT).unwrap();
        assert!(rb.dims.iter().all(|d| *d == 0));
    }

    #[test]
    fn low_degree_over_ground_field() {
        let k = ground();
        let rb = relative_bar(&Bimodule::scalar_power(k, 1), 4, Budget::DEFAULT).unwrap();
        assert_eq!(rb.dims[0], 2);
        assert!(rb.is_complex());
        assert_eq!(rb.homology_dims(), vec![1, 0, 0]);
    }

    #[test]
    fn resolves_the_bimodule() {
        let q = Rationals;
        let u = Arc::new(BasisAlgebra::upper_triangular(q, 2));
        let d = Arc::new(BasisAlgebra::dual_numbers(q));
        for m in [Bimodule::regular(u.clone()), Bimodule::regular(d.clone()), Bimodule::free_rank_one(u, d)] {
            let rb = relative_bar(&m, 4, Budget::DEFAULT).unwrap();
            assert!(rb.is_complex());
            assert_eq!(rb.homology_dims(), vec![m.dim(), 0, 0]);
        }
    }

    #[test]
    fn encode_decode_roundtrip() {
        let q = Rationals;
        let u = Arc::new(BasisAlgebra::upper_triangular(q, 2));
        let rb = relative_bar(&Bimodule::regular(u), 3, Budget::DEFAULT).unwrap();
        for k in 0..3 {
            for i in 0..rb.dims[k] {
                assert_eq!(rb.encode(&rb.decode(k, i)), i);
            }
        }
    }

    /// The triangular differential is the transpose of the relative bar boundary.
    #[test]
    fn triangular_differential_is_dual_boundary() {
        let q = Rationals;
        let k = ground();
        let u = Arc::new(BasisAlgebra::upper_triangular(q, 2));
        let d = Arc::new(BasisAlgebra::dual_numbers(q));
        let cases = vec![
            (Bimodule::scalar_power(k.clone(), 2), Bimodule::scalar_power(k, 1)),
            (Bimodule::regular(u.clone()), Bimodule::regular(u.clone())),
            (Bimodule::regular(d.clone()), Bimodule::regular(d.clone())),
            (Bimodule::free_rank_one(u.clone(), d.clone()), Bimodule::free_rank_one(u, d)),
        ];
        for (m, n) in &cases {
            let tri = triangular_cochain(m, n, 4, Budget::DEFAULT).unwrap();
            let rb = relative_bar(m, 4, Budget::DEFAULT).unwrap();
            for deg in 0..3 {
                for c in 0..tri.complex.dim(deg) {
                    let f = SparseVec::unit(&q, c);
                    let df = tri.complex.diff(deg).mul_vec(&f);
                    let lhs = evaluate_cochain(&tri, &rb, m, n, deg + 1, &df);
                    let rhs = evaluate_cochain(&tri, &rb, m, n, deg, &f).mul(&rb.boundaries[deg]);
                    assert_eq!(lhs, rhs, "degree {deg}, basis cochain {c}");
                }
            }
        }
    }
}
