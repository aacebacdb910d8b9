//! Derivations of a triangular algebra `[A M; 0 B]` in block form.

use super::system::{commutator, is_derivation};
use crate::algcore::TriangularAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, SparseVec};

/// A derivation `D = [α (μ, m₀); 0 β]` acting by
/// `D[a m; 0 b] = [α(a)  μ(m) − a m₀ + m₀ b; 0  β(b)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularDerivation<F: Field> {
    pub alpha: Mat<F>,
    pub beta: Mat<F>,
    pub mu: Mat<F>,
    pub m0: SparseVec<F::Elem>,
}

impl<F: Field> TriangularDerivation<F> {
    pub fn zero(t: &TriangularAlgebra<F>) -> Self {
        let f = *t.algebra.field();
        TriangularDerivation {
            alpha: Mat::zeros(f, t.dim_a(), t.dim_a()),
            beta: Mat::zeros(f, t.dim_b(), t.dim_b()),
            mu: Mat::zeros(f, t.dim_m(), t.dim_m()),
            m0: SparseVec::zero(),
        }
    }

    /// The inner derivation `t ↦ [t₀, t]` of `t₀ = [a₀ m₀; 0 b₀]`, in block form.
    pub fn inner(
        t: &TriangularAlgebra<F>,
        a0: &SparseVec<F::Elem>,
        m0: &SparseVec<F::Elem>,
        b0: &SparseVec<F::Elem>,
    ) -> Self {
        TriangularDerivation {
            alpha: t.a.left_mult(a0).sub(&t.a.right_mult(a0)),
            beta: t.b.left_mult(b0).sub(&t.b.right_mult(b0)),
            mu: t.m.alpha(a0).sub(&t.m.beta(b0)),
            m0: m0.clone(),
        }
    }

    /// The full `dim T × dim T` matrix.
    pub fn recompose(&self, t: &TriangularAlgebra<F>) -> Mat<F> {
        let f = *t.algebra.field();
        let (da, dm, db) = (t.dim_a(), t.dim_m(), t.dim_b());
        // Column i of the M-rows/A-columns block is −a_i m₀; column j of the M/B block is m₀ b_j.
        let ma: Vec<_> = (0..da).map(|i| t.m.left_basis_action(i).mul_vec(&self.m0).neg(&f)).collect();
        let mb: Vec<_> = (0..db).map(|j| t.m.right_basis_action(j).mul_vec(&self.m0)).collect();
        let ma = Mat::from_columns(f, dm, &ma);
        let mb = Mat::from_columns(f, dm, &mb);
        Mat::block(
            f,
            &[da, dm, db],
            &[da, dm, db],
            &[
                vec![Some(&self.alpha), None, None],
                vec![Some(&ma), Some(&self.mu), Some(&mb)],
                vec![None, None, Some(&self.beta)],
            ],
        )
    }

    /// `μ(am) = α(a)m + aμ(m)` and `μ(mb) = μ(m)b + mβ(b)` on basis elements.
    pub fn satisfies_compatibility(&self, t: &TriangularAlgebra<F>) -> bool {
        let left_ok = (0..t.dim_a()).all(|i| {
            let la = t.m.left_basis_action(i);
            let alpha_a = t.m.alpha(&self.alpha.column(i));
            self.mu.mul(la) == alpha_a.add(&la.mul(&self.mu))
        });
        let right_ok = (0..t.dim_b()).all(|j| {
            let rb = t.m.right_basis_action(j);
            let beta_b = t.m.beta(&self.beta.column(j));
            self.mu.mul(rb) == rb.mul(&self.mu).add(&beta_b)
        });
        left_ok && right_ok
    }

    /// The bracket computed blockwise:
    /// `[D₀, D₁] = [[α₀,α₁] ([μ₀,μ₁], μ₀(m₁) − μ₁(m₀)); 0 [β₀,β₁]]`.
    pub fn block_bracket(&self, other: &Self) -> Self {
        let f = *self.alpha.field();
        TriangularDerivation {
            alpha: commutator(&self.alpha, &other.alpha),
            beta: commutator(&self.beta, &other.beta),
            mu: commutator(&self.mu, &other.mu),
            m0: self.mu.mul_vec(&other.m0).sub(&f, &other.mu.mul_vec(&self.m0)),
        }
    }
}

/// Splits a derivation of `t` into its blocks.
pub fn decompose_derivation<F: Field>(t: &TriangularAlgebra<F>, d: &Mat<F>) -> Result<TriangularDerivation<F>> {
    if !is_derivation(&t.algebra, d) {
        return Err(Error::NotADerivation("the Leibniz rule fails on some pair of basis elements".into()));
    }
    let (da, dm, db) = (t.dim_a(), t.dim_m(), t.dim_b());
    let (om, ob, n) = (da, da + dm, da + dm + db);
    let f = *t.algebra.field();
    let unit_a = SparseVec::concat(&[(t.a.unit(), da)]);
    let m0 = d.mul_vec(&unit_a).slice(om, ob).neg(&f);
    let parts = TriangularDerivation {
        alpha: d.sub_block(0, om, 0, om),
        beta: d.sub_block(ob, n, ob, n),
        mu: d.sub_block(om, ob, om, ob),
        m0,
    };
    let rebuilt = parts.recompose(t);
    if let Some((r, c)) = first_difference(d, &rebuilt) {
        return Err(Error::BlockStructureViolated(format!(
            "entry ({r}, {c}) does not follow the block pattern"
        )));
    }
    if !is_derivation(&t.a, &parts.alpha) || !is_derivation(&t.b, &parts.beta) || !parts.satisfies_compatibility(t) {
        return Err(Error::BlockStructureViolated("the diagonal blocks are not compatible".into()));
    }
    Ok(parts)
}

/// Whether the nonzero entries of `d` in the `A`-rows lie in the `A`-columns and those in the
/// `B`-rows lie in the `B`-columns.
pub fn follows_block_pattern<F: Field>(t: &TriangularAlgebra<F>, d: &Mat<F>) -> bool {
    let (om, ob) = (t.offset_m(), t.offset_b());
    d.triplets().all(|(r, c, _)| {
        if r < om {
            c < om
        } else if r >= ob {
            c >= ob
        } else {
            true
        }
    })
}

fn first_difference<F: Field>(x: &Mat<F>, y: &Mat<F>) -> Option<(usize, usize)> {
    let diff = x.sub(y);
    let first = diff.triplets().next().map(|(r, c, _)| (r, c));
    first
}

/// Compares the blockwise bracket with the matrix commutator of the recomposed derivations.
pub fn bracket_check<F: Field>(
    t: &TriangularAlgebra<F>,
    d0: &TriangularDerivation<F>,
    d1: &TriangularDerivation<F>,
) -> bool {
    let direct = commutator(&d0.recompose(t), &d1.recompose(t));
    d0.block_bracket(d1).recompose(t) == direct
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::kronecker;
    use crate::exactla::Rationals;
    use crate::liealg::derivation_space;

    #[test]
    fn zero_decomposes_to_zero() {
        let t = kronecker(Rationals, 2);
        let z = Mat::zeros(Rationals, 4, 4);
        assert_eq!(decompose_derivation(&t, &z).unwrap(), TriangularDerivation::zero(&t));
    }

    #[test]
    fn inner_derivation_blocks() {
        let q = Rationals;
        let t = kronecker(q, 2);
        let a0 = SparseVec::from_pairs(&q, [(0, q.from_i64(3))]);
        let m0 = SparseVec::from_pairs(&q, [(0, q.from_i64(1)), (1, q.from_i64(-2))]);
        let b0 = SparseVec::from_pairs(&q, [(0, q.from_i64(5))]);
        let t0 = t.embed(&a0, &m0, &b0);
        let ad = t.algebra.left_mult(&t0).sub(&t.algebra.right_mult(&t0));
        let parts = decompose_derivation(&t, &ad).unwrap();
        assert_eq!(parts, TriangularDerivation::inner(&t, &a0, &m0, &b0));
        assert_eq!(parts.mu, Mat::identity(q, 2).scale(&q.from_i64(-2)));
    }

    #[test]
    fn roundtrip_and_brackets_on_basis() {
        for m in 2..=3 {
            let t = kronecker(Rationals, m);
            let space = derivation_space(&t.algebra);
            let parts: Vec<_> = space.der_basis.iter().map(|d| decompose_derivation(&t, d).unwrap()).collect();
            for (d, p) in space.der_basis.iter().zip(&parts) {
                assert_eq!(&p.recompose(&t), d);
                assert!(p.satisfies_compatibility(&t));
                assert!(follows_block_pattern(&t, d));
            }
            for x in &parts {
                for y in &parts {
                    assert!(bracket_check(&t, x, y));
                }
            }
        }
    }

    #[test]
    fn rejects_non_derivations() {
        let t = kronecker(Rationals, 1);
        let id = Mat::identity(Rationals, 3);
        assert!(matches!(decompose_derivation(&t, &id), Err(Error::NotADerivation(_))));
    }
}
