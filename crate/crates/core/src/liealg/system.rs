//! Small helpers for assembling the linear systems that define derivations.

use crate::algcore::BasisAlgebra;
use crate::exactla::{kernel_basis, Field, Mat, SparseVec, Subspace};

/// Rows of a homogeneous linear system, accumulated one equation at a time.
pub(crate) struct Equations<F: Field> {
    field: F,
    unknowns: usize,
    rows: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Equations<F> {
    pub(crate) fn new(field: F, unknowns: usize) -> Self {
        Equations { field, unknowns, rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, pairs: Vec<(usize, F::Elem)>) {
        let row = SparseVec::from_pairs(&self.field, pairs);
        if !row.is_zero() {
            self.rows.push(row);
        }
    }

    pub(crate) fn matrix(self) -> Mat<F> {
        Mat::from_rows(self.field, self.unknowns, self.rows)
    }

    pub(crate) fn solutions(self) -> Subspace<F> {
        kernel_basis(&self.matrix())
    }
}

/// Left and right multiplication matrices of every basis element.
pub(crate) struct Multiplications<F: Field> {
    pub left: Vec<Mat<F>>,
    pub right: Vec<Mat<F>>,
}

impl<F: Field> Multiplications<F> {
    pub(crate) fn of(alg: &BasisAlgebra<F>) -> Self {
        let left = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis_vec(i))).collect();
        let right = (0..alg.dim()).map(|i| alg.right_mult(&alg.basis_vec(i))).collect();
        Multiplications { left, right }
    }
}

/// Adds the Leibniz equations `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` for a map `D` whose
/// row-major entries start at `offset`.
pub(crate) fn push_leibniz<F: Field>(eqs: &mut Equations<F>, alg: &BasisAlgebra<F>, offset: usize) {
    let f = *alg.field();
    let n = alg.dim();
    let mults = Multiplications::of(alg);
    let var = |r: usize, c: usize| offset + r * n + c;
    for i in 0..n {
        for j in 0..n {
            let p = alg.product(i, j);
            let (li, rj) = (&mults.left[i], &mults.right[j]);
            for r in 0..n {
                let mut pairs: Vec<(usize, F::Elem)> = p.entries().iter().map(|(c, v)| (var(r, *c), v.clone())).collect();
                pairs.extend(rj.row(r).entries().iter().map(|(s, v)| (var(*s, i), f.neg(v))));
                pairs.extend(li.row(r).entries().iter().map(|(s, v)| (var(*s, j), f.neg(v))));
                eqs.push(pairs);
            }
        }
    }
}

/// Whether `d` satisfies the Leibniz rule on all basis pairs of `alg`.
pub fn is_derivation<F: Field>(alg: &BasisAlgebra<F>, d: &Mat<F>) -> bool {
    let n = alg.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let mults = Multiplications::of(alg);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = d.mul_vec(alg.product(i, j));
            let rhs = mults.right[j].mul_vec(&d.column(i)).add(alg.field(), &mults.left[i].mul_vec(&d.column(j)));
            lhs == rhs
        })
    })
}

/// `x y − y x`.
pub fn commutator<F: Field>(x: &Mat<F>, y: &Mat<F>) -> Mat<F> {
    x.mul(y).sub(&y.mul(x))
}

/// The inner derivation `t ↦ z t − t z` of the basis element `z = e_i`.
pub(crate) fn inner_of_basis<F: Field>(mults: &Multiplications<F>, i: usize) -> Mat<F> {
    mults.left[i].sub(&mults.right[i])
}
