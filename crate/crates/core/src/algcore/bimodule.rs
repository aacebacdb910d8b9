//! Bimodules over pairs of basis algebras and the constructions built from them.

use std::fmt;
use std::sync::Arc;

use super::algebra::{
    check_same_field, intertwiners, mat_to_vec, opposite, tensor_algebra, vec_to_mat, BasisAlgebra,
    ValidationReport, Violation,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, SparseVec, Subspace};

/// An `A`–`B` bimodule, i.e. a left `A ⊗ B^o`-module, given by the matrices of the left
/// action of each basis element of `A` and of the right action of each basis element of `B`.
#[derive(Clone)]
pub struct Bimodule<F: Field> {
    left_alg: Arc<BasisAlgebra<F>>,
    right_alg: Arc<BasisAlgebra<F>>,
    labels: Vec<String>,
    left: Vec<Mat<F>>,
    right: Vec<Mat<F>>,
}

impl<F: Field> fmt::Debug for Bimodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule(dim {} over dims ({}, {}))",
            self.dim(),
            self.left_alg.dim(),
            self.right_alg.dim()
        )
    }
}

impl<F: Field> PartialEq for Bimodule<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.left_alg, &other.left_alg)
            && same_algebra(&self.right_alg, &other.right_alg)
            && self.left == other.left
            && self.right == other.right
    }
}

pub fn same_algebra<F: Field>(a: &Arc<BasisAlgebra<F>>, b: &Arc<BasisAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Bimodule<F> {
    /// Builds from action tensors: `left` holds `(a, m, m', c)` meaning `a_a·e_m += c·e_{m'}`,
    /// `right` holds `(b, m, m', c)` meaning `e_m·b_b += c·e_{m'}`. The axioms are validated.
    pub fn new(
        left_alg: Arc<BasisAlgebra<F>>,
        right_alg: Arc<BasisAlgebra<F>>,
        labels: Vec<String>,
        left: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        right: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
    ) -> Result<Self> {
        let f = *left_alg.field();
        let n = labels.len();
        let collect = |alg_dim: usize,
                       side: &str,
                       triples: Vec<(usize, usize, usize, F::Elem)>|
         -> Result<Vec<Mat<F>>> {
            let mut per: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); alg_dim];
            for (a, m, m2, c) in triples {
                if a >= alg_dim || m >= n || m2 >= n {
                    return Err(Error::InvalidBimodule(format!(
                        "{side} action entry ({a}, {m}, {m2}) out of range"
                    )));
                }
                per[a].push((m2, m, c));
            }
            Ok(per.into_iter().map(|t| Mat::from_triplets(f, n, n, t)).collect())
        };
        let l = collect(left_alg.dim(), "left", left.into_iter().collect())?;
        let r = collect(right_alg.dim(), "right", right.into_iter().collect())?;
        Self::from_matrices(left_alg, right_alg, labels, l, r)
    }

    /// Builds from action matrices and validates.
    pub fn from_matrices(
        left_alg: Arc<BasisAlgebra<F>>,
        right_alg: Arc<BasisAlgebra<F>>,
        labels: Vec<String>,
        left: Vec<Mat<F>>,
        right: Vec<Mat<F>>,
    ) -> Result<Self> {
        let m = Self::from_matrices_unchecked(left_alg, right_alg, labels, left, right)?;
        match validate_bimodule(&m).first() {
            None => Ok(m),
            Some(v) => Err(Error::InvalidBimodule(v.to_string())),
        }
    }

    pub fn from_matrices_unchecked(
        left_alg: Arc<BasisAlgebra<F>>,
        right_alg: Arc<BasisAlgebra<F>>,
        labels: Vec<String>,
        left: Vec<Mat<F>>,
        right: Vec<Mat<F>>,
    ) -> Result<Self> {
        check_same_field(&left_alg, &right_alg)?;
        let n = labels.len();
        if left.len() != left_alg.dim() || right.len() != right_alg.dim() {
            return Err(Error::InvalidBimodule("one action matrix per basis element is required".into()));
        }
        if left.iter().chain(&right).any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::InvalidBimodule(format!("action matrices must be {n}x{n}")));
        }
        Ok(Bimodule { left_alg, right_alg, labels, left, right })
    }

    pub fn field(&self) -> &F {
        self.left_alg.field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn left_algebra(&self) -> &Arc<BasisAlgebra<F>> {
        &self.left_alg
    }

    pub fn right_algebra(&self) -> &Arc<BasisAlgebra<F>> {
        &self.right_alg
    }

    /// Matrix of `m ↦ a_i·m`.
    pub fn left_basis_action(&self, i: usize) -> &Mat<F> {
        &self.left[i]
    }

    /// Matrix of `m ↦ m·b_j`.
    pub fn right_basis_action(&self, j: usize) -> &Mat<F> {
        &self.right[j]
    }

    pub fn left_matrices(&self) -> &[Mat<F>] {
        &self.left
    }

    pub fn right_matrices(&self) -> &[Mat<F>] {
        &self.right
    }

    /// Matrix of `m ↦ x·m` for an arbitrary element `x` of `A`. This is the canonical
    /// morphism `α : A → End_{B^o}(M)`.
    pub fn alpha(&self, x: &SparseVec<F::Elem>) -> Mat<F> {
        combine(*self.field(), self.dim(), &self.left, x)
    }

    /// Matrix of `m ↦ m·y` for `y` in `B`. This is the canonical morphism `β : B → (End_A M)^o`.
    pub fn beta(&self, y: &SparseVec<F::Elem>) -> Mat<F> {
        combine(*self.field(), self.dim(), &self.right, y)
    }

    pub fn same_algebras(&self, other: &Bimodule<F>) -> bool {
        same_algebra(&self.left_alg, &other.left_alg) && same_algebra(&self.right_alg, &other.right_alg)
    }

    pub fn check_compatible(&self, other: &Bimodule<F>) -> Result<()> {
        if self.same_algebras(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleBimodule("bimodules are not over the same pair of algebras".into()))
        }
    }

    /// The zero bimodule over `(A, B)`.
    pub fn zero(left_alg: Arc<BasisAlgebra<F>>, right_alg: Arc<BasisAlgebra<F>>) -> Self {
        let f = *left_alg.field();
        let left = vec![Mat::zeros(f, 0, 0); left_alg.dim()];
        let right = vec![Mat::zeros(f, 0, 0); right_alg.dim()];
        Bimodule { left_alg, right_alg, labels: Vec::new(), left, right }
    }

    /// `A` as a bimodule over itself.
    pub fn regular(alg: Arc<BasisAlgebra<F>>) -> Self {
        let left = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis_vec(i))).collect();
        let right = (0..alg.dim()).map(|i| alg.right_mult(&alg.basis_vec(i))).collect();
        let labels = alg.labels().to_vec();
        Bimodule { left_alg: alg.clone(), right_alg: alg, labels, left, right }
    }

    /// `A ⊗ B` as an `A`–`B` bimodule (the free `A ⊗ B^o`-module of rank one), basis
    /// `a_i ⊗ b_j` at index `i·dim B + j`.
    pub fn free_rank_one(left_alg: Arc<BasisAlgebra<F>>, right_alg: Arc<BasisAlgebra<F>>) -> Self {
        let f = *left_alg.field();
        let (da, db) = (left_alg.dim(), right_alg.dim());
        let n = da * db;
        let left = (0..da)
            .map(|i| {
                let la = left_alg.left_mult(&left_alg.basis_vec(i));
                kron(&la, &Mat::identity(f, db))
            })
            .collect();
        let right = (0..db)
            .map(|j| {
                let rb = right_alg.right_mult(&right_alg.basis_vec(j));
                kron(&Mat::identity(f, da), &rb)
            })
            .collect();
        let labels = left_alg
            .labels()
            .iter()
            .flat_map(|x| right_alg.labels().iter().map(move |y| format!("{x}⊗{y}")))
            .collect();
        debug_assert_eq!(n, da * db);
        Bimodule { left_alg, right_alg, labels, left, right }
    }

    /// `K^m` over `(K, K)` with the scalar actions.
    pub fn scalar_power(ground: Arc<BasisAlgebra<F>>, m: usize) -> Self {
        assert_eq!(ground.dim(), 1, "scalar bimodules live over the ground field");
        Bimodule::regular(ground).power(m)
    }

    pub fn direct_sum(&self, other: &Bimodule<F>) -> Result<Bimodule<F>> {
        self.check_compatible(other)?;
        let f = *self.field();
        let (p, q) = (self.dim(), other.dim());
        let diag = |a: &Mat<F>, b: &Mat<F>| Mat::block(f, &[p, q], &[p, q], &[vec![Some(a), None], vec![None, Some(b)]]);
        let left = self.left.iter().zip(&other.left).map(|(a, b)| diag(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(a, b)| diag(a, b)).collect();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}.0"))
            .chain(other.labels.iter().map(|l| format!("{l}.1")))
            .collect();
        Ok(Bimodule {
            left_alg: self.left_alg.clone(),
            right_alg: self.right_alg.clone(),
            labels,
            left,
            right,
        })
    }

    /// Direct sum of `m` copies.
    pub fn power(&self, m: usize) -> Bimodule<F> {
        let mut acc = Bimodule::zero(self.left_alg.clone(), self.right_alg.clone());
        for _ in 0..m {
            acc = acc.direct_sum(self).expect("same algebras");
        }
        let labels = (0..m)
            .flat_map(|c| self.labels.iter().map(move |l| format!("{l}.{c}")))
            .collect();
        acc.labels = labels;
        acc
    }

    /// Direct sum of a list of bimodules over the same algebras.
    pub fn sum_of(members: &[&Bimodule<F>]) -> Result<Bimodule<F>> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty direct sum needs explicit algebras".into()))?;
        let mut acc = Bimodule::zero(first.left_alg.clone(), first.right_alg.clone());
        for m in members {
            acc = acc.direct_sum(m)?;
        }
        Ok(acc)
    }

    /// The sub-bimodule carried by `sub`, with basis the echelon basis of `sub`.
    pub fn restrict(&self, sub: &Subspace<F>) -> Result<Bimodule<F>> {
        let restrict_op = |op: &Mat<F>| -> Result<Mat<F>> {
            let cols = sub
                .basis()
                .iter()
                .map(|v| {
                    let image = op.mul_vec(v);
                    sub.coordinates(&image)
                        .map(|c| SparseVec::from_dense(self.field(), &c))
                        .ok_or_else(|| Error::InvalidBimodule("subspace is not stable under the action".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::from_columns(*self.field(), sub.dim(), &cols))
        };
        let left = self.left.iter().map(restrict_op).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(restrict_op).collect::<Result<Vec<_>>>()?;
        let labels = (0..sub.dim()).map(|i| format!("s{i}")).collect();
        Ok(Bimodule { left_alg: self.left_alg.clone(), right_alg: self.right_alg.clone(), labels, left, right })
    }

    /// The quotient by the sub-bimodule `sub`; its basis is the images of the standard basis
    /// vectors outside the pivots of `sub`.
    pub fn quotient(&self, sub: &Subspace<F>) -> Result<Bimodule<F>> {
        let f = *self.field();
        let pivots: std::collections::BTreeSet<usize> = sub.pivots().iter().copied().collect();
        let free: Vec<usize> = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        let project = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            let mut r = v.clone();
            for (b, p) in sub.basis().iter().zip(sub.pivots()) {
                let c = r.value(&f, *p);
                if !f.is_zero(&c) {
                    r = r.add_scaled(&f, b, &f.neg(&c));
                }
            }
            SparseVec::from_pairs(
                &f,
                r.entries().iter().map(|(i, x)| (free.binary_search(i).expect("reduced"), x.clone())),
            )
        };
        let q = free.len();
        let quotient_op = |op: &Mat<F>| -> Result<Mat<F>> {
            for b in sub.basis() {
                if !sub.contains(&op.mul_vec(b)) {
                    return Err(Error::InvalidBimodule("subspace is not a sub-bimodule".into()));
                }
            }
            let cols: Vec<_> = free.iter().map(|i| project(&op.column(*i))).collect();
            Ok(Mat::from_columns(f, q, &cols))
        };
        let left = self.left.iter().map(quotient_op).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(quotient_op).collect::<Result<Vec<_>>>()?;
        let labels = free.iter().map(|i| self.labels[*i].clone()).collect();
        Ok(Bimodule { left_alg: self.left_alg.clone(), right_alg: self.right_alg.clone(), labels, left, right })
    }

    /// The bimodule with the same underlying space viewed over new but equal algebras.
    pub fn rebased(&self, left_alg: Arc<BasisAlgebra<F>>, right_alg: Arc<BasisAlgebra<F>>) -> Result<Bimodule<F>> {
        if !same_algebra(&left_alg, &self.left_alg) || !same_algebra(&right_alg, &self.right_alg) {
            return Err(Error::IncompatibleBimodule("rebasing onto different algebras".into()));
        }
        Ok(Bimodule { left_alg, right_alg, ..self.clone() })
    }
}

fn combine<F: Field>(f: F, n: usize, ops: &[Mat<F>], x: &SparseVec<F::Elem>) -> Mat<F> {
    let mut acc = Mat::zeros(f, n, n);
    for (i, c) in x.entries() {
        acc = acc.add_scaled(&ops[*i], c);
    }
    acc
}

/// Kronecker product of matrices: `(a ⊗ b)` acting on index `i·dim b + j`.
pub fn kron<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let f = *a.field();
    let mut triplets = Vec::new();
    for (r1, c1, x) in a.triplets() {
        for (r2, c2, y) in b.triplets() {
            triplets.push((r1 * b.rows() + r2, c1 * b.cols() + c2, f.mul(x, y)));
        }
    }
    Mat::from_triplets(f, a.rows() * b.rows(), a.cols() * b.cols(), triplets)
}

/// Checks that the left action is unital and multiplicative, likewise for the right action
/// (`m·(b_i b_j) = (m·b_i)·b_j`), and that the two actions commute.
pub fn validate_bimodule<F: Field>(m: &Bimodule<F>) -> ValidationReport {
    let f = *m.field();
    let n = m.dim();
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let id = Mat::identity(f, n);
    let mut violations = Vec::new();
    if m.alpha(a.unit()) != id {
        violations.push(Violation::LeftUnital);
    }
    if m.beta(b.unit()) != id {
        violations.push(Violation::RightUnital);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if m.alpha(a.product(i, j)) != m.left[i].mul(&m.left[j]) {
                violations.push(Violation::LeftModule { i, j });
            }
        }
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            if m.beta(b.product(i, j)) != m.right[j].mul(&m.right[i]) {
                violations.push(Violation::RightModule { i, j });
            }
        }
    }
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            if m.left[i].mul(&m.right[j]) != m.right[j].mul(&m.left[i]) {
                violations.push(Violation::Commutation { i, j });
            }
        }
    }
    ValidationReport { violations }
}

/// Linear map `f ↦ P·f·Q` on `Hom_K(V, W)` in row-major coordinates (`f` is `dim W × dim V`,
/// `P` acts on `W`, `Q` on `V`).
pub fn sandwich<F: Field>(p: &Mat<F>, q: &Mat<F>) -> Mat<F> {
    // vec(P f Q) = (P ⊗ Q^T) vec(f) for row-major flattening.
    kron(p, &q.transpose())
}

/// The enveloping algebra `Λ = A ⊗ B^o` acting on `A`–`B` bimodules.
pub fn enveloping<F: Field>(a: &BasisAlgebra<F>, b: &BasisAlgebra<F>) -> Result<BasisAlgebra<F>> {
    tensor_algebra(a, &opposite(b))
}

/// `Hom_K(M, N)` as a `Λ`-bimodule for `Λ = A ⊗ B^o`:
/// `((a⊗b)·f·(a'⊗b'))(x) = a·f(a'·x·b')·b`. With this structure
/// `H*(Λ, Hom_K(M, N)) ≅ Ext*_Λ(M, N)`.
pub fn hom_coefficient_bimodule<F: Field>(
    m: &Bimodule<F>,
    n: &Bimodule<F>,
) -> Result<(Arc<BasisAlgebra<F>>, Bimodule<F>)> {
    m.check_compatible(n)?;
    let f = *m.field();
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let lambda = Arc::new(enveloping(a, b)?);
    let (da, db) = (a.dim(), b.dim());
    let (dm, dn) = (m.dim(), n.dim());
    let mut left = Vec::with_capacity(da * db);
    let mut right = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            let act_n = n.left[i].mul(&n.right[j]);
            let act_m = m.left[i].mul(&m.right[j]);
            left.push(sandwich(&act_n, &Mat::identity(f, dm)));
            right.push(sandwich(&Mat::identity(f, dn), &act_m));
        }
    }
    let labels = (0..dn)
        .flat_map(|r| (0..dm).map(move |c| format!("{}<-{}", r, c)))
        .collect();
    let h = Bimodule::from_matrices_unchecked(lambda.clone(), lambda.clone(), labels, left, right)?;
    Ok((lambda, h))
}

/// Basis of `Hom_Λ(M, N)` as `dim N × dim M` matrices.
pub fn hom_space<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Vec<Mat<F>>> {
    m.check_compatible(n)?;
    let mut ops = Vec::new();
    for i in 0..m.left_algebra().dim() {
        ops.push((m.left_basis_action(i), n.left_basis_action(i)));
    }
    for j in 0..m.right_algebra().dim() {
        ops.push((m.right_basis_action(j), n.right_basis_action(j)));
    }
    Ok(intertwiners(*m.field(), m.dim(), n.dim(), &ops))
}

/// Which actions an endomorphism has to commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndSide {
    /// `End_A(M)`: commutes with the left action.
    OverA,
    /// `End_{B^o}(M)`: commutes with the right action.
    OverB,
    /// `End_{A⊗B^o}(M)`.
    OverBoth,
}

/// Subspace of `Hom_K(M, N)` (row-major coordinates) of maps commuting with the chosen actions.
pub fn hom_subspace<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, side: EndSide) -> Result<Subspace<F>> {
    m.check_compatible(n)?;
    let mut ops = Vec::new();
    if side != EndSide::OverB {
        for i in 0..m.left_algebra().dim() {
            ops.push((m.left_basis_action(i), n.left_basis_action(i)));
        }
    }
    if side != EndSide::OverA {
        for j in 0..m.right_algebra().dim() {
            ops.push((m.right_basis_action(j), n.right_basis_action(j)));
        }
    }
    let f = *m.field();
    let basis = intertwiners(f, m.dim(), n.dim(), &ops);
    let vecs: Vec<_> = basis.iter().map(mat_to_vec).collect();
    Ok(Subspace::span(f, m.dim() * n.dim(), vecs.iter()))
}

/// An endomorphism algebra with its basis of matrices.
#[derive(Clone, Debug)]
pub struct EndAlgebra<F: Field> {
    pub algebra: BasisAlgebra<F>,
    /// The matrices of the basis elements, acting on `M`.
    pub matrices: Vec<Mat<F>>,
}

/// The endomorphism algebra of `m` with multiplication `φ·ψ = φ∘ψ`.
pub fn end_algebra<F: Field>(m: &Bimodule<F>, side: EndSide) -> EndAlgebra<F> {
    let f = *m.field();
    let d = m.dim();
    let space = hom_subspace(m, m, side).expect("same bimodule");
    let matrices: Vec<Mat<F>> = space.basis().iter().map(|v| vec_to_mat(f, v, d, d)).collect();
    let k = matrices.len();
    let coords = |x: &Mat<F>| -> Vec<F::Elem> {
        space.coordinates(&mat_to_vec(x)).expect("closed under composition")
    };
    let mut table = vec![vec![SparseVec::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = SparseVec::from_dense(&f, &coords(&matrices[i].mul(&matrices[j])));
        }
    }
    let unit = SparseVec::from_dense(&f, &coords(&Mat::identity(f, d)));
    let labels = (0..k).map(|i| format!("phi{i}")).collect();
    EndAlgebra { algebra: BasisAlgebra::from_table(f, labels, table, unit), matrices }
}

/// `Hom_{B^o}(M, N)` as an `A`-bimodule: `(a·h)(m) = a·h(m)`, `(h·a)(m) = h(a·m)`.
pub fn hom_over_right<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Bimodule<F>> {
    let f = *m.field();
    let a = m.left_algebra().clone();
    let sub = hom_subspace(m, n, EndSide::OverB)?;
    let left: Vec<_> = (0..a.dim())
        .map(|i| sandwich(n.left_basis_action(i), &Mat::identity(f, m.dim())))
        .collect();
    let right: Vec<_> = (0..a.dim())
        .map(|i| sandwich(&Mat::identity(f, n.dim()), m.left_basis_action(i)))
        .collect();
    let labels = (0..m.dim() * n.dim()).map(|i| format!("h{i}")).collect();
    let ambient = Bimodule::from_matrices_unchecked(a.clone(), a, labels, left, right)?;
    ambient.restrict(&sub)
}

/// `Hom_A(M, N)` as a `B`-bimodule: `(b·h)(m) = h(m·b)`, `(h·b)(m) = h(m)·b`.
pub fn hom_over_left<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Bimodule<F>> {
    let f = *m.field();
    let b = m.right_algebra().clone();
    let sub = hom_subspace(m, n, EndSide::OverA)?;
    let left: Vec<_> = (0..b.dim())
        .map(|j| sandwich(&Mat::identity(f, n.dim()), m.right_basis_action(j)))
        .collect();
    let right: Vec<_> = (0..b.dim())
        .map(|j| sandwich(n.right_basis_action(j), &Mat::identity(f, m.dim())))
        .collect();
    let labels = (0..m.dim() * n.dim()).map(|i| format!("h{i}")).collect();
    let ambient = Bimodule::from_matrices_unchecked(b.clone(), b, labels, left, right)?;
    ambient.restrict(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;

    fn k() -> Arc<BasisAlgebra<Rationals>> {
        Arc::new(BasisAlgebra::ground(Rationals))
    }

    #[test]
    fn regular_and_free_modules_validate() {
        let d = Arc::new(BasisAlgebra::dual_numbers(Rationals));
        assert!(validate_bimodule(&Bimodule::regular(d.clone())).is_valid());
        let u = Arc::new(BasisAlgebra::upper_triangular(Rationals, 2));
        let free = Bimodule::free_rank_one(u.clone(), d.clone());
        assert_eq!(free.dim(), 6);
        assert!(validate_bimodule(&free).is_valid());
    }

    #[test]
    fn hom_coefficients_are_bimodules() {
        let u = Arc::new(BasisAlgebra::upper_triangular(Rationals, 2));
        let m = Bimodule::regular(u.clone());
        let n = Bimodule::free_rank_one(u.clone(), u.clone());
        let (lambda, h) = hom_coefficient_bimodule(&m, &n).unwrap();
        assert_eq!(lambda.dim(), 9);
        assert_eq!(h.dim(), 27);
        assert!(validate_bimodule(&h).is_valid());
        let k2 = Bimodule::scalar_power(k(), 2);
        let k3 = Bimodule::scalar_power(k(), 3);
        assert_eq!(hom_coefficient_bimodule(&k2, &k3).unwrap().1.dim(), 6);
    }

    #[test]
    fn alpha_beta_are_unital_morphisms() {
        let u = Arc::new(BasisAlgebra::upper_triangular(Rationals, 2));
        let m = Bimodule::regular(u.clone());
        let q = Rationals;
        assert_eq!(m.alpha(u.unit()), Mat::identity(q, 3));
        for i in 0..3 {
            for j in 0..3 {
                let (x, y) = (u.basis_vec(i), u.basis_vec(j));
                assert_eq!(m.alpha(&u.mul(&x, &y)), m.alpha(&x).mul(&m.alpha(&y)));
                assert_eq!(m.beta(&u.mul(&x, &y)), m.beta(&y).mul(&m.beta(&x)));
            }
        }
    }

    #[test]
    fn endomorphism_algebras() {
        let q = Rationals;
        let k3 = Bimodule::scalar_power(k(), 3);
        assert_eq!(end_algebra(&k3, EndSide::OverBoth).algebra.dim(), 9);
        assert_eq!(end_algebra(&Bimodule::regular(k()), EndSide::OverBoth).algebra.dim(), 1);
        let u = Arc::new(BasisAlgebra::upper_triangular(q, 2));
        let reg = Bimodule::regular(u);
        let e = end_algebra(&reg, EndSide::OverA);
        assert_eq!(e.algebra.dim(), 3);
        assert!(crate::algcore::validate_algebra(&e.algebra).is_valid());
    }

    #[test]
    fn hom_bimodules_over_one_side() {
        let u = Arc::new(BasisAlgebra::upper_triangular(Rationals, 2));
        let m = Bimodule::regular(u.clone());
        let ha = hom_over_right(&m, &m).unwrap();
        let hb = hom_over_left(&m, &m).unwrap();
        assert_eq!(ha.dim(), 3);
        assert_eq!(hb.dim(), 3);
        assert!(validate_bimodule(&ha).is_valid());
        assert!(validate_bimodule(&hb).is_valid());
    }

    #[test]
    fn quotient_and_restriction() {
        let q = Rationals;
        let d = Arc::new(BasisAlgebra::dual_numbers(q));
        let reg = Bimodule::regular(d.clone());
        let eps = Subspace::span(q, 2, [SparseVec::unit(&q, 1)].iter());
        let sub = reg.restrict(&eps).unwrap();
        let quo = reg.quotient(&eps).unwrap();
        assert_eq!((sub.dim(), quo.dim()), (1, 1));
        assert!(validate_bimodule(&sub).is_valid());
        assert!(validate_bimodule(&quo).is_valid());
        let one = Subspace::span(q, 2, [SparseVec::unit(&q, 0)].iter());
        assert!(reg.restrict(&one).is_err());
    }
}
