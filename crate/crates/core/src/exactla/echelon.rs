//! Incremental row echelon forms, subspaces and the derived matrix operations.

use std::collections::BTreeMap;

use super::field::Field;
use super::sparse::{Mat, SparseVec};
use crate::error::{Error, Result};

/// Row echelon form built one vector at a time.
///
/// Each stored row has a leading coefficient 1 at its pivot and no entries at the pivots of
/// rows inserted before it. When tracking is enabled every row also remembers how it is
/// expressed in terms of the inserted generators; every call to [`Echelon::insert`]
/// consumes one generator id, whether or not the vector was independent.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: BTreeMap<usize, usize>,
    combos: Option<Vec<SparseVec<F::Elem>>>,
    generators: usize,
}

/// Outcome of reducing a vector against an echelon form.
#[derive(Clone, Debug)]
pub struct Reduction<E> {
    pub residual: SparseVec<E>,
    /// Coefficients on the generators, present only when tracking is enabled.
    pub coefficients: Option<SparseVec<E>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, rows: Vec::new(), pivots: BTreeMap::new(), combos: None, generators: 0 }
    }

    pub fn with_tracking(field: F) -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new(field) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> Reduction<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<usize, F::Elem> = v.entries().iter().cloned().collect();
        let mut coeffs: Option<BTreeMap<usize, F::Elem>> = self.combos.as_ref().map(|_| BTreeMap::new());
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let r = self.pivots[&k];
            for (i, x) in self.rows[r].entries() {
                let delta = f.mul(&c, x);
                let slot = work.entry(*i).or_insert_with(|| f.zero());
                *slot = f.sub(slot, &delta);
                if f.is_zero(slot) {
                    work.remove(i);
                }
            }
            if let (Some(acc), Some(combos)) = (coeffs.as_mut(), self.combos.as_ref()) {
                for (g, x) in combos[r].entries() {
                    let delta = f.mul(&c, x);
                    let slot = acc.entry(*g).or_insert_with(|| f.zero());
                    *slot = f.add(slot, &delta);
                    if f.is_zero(slot) {
                        acc.remove(g);
                    }
                }
            }
            cursor = k + 1;
        }
        Reduction {
            residual: SparseVec::from_map(f, work),
            coefficients: coeffs.map(|m| SparseVec::from_map(f, m)),
        }
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).residual.is_zero()
    }

    /// Inserts a generator; returns `true` when it was independent of the earlier ones.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let f = self.field;
        let id = self.generators;
        self.generators += 1;
        let red = self.reduce(v);
        let Some(lead) = red.residual.leading() else { return false };
        let inv = f.inv(red.residual.get(lead).expect("leading entry")).expect("nonzero");
        let row = red.residual.scale(&f, &inv);
        if let Some(combos) = self.combos.as_mut() {
            let own = SparseVec::unit(&f, id);
            let coeffs = red.coefficients.unwrap_or_default();
            combos.push(own.sub(&f, &coeffs).scale(&f, &inv));
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// The reduced row echelon basis of the span, ordered by pivot.
    pub fn rref(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let order: Vec<usize> = self.pivots.values().copied().collect();
        let mut reduced: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
        let mut done = Echelon::new(*f);
        // Back substitution: rows with larger pivots are fully reduced first.
        for &r in order.iter().rev() {
            let row = &self.rows[r];
            let lead = row.leading().expect("nonzero row");
            let tail = row.slice(lead + 1, usize::MAX).shifted(lead + 1);
            let tail_red = done.reduce_fully(&tail);
            let full = SparseVec::unit(f, lead).add(f, &tail_red);
            done.push_reduced(full.clone(), lead);
            reduced.insert(lead, full);
        }
        reduced.into_values().collect()
    }

    fn push_reduced(&mut self, row: SparseVec<F::Elem>, lead: usize) {
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
    }

    /// Reduction against rows that are already in reduced echelon form: every pivot entry is
    /// eliminated in one pass since the rows do not interact.
    fn reduce_fully(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out = v.clone();
        for (i, x) in v.entries() {
            if let Some(&r) = self.pivots.get(i) {
                out = out.add_scaled(f, &self.rows[r], &f.neg(x));
            }
        }
        out
    }
}

/// A linear subspace of `F^ambient`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| SparseVec::unit(&field, i)).collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span<'a>(
        field: F,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a SparseVec<F::Elem>>,
    ) -> Self
    where
        F::Elem: 'a,
    {
        let mut ech = Echelon::new(field);
        for v in vectors {
            assert!(v.max_index().is_none_or(|m| m < ambient), "vector outside ambient space");
            ech.insert(v);
        }
        let basis = ech.rref();
        let pivots = basis.iter().map(|b| b.leading().expect("nonzero")).collect();
        Subspace { field, ambient, basis, pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let coords: Vec<F::Elem> = self.pivots.iter().map(|p| v.value(f, *p)).collect();
        let mut rebuilt = SparseVec::zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            rebuilt = rebuilt.add_scaled(f, b, c);
        }
        (rebuilt == *v).then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(self.field, self.ambient, self.basis.iter().chain(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        let f = self.field;
        // Kernel of [U | -W] gives pairs (x, y) with Ux = Wy.
        let k = self.dim();
        let mut cols: Vec<SparseVec<F::Elem>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.neg(&f)));
        let m = Mat::from_columns(f, self.ambient, &cols);
        let ker = kernel_basis(&m);
        let vectors: Vec<SparseVec<F::Elem>> = ker
            .basis()
            .iter()
            .map(|z| {
                let mut acc = SparseVec::zero();
                for (i, c) in z.entries() {
                    if *i < k {
                        acc = acc.add_scaled(&f, &self.basis[*i], c);
                    }
                }
                acc
            })
            .collect();
        Subspace::span(f, self.ambient, vectors.iter())
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Mat<F>) -> Subspace<F> {
        let images: Vec<_> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(self.field, m.rows(), images.iter())
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> Mat<F> {
        Mat::from_columns(self.field, self.ambient, &self.basis)
    }
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut ech = Echelon::new(*m.field());
    for r in m.row_vectors() {
        ech.insert(r);
    }
    ech.rank()
}

/// Null space of `m` acting on column vectors. The basis has one vector per free column, in
/// increasing column order, before being brought to reduced echelon form.
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Subspace<F> {
    let f = *m.field();
    let mut ech = Echelon::new(f);
    for r in m.row_vectors() {
        ech.insert(r);
    }
    let rref = ech.rref();
    let pivot_cols: Vec<usize> = rref.iter().map(|r| r.leading().expect("nonzero")).collect();
    let is_pivot: std::collections::BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let mut vectors = Vec::new();
    for free in (0..m.cols()).filter(|c| !is_pivot.contains(c)) {
        let mut pairs = vec![(free, f.one())];
        for (row, p) in rref.iter().zip(&pivot_cols) {
            if let Some(x) = row.get(free) {
                pairs.push((*p, f.neg(x)));
            }
        }
        vectors.push(SparseVec::from_pairs(&f, pairs));
    }
    Subspace::span(f, m.cols(), vectors.iter())
}

/// Column space of `m`.
pub fn image<F: Field>(m: &Mat<F>) -> Subspace<F> {
    let cols = m.columns();
    Subspace::span(*m.field(), m.rows(), cols.iter())
}

/// One solution of `m x = rhs`, or `None` when the system is inconsistent.
///
/// The columns are reduced in order, so the solution is supported on the lexicographically
/// first set of independent columns and all other unknowns are zero.
pub fn solve<F: Field>(m: &Mat<F>, rhs: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
    assert!(rhs.max_index().is_none_or(|i| i < m.rows()), "rhs length exceeds rows");
    let mut ech = Echelon::with_tracking(*m.field());
    for c in m.columns() {
        ech.insert(&c);
    }
    let red = ech.reduce(rhs);
    red.residual
        .is_zero()
        .then(|| red.coefficients.expect("tracking enabled"))
}

/// A solver that factors `m` once and answers many right-hand sides.
#[derive(Clone, Debug)]
pub struct Solver<F: Field> {
    ech: Echelon<F>,
    rows: usize,
}

impl<F: Field> Solver<F> {
    pub fn new(m: &Mat<F>) -> Self {
        let mut ech = Echelon::with_tracking(*m.field());
        for c in m.columns() {
            ech.insert(&c);
        }
        Solver { ech, rows: m.rows() }
    }

    pub fn from_columns(field: F, rows: usize, columns: &[SparseVec<F::Elem>]) -> Self {
        let mut ech = Echelon::with_tracking(field);
        for c in columns {
            ech.insert(c);
        }
        Solver { ech, rows }
    }

    pub fn solve(&self, rhs: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        assert!(rhs.max_index().is_none_or(|i| i < self.rows), "rhs length exceeds rows");
        let red = self.ech.reduce(rhs);
        red.residual
            .is_zero()
            .then(|| red.coefficients.expect("tracking enabled"))
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }
}

pub fn quotient_dim<F: Field>(big: &Subspace<F>, small: &Subspace<F>) -> Result<usize> {
    if small.ambient_dim() != big.ambient_dim() {
        return Err(Error::NotASubspace(format!(
            "ambient dimensions differ ({} vs {})",
            small.ambient_dim(),
            big.ambient_dim()
        )));
    }
    if let Some(i) = small.basis().iter().position(|b| !big.contains(b)) {
        return Err(Error::NotASubspace(format!("basis vector {i} of the smaller space is not contained")));
    }
    Ok(big.dim() - small.dim())
}

/// A quotient `big / small` with a fixed basis of representatives, so that classes have
/// coordinates and linear maps between quotients have matrices.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    field: F,
    ambient: usize,
    reps: Vec<SparseVec<F::Elem>>,
    small_dim: usize,
    solver: Solver<F>,
}

impl<F: Field> Quotient<F> {
    /// Representatives are the basis vectors of `big` that are independent of `small` and of
    /// the earlier ones, in basis order.
    pub fn new(big: &Subspace<F>, small: &Subspace<F>) -> Result<Self> {
        quotient_dim(big, small)?;
        let f = *big.field();
        let mut ech = Echelon::new(f);
        for w in small.basis() {
            ech.insert(w);
        }
        let reps: Vec<_> = big.basis().iter().filter(|v| ech.insert(v)).cloned().collect();
        Self::from_reps(reps, small)
    }

    /// A quotient with caller-chosen representatives; they must be independent modulo `small`.
    /// The big space is then `span(reps) + small`.
    pub fn from_reps(reps: Vec<SparseVec<F::Elem>>, small: &Subspace<F>) -> Result<Self> {
        let f = *small.field();
        let ambient = small.ambient_dim();
        let mut cols = reps.clone();
        cols.extend(small.basis().iter().cloned());
        let solver = Solver::from_columns(f, ambient, &cols);
        if solver.rank() != cols.len() {
            return Err(Error::NotASubspace("representatives are dependent modulo the subspace".into()));
        }
        Ok(Quotient { field: f, ambient, reps, small_dim: small.dim(), solver })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &[SparseVec<F::Elem>] {
        &self.reps
    }

    pub fn small_dim(&self) -> usize {
        self.small_dim
    }

    /// Coordinates of the class of `v`, or `None` when `v` is not in the big space.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let x = self.solver.solve(v)?;
        Some(x.slice(0, self.reps.len()))
    }

    /// Whether `v` lies in the small space.
    pub fn is_trivial(&self, v: &SparseVec<F::Elem>) -> bool {
        self.coordinates(v).is_some_and(|c| c.is_zero())
    }

    /// The matrix whose columns are the class coordinates of `images`, or `None` if one of
    /// them is outside the big space.
    pub fn matrix_of(&self, images: &[SparseVec<F::Elem>]) -> Option<Mat<F>> {
        let cols = images.iter().map(|v| self.coordinates(v)).collect::<Option<Vec<_>>>()?;
        Some(Mat::from_columns(self.field, self.dim(), &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn quotient_coordinates() {
        let f = q();
        let big = Subspace::full(f, 3);
        let small = Subspace::span(f, 3, [SparseVec::unit(&f, 0)].iter());
        let quo = Quotient::new(&big, &small).unwrap();
        assert_eq!(quo.dim(), 2);
        let v = SparseVec::from_dense(&f, &[f.from_i64(5), f.from_i64(1), f.from_i64(0)]);
        assert_eq!(quo.coordinates(&v).unwrap(), SparseVec::unit(&f, 0));
        assert!(quo.is_trivial(&SparseVec::unit(&f, 0)));
        let line = Subspace::span(f, 3, [SparseVec::unit(&f, 1)].iter());
        assert!(Quotient::new(&small, &line).is_err());
        assert!(Quotient::new(&line, &Subspace::zero(f, 3)).unwrap().coordinates(&SparseVec::unit(&f, 2)).is_none());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Mat::identity(q(), 3)), 3);
        assert_eq!(rank(&Mat::zeros(q(), 3, 3)), 0);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(rank(&Mat::from_i64(f2, &[vec![1, 1], vec![1, 1]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Mat::zeros(q(), 3, 3)).dim(), 3);
        assert_eq!(kernel_basis(&Mat::identity(q(), 3)).dim(), 0);
        let f2 = PrimeField::new(2).unwrap();
        let k = kernel_basis(&Mat::from_i64(f2, &[vec![1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0].to_dense(&f2, 2), vec![1, 1]);
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let id = Mat::identity(f, 2);
        let rhs = SparseVec::from_dense(&f, &[f.from_i64(1), f.from_i64(2)]);
        assert_eq!(solve(&id, &rhs), Some(rhs.clone()));
        assert_eq!(solve(&Mat::zeros(f, 2, 2), &rhs), None);
        let two = Mat::from_i64(f, &[vec![2]]);
        let x = solve(&two, &SparseVec::unit(&f, 0)).unwrap();
        assert_eq!(x.to_dense(&f, 1), vec![BigRational::new(1.into(), 2.into())]);
    }

    #[test]
    fn solve_prefers_first_columns() {
        let f = q();
        let m = Mat::from_i64(f, &[vec![1, 1, 0], vec![0, 0, 1]]);
        let rhs = SparseVec::from_dense(&f, &[f.from_i64(3), f.from_i64(1)]);
        let x = solve(&m, &rhs).unwrap();
        assert_eq!(x.to_dense(&f, 3), vec![f.from_i64(3), f.from_i64(0), f.from_i64(1)]);
    }

    #[test]
    fn quotient_examples() {
        let f = q();
        let full = Subspace::full(f, 3);
        assert_eq!(quotient_dim(&full, &full).unwrap(), 0);
        assert_eq!(quotient_dim(&full, &Subspace::zero(f, 3)).unwrap(), 3);
        let plane = Subspace::full(f, 2);
        let diag = Subspace::span(f, 2, [SparseVec::from_dense(&f, &[f.one(), f.one()])].iter());
        assert_eq!(quotient_dim(&plane, &diag).unwrap(), 1);
        let e0 = Subspace::span(f, 2, [SparseVec::unit(&f, 0)].iter());
        assert!(matches!(quotient_dim(&diag, &e0), Err(Error::NotASubspace(_))));
    }

    #[test]
    fn intersection_and_sum() {
        let f = q();
        let xy = Subspace::span(f, 3, [SparseVec::unit(&f, 0), SparseVec::unit(&f, 1)].iter());
        let yz = Subspace::span(f, 3, [SparseVec::unit(&f, 1), SparseVec::unit(&f, 2)].iter());
        assert_eq!(xy.intersection(&yz).dim(), 1);
        assert!(xy.intersection(&yz).contains(&SparseVec::unit(&f, 1)));
        assert_eq!(xy.sum(&yz).dim(), 3);
    }

    #[test]
    fn tracked_reduction_reconstructs() {
        let f = q();
        let gens = [
            SparseVec::from_dense(&f, &[f.from_i64(1), f.from_i64(2), f.from_i64(0)]),
            SparseVec::from_dense(&f, &[f.from_i64(2), f.from_i64(4), f.from_i64(0)]),
            SparseVec::from_dense(&f, &[f.from_i64(0), f.from_i64(1), f.from_i64(3)]),
        ];
        let mut ech = Echelon::with_tracking(f);
        let independent: Vec<bool> = gens.iter().map(|g| ech.insert(g)).collect();
        assert_eq!(independent, vec![true, false, true]);
        let target = SparseVec::from_dense(&f, &[f.from_i64(1), f.from_i64(5), f.from_i64(9)]);
        let red = ech.reduce(&target);
        assert!(red.residual.is_zero());
        let mut rebuilt = SparseVec::zero();
        for (g, c) in red.coefficients.unwrap().entries() {
            rebuilt = rebuilt.add_scaled(&f, &gens[*g], c);
        }
        assert_eq!(rebuilt, target);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(
                prop_oneof![6 => Just(0i64), 4 => -3i64..4], c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(rows in small_matrix()) {
            let m = Mat::from_i64(q(), &rows);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            let f5 = PrimeField::new(5).unwrap();
            let m5 = Mat::from_i64(f5, &rows);
            prop_assert_eq!(rank(&m5), rank(&m5.transpose()));
        }

        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let m = Mat::from_i64(q(), &rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + rank(&m), m.cols());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn solve_reproduces_rhs(rows in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let f = q();
            let m = Mat::from_i64(f, &rows);
            let x: Vec<_> = (0..m.cols()).map(|i| f.from_i64(seed[i])).collect();
            let rhs = SparseVec::from_dense(&f, &m.mul_dense(&x));
            let sol = solve(&m, &rhs).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol), rhs);
        }

        #[test]
        fn rref_is_canonical(rows in small_matrix()) {
            let f = q();
            let m = Mat::from_i64(f, &rows);
            let a = Subspace::span(f, m.cols(), m.row_vectors().iter());
            let reversed: Vec<_> = m.row_vectors().iter().rev().cloned().collect();
            let b = Subspace::span(f, m.cols(), reversed.iter());
            prop_assert_eq!(a, b);
        }
    }
}
