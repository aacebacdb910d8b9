//! Finite-dimensional associative unital algebras given by structure constants.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Field, Mat, SparseVec, Subspace};

/// A finite-dimensional associative unital algebra with a fixed basis.
///
/// `table[i][j]` holds the coordinates of `b_i · b_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BasisAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
    unit: SparseVec<F::Elem>,
}

impl<F: Field> fmt::Debug for BasisAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisAlgebra(dim {}, basis {:?})", self.dim(), self.labels)
    }
}

/// One violated axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
    IndexOutOfRange { detail: String },
    LeftModule { i: usize, j: usize },
    RightModule { i: usize, j: usize },
    LeftUnital,
    RightUnital,
    Commutation { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            Violation::LeftUnit { i } => write!(f, "unit·b_{i} != b_{i}"),
            Violation::RightUnit { i } => write!(f, "b_{i}·unit != b_{i}"),
            Violation::IndexOutOfRange { detail } => write!(f, "index out of range: {detail}"),
            Violation::LeftModule { i, j } => {
                write!(f, "left action is not multiplicative on basis pair ({i}, {j})")
            }
            Violation::RightModule { i, j } => {
                write!(f, "right action is not multiplicative on basis pair ({i}, {j})")
            }
            Violation::LeftUnital => write!(f, "the unit does not act as the identity on the left"),
            Violation::RightUnital => write!(f, "the unit does not act as the identity on the right"),
            Violation::Commutation { i, j } => {
                write!(f, "left action of a_{i} and right action of b_{j} do not commute")
            }
        }
    }
}

/// The outcome of checking algebra or bimodule axioms; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl<F: Field> BasisAlgebra<F> {
    /// Builds an algebra from structure constants `(i, j, k, c)` meaning `b_i·b_j += c·b_k`,
    /// validating associativity and the unit eagerly.
    pub fn new(
        field: F,
        labels: Vec<String>,
        mult: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let a = Self::new_unchecked(field, labels, mult, unit)?;
        let report = validate_algebra(&a);
        match report.first() {
            None => Ok(a),
            Some(v) => Err(Error::InvalidAlgebra(v.to_string())),
        }
    }

    /// Builds without checking the axioms; index ranges are still checked.
    pub fn new_unchecked(
        field: F,
        labels: Vec<String>,
        mult: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let n = labels.len();
        if unit.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "unit has {} coordinates but the basis has {n} elements",
                unit.len()
            )));
        }
        let mut pairs: Vec<Vec<Vec<(usize, F::Elem)>>> = vec![vec![Vec::new(); n]; n];
        for (i, j, k, c) in mult {
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant ({i}, {j}, {k}) outside basis of size {n}"
                )));
            }
            pairs[i][j].push((k, c));
        }
        let table = pairs
            .into_iter()
            .map(|row| row.into_iter().map(|p| SparseVec::from_pairs(&field, p)).collect())
            .collect();
        let unit = SparseVec::from_dense(&field, &unit);
        Ok(BasisAlgebra { field, labels, table, unit })
    }

    pub(crate) fn from_table(
        field: F,
        labels: Vec<String>,
        table: Vec<Vec<SparseVec<F::Elem>>>,
        unit: SparseVec<F::Elem>,
    ) -> Self {
        BasisAlgebra { field, labels, table, unit }
    }

    /// The ground field viewed as a one-dimensional algebra.
    pub fn ground(field: F) -> Self {
        let one = field.one();
        Self::new_unchecked(field, vec!["1".into()], [(0, 0, 0, one.clone())], vec![one])
            .expect("well-formed")
    }

    /// The full matrix algebra `M_n(K)` with basis `E_rc` in row-major order.
    pub fn matrix_algebra(field: F, n: usize) -> Self {
        let idx = |r: usize, c: usize| r * n + c;
        let mut mult = Vec::new();
        for r in 0..n {
            for c in 0..n {
                for d in 0..n {
                    mult.push((idx(r, c), idx(c, d), idx(r, d), field.one()));
                }
            }
        }
        let unit = (0..n * n).map(|i| if i / n == i % n { field.one() } else { field.zero() }).collect();
        let labels = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
        Self::new_unchecked(field, labels, mult, unit).expect("well-formed")
    }

    /// Upper triangular `n × n` matrices (the path algebra of the linearly oriented `A_n` quiver).
    pub fn upper_triangular(field: F, n: usize) -> Self {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
        let pos = |r: usize, c: usize| pairs.iter().position(|p| *p == (r, c)).expect("upper");
        let mut mult = Vec::new();
        for (i, &(r, c)) in pairs.iter().enumerate() {
            for (j, &(c2, d)) in pairs.iter().enumerate() {
                if c == c2 {
                    mult.push((i, j, pos(r, d), field.one()));
                }
            }
        }
        let unit = pairs.iter().map(|(r, c)| if r == c { field.one() } else { field.zero() }).collect();
        let labels = pairs.iter().map(|(r, c)| format!("E{}{}", r + 1, c + 1)).collect();
        Self::new_unchecked(field, labels, mult, unit).expect("well-formed")
    }

    /// The dual numbers `K[ε]/(ε²)`.
    pub fn dual_numbers(field: F) -> Self {
        let one = field.one();
        let mult = [(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone())];
        Self::new_unchecked(field, vec!["1".into(), "e".into()], mult, vec![one, field.zero()])
            .expect("well-formed")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec<F::Elem> {
        &self.unit
    }

    /// Index of the first basis element with a nonzero coefficient in the unit.
    pub fn unit_pivot(&self) -> Option<usize> {
        self.unit.leading()
    }

    /// `b_i · b_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut pairs = Vec::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let c = f.mul(a, b);
                for (k, v) in self.table[*i][*j].entries() {
                    pairs.push((*k, f.mul(&c, v)));
                }
            }
        }
        SparseVec::from_pairs(f, pairs)
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec<F::Elem> {
        SparseVec::unit(&self.field, i)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &SparseVec<F::Elem>) -> Mat<F> {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vec(j))).collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &SparseVec<F::Elem>) -> Mat<F> {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(&self.basis_vec(j), x)).collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    /// Structure constants as `(i, j, k, c)` triples in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, F::Elem)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (k, c) in p.entries() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }
}

/// Lists every violated associativity or unit constraint.
pub fn validate_algebra<F: Field>(a: &BasisAlgebra<F>) -> ValidationReport {
    let n = a.dim();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let lhs = a.mul(ij, &a.basis_vec(k));
                let rhs = a.mul(&a.basis_vec(i), a.product(j, k));
                if lhs != rhs {
                    violations.push(Violation::Associativity { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        let b = a.basis_vec(i);
        if a.mul(a.unit(), &b) != b {
            violations.push(Violation::LeftUnit { i });
        }
        if a.mul(&b, a.unit()) != b {
            violations.push(Violation::RightUnit { i });
        }
    }
    ValidationReport { violations }
}

/// The opposite algebra: same basis and unit, `b_i ∘ b_j = b_j · b_i`.
pub fn opposite<F: Field>(a: &BasisAlgebra<F>) -> BasisAlgebra<F> {
    let n = a.dim();
    let table = (0..n).map(|i| (0..n).map(|j| a.product(j, i).clone()).collect()).collect();
    BasisAlgebra::from_table(*a.field(), a.labels().to_vec(), table, a.unit().clone())
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i·dim B + j`.
pub fn tensor_algebra<F: Field>(a: &BasisAlgebra<F>, b: &BasisAlgebra<F>) -> Result<BasisAlgebra<F>> {
    check_same_field(a, b)?;
    let f = *a.field();
    let (da, db) = (a.dim(), b.dim());
    let mut table = vec![vec![SparseVec::zero(); da * db]; da * db];
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let pa = a.product(i, k);
                    let pb = b.product(j, l);
                    let pairs = pa.entries().iter().flat_map(|(x, u)| {
                        pb.entries().iter().map(move |(y, v)| (x * db + y, f.mul(u, v)))
                    });
                    table[i * db + j][k * db + l] = SparseVec::from_pairs(&f, pairs);
                }
            }
        }
    }
    let unit = SparseVec::from_pairs(
        &f,
        a.unit().entries().iter().flat_map(|(x, u)| {
            b.unit().entries().iter().map(move |(y, v)| (x * db + y, f.mul(u, v)))
        }),
    );
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    Ok(BasisAlgebra::from_table(f, labels, table, unit))
}

/// The product algebra `A × B` with basis `(a_i, 0)` followed by `(0, b_j)`.
pub fn product_algebra<F: Field>(a: &BasisAlgebra<F>, b: &BasisAlgebra<F>) -> Result<BasisAlgebra<F>> {
    check_same_field(a, b)?;
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let mut table = vec![vec![SparseVec::zero(); n]; n];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = a.product(i, j).clone();
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[da + i][da + j] = b.product(i, j).shifted(da);
        }
    }
    let unit = SparseVec::concat(&[(a.unit(), da), (b.unit(), db)]);
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("A:{l}"))
        .chain(b.labels().iter().map(|l| format!("B:{l}")))
        .collect();
    Ok(BasisAlgebra::from_table(*a.field(), labels, table, unit))
}

pub(crate) fn check_same_field<F: Field>(a: &BasisAlgebra<F>, b: &BasisAlgebra<F>) -> Result<()> {
    if a.field().spec() != b.field().spec() {
        return Err(Error::FieldMismatch(a.field().spec().to_string(), b.field().spec().to_string()));
    }
    Ok(())
}

/// The center `{z : z·b_i = b_i·z for all i}` as a subspace of `A`.
pub fn center<F: Field>(a: &BasisAlgebra<F>) -> Subspace<F> {
    let f = *a.field();
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        let bi = a.basis_vec(i);
        let commutator = a.right_mult(&bi).sub(&a.left_mult(&bi));
        rows.extend(commutator.row_vectors().iter().cloned());
    }
    kernel_basis(&Mat::from_rows(f, n, rows))
}

/// Basis of the space of linear maps `φ : V → W` with `φ·X_i = Y_i·φ` for all `i`, each map
/// given as a `dim W × dim V` matrix.
pub fn intertwiners<F: Field>(field: F, dim_v: usize, dim_w: usize, ops: &[(&Mat<F>, &Mat<F>)]) -> Vec<Mat<F>> {
    let var = |r: usize, c: usize| r * dim_v + c;
    let mut triplets = Vec::new();
    let mut row = 0;
    for (x, y) in ops {
        assert_eq!((x.rows(), x.cols()), (dim_v, dim_v));
        assert_eq!((y.rows(), y.cols()), (dim_w, dim_w));
        let xt = x.transpose();
        for r in 0..dim_w {
            for c in 0..dim_v {
                // (φX)_{rc} = Σ_k φ_{rk} X_{kc}
                for (k, v) in xt.row(c).entries() {
                    triplets.push((row, var(r, *k), v.clone()));
                }
                // (Yφ)_{rc} = Σ_k Y_{rk} φ_{kc}
                for (k, v) in y.row(r).entries() {
                    triplets.push((row, var(*k, c), field.neg(v)));
                }
                row += 1;
            }
        }
    }
    let system = Mat::from_triplets(field, row, dim_v * dim_w, triplets);
    kernel_basis(&system)
        .basis()
        .iter()
        .map(|v| vec_to_mat(field, v, dim_w, dim_v))
        .collect()
}

/// Row-major flattening of a matrix.
pub fn mat_to_vec<F: Field>(m: &Mat<F>) -> SparseVec<F::Elem> {
    let cols = m.cols();
    SparseVec::from_pairs(m.field(), m.triplets().map(|(r, c, v)| (r * cols + c, v.clone())))
}

pub fn vec_to_mat<F: Field>(field: F, v: &SparseVec<F::Elem>, rows: usize, cols: usize) -> Mat<F> {
    Mat::from_triplets(field, rows, cols, v.entries().iter().map(|(i, x)| (i / cols, i % cols, x.clone())))
}
