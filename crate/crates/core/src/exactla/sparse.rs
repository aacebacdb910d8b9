//! Sparse vectors and row-compressed matrices over an exact field.

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: fmt::Debug> fmt::Debug for SparseVec<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, e)| (i, e))).finish()
    }
}

impl<E> Default for SparseVec<E> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<E: Clone + PartialEq> SparseVec<E> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, i: usize) -> Self {
        SparseVec { entries: vec![(i, field.one())] }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<F: Field<Elem = E>>(
        field: &F,
        pairs: impl IntoIterator<Item = (usize, E)>,
    ) -> Self {
        let mut acc: BTreeMap<usize, E> = BTreeMap::new();
        for (i, v) in pairs {
            match acc.get_mut(&i) {
                Some(slot) => *slot = field.add(slot, &v),
                None => {
                    acc.insert(i, v);
                }
            }
        }
        Self::from_map(field, acc)
    }

    pub fn from_map<F: Field<Elem = E>>(field: &F, map: BTreeMap<usize, E>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !field.is_zero(v)).collect(),
        }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[E]) -> Self {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn value<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, field.mul(v, c)))
                .collect(),
        }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, field.neg(v))).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled<F: Field<Elem = E>>(&self, field: &F, other: &Self, c: &E) -> Self {
        if field.is_zero(c) {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, field.mul(y, c)));
                        b.next();
                    } else {
                        let s = field.add(x, &field.mul(y, c));
                        if !field.is_zero(&s) {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, field.mul(y, c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, other, &field.one())
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, other, &field.neg(&field.one()))
    }

    pub fn dot<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> E {
        let mut acc = field.zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc = field.add(&acc, &field.mul(x, y));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindexes every entry by adding `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    /// Keeps the entries with index in `start..end`, reindexed to start at 0.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < end)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }

    /// Concatenates vectors living in consecutive coordinate blocks.
    pub fn concat(parts: &[(&Self, usize)]) -> Self {
        let mut entries = Vec::new();
        let mut offset = 0;
        for (v, len) in parts {
            entries.extend(v.entries.iter().map(|(i, x)| (i + offset, x.clone())));
            offset += len;
        }
        SparseVec { entries }
    }
}

/// A `rows × cols` matrix stored as sparse rows. It acts on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for (r, row) in self.data.iter().enumerate() {
            if !row.is_zero() {
                writeln!(f, "  {r}: {row:?}")?;
            }
        }
        write!(f, "]")
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![SparseVec::zero(); rows] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let data = (0..n).map(|i| SparseVec::unit(&field, i)).collect();
        Mat { field, rows: n, cols: n, data }
    }

    pub fn from_triplets(
        field: F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, F::Elem>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let row = &mut acc[r];
            match row.get_mut(&c) {
                Some(slot) => *slot = field.add(slot, &v),
                None => {
                    row.insert(c, v);
                }
            }
        }
        let data = acc.into_iter().map(|m| SparseVec::from_map(&field, m)).collect();
        Mat { field, rows, cols, data }
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        Mat { field, rows: rows.len(), cols, data: rows }
    }

    pub fn from_columns(field: F, rows: usize, columns: &[SparseVec<F::Elem>]) -> Self {
        Mat::from_rows(field, rows, columns.to_vec()).transpose()
    }

    fn transpose_with_rows(&self, new_cols: usize, new_rows: usize) -> Self {
        let mut out: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); new_rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.entries() {
                out[*c].push((r, v.clone()));
            }
        }
        let data = out
            .into_iter()
            .map(|entries| SparseVec { entries })
            .collect();
        Mat { field: self.field, rows: new_rows, cols: new_cols, data }
    }

    pub fn from_dense(field: F, rows: &[Vec<F::Elem>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| SparseVec::from_dense(&field, r)).collect();
        Mat { field, rows: rows.len(), cols, data }
    }

    pub fn from_i64(field: F, rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|v| field.from_i64(*v)).collect())
            .collect();
        let mut m = Mat::from_dense(field, &dense);
        if rows.is_empty() {
            m.cols = 0;
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<F::Elem> {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec<F::Elem>] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        self.data[r].value(&self.field, c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        self.transpose_with_rows(self.rows, self.cols)
    }

    pub fn columns(&self) -> Vec<SparseVec<F::Elem>> {
        self.transpose().data
    }

    pub fn column(&self, c: usize) -> SparseVec<F::Elem> {
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(c).map(|v| (r, v.clone())))
            .collect();
        SparseVec { entries }
    }

    pub fn mul_vec(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        assert!(v.max_index().is_none_or(|m| m < self.cols), "vector too long");
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = row.dot(&self.field, v);
                (!self.field.is_zero(&x)).then_some((r, x))
            })
            .collect();
        SparseVec { entries }
    }

    pub fn mul_dense(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let sv = SparseVec::from_dense(&self.field, v);
        self.mul_vec(&sv).to_dense(&self.field, self.rows)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                for (k, a) in row.entries() {
                    for (c, b) in other.data[*k].entries() {
                        let p = f.mul(a, b);
                        match acc.get_mut(c) {
                            Some(slot) => *slot = f.add(slot, &p),
                            None => {
                                acc.insert(*c, p);
                            }
                        }
                    }
                }
                SparseVec::from_map(f, acc)
            })
            .collect();
        Mat { field: self.field, rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        self.add_scaled(other, &self.field.one())
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        self.add_scaled(other, &self.field.neg(&self.field.one()))
    }

    pub fn add_scaled(&self, other: &Mat<F>, c: &F::Elem) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add_scaled(&self.field, b, c))
            .collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Mat<F> {
        let data = self.data.iter().map(|r| r.scale(&self.field, c)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }

    /// Assembles a block matrix. `blocks[i][j]` is `None` for a zero block; row heights and
    /// column widths are given explicitly so that empty block rows are allowed.
    pub fn block(
        field: F,
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[Vec<Option<&Mat<F>>>],
    ) -> Mat<F> {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let col_off: Vec<usize> = prefix_sums(col_dims);
        let mut data = Vec::with_capacity(rows);
        for (bi, &h) in row_dims.iter().enumerate() {
            for r in 0..h {
                let mut entries = Vec::new();
                for (bj, &w) in col_dims.iter().enumerate() {
                    if let Some(Some(m)) = blocks.get(bi).and_then(|row| row.get(bj)) {
                        assert_eq!((m.rows, m.cols), (h, w), "block ({bi},{bj}) has wrong shape");
                        entries.extend(
                            m.data[r].entries().iter().map(|(c, v)| (c + col_off[bj], v.clone())),
                        );
                    }
                }
                data.push(SparseVec { entries });
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Extracts the sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn sub_block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat<F> {
        let data = self.data[r0..r1].iter().map(|row| row.slice(c0, c1)).collect();
        Mat { field: self.field, rows: r1 - r0, cols: c1 - c0, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        self.data.iter().map(|r| r.to_dense(&self.field, self.cols)).collect()
    }
}

pub fn prefix_sums(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for d in dims {
        acc += d;
        out.push(acc);
    }
    out
}
