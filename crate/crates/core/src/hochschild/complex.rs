//! Cochain complexes of finite-dimensional vector spaces, chain maps and cohomology.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, Echelon, Field, Mat, SparseVec, Subspace};

/// Refuses to build differentials whose dense size exceeds this many entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub fn check(&self, degree: usize, rows: usize, cols: usize) -> Result<()> {
        let entries = rows as u128 * cols as u128;
        if entries > self.0 {
            return Err(Error::DegreeTooLarge { degree, entries, budget: self.0 });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Spaces `C^0, …, C^top` with differentials `d^n : C^n → C^{n+1}` for `n < top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    diffs: Vec<Mat<F>>,
    labels: Vec<String>,
}

impl<F: Field> CochainComplex<F> {
    pub fn new(field: F, dims: Vec<usize>, diffs: Vec<Mat<F>>, labels: Vec<String>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() || labels.len() != dims.len() {
            return Err(Error::InvalidArgument(format!(
                "complex needs one more space than differentials ({} spaces, {} differentials, {} labels)",
                dims.len(),
                diffs.len(),
                labels.len()
            )));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.cols() != dims[n] || d.rows() != dims[n + 1] {
                return Err(Error::InvalidArgument(format!(
                    "d^{n} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[n + 1],
                    dims[n]
                )));
            }
        }
        Ok(CochainComplex { field, dims, diffs, labels })
    }

    pub fn zero(field: F, top: usize) -> Self {
        let dims = vec![0; top + 1];
        let diffs = (0..top).map(|_| Mat::zeros(field, 0, 0)).collect();
        let labels = (0..=top).map(|n| format!("0^{n}")).collect();
        CochainComplex { field, dims, diffs, labels }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Highest degree with a space.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Number of degrees whose cohomology is computable (`0..reported()`).
    pub fn reported(&self) -> usize {
        self.diffs.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn diff(&self, n: usize) -> &Mat<F> {
        &self.diffs[n]
    }

    pub fn diffs(&self) -> &[Mat<F>] {
        &self.diffs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Whether `d^{n+1} ∘ d^n = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// Keeps the degrees `0..=top`.
    pub fn truncate(&self, top: usize) -> Self {
        let top = top.min(self.top());
        CochainComplex {
            field: self.field,
            dims: self.dims[..=top].to_vec(),
            diffs: self.diffs[..top].to_vec(),
            labels: self.labels[..=top].to_vec(),
        }
    }

    pub fn direct_sum(parts: &[&CochainComplex<F>]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        let f = first.field;
        let top = parts.iter().map(|c| c.top()).min().expect("nonempty");
        let dims: Vec<usize> = (0..=top).map(|n| parts.iter().map(|c| c.dims[n]).sum()).collect();
        let diffs = (0..top)
            .map(|n| {
                let rd: Vec<usize> = parts.iter().map(|c| c.dims[n + 1]).collect();
                let cd: Vec<usize> = parts.iter().map(|c| c.dims[n]).collect();
                let blocks: Vec<Vec<Option<&Mat<F>>>> = (0..parts.len())
                    .map(|i| (0..parts.len()).map(|j| (i == j).then(|| &parts[i].diffs[n])).collect())
                    .collect();
                Mat::block(f, &rd, &cd, &blocks)
            })
            .collect();
        let labels = (0..=top)
            .map(|n| parts.iter().map(|c| c.labels[n].as_str()).collect::<Vec<_>>().join(" ⊕ "))
            .collect();
        CochainComplex::new(f, dims, diffs, labels)
    }
}

/// A degreewise family of matrices `f^n : X^n → Y^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F: Field> {
    pub maps: Vec<Mat<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(maps: Vec<Mat<F>>) -> Self {
        ChainMap { maps }
    }

    pub fn degrees(&self) -> usize {
        self.maps.len()
    }

    /// Whether the shapes match and `d_Y f^n = f^{n+1} d_X` wherever both sides are defined.
    pub fn commutes(&self, x: &CochainComplex<F>, y: &CochainComplex<F>) -> bool {
        let top = x.top().min(y.top()).min(self.maps.len().saturating_sub(1));
        for n in 0..=top {
            let m = &self.maps[n];
            if m.cols() != x.dim(n) || m.rows() != y.dim(n) {
                return false;
            }
        }
        (0..top).all(|n| y.diff(n).mul(&self.maps[n]) == self.maps[n + 1].mul(x.diff(n)))
    }

    pub fn compose(&self, after: &ChainMap<F>) -> ChainMap<F> {
        let k = self.maps.len().min(after.maps.len());
        ChainMap { maps: (0..k).map(|n| after.maps[n].mul(&self.maps[n])).collect() }
    }
}

/// Cohomology in one degree, with chosen representatives.
#[derive(Clone, Debug)]
pub struct DegreeCohomology<F: Field> {
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
    /// Cocycles whose classes form a basis of the cohomology.
    pub representatives: Vec<SparseVec<F::Elem>>,
    classifier: Echelon<F>,
}

impl<F: Field> DegreeCohomology<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `v` in the representative basis, or `None` when `v` is not
    /// a cocycle.
    pub fn class_of(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = self.cocycles.field();
        if !self.cocycles.contains(v) {
            return None;
        }
        let red = self.classifier.reduce(v);
        debug_assert!(red.residual.is_zero());
        let coeffs = red.coefficients.expect("tracking");
        let offset = self.coboundaries.dim();
        Some((0..self.dim()).map(|i| coeffs.value(f, offset + i)).collect())
    }

    pub fn is_coboundary(&self, v: &SparseVec<F::Elem>) -> bool {
        self.coboundaries.contains(v)
    }
}

/// Cohomology of a complex in every computable degree.
#[derive(Clone, Debug)]
pub struct CohomologyResult<F: Field> {
    pub dims: Vec<usize>,
    pub degrees: Vec<DegreeCohomology<F>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CohomologyDims {
    pub dims: Vec<usize>,
}

impl<F: Field> CohomologyResult<F> {
    pub fn degree(&self, n: usize) -> &DegreeCohomology<F> {
        &self.degrees[n]
    }

    pub fn reported(&self) -> usize {
        self.dims.len()
    }
}

/// Cohomology in degrees `0..c.reported()`; representatives are chosen by reducing the echelon
/// basis of the cocycles against the coboundaries.
pub fn cohomology<F: Field>(c: &CochainComplex<F>) -> CohomologyResult<F> {
    let f = *c.field();
    let mut degrees = Vec::with_capacity(c.reported());
    for n in 0..c.reported() {
        let cocycles = kernel_basis(c.diff(n));
        let coboundaries = if n == 0 {
            Subspace::zero(f, c.dim(0))
        } else {
            crate::exactla::image(c.diff(n - 1))
        };
        let mut probe = Echelon::new(f);
        for b in coboundaries.basis() {
            probe.insert(b);
        }
        let representatives: Vec<_> =
            cocycles.basis().iter().filter(|z| probe.insert(z)).cloned().collect();
        let mut classifier = Echelon::with_tracking(f);
        for v in coboundaries.basis().iter().chain(&representatives) {
            classifier.insert(v);
        }
        degrees.push(DegreeCohomology { cocycles, coboundaries, representatives, classifier });
    }
    CohomologyResult { dims: degrees.iter().map(|d| d.dim()).collect(), degrees }
}

/// Dimensions only, by rank arithmetic.
pub fn cohomology_dims<F: Field>(c: &CochainComplex<F>) -> Vec<usize> {
    let ranks: Vec<usize> = c.diffs().iter().map(rank).collect();
    (0..c.reported())
        .map(|n| c.dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

/// The map induced on cohomology in degree `n`, as a `dim H^n(Y) × dim H^n(X)` matrix.
pub fn induced_map<F: Field>(
    f: &ChainMap<F>,
    hx: &CohomologyResult<F>,
    hy: &CohomologyResult<F>,
    n: usize,
) -> Mat<F> {
    let field = *f.maps[n].field();
    let cols: Vec<_> = hx.degrees[n]
        .representatives
        .iter()
        .map(|z| {
            let image = f.maps[n].mul_vec(z);
            let coords = hy.degrees[n].class_of(&image).expect("chain maps send cocycles to cocycles");
            SparseVec::from_dense(&field, &coords)
        })
        .collect();
    Mat::from_columns(field, hy.dims[n], &cols)
}
