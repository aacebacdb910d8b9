//! Triangular algebras `[A M; 0 B]`.

use std::sync::Arc;

use super::algebra::BasisAlgebra;
use super::bimodule::{Bimodule};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec};

/// A triangular algebra together with the blocks it was built from. The basis is ordered
/// `A`-part, then `M`-part, then `B`-part.
#[derive(Clone, Debug)]
pub struct TriangularAlgebra<F: Field> {
    pub a: Arc<BasisAlgebra<F>>,
    pub b: Arc<BasisAlgebra<F>>,
    pub m: Arc<Bimodule<F>>,
    pub algebra: Arc<BasisAlgebra<F>>,
}

impl<F: Field> TriangularAlgebra<F> {
    pub fn new(m: Arc<Bimodule<F>>) -> Self {
        let algebra = Arc::new(triangular_product(&m));
        TriangularAlgebra { a: m.left_algebra().clone(), b: m.right_algebra().clone(), m, algebra }
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    pub fn offset_m(&self) -> usize {
        self.a.dim()
    }

    pub fn offset_b(&self) -> usize {
        self.a.dim() + self.m.dim()
    }

    /// Embeds `(a, m, b)` into the triangular algebra.
    pub fn embed(
        &self,
        a: &SparseVec<F::Elem>,
        m: &SparseVec<F::Elem>,
        b: &SparseVec<F::Elem>,
    ) -> SparseVec<F::Elem> {
        SparseVec::concat(&[(a, self.dim_a()), (m, self.dim_m()), (b, self.dim_b())])
    }

    /// Splits an element into its `(a, m, b)` components.
    pub fn split(
        &self,
        t: &SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let (om, ob) = (self.offset_m(), self.offset_b());
        (t.slice(0, om), t.slice(om, ob), t.slice(ob, ob + self.dim_b()))
    }
}

/// The triangular algebra `[A M; 0 B]` with product
/// `(a, m, b)(a', m', b') = (aa', am' + mb', bb')`.
pub fn triangular_algebra<F: Field>(
    a: &Arc<BasisAlgebra<F>>,
    b: &Arc<BasisAlgebra<F>>,
    m: &Bimodule<F>,
) -> Result<BasisAlgebra<F>> {
    if !super::bimodule::same_algebra(a, m.left_algebra()) || !super::bimodule::same_algebra(b, m.right_algebra()) {
        return Err(Error::IncompatibleBimodule("bimodule is not over the given algebras".into()));
    }
    Ok(triangular_product(m))
}

fn triangular_product<F: Field>(m: &Bimodule<F>) -> BasisAlgebra<F> {
    let f = *m.field();
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let (da, dm, db) = (a.dim(), m.dim(), b.dim());
    let n = da + dm + db;
    let (om, ob) = (da, da + dm);
    let mut table = vec![vec![SparseVec::zero(); n]; n];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = a.product(i, j).clone();
        }
        for k in 0..dm {
            table[i][om + k] = m.left_basis_action(i).column(k).shifted(om);
        }
    }
    for k in 0..dm {
        for j in 0..db {
            table[om + k][ob + j] = m.right_basis_action(j).column(k).shifted(om);
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[ob + i][ob + j] = b.product(i, j).shifted(ob);
        }
    }
    let unit = SparseVec::concat(&[(a.unit(), da), (&SparseVec::zero(), dm), (b.unit(), db)]);
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("a:{l}"))
        .chain(m.labels().iter().map(|l| format!("m:{l}")))
        .chain(b.labels().iter().map(|l| format!("b:{l}")))
        .collect();
    BasisAlgebra::from_table(f, labels, table, unit)
}

/// The Kronecker algebra `[K K^m; 0 K]`.
pub fn kronecker<F: Field>(field: F, m: usize) -> TriangularAlgebra<F> {
    let k = Arc::new(BasisAlgebra::ground(field));
    TriangularAlgebra::new(Arc::new(Bimodule::scalar_power(k, m)))
}
