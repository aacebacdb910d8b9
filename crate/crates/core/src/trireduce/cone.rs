//! Mapping cones of chain maps between cochain complexes.

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::hochschild::{long_exact_sequence, ChainMap, CochainComplex, NodeLabels, SequenceReport};

/// The cone of `λ : X → Y`, with `C^n = X^n ⊕ Y^{n−1}` and `d(x, y) = (dx, λx − dy)`.
#[derive(Clone, Debug)]
pub struct ConeComplex<F: Field> {
    pub source: CochainComplex<F>,
    pub target: CochainComplex<F>,
    pub lambda: ChainMap<F>,
    pub cone: CochainComplex<F>,
}

impl<F: Field> ConeComplex<F> {
    /// Builds the cone. All three inputs must cover the same degrees and `λ` must commute
    /// with the differentials.
    pub fn new(source: CochainComplex<F>, target: CochainComplex<F>, lambda: ChainMap<F>) -> Result<Self> {
        let top = source.top();
        if target.top() != top || lambda.degrees() != top + 1 {
            return Err(Error::InvalidArgument("cone inputs cover different degrees".into()));
        }
        if !lambda.commutes(&source, &target) {
            return Err(Error::InvalidArgument("λ is not a chain map".into()));
        }
        let f = *source.field();
        let ydim = |n: usize| if n == 0 { 0 } else { target.dim(n - 1) };
        let dims: Vec<usize> = (0..=top).map(|n| source.dim(n) + ydim(n)).collect();
        let mut diffs = Vec::with_capacity(top);
        for n in 0..top {
            let minus_dy = if n == 0 { Mat::zeros(f, target.dim(0), 0) } else { target.diff(n - 1).neg() };
            diffs.push(Mat::block(
                f,
                &[source.dim(n + 1), ydim(n + 1)],
                &[source.dim(n), ydim(n)],
                &[vec![Some(source.diff(n)), None], vec![Some(&lambda.maps[n]), Some(&minus_dy)]],
            ));
        }
        let labels = (0..=top).map(|n| format!("cone^{n}")).collect();
        let cone = CochainComplex::new(f, dims, diffs, labels)?;
        Ok(ConeComplex { source, target, lambda, cone })
    }

    pub fn top(&self) -> usize {
        self.cone.top()
    }

    /// `Y[−1]`: `Y^{n−1}` in degree `n`, differential `−d_Y`.
    pub fn shifted_target(&self) -> CochainComplex<F> {
        let f = *self.target.field();
        let top = self.top();
        let dims: Vec<usize> = (0..=top).map(|n| if n == 0 { 0 } else { self.target.dim(n - 1) }).collect();
        let diffs = (0..top)
            .map(|n| if n == 0 { Mat::zeros(f, dims[1], 0) } else { self.target.diff(n - 1).neg() })
            .collect();
        let labels = (0..=top).map(|n| format!("target^{}", n as i64 - 1)).collect();
        CochainComplex::new(f, dims, diffs, labels).expect("shapes follow the target")
    }

    /// The projection `C → X`.
    pub fn project_to_source(&self) -> ChainMap<F> {
        let f = *self.source.field();
        ChainMap::new(
            (0..=self.top())
                .map(|n| {
                    let (x, c) = (self.source.dim(n), self.cone.dim(n));
                    Mat::identity(f, x).block_into_columns(c, 0)
                })
                .collect(),
        )
    }

    /// The inclusion `Y[−1] → C`.
    pub fn include_target(&self) -> ChainMap<F> {
        let f = *self.source.field();
        ChainMap::new(
            (0..=self.top())
                .map(|n| {
                    let x = self.source.dim(n);
                    let y = self.cone.dim(n) - x;
                    Mat::identity(f, y).block_into_rows(self.cone.dim(n), x)
                })
                .collect(),
        )
    }
}

impl<F: Field> Mat<F> {
    /// Places `self` as a column block at `offset` in a matrix with `cols` columns.
    pub(crate) fn block_into_columns(&self, cols: usize, offset: usize) -> Mat<F> {
        let trip = self.triplets().map(|(r, c, v)| (r, c + offset, v.clone())).collect::<Vec<_>>();
        Mat::from_triplets(*self.field(), self.rows(), cols, trip)
    }

    /// Places `self` as a row block at `offset` in a matrix with `rows` rows.
    pub(crate) fn block_into_rows(&self, rows: usize, offset: usize) -> Mat<F> {
        let trip = self.triplets().map(|(r, c, v)| (r + offset, c, v.clone())).collect::<Vec<_>>();
        Mat::from_triplets(*self.field(), rows, self.cols(), trip)
    }
}

/// The long exact sequence `… → H^{n−1}(Y) → H^n(C) → H^n(X) → H^n(Y) → …` of the cone
/// triangle `0 → Y[−1] → C → X → 0`. Its connecting map is `H(λ)`.
pub fn triangle_les_report<F: Field>(c: &ConeComplex<F>) -> Result<SequenceReport<F>> {
    let sub = c.shifted_target();
    long_exact_sequence(
        &sub,
        &c.cone,
        &c.source,
        &c.include_target(),
        &c.project_to_source(),
        &NodeLabels::new("H(target)[-1]", "H(cone)", "H(source)"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank, Rationals};
    use crate::hochschild::{cohomology, cohomology_dims, induced_map};

    fn complex(dims: Vec<usize>, diffs: Vec<Mat<Rationals>>) -> CochainComplex<Rationals> {
        let n = dims.len();
        CochainComplex::new(Rationals, dims, diffs, vec![String::new(); n]).unwrap()
    }

    #[test]
    fn zero_map_splits() {
        let q = Rationals;
        let x = complex(vec![1, 1, 0], vec![Mat::zeros(q, 1, 1), Mat::zeros(q, 0, 1)]);
        let y = complex(vec![2, 1, 1], vec![Mat::from_i64(q, &[vec![1, 0]]), Mat::zeros(q, 1, 1)]);
        let lambda = ChainMap::new(vec![Mat::zeros(q, 2, 1), Mat::zeros(q, 1, 1), Mat::zeros(q, 1, 0)]);
        let c = ConeComplex::new(x.clone(), y.clone(), lambda).unwrap();
        assert!(c.cone.is_complex());
        let hx = cohomology_dims(&x);
        let hy = cohomology_dims(&y);
        let hc = cohomology_dims(&c.cone);
        assert_eq!(hc[0], hx[0]);
        assert_eq!(hc[1], hx[1] + hy[0]);
        let r = triangle_les_report(&c).unwrap();
        assert!(r.all_exact());
        assert!(r.map_ranks().iter().step_by(3).all(|r| *r == 0));
    }

    #[test]
    fn identity_cone_is_acyclic() {
        let q = Rationals;
        let x = complex(vec![1, 2, 1], vec![Mat::from_i64(q, &[vec![1], vec![0]]), Mat::from_i64(q, &[vec![0, 1]])]);
        let lambda = ChainMap::new((0..3).map(|n| Mat::identity(q, x.dim(n))).collect());
        let c = ConeComplex::new(x.clone(), x.clone(), lambda).unwrap();
        assert!(c.cone.is_complex());
        assert_eq!(cohomology_dims(&c.cone), vec![0, 0]);
        let r = triangle_les_report(&c).unwrap();
        assert!(r.all_exact());
        assert_eq!(r.alternating_sum(0..r.nodes.len()), 0);
    }

    #[test]
    fn connecting_map_is_induced_lambda() {
        let q = Rationals;
        let x = complex(vec![1, 0, 0], vec![Mat::zeros(q, 0, 1), Mat::zeros(q, 0, 0)]);
        let y = complex(vec![1, 0, 0], vec![Mat::zeros(q, 0, 1), Mat::zeros(q, 0, 0)]);
        let lambda = ChainMap::new(vec![Mat::identity(q, 1), Mat::zeros(q, 0, 0), Mat::zeros(q, 0, 0)]);
        let c = ConeComplex::new(x.clone(), y.clone(), lambda.clone()).unwrap();
        let r = triangle_les_report(&c).unwrap();
        let induced = induced_map(&lambda, &cohomology(&x), &cohomology(&y), 0);
        // Node order: 0, Y[-1]^0, C^0, X^0, Y[-1]^1, …; the map X^0 → Y[-1]^1 is H(λ) up to sign.
        assert_eq!(rank(&r.maps[3]), rank(&induced));
        assert!(r.all_exact());
    }

    #[test]
    fn rejects_non_chain_map() {
        let q = Rationals;
        let x = complex(vec![1, 1], vec![Mat::identity(q, 1)]);
        let y = complex(vec![1, 1], vec![Mat::zeros(q, 1, 1)]);
        let lambda = ChainMap::new(vec![Mat::zeros(q, 1, 1), Mat::identity(q, 1)]);
        assert!(ConeComplex::new(x, y, lambda).is_err());
    }
}
