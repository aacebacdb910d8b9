//! Hochschild cochain complexes from the bar resolution.

use std::sync::Arc;

use super::complex::{cohomology_dims, Budget, CochainComplex};
use crate::algcore::{hom_coefficient_bimodule, same_algebra, BasisAlgebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, SparseVec};

/// The tensor factor `T̄` of the bar complex: either all of `T` or `T` modulo the unit line.
#[derive(Clone, Debug)]
pub struct BarBasis<F: Field> {
    pub algebra: Arc<BasisAlgebra<F>>,
    pub normalized: bool,
    /// Basis indices of `T` that span the chosen complement.
    pub letters: Vec<usize>,
    /// `proj(t_s · t_t)` in letter coordinates.
    products: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> BarBasis<F> {
    pub fn new(algebra: Arc<BasisAlgebra<F>>, normalized: bool) -> Self {
        let skip = if normalized { algebra.unit_pivot() } else { None };
        let letters: Vec<usize> = (0..algebra.dim()).filter(|i| Some(*i) != skip).collect();
        let mut bar = BarBasis { algebra, normalized, letters, products: Vec::new() };
        let products = bar
            .letters
            .iter()
            .map(|&i| {
                bar.letters
                    .iter()
                    .map(|&j| bar.project(bar.algebra.product(i, j)))
                    .collect()
            })
            .collect();
        bar.products = products;
        bar
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Coordinates of the class of `x` in `T̄`, using `x − (x_{j0}/u_{j0})·1` when normalized.
    pub fn project(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = *self.algebra.field();
        let x = match (self.normalized, self.algebra.unit_pivot()) {
            (true, Some(j0)) => {
                let u = self.algebra.unit();
                let c = f.div(&x.value(&f, j0), &u.value(&f, j0)).expect("unit pivot is nonzero");
                x.add_scaled(&f, u, &f.neg(&c))
            }
            _ => x.clone(),
        };
        SparseVec::from_pairs(
            &f,
            x.entries().iter().map(|(i, v)| {
                (self.letters.binary_search(i).expect("projection removes the unit pivot"), v.clone())
            }),
        )
    }

    /// `proj(t_s · t_t)` for letters `s`, `t`.
    pub fn letter_product(&self, s: usize, t: usize) -> &SparseVec<F::Elem> {
        &self.products[s][t]
    }

    /// Number of words of length `n`.
    pub fn words(&self, n: usize) -> usize {
        self.len().pow(n as u32)
    }
}

/// Encodes a word (first letter most significant).
pub fn encode(letters: &[usize], k: usize) -> usize {
    letters.iter().fold(0, |acc, l| acc * k + l)
}

pub fn decode(mut w: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        out[i] = w % k;
        w /= k;
    }
    out
}

/// Matrices of the left and right actions of each letter on a coefficient bimodule.
pub struct LetterActions<'a, F: Field> {
    pub left: Vec<&'a Mat<F>>,
    pub right: Vec<&'a Mat<F>>,
    pub dim: usize,
}

impl<'a, F: Field> LetterActions<'a, F> {
    pub fn new(bar: &BarBasis<F>, coeff: &'a Bimodule<F>) -> Self {
        LetterActions {
            left: bar.letters.iter().map(|&i| coeff.left_basis_action(i)).collect(),
            right: bar.letters.iter().map(|&i| coeff.right_basis_action(i)).collect(),
            dim: coeff.dim(),
        }
    }
}

/// Hochschild differential `d^n : C^n → C^{n+1}` with
/// `δf(t_1..t_{n+1}) = t_1·f(t_2..) + Σ_{i=1}^{n} (−1)^i f(..t_i t_{i+1}..) + (−1)^{n+1} f(t_1..t_n)·t_{n+1}`.
/// Cochain `(w, x)` sits at index `w·dim X + x`.
pub fn hochschild_differential<F: Field>(bar: &BarBasis<F>, act: &LetterActions<'_, F>, n: usize) -> Mat<F> {
    let f = *bar.algebra.field();
    let k = bar.len();
    let dx = act.dim;
    let rows = bar.words(n + 1) * dx;
    let cols = bar.words(n) * dx;
    let mut triplets = Vec::new();
    let one = f.one();
    let minus = f.neg(&one);
    for w in 0..bar.words(n + 1) {
        let t = decode(w, n + 1, k);
        let tail = encode(&t[1..], k);
        for (r, c, v) in act.left[t[0]].triplets() {
            triplets.push((w * dx + r, tail * dx + c, v.clone()));
        }
        for i in 1..=n {
            let sign = if i % 2 == 0 { &one } else { &minus };
            for (s, c) in bar.letter_product(t[i - 1], t[i]).entries() {
                let mut merged = Vec::with_capacity(n);
                merged.extend_from_slice(&t[..i - 1]);
                merged.push(*s);
                merged.extend_from_slice(&t[i + 1..]);
                let col = encode(&merged, k);
                let coef = f.mul(sign, c);
                for x in 0..dx {
                    triplets.push((w * dx + x, col * dx + x, coef.clone()));
                }
            }
        }
        let head = encode(&t[..n], k);
        let sign = if (n + 1).is_multiple_of(2) { &one } else { &minus };
        for (r, c, v) in act.right[t[n]].triplets() {
            triplets.push((w * dx + r, head * dx + c, f.mul(sign, v)));
        }
    }
    Mat::from_triplets(f, rows, cols, triplets)
}

/// `C^n(T, X) = Hom_K(T̄^{⊗n}, X)` for `n = 0..n_max−1` with the Hochschild differentials.
pub fn bar_cochain_complex<F: Field>(
    t: &Arc<BasisAlgebra<F>>,
    coeff: &Bimodule<F>,
    n_max: usize,
    normalized: bool,
    budget: Budget,
) -> Result<CochainComplex<F>> {
    if !same_algebra(t, coeff.left_algebra()) || !same_algebra(t, coeff.right_algebra()) {
        return Err(Error::IncompatibleBimodule("coefficients must be a bimodule over the algebra itself".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("max degree must be at least 1".into()));
    }
    let bar = BarBasis::new(t.clone(), normalized);
    let act = LetterActions::new(&bar, coeff);
    let dims: Vec<usize> = (0..n_max).map(|n| bar.words(n) * coeff.dim()).collect();
    for n in 0..n_max - 1 {
        budget.check(n, dims[n + 1], dims[n])?;
    }
    let diffs = (0..n_max - 1).map(|n| hochschild_differential(&bar, &act, n)).collect();
    let labels = (0..n_max).map(|n| format!("C^{n}(T,X)")).collect();
    CochainComplex::new(*t.field(), dims, diffs, labels)
}

/// The cochain map `C^*(T, X) → C^*(T, Y)` induced by a bimodule morphism `φ : X → Y`.
pub fn coefficient_map<F: Field>(bar: &BarBasis<F>, phi: &Mat<F>, n: usize) -> Mat<F> {
    crate::algcore::kron(&Mat::identity(*phi.field(), bar.words(n)), phi)
}

/// Hochschild cohomology dimensions of `t` in degrees `0..n_max−1`.
pub fn hh_dims<F: Field>(t: &Arc<BasisAlgebra<F>>, n_max: usize, budget: Budget) -> Result<Vec<usize>> {
    let coeff = Bimodule::regular(t.clone());
    let c = bar_cochain_complex(t, &coeff, n_max, true, budget)?;
    Ok(cohomology_dims(&c))
}

/// The complex computing `Ext*_{A⊗B^o}(M, N)` as `H*(Λ, Hom_K(M, N))`.
pub fn ext_complex<F: Field>(
    m: &Bimodule<F>,
    n: &Bimodule<F>,
    n_max: usize,
    budget: Budget,
) -> Result<CochainComplex<F>> {
    let (lambda, hom) = hom_coefficient_bimodule(m, n)?;
    bar_cochain_complex(&lambda, &hom, n_max, true, budget)
}

pub fn ext_dims<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, n_max: usize, budget: Budget) -> Result<Vec<usize>> {
    Ok(cohomology_dims(&ext_complex(m, n, n_max, budget)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{center, hom_space, kronecker};
    use crate::exactla::{PrimeField, Rationals};

    fn hh<F: Field>(t: &Arc<BasisAlgebra<F>>, n_max: usize) -> Vec<usize> {
        hh_dims(t, n_max, Budget::DEFAULT).unwrap()
    }

    #[test]
    fn ground_field() {
        let k = Arc::new(BasisAlgebra::ground(Rationals));
        let c = bar_cochain_complex(&k, &Bimodule::regular(k.clone()), 4, true, Budget::DEFAULT).unwrap();
        assert_eq!(c.dims(), &[1, 0, 0, 0]);
        assert_eq!(hh(&k, 4), vec![1, 0, 0]);
    }

    #[test]
    fn kronecker_cochain_sizes() {
        let t = kronecker(Rationals, 2).algebra;
        let c = bar_cochain_complex(&t, &Bimodule::regular(t.clone()), 3, true, Budget::DEFAULT).unwrap();
        assert_eq!(c.dim(1), 12);
        assert!(c.is_complex());
    }

    #[test]
    fn kronecker_cohomology() {
        for m in 1..=3 {
            let t = kronecker(Rationals, m).algebra;
            assert_eq!(hh(&t, 4), vec![1, m * m - 1, 0]);
            let t2 = kronecker(PrimeField::new(2).unwrap(), m).algebra;
            assert_eq!(hh(&t2, 4), vec![1, m * m - 1, 0]);
        }
    }

    #[test]
    fn normalized_matches_unnormalized() {
        let q = Rationals;
        let algebras = [
            Arc::new(BasisAlgebra::dual_numbers(q)),
            Arc::new(BasisAlgebra::upper_triangular(q, 2)),
            kronecker(q, 0).algebra,
        ];
        for t in &algebras {
            let reg = Bimodule::regular(t.clone());
            let a = bar_cochain_complex(t, &reg, 4, true, Budget::DEFAULT).unwrap();
            let b = bar_cochain_complex(t, &reg, 4, false, Budget::DEFAULT).unwrap();
            assert!(a.is_complex() && b.is_complex());
            assert_eq!(cohomology_dims(&a), cohomology_dims(&b));
            assert_eq!(cohomology_dims(&a)[0], center(t).dim());
        }
    }

    #[test]
    fn dual_numbers_depend_on_characteristic() {
        // HH^n(K[ε]) has dimension 2 for n = 0, and for n ≥ 1 it is 1 in characteristic ≠ 2
        // and 2 in characteristic 2; both follow from the periodic resolution.
        let q = Arc::new(BasisAlgebra::dual_numbers(Rationals));
        assert_eq!(hh(&q, 4), vec![2, 1, 1]);
        let f2 = Arc::new(BasisAlgebra::dual_numbers(PrimeField::new(2).unwrap()));
        assert_eq!(hh(&f2, 4), vec![2, 2, 2]);
    }

    #[test]
    fn ext_over_ground_field() {
        let k = Arc::new(BasisAlgebra::ground(Rationals));
        let k1 = Bimodule::scalar_power(k.clone(), 1);
        let k2 = Bimodule::scalar_power(k.clone(), 2);
        assert_eq!(ext_dims(&k2, &k2, 4, Budget::DEFAULT).unwrap(), vec![4, 0, 0]);
        assert_eq!(ext_dims(&k1, &k2, 4, Budget::DEFAULT).unwrap(), vec![2, 0, 0]);
    }

    #[test]
    fn ext_zero_is_hom() {
        let q = Rationals;
        let u = Arc::new(BasisAlgebra::upper_triangular(q, 2));
        let d = Arc::new(BasisAlgebra::dual_numbers(q));
        let reg = Bimodule::regular(u.clone());
        let free = Bimodule::free_rank_one(u.clone(), u.clone());
        assert_eq!(ext_dims(&reg, &reg, 2, Budget::DEFAULT).unwrap()[0], hom_space(&reg, &reg).unwrap().len());
        assert_eq!(ext_dims(&free, &reg, 2, Budget::DEFAULT).unwrap()[0], hom_space(&free, &reg).unwrap().len());
        let dreg = Bimodule::regular(d);
        assert_eq!(ext_dims(&dreg, &dreg, 2, Budget::DEFAULT).unwrap()[0], 2);
    }

    #[test]
    fn budget_is_enforced() {
        let t = kronecker(Rationals, 4).algebra;
        let reg = Bimodule::regular(t.clone());
        let err = bar_cochain_complex(&t, &reg, 5, true, Budget(1000)).unwrap_err();
        assert!(matches!(err, Error::DegreeTooLarge { .. }));
    }
}
