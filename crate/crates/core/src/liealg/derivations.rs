//! The Lie algebra of derivations of a finite-dimensional algebra and its quotient `HH¹`.

use std::sync::Arc;

use super::prime::PrimeDerivations;
use super::system::{commutator, inner_of_basis, push_leibniz, Equations, Multiplications};
use crate::algcore::{mat_to_vec, vec_to_mat, BasisAlgebra, TriangularAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Quotient, SparseVec, Subspace};

/// `Der(T)`, `Int(T)` and `HH¹(T) = Der(T)/Int(T)` with its bracket.
///
/// Derivations are `dim T × dim T` matrices acting on coordinate columns. `bracket_constants[i][j]`
/// holds the coordinates of `[h_i, h_j]` modulo `Int(T)` on `hh1_basis`.
#[derive(Clone, Debug)]
pub struct DerivationSpace<F: Field> {
    pub algebra: Arc<BasisAlgebra<F>>,
    pub der_basis: Vec<Mat<F>>,
    pub int_basis: Vec<Mat<F>>,
    pub hh1_basis: Vec<Mat<F>>,
    pub bracket_constants: Vec<Vec<Vec<F::Elem>>>,
    /// For a triangular algebra, the derivations with vanishing `m₀` and their inner part.
    pub prime: Option<PrimeDerivations<F>>,
    der: Subspace<F>,
    int: Subspace<F>,
    quotient: Quotient<F>,
}

/// Solves the Leibniz system of `t` and computes the inner derivations and `HH¹`.
pub fn derivation_space<F: Field>(t: &Arc<BasisAlgebra<F>>) -> DerivationSpace<F> {
    let (der, int) = der_and_int(t);
    let quotient = Quotient::new(&der, &int).expect("inner derivations are derivations");
    DerivationSpace::assemble(t.clone(), der, int, quotient, None)
}

/// As [`derivation_space`], with `HH¹` representatives taken among the derivations of the form
/// `[α μ; 0 β]` (no `m₀` part), so that they are also representatives of `Der′/Int′`.
pub fn triangular_derivation_space<F: Field>(t: &TriangularAlgebra<F>) -> Result<DerivationSpace<F>> {
    let (der, int) = der_and_int(&t.algebra);
    let prime = PrimeDerivations::new(t.a.clone(), t.b.clone(), vec![t.m.clone()], false)?;
    let reps: Vec<SparseVec<F::Elem>> = prime
        .hh1()
        .reps()
        .iter()
        .map(|v| mat_to_vec(&prime.to_triangular(v).recompose(t)))
        .collect();
    if reps.len() + int.dim() != der.dim() || !reps.iter().all(|r| der.contains(r)) {
        return Err(Error::BlockStructureViolated(format!(
            "{} representatives from the block form do not complete {} inner derivations to {}",
            reps.len(),
            int.dim(),
            der.dim()
        )));
    }
    let quotient = Quotient::from_reps(reps, &int)?;
    Ok(DerivationSpace::assemble(t.algebra.clone(), der, int, quotient, Some(prime)))
}

fn der_and_int<F: Field>(t: &BasisAlgebra<F>) -> (Subspace<F>, Subspace<F>) {
    let f = *t.field();
    let n = t.dim();
    let mut eqs = Equations::new(f, n * n);
    push_leibniz(&mut eqs, t, 0);
    let der = eqs.solutions();
    let mults = Multiplications::of(t);
    let inner: Vec<_> = (0..n).map(|i| mat_to_vec(&inner_of_basis(&mults, i))).collect();
    let int = Subspace::span(f, n * n, inner.iter());
    (der, int)
}

impl<F: Field> DerivationSpace<F> {
    fn assemble(
        algebra: Arc<BasisAlgebra<F>>,
        der: Subspace<F>,
        int: Subspace<F>,
        quotient: Quotient<F>,
        prime: Option<PrimeDerivations<F>>,
    ) -> Self {
        let f = *algebra.field();
        let n = algebra.dim();
        let to_mat = |v: &SparseVec<F::Elem>| vec_to_mat(f, v, n, n);
        let der_basis: Vec<_> = der.basis().iter().map(to_mat).collect();
        let int_basis: Vec<_> = int.basis().iter().map(to_mat).collect();
        let hh1_basis: Vec<_> = quotient.reps().iter().map(to_mat).collect();
        let k = hh1_basis.len();
        let mut bracket_constants = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let c = mat_to_vec(&commutator(&hh1_basis[i], &hh1_basis[j]));
                let coords = quotient.coordinates(&c).expect("derivations are closed under brackets");
                bracket_constants[i][j] = coords.to_dense(&f, k);
            }
        }
        DerivationSpace { algebra, der_basis, int_basis, hh1_basis, bracket_constants, prime, der, int, quotient }
    }

    pub fn der_dim(&self) -> usize {
        self.der.dim()
    }

    pub fn int_dim(&self) -> usize {
        self.int.dim()
    }

    pub fn hh1_dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn is_derivation(&self, d: &Mat<F>) -> bool {
        self.der.contains(&mat_to_vec(d))
    }

    pub fn is_inner(&self, d: &Mat<F>) -> bool {
        self.int.contains(&mat_to_vec(d))
    }

    /// Coordinates of the class of `d` on `hh1_basis`, or `None` if `d` is not a derivation.
    pub fn hh1_coordinates(&self, d: &Mat<F>) -> Option<SparseVec<F::Elem>> {
        self.quotient.coordinates(&mat_to_vec(d))
    }

    /// The commutator of any two basis derivations is again a derivation.
    pub fn brackets_close(&self) -> bool {
        self.der_basis
            .iter()
            .all(|x| self.der_basis.iter().all(|y| self.is_derivation(&commutator(x, y))))
    }

    /// `[Der, Int] ⊆ Int`, checked on basis pairs.
    pub fn int_is_ideal(&self) -> bool {
        self.der_basis
            .iter()
            .all(|x| self.int_basis.iter().all(|y| self.is_inner(&commutator(x, y))))
    }

    /// The Jacobi identity on the structure constants of `HH¹`.
    pub fn jacobi_holds(&self) -> bool {
        let f = *self.algebra.field();
        let k = self.hh1_basis.len();
        let c = &self.bracket_constants;
        // [[h_i, h_j], h_l] = Σ_s c[i][j][s] c[s][l][·]
        let nested = |i: usize, j: usize, l: usize, r: usize| -> F::Elem {
            (0..k).fold(f.zero(), |acc, s| f.add(&acc, &f.mul(&c[i][j][s], &c[s][l][r])))
        };
        (0..k).all(|i| {
            (0..k).all(|j| {
                (0..k).all(|l| {
                    (0..k).all(|r| {
                        let sum = f.add(&f.add(&nested(i, j, l, r), &nested(j, l, i, r)), &nested(l, i, j, r));
                        f.is_zero(&sum)
                    })
                })
            })
        })
    }

    /// Antisymmetry of the structure constants.
    pub fn bracket_is_alternating(&self) -> bool {
        let f = *self.algebra.field();
        let k = self.hh1_basis.len();
        let c = &self.bracket_constants;
        (0..k).all(|i| {
            c[i][i].iter().all(|x| f.is_zero(x))
                && (0..k).all(|j| c[i][j].iter().zip(&c[j][i]).all(|(x, y)| f.is_zero(&f.add(x, y))))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::kronecker;
    use crate::exactla::{PrimeField, Rationals};
    use crate::liealg::system::is_derivation;

    #[test]
    fn ground_field_has_no_derivations() {
        let k = Arc::new(BasisAlgebra::ground(Rationals));
        let d = derivation_space(&k);
        assert_eq!((d.der_dim(), d.int_dim(), d.hh1_dim()), (0, 0, 0));
    }

    #[test]
    fn kronecker_two() {
        let t = kronecker(Rationals, 2);
        let d = derivation_space(&t.algebra);
        assert_eq!((d.der_dim(), d.int_dim(), d.hh1_dim()), (6, 3, 3));
        assert!(d.der_basis.iter().all(|x| is_derivation(&t.algebra, x)));
        assert!(d.brackets_close() && d.int_is_ideal() && d.jacobi_holds() && d.bracket_is_alternating());
    }

    #[test]
    fn kronecker_hh1_dims() {
        let f2 = PrimeField::new(2).unwrap();
        for m in 1..=4 {
            let t = kronecker(Rationals, m);
            assert_eq!(triangular_derivation_space(&t).unwrap().hh1_dim(), m * m - 1);
            let t2 = kronecker(f2, m);
            assert_eq!(derivation_space(&t2.algebra).hh1_dim(), m * m - 1);
        }
    }

    #[test]
    fn matrix_algebra_derivations_are_inner() {
        let m2 = Arc::new(BasisAlgebra::matrix_algebra(Rationals, 2));
        let d = derivation_space(&m2);
        assert_eq!((d.der_dim(), d.int_dim(), d.hh1_dim()), (3, 3, 0));
    }

    #[test]
    fn dual_numbers() {
        // D(ε) = λ·1 + μ·ε with ε² = 0 forces λ = 0; every such D is outer since the algebra is commutative.
        let a = Arc::new(BasisAlgebra::dual_numbers(Rationals));
        let d = derivation_space(&a);
        assert_eq!((d.der_dim(), d.int_dim(), d.hh1_dim()), (1, 0, 1));
        assert!(d.jacobi_holds());
    }

    #[test]
    fn triangular_representatives_have_no_m0_part() {
        let t = kronecker(Rationals, 3);
        let d = triangular_derivation_space(&t).unwrap();
        let p = d.prime.as_ref().unwrap();
        assert_eq!(p.hh1().dim(), d.hh1_dim());
        for h in &d.hh1_basis {
            let td = crate::liealg::decompose_derivation(&t, h).unwrap();
            assert!(td.m0.is_zero());
        }
        assert!(d.jacobi_holds());
    }
}
