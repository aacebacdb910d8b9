use std::sync::Arc;

use hhlab::algcore::{
    center, hom_space, product_algebra, tensor_algebra, validate_algebra, validate_bimodule, BasisAlgebra, Bimodule,
    TriangularAlgebra,
};
use hhlab::exactla::{Field, PrimeField, Rationals};
use hhlab::hochschild::{bar_cochain_complex, ext_complex, ext_dims, hh_dims, Budget};
use hhlab::liealg::derivation_space;
use proptest::prelude::*;

/// Small algebras: the ground field, dual numbers, `K × K`, upper triangular `2 × 2`, `M_2(K)`.
fn pool<F: Field>(f: F) -> Vec<Arc<BasisAlgebra<F>>> {
    let k = BasisAlgebra::ground(f);
    let kk = product_algebra(&k, &k).unwrap();
    vec![
        Arc::new(k),
        Arc::new(BasisAlgebra::dual_numbers(f)),
        Arc::new(kk),
        Arc::new(BasisAlgebra::upper_triangular(f, 2)),
        Arc::new(BasisAlgebra::matrix_algebra(f, 2)),
    ]
}

/// `[A R^r; 0 B]` where `R` is the free bimodule of rank one.
fn triangular_from_pool<F: Field>(f: F, i: usize, j: usize, r: usize) -> TriangularAlgebra<F> {
    let p = pool(f);
    let free = Bimodule::free_rank_one(p[i].clone(), p[j].clone());
    TriangularAlgebra::new(Arc::new(free.power(r)))
}

// Degree zero is the center and degree one is outer derivations; both are computed by
// solving linear systems that never touch the bar complex.
fn low_degrees_agree<F: Field>(t: &Arc<BasisAlgebra<F>>) {
    let hh = hh_dims(t, 3, Budget::DEFAULT).unwrap();
    assert_eq!(hh[0], center(t).dim());
    assert_eq!(hh[1], derivation_space(t).hh1_dim());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pool_low_degrees_over_q(i in 0usize..5) {
        low_degrees_agree(&pool(Rationals)[i]);
    }

    #[test]
    fn pool_low_degrees_over_f2(i in 0usize..5) {
        low_degrees_agree(&pool(PrimeField::new(2).unwrap())[i]);
    }

    #[test]
    fn triangular_low_degrees(i in 0usize..3, j in 0usize..3, r in 1usize..3) {
        let t = triangular_from_pool(Rationals, i, j, r);
        prop_assert!(validate_algebra(&t.algebra).is_valid());
        low_degrees_agree(&t.algebra);
    }

    #[test]
    fn differentials_square_to_zero(i in 0usize..5, normalized in any::<bool>(), p in prop::sample::select(vec![2u64, 3])) {
        let f = PrimeField::new(p).unwrap();
        let a = pool(f)[i].clone();
        let c = bar_cochain_complex(&a, &Bimodule::regular(a.clone()), 4, normalized, Budget::DEFAULT).unwrap();
        prop_assert!(c.is_complex());
    }

    #[test]
    fn normalization_does_not_change_cohomology(i in 0usize..4) {
        let a = pool(Rationals)[i].clone();
        let reg = Bimodule::regular(a.clone());
        let dims = |normalized| {
            let c = bar_cochain_complex(&a, &reg, 4, normalized, Budget::DEFAULT).unwrap();
            hhlab::hochschild::cohomology_dims(&c)
        };
        prop_assert_eq!(dims(true), dims(false));
    }

    #[test]
    fn ext_zero_is_hom(i in 0usize..4, j in 0usize..4, r in 1usize..3, s in 1usize..3) {
        let p = pool(Rationals);
        let free = Bimodule::free_rank_one(p[i].clone(), p[j].clone());
        let (m, n) = (free.power(r), free.power(s));
        let c = ext_complex(&m, &n, 2, Budget::DEFAULT).unwrap();
        prop_assert!(c.is_complex());
        prop_assert_eq!(ext_dims(&m, &n, 2, Budget::DEFAULT).unwrap()[0], hom_space(&m, &n).unwrap().len());
    }

    #[test]
    fn sums_and_products_validate(i in 0usize..5, j in 0usize..5, r in 1usize..4) {
        let p = pool(Rationals);
        prop_assert!(validate_algebra(&tensor_algebra(&p[i], &p[j]).unwrap()).is_valid());
        let prod = product_algebra(&p[i], &p[j]).unwrap();
        prop_assert!(validate_algebra(&prod).is_valid());
        prop_assert_eq!(center(&prod).dim(), center(&p[i]).dim() + center(&p[j]).dim());
        let free = Bimodule::free_rank_one(p[i].clone(), p[j].clone());
        let sum = free.direct_sum(&free.power(r)).unwrap();
        prop_assert!(validate_bimodule(&sum).is_valid());
        prop_assert_eq!(sum.dim(), (r + 1) * p[i].dim() * p[j].dim());
    }
}

// The Kronecker algebra `[K K^m; 0 K]` is hereditary, so HH vanishes above degree one.
#[test]
fn kronecker_vanishes_above_degree_one() {
    for m in 1..=3 {
        let t = hhlab::algcore::kronecker(Rationals, m);
        let hh = hh_dims(&t.algebra, 5, Budget::DEFAULT).unwrap();
        assert_eq!(hh[2..], [0, 0]);
        assert_eq!(hh[1], derivation_space(&t.algebra).hh1_dim());
        assert_eq!(hh[0], 1);
    }
}

#[test]
fn budget_is_enforced() {
    let t = hhlab::algcore::kronecker(Rationals, 3);
    let err = hh_dims(&t.algebra, 5, Budget(100)).unwrap_err();
    assert!(matches!(err, hhlab::Error::DegreeTooLarge { .. }), "{err:?}");
}
