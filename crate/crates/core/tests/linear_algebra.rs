use hhlab::exactla::{image, kernel_basis, rank, solve, Field, Mat, PrimeField, Rationals, SparseVec, Subspace};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_vec<F: Field>(f: &F, xs: &[i64]) -> SparseVec<F::Elem> {
    let dense: Vec<_> = xs.iter().map(|x| f.from_i64(*x)).collect();
    SparseVec::from_dense(f, &dense)
}

fn check_rank_nullity<F: Field>(f: F, rows: &[Vec<i64>]) {
    let m = Mat::from_i64(f, rows);
    let ker = kernel_basis(&m);
    assert_eq!(rank(&m) + ker.dim(), m.cols());
    assert_eq!(rank(&m), rank(&m.transpose()));
    assert_eq!(image(&m).dim(), rank(&m));
    for k in ker.basis() {
        assert!(m.mul_vec(k).is_zero());
    }
}

fn check_solve<F: Field>(f: F, rows: &[Vec<i64>], x: &[i64]) {
    let m = Mat::from_i64(f, rows);
    let x = to_vec(&f, &x[..m.cols()]);
    let b = m.mul_vec(&x);
    let y = solve(&m, &b).expect("b lies in the image");
    assert_eq!(m.mul_vec(&y), b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_over_q(rows in small_matrix()) {
        check_rank_nullity(Rationals, &rows);
    }

    #[test]
    fn rank_nullity_over_f5(rows in small_matrix()) {
        check_rank_nullity(PrimeField::new(5).unwrap(), &rows);
    }

    #[test]
    fn solve_recovers_a_preimage(rows in small_matrix(), x in prop::collection::vec(-4i64..5, 6)) {
        check_solve(Rationals, &rows, &x);
        check_solve(PrimeField::new(3).unwrap(), &rows, &x);
    }

    #[test]
    fn sum_and_intersection_dimensions(
        u in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 0..4),
        w in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 0..4),
    ) {
        let f = Rationals;
        let uv: Vec<_> = u.iter().map(|r| to_vec(&f, r)).collect();
        let wv: Vec<_> = w.iter().map(|r| to_vec(&f, r)).collect();
        let us = Subspace::span(f, 5, uv.iter());
        let ws = Subspace::span(f, 5, wv.iter());
        let sum = us.sum(&ws);
        let cap = us.intersection(&ws);
        prop_assert_eq!(sum.dim() + cap.dim(), us.dim() + ws.dim());
        prop_assert!(cap.is_subspace_of(&us) && cap.is_subspace_of(&ws));
        prop_assert!(us.is_subspace_of(&sum) && ws.is_subspace_of(&sum));
    }
}

#[test]
fn singular_system_has_no_solution() {
    let f = Rationals;
    let m = Mat::from_i64(f, &[vec![1, 2], vec![2, 4]]);
    assert!(solve(&m, &to_vec(&f, &[1, 0])).is_none());
    // Over F_2 the matrix reduces to diag(1, 0).
    let p = PrimeField::new(2).unwrap();
    let m = Mat::from_i64(p, &[vec![1, 2], vec![2, 4]]);
    assert_eq!(rank(&m), 1);
    assert!(solve(&m, &to_vec(&p, &[0, 1])).is_none());
}
