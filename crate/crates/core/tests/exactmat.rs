mod common;

use std::collections::HashSet;

use kronrep::exactmat::{enumerate_subspaces, gaussian_binomial};
use kronrep::{Error, Field, Matrix, PrimeField, Rational, Rationals};
use proptest::prelude::*;

fn q(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rationals> {
    Matrix::from_i64(&Rationals, rows, cols, v)
}

fn big_rows(m: &Matrix<Rationals>) -> Vec<Vec<num_rational::BigRational>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| common::big(m, i, j)).collect()).collect()
}

#[test]
fn rank_examples() {
    assert_eq!(Matrix::identity(&Rationals, 2).rank(), 2);
    assert_eq!(Matrix::zeros(&Rationals, 3, 4).rank(), 0);
    assert_eq!(q(2, 2, &[1, 2, 2, 4]).rank(), 1);
}

#[test]
fn kernel_examples() {
    assert_eq!(Matrix::identity(&Rationals, 3).kernel_basis().cols(), 0);
    let k = Matrix::zeros(&Rationals, 2, 3).kernel_basis();
    assert_eq!((k.rows(), k.cols()), (3, 3));
    assert_eq!(k.rank(), 3);
    assert_eq!(q(1, 3, &[1, 1, 0]).kernel_basis(), q(3, 2, &[-1, 0, 1, 0, 0, 1]));
}

#[test]
fn cokernel_examples() {
    assert_eq!(Matrix::identity(&Rationals, 2).cokernel_basis().cols(), 0);
    assert_eq!(Matrix::zeros(&Rationals, 3, 1).cokernel_basis(), Matrix::identity(&Rationals, 3));
    assert_eq!(q(2, 1, &[1, 0]).cokernel_basis(), q(2, 1, &[0, 1]));
}

#[test]
fn subspace_counts() {
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    assert_eq!(enumerate_subspaces(&f2, 2, 1, 1_000_000).unwrap().count(), 3);
    assert_eq!(enumerate_subspaces(&f3, 3, 1, 1_000_000).unwrap().count(), 13);
    for n in 0..4 {
        let mut it = enumerate_subspaces(&f3, n, 0, 1_000_000).unwrap();
        assert_eq!(it.next().map(|m| m.rows()), Some(0));
        assert!(it.next().is_none());
    }
}

#[test]
fn subspaces_distinct_rref_and_counted() {
    for p in [2u32, 3] {
        let f = PrimeField::new(p).unwrap();
        for n in 0..=4 {
            for k in 0..=n {
                let all: Vec<_> = enumerate_subspaces(&f, n, k, 1_000_000).unwrap().collect();
                let expected = common::q_binomial(p as u128, n as u32, k as u32);
                assert_eq!(all.len() as u128, expected, "p={p} n={n} k={k}");
                assert_eq!(gaussian_binomial(p as u64, n, k), Some(expected));
                let set: HashSet<Vec<u32>> = all.iter().map(|m| m.data().to_vec()).collect();
                assert_eq!(set.len(), all.len());
                for m in &all {
                    assert_eq!(&m.rref().matrix, m, "not in RREF");
                    assert_eq!(m.rank(), k);
                }
            }
        }
    }
}

#[test]
fn subspace_guard() {
    let f = PrimeField::new(5).unwrap();
    match enumerate_subspaces(&f, 6, 3, 1000) {
        Err(Error::GuardExceeded { needed, limit, .. }) => {
            assert_eq!(limit, 1000);
            assert_eq!(needed, common::q_binomial(5, 6, 3));
        }
        other => panic!("expected guard error, got {other:?}"),
    }
    assert!(matches!(enumerate_subspaces(&f, 2, 3, 1000), Err(Error::Invalid(_))));
}

#[test]
fn rationals_are_canonical() {
    assert_eq!(Rational::new(2, 4).to_string(), "1/2");
    assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
    assert_eq!(Rational::new(4, 2).to_string(), "2");
    assert_eq!(Rationals.parse("-6/4").unwrap(), Rational::new(-3, 2));
    assert!(Rationals.parse("1/0").is_err());
    let f7 = PrimeField::new(7).unwrap();
    assert_eq!(f7.parse("-1").unwrap(), 6);
    assert_eq!(f7.format(&f7.from_i64(-8)), "6");
    assert!(PrimeField::new(9).is_err());
}

#[test]
fn prime_field_inverse_round_trip() {
    let f = PrimeField::new(101).unwrap();
    for a in 1..101u32 {
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
    }
    assert_eq!(f.inv(&0), None);
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity((r, c, v) in small_matrix()) {
        let a = q(r, c, &v);
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), c);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(a.rank(), common::rank_q(big_rows(&a)));
        prop_assert_eq!(a.cokernel_basis().cols(), r - a.rank());
    }

    #[test]
    fn fp_rank_matches_oracle((r, c, v) in small_matrix(), pi in 0usize..4) {
        let p = [2u32, 3, 7, 65_521][pi];
        let f = PrimeField::new(p).unwrap();
        let a = Matrix::from_i64(&f, r, c, &v);
        let rows: Vec<Vec<u64>> = (0..r).map(|i| a.row(i).iter().map(|&x| x as u64).collect()).collect();
        prop_assert_eq!(a.rank(), common::rank_mod(rows, p as u64));
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), c);
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn cokernel_complements_image((r, c, v) in small_matrix()) {
        let a = q(r, c, &v);
        let co = a.cokernel_basis();
        let joined = Matrix::hstack(&Rationals, r, &[&a, &co]);
        prop_assert_eq!(joined.rank(), r);
    }

    #[test]
    fn deterministic((r, c, v) in small_matrix()) {
        let a = q(r, c, &v);
        let b = q(r, c, &v);
        prop_assert_eq!(a.rref(), b.rref());
        prop_assert_eq!(a.kernel_basis(), b.kernel_basis());
        prop_assert_eq!(a.cokernel_basis(), b.cokernel_basis());
    }

    #[test]
    fn inverse_when_full_rank(n in 1usize..5, v in prop::collection::vec(-4i64..=4, 16)) {
        let a = q(n, n, &v[..n * n]);
        match a.inverse() {
            Some(inv) => {
                prop_assert_eq!(a.rank(), n);
                prop_assert_eq!(a.mul(&inv), Matrix::identity(&Rationals, n));
            }
            None => prop_assert!(a.rank() < n),
        }
    }
}
