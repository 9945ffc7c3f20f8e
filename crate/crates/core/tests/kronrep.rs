mod common;

use common::q_rep;
use kronrep::functors::preprojective;
use kronrep::kronrep::{a_seq, coxeter_apply, euler_form, sigma_dimvec, tits_form};
use kronrep::{DimVec, Error, KronRep, Matrix, PrimeField, Provenance, Rationals};
use proptest::prelude::*;

#[test]
fn make_rep_examples() {
    let z = q_rep(3, 0, 0, &[&[], &[], &[]]);
    assert!(z.is_zero());
    assert_eq!(z.dim_vec(), DimVec::new(0, 0));
    let s2 = q_rep(3, 0, 1, &[&[], &[], &[]]);
    assert_eq!(s2.dim_vec(), DimVec::new(0, 1));
    assert_eq!(s2, preprojective(&Rationals, 3, 0).unwrap().with_provenance(Provenance::None));
    let m = q_rep(2, 1, 1, &[&[1], &[0]]);
    assert_eq!(m.map(1), &Matrix::zeros(&Rationals, 1, 1));
    assert_eq!(m.provenance(), &Provenance::None);
}

#[test]
fn make_rep_errors() {
    let a = Matrix::from_i64(&Rationals, 1, 1, &[1]);
    let b = Matrix::from_i64(&Rationals, 1, 2, &[1, 0]);
    assert!(matches!(KronRep::new(2, &Rationals, vec![a.clone(), b]), Err(Error::ShapeMismatch(_))));
    assert!(matches!(KronRep::new(3, &Rationals, vec![a.clone(), a.clone()]), Err(Error::ShapeMismatch(_))));
    let f5 = PrimeField::new(5).unwrap();
    let c = Matrix::from_i64(&f5, 1, 1, &[1]);
    assert!(matches!(KronRep::new(1, &PrimeField::new(7).unwrap(), vec![c]), Err(Error::FieldMismatch(_))));
}

#[test]
fn dims_and_delta() {
    let p2 = preprojective(&Rationals, 3, 2).unwrap();
    assert_eq!(p2.dim_vec(), DimVec::new(3, 8));
    assert_eq!(p2.delta(2).unwrap(), 2);
    assert_eq!(KronRep::zero(&Rationals, 3, 0, 0).delta(1).unwrap(), 0);
    assert_eq!(DimVec::new(2, 5).delta(1), 3);
    assert!(matches!(p2.delta(4), Err(Error::BadD { .. })));
    assert!(matches!(p2.delta(0), Err(Error::BadD { .. })));
}

#[test]
fn forms() {
    assert_eq!(tits_form(3, DimVec::new(1, 3)), 1);
    assert_eq!(tits_form(3, DimVec::new(2, 2)), -4);
    assert_eq!(euler_form(3, DimVec::new(1, 3), DimVec::new(3, 8)), 3);
}

#[test]
fn coxeter_and_shift() {
    assert_eq!(coxeter_apply(3, (1, 3), -1), (8, 21));
    assert_eq!(sigma_dimvec(3, (2, 2), -1), (2, 4));
    assert_eq!(coxeter_apply(5, (7, -2), 0), (7, -2));
    // Negative results are returned raw.
    assert_eq!(sigma_dimvec(3, (0, 1), 1), (-1, 0));
}

#[test]
fn a_sequence() {
    let r3: Vec<u128> = (0..6).map(|i| a_seq(3, i)).collect();
    assert_eq!(r3, [0, 1, 3, 8, 21, 55]);
    for i in 0..20 {
        assert_eq!(a_seq(2, i), i as u128);
    }
    assert_eq!(a_seq(4, 3), 15);
}

#[test]
fn a_sequence_is_a_real_root() {
    for r in 2..=6 {
        for i in 0..=12 {
            let x = DimVec::new(a_seq(r, i) as usize, a_seq(r, i + 1) as usize);
            assert_eq!(tits_form(r, x), 1, "r={r} i={i}");
        }
    }
}

#[test]
fn direct_sum_examples() {
    let p0 = preprojective(&Rationals, 3, 0).unwrap();
    let p1 = preprojective(&Rationals, 3, 1).unwrap();
    let s = p0.direct_sum(&p1).unwrap();
    assert_eq!(s.dim_vec(), DimVec::new(1, 4));
    assert_eq!(p1.direct_sum(&KronRep::zero(&Rationals, 3, 0, 0)).unwrap().dim_vec(), p1.dim_vec());
    let k2 = preprojective(&Rationals, 2, 1).unwrap();
    assert!(matches!(p1.direct_sum(&k2), Err(Error::Mismatch(_)) | Err(Error::ShapeMismatch(_))));
}

#[test]
fn dual_examples() {
    let p0 = preprojective(&Rationals, 4, 0).unwrap();
    assert_eq!(p0.dual().dim_vec(), DimVec::new(1, 0));
    let m = q_rep(2, 2, 5, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], &[0; 10]]);
    assert_eq!(m.dual().dim_vec(), DimVec::new(5, 2));
    assert_eq!(m.dual().map(0), &m.map(0).transpose());
}

#[test]
fn twist_examples() {
    let m = q_rep(3, 1, 2, &[&[1, 0], &[0, 1], &[1, 1]]);
    assert_eq!(m.twist(&Matrix::identity(&Rationals, 3)).unwrap().maps(), m.maps());
    // g sends e1 -> e2 -> e3 -> e1; g^{-1} = g^T, so M^(g)(gamma_j) = M(gamma_{g(j)}).
    let g = Matrix::from_i64(&Rationals, 3, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
    let t = m.twist(&g).unwrap();
    let ginv = g.transpose();
    for j in 0..3 {
        let i = (0..3).find(|&i| !ginv.get(i, j).is_zero()).unwrap();
        assert_eq!(t.map(j), m.map(i));
    }
    assert_eq!(t.dim_vec(), m.dim_vec());
    let singular = Matrix::from_i64(&Rationals, 3, 3, &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
    assert!(matches!(m.twist(&singular), Err(Error::Singular)));
}

#[test]
fn inflate_examples() {
    let m = q_rep(2, 1, 1, &[&[1], &[1]]);
    let inf = m.inflate(3).unwrap();
    assert_eq!(inf, q_rep(3, 1, 1, &[&[1], &[1], &[0]]));
    assert_eq!(inf.dim_vec(), m.dim_vec());
    assert_eq!(KronRep::zero(&Rationals, 2, 0, 0).inflate(5).unwrap(), KronRep::zero(&Rationals, 5, 0, 0));
    assert!(matches!(m.inflate(2), Err(Error::BadRange(_))));
}

#[test]
fn provenance_text_round_trip() {
    let tags = [
        Provenance::Preprojective(4),
        Provenance::Schwarzenberger(5),
        Provenance::Hyperplane,
        Provenance::Random(17),
        Provenance::ElementaryCertified.shifted(-3),
        Provenance::Hyperplane.shifted(2),
        Provenance::None,
    ];
    for t in tags {
        assert_eq!(t.to_string().parse::<Provenance>().unwrap(), t);
    }
    assert_eq!(Provenance::Preprojective(2).shifted(-3), Provenance::Preprojective(5));
    assert_eq!(Provenance::Preprojective(1).shifted(2), Provenance::None);
}

fn rep_strategy() -> impl Strategy<Value = KronRep<Rationals>> {
    (2usize..5, 0usize..4, 0usize..4).prop_flat_map(|(r, d1, d2)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, d1 * d2), r).prop_map(move |vs| {
            let maps = vs.iter().map(|v| Matrix::from_i64(&Rationals, d2, d1, v)).collect();
            KronRep::new(r, &Rationals, maps).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tits_is_diagonal_of_euler(r in 2usize..8, x1 in 0usize..200, x2 in 0usize..200) {
        let x = DimVec::new(x1, x2);
        prop_assert_eq!(tits_form(r, x), euler_form(r, x, x));
        let (a, b) = (x1 as i64, x2 as i64);
        prop_assert_eq!(tits_form(r, x), a * a + b * b - r as i64 * a * b);
    }

    #[test]
    fn coxeter_is_shift_squared(r in 2usize..8, x in -100i128..100, y in -100i128..100, n in -3i64..4) {
        prop_assert_eq!(coxeter_apply(r, (x, y), 1), sigma_dimvec(r, sigma_dimvec(r, (x, y), 1), 1));
        prop_assert_eq!(coxeter_apply(r, (x, y), n), sigma_dimvec(r, (x, y), 2 * n));
        prop_assert_eq!(sigma_dimvec(r, sigma_dimvec(r, (x, y), n), -n), (x, y));
        let r = r as i128;
        prop_assert_eq!(coxeter_apply(r as usize, (x, y), 1), ((r * r - 1) * x - r * y, r * x - y));
    }

    #[test]
    fn dual_is_involution(m in rep_strategy()) {
        prop_assert_eq!(m.dual().dual().maps().to_vec(), m.maps().to_vec());
    }

    #[test]
    fn twist_inverse_restores(m in rep_strategy(), g in prop::collection::vec(-2i64..=2, 16)) {
        let r = m.r();
        let g = Matrix::from_i64(&Rationals, r, r, &g[..r * r]);
        if let Some(ginv) = g.inverse() {
            let t = m.twist(&g).unwrap();
            prop_assert_eq!(t.dim_vec(), m.dim_vec());
            prop_assert_eq!(t.twist(&ginv).unwrap().maps().to_vec(), m.maps().to_vec());
        }
    }

    #[test]
    fn delta_additive(m in rep_strategy(), n1 in 0usize..4, n2 in 0usize..4) {
        let n = KronRep::zero(&Rationals, m.r(), n1, n2);
        let s = m.direct_sum(&n).unwrap();
        for d in 1..=m.r() {
            prop_assert_eq!(s.delta(d).unwrap(), m.delta(d).unwrap() + n.delta(d).unwrap());
        }
    }
}
