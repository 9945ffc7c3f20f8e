use kronrep::bundles::{
    chi_hom, classify_small_rank, exceptional_table, is_exceptional_pair, line_splitting, steiner_invariants,
    SmallRank, SplittingType,
};
use kronrep::constructions::{random_rep, schwarzenberger};
use kronrep::functors::preprojective;
use kronrep::kronrep::{a_seq, tits_form};
use kronrep::restrict::{membership, random_plane, PlaneBasis, SamplerOpts};
use kronrep::{DimVec, Error, KronRep, Rational, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn opts(seed: u64) -> SamplerOpts {
    SamplerOpts { samples: 20, seed, ..SamplerOpts::default() }
}

fn p(r: usize, i: usize) -> KronRep<Rationals> {
    preprojective(&Rationals, r, i).unwrap()
}

fn split(pairs: &[(usize, usize)]) -> SplittingType {
    SplittingType { parts: pairs.iter().copied().collect() }
}

#[test]
fn steiner_invariant_examples() {
    let m = p(3, 2);
    let inv = steiner_invariants(&m, 1, &membership(&m, 1, &opts(0)).unwrap()).unwrap();
    assert_eq!((inv.rank, inv.c1), (5, 3));
    assert_eq!(inv.slope, Some(Rational::new(3, 5)));
    assert_eq!(inv.dim_vec(), m.dim_vec());

    let m = p(4, 1);
    let inv = steiner_invariants(&m, 2, &membership(&m, 2, &opts(0)).unwrap()).unwrap();
    assert_eq!((inv.rank, inv.c1), (2, 1));

    for n in 1..=4 {
        let m = p(3, 0).power(n);
        for d in 1..=2 {
            let inv = steiner_invariants(&m, d, &membership(&m, d, &opts(0)).unwrap()).unwrap();
            assert_eq!((inv.rank, inv.c1), (n as i64, 0));
        }
    }
}

#[test]
fn steiner_invariants_refuse_non_members() {
    let m = random_rep(&Rationals, 3, DimVec::new(2, 2), 0, 0);
    let verdict = membership(&m, 1, &opts(0)).unwrap();
    assert!(!verdict.is_member());
    assert!(matches!(steiner_invariants(&m, 1, &verdict), Err(Error::NotAMember(_))));
    let m = p(3, 2);
    let verdict = membership(&m, 1, &opts(0)).unwrap();
    assert!(matches!(steiner_invariants(&m, 2, &verdict), Err(Error::Mismatch(_))));
}

#[test]
fn invariants_recover_dimension_vector() {
    for seed in 0..20u64 {
        let r = 3 + seed as usize % 2;
        let d = 1 + seed as usize % (r - 1);
        let m = random_rep(&Rationals, r, DimVec::new(1 + seed as usize % 2, 4 + seed as usize % 3 + d), seed, 4);
        let verdict = membership(&m, d, &opts(seed)).unwrap();
        if !verdict.is_member() {
            continue;
        }
        let inv = steiner_invariants(&m, d, &verdict).unwrap();
        assert_eq!(inv.rank, m.delta(d).unwrap());
        assert_eq!(inv.dim_vec(), m.dim_vec(), "seed {seed}");
    }
}

#[test]
fn chi_hom_examples() {
    assert_eq!(chi_hom(&p(3, 1), &p(3, 1)).unwrap(), 1);
    for seed in 0..10 {
        let m = random_rep(&Rationals, 3, DimVec::new(seed as usize % 3, 2 + seed as usize % 4), seed, 3);
        assert_eq!(chi_hom(&m, &m).unwrap(), tits_form(3, m.dim_vec()));
    }
    assert_eq!(chi_hom(&p(3, 0), &p(3, 1)).unwrap(), 3);
    assert!(matches!(chi_hom(&p(3, 1), &p(4, 1)), Err(Error::Mismatch(_))));
}

#[test]
fn exceptional_table_examples() {
    let t = exceptional_table(3, 1, 6).unwrap();
    let rows: Vec<(i128, u128)> = t.iter().map(|e| (e.rank, e.c1)).collect();
    assert_eq!(rows, vec![(1, 0), (2, 1), (5, 3), (13, 8), (34, 21), (89, 55), (233, 144)]);
    let e = exceptional_table(4, 2, 1).unwrap()[1];
    assert_eq!((e.rank, e.c1), (2, 1));
    for r in 3..=6 {
        for d in 1..r {
            let t = exceptional_table(r, d, 10).unwrap();
            assert_eq!((t[0].rank, t[0].c1), (1, 0));
            for e in &t {
                assert!(is_exceptional_pair(r, d, e), "r={r} d={d} n={}", e.n);
                assert_eq!(e.rank, a_seq(r, e.n + 1) as i128 - d as i128 * a_seq(r, e.n) as i128);
            }
        }
    }
    assert!(matches!(exceptional_table(3, 3, 4), Err(Error::BadD { .. })));
    assert!(matches!(exceptional_table(2, 1, 4), Err(Error::BadD { .. })));
}

#[test]
fn classify_examples() {
    assert_eq!(classify_small_rank(4, 2, 3, 1).unwrap(), SmallRank::SplitForm { trivial: 1, quotient: 1 });
    assert_eq!(classify_small_rank(3, 2, 2, 3).unwrap(), SmallRank::SimpleOrSplit { simple_forced: true });
    assert!(matches!(classify_small_rank(3, 1, 1, 1), Err(Error::Impossible(_))));
    assert_eq!(classify_small_rank(3, 1, 5, 3).unwrap(), SmallRank::NoConstraint);
    assert!(matches!(classify_small_rank(3, 0, 1, 1), Err(Error::BadD { .. })));
}

#[test]
fn line_splitting_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let m = p(3, 2);
    let v = random_plane(&Rationals, 3, 2, 20, &mut rng).unwrap();
    assert_eq!(line_splitting(&m, &v).unwrap(), split(&[(0, 2), (1, 3)]));
    assert_eq!(line_splitting(&m, &v).unwrap().to_string(), "{0:2, 1:3}");

    let s = schwarzenberger(&Rationals, 3, 6).unwrap();
    let plane = PlaneBasis::coordinate(&Rationals, 3, &[0, 2]).unwrap();
    assert_eq!(line_splitting(&s, &plane).unwrap(), split(&[(0, 1), (3, 1)]));

    for n in 1..=3 {
        let v = random_plane(&Rationals, 3, 2, 20, &mut rng).unwrap();
        assert_eq!(line_splitting(&p(3, 0).power(n), &v).unwrap(), split(&[(0, n)]));
    }

    let line = PlaneBasis::coordinate(&Rationals, 3, &[0]).unwrap();
    assert!(matches!(line_splitting(&m, &line), Err(Error::BadD { .. })));
    let zero = random_rep(&Rationals, 3, DimVec::new(1, 1), 0, 0);
    assert!(matches!(line_splitting(&zero, &v), Err(Error::InconsistentRestriction(_))));
}

#[test]
fn line_splitting_bookkeeping() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for seed in 0..30u64 {
        let r = 3 + seed as usize % 2;
        let m = random_rep(&Rationals, r, DimVec::new(1 + seed as usize % 3, 4 + seed as usize % 4), seed, 5);
        if !membership(&m, 1, &opts(seed)).unwrap().is_member() {
            continue;
        }
        let v = random_plane(&Rationals, r, 2, 20, &mut rng).unwrap();
        let s = line_splitting(&m, &v).unwrap();
        assert_eq!(s.rank() as i64, m.delta(1).unwrap(), "seed {seed}");
        assert_eq!(s.degree(), m.dim1(), "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 20);
}

proptest! {
    #[test]
    fn small_rank_split_counts_add_up(r in 3usize..8, d0 in 1usize..7, rank in 0u64..40, c1 in 0u64..20) {
        let d = 1 + (d0 - 1) % (r - 1);
        let (rd, dd) = ((r - d) as u64, d as u64);
        match classify_small_rank(r, d, rank, c1) {
            Ok(SmallRank::SplitForm { trivial, quotient }) => {
                prop_assert_eq!(quotient, c1);
                prop_assert_eq!(trivial + rd * quotient, rank);
                prop_assert!(c1 <= dd || rank < dd * rd);
            }
            Ok(SmallRank::SimpleOrSplit { simple_forced }) => {
                prop_assert_eq!(rank, dd * rd);
                prop_assert_eq!(simple_forced, c1 > dd);
            }
            Ok(SmallRank::NoConstraint) => prop_assert!(rank > dd * rd && c1 > dd),
            Err(Error::Impossible(_)) => prop_assert!(rank < rd * c1.min(dd) || (rank < dd * rd && rank < rd * c1)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}
