//! Independent reference computations used as test oracles. Nothing here
//! calls the library's linear algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use kronrep::{Field, KronRep, Matrix, Rationals};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank by plain fraction-based Gaussian elimination.
pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, pr);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone() / pivot.clone();
                for j in c..cols {
                    let v = rows[rank][j].clone() * factor.clone();
                    rows[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p` with `u64` arithmetic.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, pr);
        let inv = pow_mod(rows[rank][c] % p, p - 2, p);
        for j in 0..cols {
            rows[rank][j] = rows[rank][j] % p * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_multiple_of(p) {
                let factor = rows[i][c] % p;
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] % p + p - factor * rows[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn big(m: &Matrix<Rationals>, i: usize, j: usize) -> BigRational {
    m.get(i, j).to_big()
}

/// Number of `k`-dimensional subspaces of `F_p^n` from the product formula.
pub fn q_binomial(p: u128, n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow(n - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}

/// `dim Hom(M, N)` as the nullity of the full intertwining system in the
/// unknowns `(f1, f2)`: rows `N_i f1 - f2 M_i = 0`.
pub fn hom_dim_naive(m: &KronRep<Rationals>, n: &KronRep<Rationals>) -> usize {
    let (m1, m2, n1, n2) = (m.dim1(), m.dim2(), n.dim1(), n.dim2());
    let unknowns = n1 * m1 + n2 * m2;
    if unknowns == 0 {
        return 0;
    }
    let f1 = |a: usize, b: usize| a * m1 + b;
    let f2 = |a: usize, b: usize| n1 * m1 + a * m2 + b;
    let mut rows = Vec::new();
    for (mi, ni) in m.maps().iter().zip(n.maps()) {
        for a in 0..n2 {
            for b in 0..m1 {
                let mut row = vec![BigRational::zero(); unknowns];
                for c in 0..n1 {
                    row[f1(c, b)] += big(ni, a, c);
                }
                for c in 0..m2 {
                    row[f2(a, c)] -= big(mi, c, b);
                }
                rows.push(row);
            }
        }
    }
    unknowns - rank_q(rows)
}

/// `dim Ext^1(N, M)` as the cokernel of `(f1, f2) -> (M_i f1 - f2 N_i)_i`.
pub fn ext_dim_naive(n: &KronRep<Rationals>, m: &KronRep<Rationals>) -> usize {
    let (n1, n2, m1, m2) = (n.dim1(), n.dim2(), m.dim1(), m.dim2());
    let r = n.r();
    let target = r * m2 * n1;
    let unknowns = m1 * n1 + m2 * n2;
    if target == 0 {
        return 0;
    }
    if unknowns == 0 {
        return target;
    }
    // Columns of the map, one per unknown, written as rows of the transpose.
    let mut cols = Vec::new();
    for a in 0..m1 {
        for b in 0..n1 {
            let mut v = vec![BigRational::zero(); target];
            for (i, mi) in m.maps().iter().enumerate() {
                for c in 0..m2 {
                    v[(i * m2 + c) * n1 + b] += big(mi, c, a);
                }
            }
            cols.push(v);
        }
    }
    for a in 0..m2 {
        for b in 0..n2 {
            let mut v = vec![BigRational::zero(); target];
            for (i, ni) in n.maps().iter().enumerate() {
                for c in 0..n1 {
                    v[(i * m2 + a) * n1 + c] -= big(ni, b, c);
                }
            }
            cols.push(v);
        }
    }
    target - rank_q(cols)
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub fn q_rep(r: usize, d1: usize, d2: usize, maps: &[&[i64]]) -> KronRep<Rationals> {
    assert_eq!(maps.len(), r);
    let ms = maps.iter().map(|v| Matrix::from_i64(&Rationals, d2, d1, v)).collect();
    KronRep::new(r, &Rationals, ms).unwrap()
}

pub fn field_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}
