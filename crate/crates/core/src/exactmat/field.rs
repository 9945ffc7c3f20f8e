//! Base fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;
use std::hash::Hash;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fp;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Serializable description of a base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    Q,
    Fp { p: u32 },
}

impl FieldSpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Fp { .. })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp { p } => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp { p } => write!(f, "F{p}"),
        }
    }
}

/// Arithmetic over an exact field.
///
/// Elements are plain values; the field instance carries any parameters
/// (the prime for `F_p`). `rref_in_place` is a hook that implementations may
/// override with a faster kernel.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Uniform element of `[-bound, bound]` over Q, uniform element of `F_p` otherwise.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    /// Number of elements, `None` if infinite.
    fn order(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Q => None,
            FieldSpec::Fp { p } => Some(p as u64),
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Gaussian elimination on a row-major `rows x cols` buffer.
    ///
    /// With `full` the result is the reduced row echelon form; otherwise rows
    /// below each pivot are cleared but rows above are left untouched.
    /// Returns pivot columns.
    fn rref_in_place(&self, rows: usize, cols: usize, data: &mut [Self::Elem], full: bool) -> Vec<usize> {
        generic_rref(self, rows, cols, data, full)
    }

    /// Image under reduction to `F_p`, if defined.
    fn reduce_mod_p(&self, a: &Self::Elem, fp: &PrimeField) -> Option<u32>;

    fn rank_of(&self, rows: usize, cols: usize, data: &[Self::Elem]) -> usize {
        let mut d = data.to_vec();
        self.rref_in_place(rows, cols, &mut d, false).len()
    }

    /// Row-major product of an `n x k` and a `k x m` buffer.
    fn matmul(&self, n: usize, k: usize, m: usize, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); n * m];
        for i in 0..n {
            let out_row = &mut out[i * m..(i + 1) * m];
            for t in 0..k {
                let x = &a[i * k + t];
                if self.is_zero(x) {
                    continue;
                }
                for (o, y) in out_row.iter_mut().zip(&b[t * m..(t + 1) * m]) {
                    if !self.is_zero(y) {
                        *o = self.add(o, &self.mul(x, y));
                    }
                }
            }
        }
        out
    }
}

/// Gauss-Jordan elimination that skips zero entries of the pivot row.
pub fn generic_rref<F: Field>(f: &F, rows: usize, cols: usize, data: &mut [F::Elem], full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut support: Vec<usize> = Vec::with_capacity(cols);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for k in c..cols {
                data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(&data[r * cols + c]).expect("nonzero pivot");
        support.clear();
        for k in c..cols {
            let idx = r * cols + k;
            if !f.is_zero(&data[idx]) {
                data[idx] = f.mul(&data[idx], &inv);
                support.push(k);
            }
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for &k in &support {
                let t = f.mul(&factor, &data[r * cols + k]);
                let idx = i * cols + k;
                data[idx] = f.sub(&data[idx], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Q
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(v)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Rational {
        let b = bound.min(i64::MAX as u64 - 1) as i64;
        Rational::from_integer(rng.gen_range(-b..=b))
    }
    fn parse(&self, s: &str) -> Result<Rational> {
        Rational::parse(s).ok_or_else(|| Error::Parse(format!("not a rational number: {s:?}")))
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn reduce_mod_p(&self, a: &Rational, fp: &PrimeField) -> Option<u32> {
        fp.reduce_rational(a)
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Least nonnegative representative of a rational with denominator prime to `p`.
    pub fn reduce_rational(&self, q: &Rational) -> Option<u32> {
        let p = num_bigint::BigInt::from(self.p);
        let n = q.numer() % &p;
        let d = q.denom() % &p;
        let to_u32 = |x: num_bigint::BigInt| -> u32 {
            let x = ((x % &p) + &p) % &p;
            u32::try_from(x).expect("residue fits")
        };
        let d = to_u32(d);
        if d == 0 {
            return None;
        }
        Some(self.mul(&to_u32(n), &self.inv(&d)?))
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Fp { p: self.p }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(fp::inv_mod(*a as u64, self.p as u64) as u32)
        }
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(self.reduce_i64(v));
        }
        let q = Rational::parse(s).ok_or_else(|| Error::Parse(format!("not a field element: {s:?}")))?;
        self.reduce_rational(&q).ok_or_else(|| Error::Parse(format!("denominator divisible by {}: {s:?}", self.p)))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn reduce_mod_p(&self, a: &u32, fp: &PrimeField) -> Option<u32> {
        (fp.p == self.p).then_some(*a)
    }
    fn rref_in_place(&self, rows: usize, cols: usize, data: &mut [u32], full: bool) -> Vec<usize> {
        fp::rref(self.p, rows, cols, data, full)
    }
    fn rank_of(&self, rows: usize, cols: usize, data: &[u32]) -> usize {
        fp::rank(self.p, rows, cols, data)
    }
    fn matmul(&self, n: usize, k: usize, m: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        fp::matmul(self.p, n, k, m, a, b)
    }
}
