//! Enumeration of the `k`-dimensional subspaces of `F_p^n` by RREF profile.

use super::field::PrimeField;
use super::matrix::Matrix;
use crate::error::{Error, Result};

pub const DEFAULT_GUARD: u128 = 1_000_000;

/// The Gaussian binomial `[n choose k]_p`, or `None` on overflow.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(p.checked_pow((n - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(p.checked_pow((i + 1) as u32)?.checked_sub(1)?)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    Some(num / den)
}

/// Number of subspaces of every dimension `1..=n`.
pub fn total_subspaces(p: u64, n: usize) -> Option<u128> {
    (1..=n).try_fold(0u128, |acc, k| acc.checked_add(gaussian_binomial(p, n, k)?))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Iterator over RREF bases (`k x n`) of all `k`-dimensional subspaces of `F_p^n`.
///
/// Pivot sets are visited in lexicographic order; within a pivot set the free
/// entries run through `F_p` like an odometer, last entry fastest.
#[derive(Clone, Debug)]
pub struct SubspaceIterator {
    field: PrimeField,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free_slots: Vec<usize>,
    counter: Vec<u32>,
    current: Vec<u32>,
    started: bool,
    done: bool,
    count: u128,
}

impl SubspaceIterator {
    pub fn total(&self) -> u128 {
        self.count
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn subspace_dim(&self) -> usize {
        self.k
    }

    fn load_profile(&mut self) {
        let n = self.n;
        self.current.iter_mut().for_each(|x| *x = 0);
        self.free_slots.clear();
        for (t, &c) in self.pivots.iter().enumerate() {
            self.current[t * n + c] = 1;
            for j in c + 1..n {
                if !self.pivots.contains(&j) {
                    self.free_slots.push(t * n + j);
                }
            }
        }
        self.counter = vec![0; self.free_slots.len()];
    }

    fn next_profile(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.load_profile();
                return true;
            }
        }
        false
    }

    fn advance(&mut self) -> bool {
        let p = self.field.p();
        for s in (0..self.counter.len()).rev() {
            self.counter[s] += 1;
            if self.counter[s] < p {
                self.current[self.free_slots[s]] = self.counter[s];
                return true;
            }
            self.counter[s] = 0;
            self.current[self.free_slots[s]] = 0;
        }
        self.next_profile()
    }

    /// Next basis as a borrowed row-major `k x n` buffer.
    pub fn next_raw(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(&self.current)
    }
}

impl Iterator for SubspaceIterator {
    type Item = Matrix<PrimeField>;

    fn next(&mut self) -> Option<Self::Item> {
        let (k, n, f) = (self.k, self.n, self.field);
        let data = self.next_raw()?.to_vec();
        Some(Matrix::from_vec(&f, k, n, data))
    }
}

/// All `k`-dimensional subspaces of `F_p^n`, refusing when their number exceeds `guard`.
pub fn enumerate_subspaces(field: &PrimeField, n: usize, k: usize, guard: u128) -> Result<SubspaceIterator> {
    if k > n {
        return Err(Error::Invalid(format!("subspace dimension {k} exceeds ambient dimension {n}")));
    }
    let count = gaussian_binomial(field.p() as u64, n, k).unwrap_or(u128::MAX);
    if count > guard {
        return Err(Error::GuardExceeded {
            what: format!("subspaces of dimension {k} in F_{}^{n}", field.p()),
            needed: count,
            limit: guard,
        });
    }
    let mut it = SubspaceIterator {
        field: *field,
        n,
        k,
        pivots: (0..k).collect(),
        free_slots: Vec::new(),
        counter: Vec::new(),
        current: vec![0; k * n],
        started: false,
        done: false,
        count,
    };
    it.load_profile();
    Ok(it)
}
