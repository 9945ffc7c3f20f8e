//! Exhaustive search over `F_p`-rational source subspaces, and the
//! Harder-Narasimhan filtration built from maximal-slope subrepresentations.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::certified::{max_ratio_certified, semistable_certified, subrep_of};
use super::{dim_slope, HnFiltration, HnLayer, Method, StabilityStatus, StabilityVerdict, Subrep, STRICTNESS_CAVEAT};
use crate::error::{Error, Result};
use crate::exactmat::{
    complement, enumerate_subspaces, fp, gaussian_binomial, Field, Matrix, PrimeField, DEFAULT_GUARD,
};
use crate::kronrep::{DimVec, FpRep, KronRep, Provenance};
use crate::FpMatrix;

/// How the subrepresentation of maximal slope is found.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate when the subspace count is within the guard, certify otherwise.
    #[default]
    Auto,
    Enumerate,
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOpts {
    pub guard: u128,
    /// Seeds the random blow-ups of the certified route.
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for OracleOpts {
    fn default() -> Self {
        OracleOpts { guard: DEFAULT_GUARD, seed: 0, strategy: Strategy::Auto }
    }
}

/// Number of nonzero subspaces of `F_p^n`.
fn enumeration_count(p: u32, n: usize) -> u128 {
    (1..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(p as u64, n, k).unwrap_or(u128::MAX)))
}

fn use_certified(p: u32, n: usize, opts: &OracleOpts) -> Result<bool> {
    let count = enumeration_count(p, n);
    match opts.strategy {
        Strategy::Certified => Ok(true),
        Strategy::Auto => Ok(count > opts.guard),
        Strategy::Enumerate if count > opts.guard => {
            Err(Error::GuardExceeded { what: format!("subspaces of F_{p}^{n}"), needed: count, limit: opts.guard })
        }
        Strategy::Enumerate => Ok(false),
    }
}

/// Verdicts for representations with `dim1 = 0`, where every subrepresentation has slope 0.
pub(crate) fn trivial_source(m: &FpRep, method: Method) -> Result<Option<StabilityVerdict>> {
    if m.dim1() > 0 {
        return Ok(None);
    }
    let status = match m.dim2() {
        0 => return Err(Error::ZeroDenominator("slope of the zero representation".into())),
        1 => StabilityStatus::Stable,
        _ => StabilityStatus::SemistableNotStable,
    };
    Ok(Some(StabilityVerdict { status, method, caveat: None }))
}

struct Candidate {
    k: usize,
    w: usize,
    basis: Vec<u32>,
}

impl Candidate {
    /// Larger ratio `k / w` first, then larger `k`, then the lexicographically smaller basis.
    fn better_than(&self, other: &Candidate) -> bool {
        match (self.k * other.w).cmp(&(other.k * self.w)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match self.k.cmp(&other.k) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => self.basis < other.basis,
            },
        }
    }
}

struct Scan {
    best: Candidate,
    /// Some proper subrepresentation has ratio equal to that of `M`.
    equal_proper: bool,
}

fn scan(m: &FpRep, guard: u128) -> Result<Scan> {
    let f = *m.field();
    let p = f.p();
    let (n, mt, r) = (m.dim1(), m.dim2(), m.r());
    // Row u of U times [A_1^T | ... | A_r^T] lists the images A_i u.
    let parts: Vec<FpMatrix> = m.maps().iter().map(Matrix::transpose).collect();
    let refs: Vec<&FpMatrix> = parts.iter().collect();
    let stacked = Matrix::hstack(&f, n, &refs);
    let mut best: Option<Candidate> = None;
    let mut equal_proper = false;
    for k in 1..=n {
        let mut it = enumerate_subspaces(&f, n, k, guard)?;
        while let Some(u) = it.next_raw() {
            let images = fp::matmul(p, k, n, r * mt, u, stacked.data());
            let w = fp::rank(p, k * r, mt, &images);
            if w <= k {
                return Err(Error::NotEkpEvidence(format!(
                    "subrepresentation of dimension ({k}, {w}) has dim2 <= dim1"
                )));
            }
            if k * mt == n * w && (k < n || w < mt) {
                equal_proper = true;
            }
            let cand = Candidate { k, w, basis: u.to_vec() };
            if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                best = Some(cand);
            }
        }
    }
    Ok(Scan { best: best.expect("dim1 > 0"), equal_proper })
}

/// Exhaustive (semi)stability test over `F_p`. With `Strategy::Auto` the
/// certified route takes over when enumeration would exceed the guard.
pub fn semistable_oracle(m: &FpRep, opts: &OracleOpts) -> Result<StabilityVerdict> {
    let p = m.field().p();
    if use_certified(p, m.dim1(), opts)? {
        return semistable_certified(m, opts.seed);
    }
    let method = Method::Oracle { p };
    if let Some(v) = trivial_source(m, method.clone())? {
        return Ok(v);
    }
    let mu = dim_slope(m.dim_vec())?;
    let s = scan(m, opts.guard)?;
    let best = s.best;
    let best_dims = DimVec::new(best.k, best.w);
    let best_slope = dim_slope(best_dims)?;
    let status = if best_slope > mu {
        let source = Matrix::from_vec(m.field(), best.k, m.dim1(), best.basis);
        StabilityStatus::Unstable(subrep_of(m, source)?)
    } else if s.equal_proper {
        StabilityStatus::SemistableNotStable
    } else {
        return Ok(StabilityVerdict {
            status: StabilityStatus::Stable,
            method,
            caveat: Some(STRICTNESS_CAVEAT.into()),
        });
    };
    Ok(StabilityVerdict { status, method, caveat: None })
}

fn max_slope_with(m: &FpRep, opts: &OracleOpts, rng: &mut ChaCha8Rng) -> Result<(Subrep, bool)> {
    if m.dim1() == 0 {
        return Err(Error::Invalid("maximal-slope search needs dim1 > 0".into()));
    }
    if use_certified(m.field().p(), m.dim1(), opts)? {
        let u = max_ratio_certified(m, rng)?;
        return Ok((subrep_of(m, u)?, true));
    }
    let best = scan(m, opts.guard)?.best;
    let source = Matrix::from_vec(m.field(), best.k, m.dim1(), best.basis);
    Ok((subrep_of(m, source)?, false))
}

/// The subrepresentation of maximal slope with the largest dimension
/// (unique, since maximal-slope subrepresentations are closed under sums).
pub fn max_slope_subrep(m: &FpRep, opts: &OracleOpts) -> Result<Subrep> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    Ok(max_slope_with(m, opts, &mut rng)?.0)
}

fn pivots_of(rows: &FpMatrix) -> Vec<usize> {
    (0..rows.rows()).map(|i| rows.row(i).iter().position(|&x| x != 0).expect("nonzero basis row")).collect()
}

/// Reduces `v` modulo a subspace given by its reduced row echelon basis.
fn reduce(f: &PrimeField, v: &mut [u32], basis: &FpMatrix, pivots: &[usize]) {
    for (t, &q) in pivots.iter().enumerate() {
        let c = v[q];
        if c != 0 {
            for (x, &b) in v.iter_mut().zip(basis.row(t)) {
                *x = f.sub(x, &f.mul(&c, &b));
            }
        }
    }
}

struct Quotient {
    rep: FpRep,
    src_free: Vec<usize>,
    tgt_free: Vec<usize>,
}

/// `M / (S, T)` for a subrepresentation given by RREF bases, written in the
/// standard coordinates complementary to the pivots.
fn quotient(m: &FpRep, src: &FpMatrix, tgt: &FpMatrix) -> Quotient {
    let f = *m.field();
    let tp = pivots_of(tgt);
    let src_free = complement(&pivots_of(src), m.dim1());
    let tgt_free = complement(&tp, m.dim2());
    let maps = m
        .maps()
        .iter()
        .map(|a| {
            let mut q = Matrix::zeros(&f, tgt_free.len(), src_free.len());
            for (j, &c) in src_free.iter().enumerate() {
                let mut v = a.column(c);
                reduce(&f, &mut v, tgt, &tp);
                for (i, &t) in tgt_free.iter().enumerate() {
                    q.set(i, j, v[t]);
                }
            }
            q
        })
        .collect();
    let rep = KronRep::from_parts(&f, src_free.len(), tgt_free.len(), maps, Provenance::None);
    Quotient { rep, src_free, tgt_free }
}

fn lift(f: &PrimeField, rows: &FpMatrix, free: &[usize], ambient: usize) -> FpMatrix {
    let mut out = Matrix::zeros(f, rows.rows(), ambient);
    for i in 0..rows.rows() {
        for (j, &c) in free.iter().enumerate() {
            out.set(i, c, *rows.get(i, j));
        }
    }
    out
}

fn extend(f: &PrimeField, acc: &FpMatrix, more: &FpMatrix) -> FpMatrix {
    Matrix::vstack(f, acc.cols(), &[acc, more]).row_space()
}

/// Harder-Narasimhan filtration by repeated extraction of the maximal
/// destabilizing subrepresentation of the current quotient.
pub fn hn_oracle(m: &FpRep, opts: &OracleOpts) -> Result<HnFiltration> {
    let f = *m.field();
    let (n, mt) = (m.dim1(), m.dim2());
    if n == 0 && mt == 0 {
        return Err(Error::ZeroDenominator("filtration of the zero representation".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut src = Matrix::zeros(&f, 0, n);
    let mut tgt = Matrix::zeros(&f, 0, mt);
    let mut layers = Vec::new();
    let mut certified = false;
    while src.rows() < n || tgt.rows() < mt {
        let q = quotient(m, &src, &tgt);
        let (u, w) = if q.rep.dim1() == 0 {
            (Matrix::zeros(&f, 0, 0), Matrix::identity(&f, q.rep.dim2()))
        } else {
            let (sub, cert) = max_slope_with(&q.rep, opts, &mut rng)?;
            certified |= cert;
            (sub.source, sub.target)
        };
        let slope = dim_slope(DimVec::new(u.rows(), w.rows()))?;
        src = extend(&f, &src, &lift(&f, &u, &q.src_free, n));
        tgt = extend(&f, &tgt, &lift(&f, &w, &q.tgt_free, mt));
        let dims = DimVec::new(src.rows(), tgt.rows());
        layers.push(HnLayer { dims, slope, source: src.clone(), target: tgt.clone() });
    }
    let p = f.p();
    let method = if certified { Method::Certified { p } } else { Method::Oracle { p } };
    Ok(HnFiltration { layers, method })
}

/// `M` restricted to the subrepresentation with RREF bases `src`, `tgt`,
/// in the coordinates of those bases.
fn restrict_to(m: &FpRep, src: &FpMatrix, tgt: &FpMatrix) -> FpRep {
    let f = *m.field();
    let tp = pivots_of(tgt);
    let maps = m
        .maps()
        .iter()
        .map(|a| {
            let mut out = Matrix::zeros(&f, tgt.rows(), src.rows());
            for j in 0..src.rows() {
                let v = a.mul_vec(src.row(j));
                for (i, &q) in tp.iter().enumerate() {
                    out.set(i, j, v[q]);
                }
            }
            out
        })
        .collect();
    KronRep::from_parts(&f, src.rows(), tgt.rows(), maps, Provenance::None)
}

/// Rows of `sub` in the coordinates of the RREF basis `basis`.
fn coordinates(f: &PrimeField, sub: &FpMatrix, basis: &FpMatrix) -> FpMatrix {
    let pivots = pivots_of(basis);
    let mut out = Matrix::zeros(f, sub.rows(), basis.rows());
    for i in 0..sub.rows() {
        for (j, &q) in pivots.iter().enumerate() {
            out.set(i, j, *sub.get(i, q));
        }
    }
    out.row_space()
}

/// The successive quotients `F^i / F^{i-1}` of a filtration of `m`.
pub fn layer_quotients(m: &FpRep, hn: &HnFiltration) -> Vec<FpRep> {
    let f = *m.field();
    let mut prev_src = Matrix::zeros(&f, 0, m.dim1());
    let mut prev_tgt = Matrix::zeros(&f, 0, m.dim2());
    hn.layers
        .iter()
        .map(|layer| {
            let sub = restrict_to(m, &layer.source, &layer.target);
            let s = coordinates(&f, &prev_src, &layer.source);
            let t = coordinates(&f, &prev_tgt, &layer.target);
            prev_src = layer.source.clone();
            prev_tgt = layer.target.clone();
            quotient(&sub, &s, &t).rep
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_by_zero_is_identity() {
        let f = PrimeField::new(5).unwrap();
        let m = crate::constructions::random_rep(&f, 3, DimVec::new(2, 4), 1, 0);
        let q = quotient(&m, &Matrix::zeros(&f, 0, 2), &Matrix::zeros(&f, 0, 4));
        assert_eq!(q.rep.maps(), m.maps());
    }
}
