//! Exact maximization of `w_s dim U - w_t dim W(U)` over subspaces `U` of the
//! source, with `W(U) = sum_i A_i U`.
//!
//! The function is supermodular, so its maximizers form a lattice. A random
//! element `T = sum_i A_i (x) Y_i` of the blow-up of the matrix space by
//! `w_s k x w_t k` blocks satisfies `rank T <= k (n w_s - g(U))` for every `U`.
//! The second Wong sequence of `T` produces a candidate `V`; when `V` attains
//! the bound it is a maximizer, and it is contained in every other maximizer.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{dim_slope, Method, StabilityStatus, StabilityVerdict, Subrep, CERTIFIED_CAVEAT};
use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, PrimeField};
use crate::kronrep::{DimVec, FpRep};
use crate::FpMatrix;

const MAX_BLOWUP: usize = 3;
const ATTEMPTS: usize = 3;

/// Row basis of `sum_i A_i U` for `U` given by rows.
pub(crate) fn image_rows(f: &PrimeField, maps: &[FpMatrix], tdim: usize, src: &FpMatrix) -> FpMatrix {
    if src.rows() == 0 {
        return Matrix::zeros(f, 0, tdim);
    }
    let parts: Vec<FpMatrix> = maps.iter().map(|a| src.mul(&a.transpose())).collect();
    let refs: Vec<&FpMatrix> = parts.iter().collect();
    Matrix::vstack(f, tdim, &refs).row_space()
}

fn blow_up(f: &PrimeField, maps: &[FpMatrix], c: usize, e: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    let (mt, n) = maps[0].shape();
    let (rows, cols) = (mt * e, n * c);
    let p = f.p() as u64;
    let mut t = vec![0u32; rows * cols];
    for a in maps {
        let y: Vec<u32> = (0..e * c).map(|_| f.random(rng, 0)).collect();
        for i in 0..mt {
            for j in 0..n {
                let x = *a.get(i, j) as u64;
                if x == 0 {
                    continue;
                }
                for s in 0..e {
                    let row = &mut t[(i * e + s) * cols + j * c..(i * e + s) * cols + (j + 1) * c];
                    for (dst, &yv) in row.iter_mut().zip(&y[s * c..(s + 1) * c]) {
                        *dst = ((*dst as u64 + x * yv as u64) % p) as u32;
                    }
                }
            }
        }
    }
    Matrix::from_vec(f, rows, cols, t)
}

/// Span of the `n`-vectors obtained by fixing the second tensor index of rows in `F^n (x) F^c`.
fn slice_span(f: &PrimeField, p: &FpMatrix, n: usize, c: usize) -> FpMatrix {
    let mut data = Vec::with_capacity(p.rows() * c * n);
    for j in 0..p.rows() {
        let row = p.row(j);
        for x in 0..c {
            data.extend((0..n).map(|b| row[b * c + x]));
        }
    }
    Matrix::from_vec(f, p.rows() * c, n, data).row_space()
}

/// Limit of the second Wong sequence `Z -> W(slices(T^{-1}(Z (x) F^e)))`.
fn wong_limit(
    f: &PrimeField,
    maps: &[FpMatrix],
    t: &FpMatrix,
    rank: usize,
    c: usize,
    e: usize,
) -> (FpMatrix, FpMatrix) {
    let (mt, n) = maps[0].shape();
    let mut z = Matrix::zeros(f, 0, mt);
    loop {
        let pre = if z.rows() == 0 {
            if rank == t.cols() {
                Matrix::zeros(f, 0, t.cols())
            } else {
                t.kernel_rows()
            }
        } else {
            let zp = z.kernel_rows();
            let q = zp.rows();
            let data = f.matmul(q, mt, e * n * c, zp.data(), t.data());
            Matrix::from_vec(f, q * e, n * c, data).kernel_rows()
        };
        let v = slice_span(f, &pre, n, c);
        let w = image_rows(f, maps, mt, &v);
        if w.rows() == z.rows() {
            return (v, w);
        }
        z = w;
    }
}

/// The smallest maximizer of `ws dim U - wt dim W(U)` and the maximum.
/// Maps are `target x source` matrices over a common prime field.
pub fn minimal_maximizer(maps: &[FpMatrix], ws: usize, wt: usize, rng: &mut ChaCha8Rng) -> Result<(FpMatrix, i64)> {
    let f = *maps.first().ok_or_else(|| Error::Invalid("no maps".into()))?.field();
    let n = maps[0].cols();
    if n == 0 {
        return Ok((Matrix::zeros(&f, 0, 0), 0));
    }
    for k in 1..=MAX_BLOWUP {
        for _ in 0..ATTEMPTS {
            let (c, e) = (ws * k, wt * k);
            let t = blow_up(&f, maps, c, e, rng);
            let rank = t.rank();
            let (v, w) = wong_limit(&f, maps, &t, rank, c, e);
            let g = (ws * v.rows()) as i64 - (wt * w.rows()) as i64;
            if rank as i64 == k as i64 * ((n * ws) as i64 - g) {
                return Ok((v, g));
            }
        }
    }
    Err(Error::Uncertified(format!("blow-up up to size {MAX_BLOWUP} for weights ({ws}, {wt}) over F{}", f.p())))
}

/// The largest maximizer of `ws dim U - wt dim W(U)` and the maximum,
/// obtained from the smallest maximizer of the transposed problem.
pub fn maximal_maximizer(maps: &[FpMatrix], ws: usize, wt: usize, rng: &mut ChaCha8Rng) -> Result<(FpMatrix, i64)> {
    let f = *maps.first().ok_or_else(|| Error::Invalid("no maps".into()))?.field();
    let (mt, n) = maps[0].shape();
    let tmaps: Vec<FpMatrix> = maps.iter().map(Matrix::transpose).collect();
    let (y, h) = minimal_maximizer(&tmaps, wt, ws, rng)?;
    let u = image_rows(&f, &tmaps, n, &y).kernel_rows().row_space();
    let g = h + (ws * n) as i64 - (wt * mt) as i64;
    let wu = image_rows(&f, maps, mt, &u);
    if (ws * u.rows()) as i64 - (wt * wu.rows()) as i64 != g {
        return Err(Error::Uncertified("dual maximizer does not attain the bound".into()));
    }
    Ok((u, g))
}

fn not_ekp(u: &FpMatrix, w: usize) -> Error {
    Error::NotEkpEvidence(format!("subrepresentation of dimension ({}, {w}) has dim2 <= dim1", u.rows()))
}

/// Source space of the subrepresentation of maximal slope, largest among ties.
pub(crate) fn max_ratio_certified(m: &FpRep, rng: &mut ChaCha8Rng) -> Result<FpMatrix> {
    let f = *m.field();
    let (n, mt) = (m.dim1(), m.dim2());
    let (u1, _) = maximal_maximizer(m.maps(), 1, 1, rng)?;
    if u1.rows() > 0 {
        let w = image_rows(&f, m.maps(), mt, &u1).rows();
        return Err(not_ekp(&u1, w));
    }
    let mut best = (n, m.psi().rank());
    let (mut lo, mut hi) = ((0usize, 1usize), (1usize, 1usize));
    loop {
        let mid = (lo.0 + hi.0, lo.1 + hi.1);
        if mid.0 * best.1 < best.0 * mid.1 {
            lo = mid;
            continue;
        }
        let (u, g) = maximal_maximizer(m.maps(), mid.1, mid.0, rng)?;
        if g > 0 {
            best = (u.rows(), image_rows(&f, m.maps(), mt, &u).rows());
            lo = mid;
        } else if u.rows() > 0 {
            return Ok(u);
        } else {
            hi = mid;
        }
    }
}

pub(crate) fn subrep_of(m: &FpRep, u: FpMatrix) -> Result<Subrep> {
    let target = image_rows(m.field(), m.maps(), m.dim2(), &u);
    let dims = DimVec::new(u.rows(), target.rows());
    Ok(Subrep { dims, slope: dim_slope(dims)?, source: u, target })
}

/// Semistability decided by the certified route alone.
pub fn semistable_certified(m: &FpRep, seed: u64) -> Result<StabilityVerdict> {
    let p = m.field().p();
    let method = Method::Certified { p };
    if let Some(v) = super::oracle::trivial_source(m, method.clone())? {
        return Ok(v);
    }
    dim_slope(m.dim_vec())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, _) = maximal_maximizer(m.maps(), 1, 1, &mut rng)?;
    if u1.rows() > 0 {
        let w = image_rows(m.field(), m.maps(), m.dim2(), &u1).rows();
        return Err(not_ekp(&u1, w));
    }
    let (n, mt) = (m.dim1(), m.dim2());
    let g = num_integer::gcd(n, mt);
    let (_, val) = maximal_maximizer(m.maps(), mt / g, n / g, &mut rng)?;
    if val > 0 {
        let u = max_ratio_certified(m, &mut rng)?;
        let w = subrep_of(m, u)?;
        return Ok(StabilityVerdict { status: StabilityStatus::Unstable(w), method, caveat: None });
    }
    Ok(StabilityVerdict { status: StabilityStatus::Semistable, method, caveat: Some(CERTIFIED_CAVEAT.into()) })
}
