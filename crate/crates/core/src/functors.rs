//! Shift functors, Auslander-Reiten translates, and the preprojective family.

use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix};
use crate::kronrep::{KronRep, Provenance};
use crate::restrict::{membership, MembershipStatus, SamplerOpts};

/// Builds the representation whose `i`-th map sends basis vector `t` of the
/// source to block `i` of kernel row `t`, i.e. the block projections of a
/// kernel basis given as rows.
fn projections<F: Field>(field: &F, r: usize, kernel: &Matrix<F>, block: usize) -> Vec<Matrix<F>> {
    let kappa = kernel.rows();
    (0..r)
        .map(|i| {
            let mut m = Matrix::zeros(field, block, kappa);
            for t in 0..kappa {
                for b in 0..block {
                    m.set(b, t, kernel.get(t, i * block + b).clone());
                }
            }
            m
        })
        .collect()
}

/// `sigma(M) = (ker psi_M, M_1)` with the block projections as maps.
pub fn sigma<F: Field>(m: &KronRep<F>) -> KronRep<F> {
    let f = m.field();
    let kernel = m.psi().kernel_rows();
    let maps = projections(f, m.r(), &kernel, m.dim1());
    KronRep::from_parts(f, kernel.rows(), m.dim1(), maps, m.provenance().shifted(1))
}

/// `sigma^{-1} = D sigma D`, assembled directly from the kernel of `[M_1^T | ... | M_r^T]`.
pub fn sigma_inv<F: Field>(m: &KronRep<F>) -> KronRep<F> {
    let f = m.field();
    let parts: Vec<Matrix<F>> = m.maps().iter().map(Matrix::transpose).collect();
    let refs: Vec<&Matrix<F>> = parts.iter().collect();
    let kernel = Matrix::hstack(f, m.dim1(), &refs).kernel_rows();
    let maps = projections(f, m.r(), &kernel, m.dim2()).iter().map(Matrix::transpose).collect();
    KronRep::from_parts(f, m.dim2(), kernel.rows(), maps, m.provenance().shifted(-1))
}

pub fn tau<F: Field>(m: &KronRep<F>) -> KronRep<F> {
    sigma(&sigma(m))
}

pub fn tau_inv<F: Field>(m: &KronRep<F>) -> KronRep<F> {
    sigma_inv(&sigma_inv(m))
}

/// `sigma^n` for `n >= 0`, `sigma^{-n}` otherwise.
pub fn sigma_pow<F: Field>(m: &KronRep<F>, n: i64) -> KronRep<F> {
    let mut out = m.clone();
    for _ in 0..n.unsigned_abs() {
        out = if n > 0 { sigma(&out) } else { sigma_inv(&out) };
    }
    out
}

/// `P_i(r)`: `P_0 = S_2`, `P_1 = (k, A_r)` with `M(gamma_j) = e_j`, then `sigma^{-1}` repeatedly.
pub fn preprojective<F: Field>(field: &F, r: usize, i: usize) -> Result<KronRep<F>> {
    preprojective_family(field, r, i).map(|mut v| v.pop().expect("nonempty"))
}

/// `[P_0(r), ..., P_i(r)]`.
pub fn preprojective_family<F: Field>(field: &F, r: usize, i: usize) -> Result<Vec<KronRep<F>>> {
    if r < 2 {
        return Err(Error::BadRange(format!("preprojectives need r >= 2, got {r}")));
    }
    let p0 = KronRep::zero(field, r, 0, 1).with_provenance(Provenance::Preprojective(0));
    let mut out = vec![p0];
    if i >= 1 {
        let maps = (0..r).map(|j| Matrix::unit_column(field, r, j)).collect();
        out.push(KronRep::new(r, field, maps)?.with_provenance(Provenance::Preprojective(1)));
    }
    while out.len() <= i {
        let next = sigma_inv(out.last().expect("nonempty"));
        out.push(next);
    }
    Ok(out)
}

/// Shifts `M` down by `sigma` while the result stays nonzero and keeps
/// passing the equal-kernels test. Returns the last passing representative
/// and the number of shifts applied.
pub fn ekp_min_rep<F: Field>(m: &KronRep<F>, opts: &SamplerOpts) -> Result<(KronRep<F>, usize)> {
    if let Provenance::Preprojective(i) = m.provenance() {
        let p0 = preprojective(m.field(), m.r(), 0)?;
        return Ok((p0, *i));
    }
    if !passes_ekp(m, opts)? {
        return Err(Error::NotEkp(format!("dimension vector {}", m.dim_vec())));
    }
    let mut cur = m.clone();
    let mut shift = 0;
    loop {
        let next = sigma(&cur);
        if next.is_zero() || !passes_ekp(&next, opts)? {
            return Ok((cur, shift));
        }
        cur = next;
        shift += 1;
    }
}

fn passes_ekp<F: Field>(m: &KronRep<F>, opts: &SamplerOpts) -> Result<bool> {
    let v = membership(m, 1, opts)?;
    Ok(!matches!(v.status, MembershipStatus::CertifiedNonMember { .. }))
}
