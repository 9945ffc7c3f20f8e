//! Named families: Schwarzenberger and hyperplane modules, cokernels of
//! planes, test modules, random representations, a small search for
//! elementary representations of `K_3`, and quotients of minimal type.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, PrimeField};
use crate::functors::tau;
use crate::homalg::is_brick;
use crate::kronrep::{DimVec, FpRep, KronRep, Provenance};
use crate::restrict::{membership, PlaneBasis, SamplerOpts};

/// Exponent pair `(deg X_1, deg X_2)` of the monomial attached to arrow `i` (0-based).
///
/// The first two arrows act by the pure powers `X_1^{r-1}` and `X_2^{r-1}`, the
/// remaining ones by `X_1^{r-j+1} X_2^{j-2}` (1-based `j`), so every monomial
/// of degree `r - 1` occurs once.
pub fn schwarzenberger_monomial(r: usize, i: usize) -> (usize, usize) {
    match i {
        0 => (r - 1, 0),
        1 => (0, r - 1),
        _ => {
            let j = i + 1;
            (r + 1 - j, j - 2)
        }
    }
}

/// `M_1 = k[X_1,X_2]_{m-r-1}`, `M_2 = k[X_1,X_2]_{m-2}`, arrows acting by
/// multiplication, bases ordered by decreasing `X_1`-degree.
pub fn schwarzenberger<F: Field>(field: &F, r: usize, m: usize) -> Result<KronRep<F>> {
    if r < 2 || m < r + 1 {
        return Err(Error::BadM { r, m });
    }
    let (d1, d2) = (m - r, m - 1);
    let maps = (0..r)
        .map(|i| {
            let (_, v) = schwarzenberger_monomial(r, i);
            let mut a = Matrix::zeros(field, d2, d1);
            for b in 0..d1 {
                a.set(b + v, b, field.one());
            }
            a
        })
        .collect();
    Ok(KronRep::new(r, field, maps)?.with_provenance(Provenance::Schwarzenberger(m)))
}

/// `m` linear forms on `A_r`, one per row of an `m x r` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalTuple<F: Field> {
    pub functionals: Matrix<F>,
}

impl<F: Field> FunctionalTuple<F> {
    pub fn new(functionals: Matrix<F>) -> Result<Self> {
        let (m, r) = functionals.shape();
        if m < r {
            return Err(Error::BadM { r, m });
        }
        Ok(FunctionalTuple { functionals })
    }
    pub fn r(&self) -> usize {
        self.functionals.cols()
    }
    pub fn m(&self) -> usize {
        self.functionals.rows()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Every `r` of the functionals form a basis of the dual space.
pub fn general_position<F: Field>(ft: &FunctionalTuple<F>, guard: u128) -> Result<bool> {
    let (m, r) = (ft.m(), ft.r());
    let count = binomial(m, r);
    if count > guard {
        return Err(Error::GuardExceeded {
            what: format!("{r}-subsets of {m} functionals"),
            needed: count,
            limit: guard,
        });
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if ft.functionals.select_rows(&idx).rank() < r {
            return Ok(false);
        }
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if idx[i] < m - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The representation `(I_f, W_m)` cut out of `v (x) lambda -> (lambda_j f_j(v))_j`.
///
/// `I_f` carries the canonical kernel basis of `lambda -> sum lambda_j f_j`;
/// `W_m` (coordinates summing to zero) has basis `e_j - e_0`, `j >= 1`.
pub fn hyperplane_rep<F: Field>(ft: &FunctionalTuple<F>, guard: u128) -> Result<KronRep<F>> {
    let (m, r) = (ft.m(), ft.r());
    if r < 3 {
        return Err(Error::BadRange(format!("hyperplane modules need r >= 3, got {r}")));
    }
    if !general_position(ft, guard)? {
        return Err(Error::NotGeneralPosition);
    }
    let f = ft.functionals.field();
    let kernel = ft.functionals.transpose().kernel_rows();
    let maps = (0..r)
        .map(|i| {
            let mut a = Matrix::zeros(f, m - 1, kernel.rows());
            for t in 0..kernel.rows() {
                for j in 1..m {
                    a.set(j - 1, t, f.mul(kernel.get(t, j), ft.functionals.get(j, i)));
                }
            }
            a
        })
        .collect();
    Ok(KronRep::new(r, f, maps)?.with_provenance(Provenance::Hyperplane))
}

/// `(k, A_r / im alpha)`, with the quotient written in the standard
/// coordinates that are not pivots of the plane's RREF.
pub fn coker_plane<F: Field>(alpha: &PlaneBasis<F>) -> Result<KronRep<F>> {
    let (r, d) = (alpha.r(), alpha.d());
    if d == 0 || d >= r {
        return Err(Error::BadD { r, d });
    }
    let f = alpha.basis().field();
    let rref = alpha.basis().rref();
    let free = crate::exactmat::complement(&rref.pivots, r);
    let maps = (0..r)
        .map(|i| {
            let mut col = Matrix::zeros(f, free.len(), 1);
            if let Some(t) = rref.pivots.iter().position(|&q| q == i) {
                for (s, &c) in free.iter().enumerate() {
                    col.set(s, 0, f.neg(rref.matrix.get(t, c)));
                }
            } else {
                let s = free.iter().position(|&c| c == i).expect("free coordinate");
                col.set(s, 0, f.one());
            }
            col
        })
        .collect();
    Ok(KronRep::new(r, f, maps)?.with_provenance(Provenance::CokerPlane))
}

/// `E(v) = D(tau(coker alpha))`, of dimension vector `(d, rd - 1)`.
pub fn test_module<F: Field>(alpha: &PlaneBasis<F>) -> Result<KronRep<F>> {
    Ok(tau(&coker_plane(alpha)?).dual().with_provenance(Provenance::TestModule))
}

/// Independent uniform entries: integers in `[-bound, bound]` over Q, residues over `F_p`.
pub fn random_rep<F: Field>(field: &F, r: usize, dims: DimVec, seed: u64, bound: u64) -> KronRep<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_rep_with(field, r, dims, &mut rng, bound).with_provenance(Provenance::Random(seed))
}

pub(crate) fn random_rep_with<F: Field>(
    field: &F,
    r: usize,
    dims: DimVec,
    rng: &mut ChaCha8Rng,
    bound: u64,
) -> KronRep<F> {
    let maps = (0..r)
        .map(|_| {
            let data = (0..dims.d1 * dims.d2).map(|_| field.random(rng, bound)).collect();
            Matrix::from_vec(field, dims.d2, dims.d1, data)
        })
        .collect();
    KronRep::from_parts(field, dims.d1, dims.d2, maps, Provenance::None)
}

/// Checks the elementary certificate for `K_3`-representations of
/// dimension `(1,1)` or `(2,2)` over `F_p`.
pub fn is_certified_elementary(m: &FpRep) -> bool {
    let f = *m.field();
    match (m.r(), m.dim1(), m.dim2()) {
        (3, 1, 1) => m.maps().iter().any(|a| !a.is_zero()),
        (3, 2, 2) => {
            if m.psi().rank() < 2 {
                return false;
            }
            // Lines span(v) with v = (1, t) or (0, 1).
            let mut lines: Vec<[u32; 2]> = (0..f.p()).map(|t| [1, t]).collect();
            lines.push([0, 1]);
            for v in lines {
                let images: Vec<Vec<u32>> = m.maps().iter().map(|a| a.mul_vec(&v)).collect();
                let data: Vec<u32> = (0..2).flat_map(|row| images.iter().map(move |img| img[row])).collect();
                if Matrix::from_vec(&f, 2, 3, data).rank() <= 1 {
                    return false;
                }
            }
            is_brick(m)
        }
        _ => false,
    }
}

/// Draws random `K_3`-representations over `F_p` until one carries the
/// elementary certificate.
pub fn elementary_search(dims: DimVec, p: u32, seed: u64, max_draws: usize) -> Result<FpRep> {
    if dims != DimVec::new(1, 1) && dims != DimVec::new(2, 2) {
        return Err(Error::Invalid(format!("elementary search supports (1,1) and (2,2), got {dims}")));
    }
    let f = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_draws {
        let m = random_rep_with(&f, 3, dims, &mut rng, 0);
        if is_certified_elementary(&m) {
            return Ok(m.with_provenance(Provenance::ElementaryCertified));
        }
    }
    Err(Error::SearchExhausted(max_draws))
}

/// Quotient `N = (M_1, M_2 / Y)` of minimal type for a member `M` of
/// `repp(K_r, d)` with `Delta(d) > d(r - d)`, together with a basis of `Y`
/// (columns). The kernel of `M -> N` is `dim Y` copies of `P_0`.
///
/// `Y` is drawn at random with `dim Y = Delta(d) - d(r - d)` and kept when
/// the quotient passes the membership sampler, which checks that `Y` meets
/// the sampled images `im psi_{M,v}` trivially. This is a best-effort search:
/// a good `Y` exists, but a draw is not guaranteed to find it.
pub fn minimal_type_quotient<F: Field>(
    m: &KronRep<F>,
    d: usize,
    opts: &SamplerOpts,
    attempts: usize,
) -> Result<(KronRep<F>, Matrix<F>)> {
    let r = m.r();
    if d == 0 || d >= r {
        return Err(Error::BadD { r, d });
    }
    let excess = m.delta(d)? - (d * (r - d)) as i64;
    if excess <= 0 {
        return Err(Error::Invalid(format!("Delta({d}) of {} is already at most {}", m.dim_vec(), d * (r - d))));
    }
    if !membership(m, d, opts)?.is_member() {
        return Err(Error::NotAMember(format!("{} is not in repp(K_{r}, {d})", m.dim_vec())));
    }
    let (field, n2, k) = (m.field(), m.dim2(), excess as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..attempts {
        let data = (0..n2 * k).map(|_| field.random(&mut rng, opts.bound)).collect();
        let y = Matrix::from_vec(field, n2, k, data);
        if y.rank() < k {
            continue;
        }
        let pi = y.transpose().kernel_rows();
        let maps = m.maps().iter().map(|a| pi.mul(a)).collect();
        let n = KronRep::from_parts(field, m.dim1(), n2 - k, maps, Provenance::None);
        let check = SamplerOpts { seed: opts.seed.wrapping_add(attempt as u64 + 1), ..opts.clone() };
        if membership(&n, d, &check)?.is_member() {
            return Ok((n, y));
        }
    }
    Err(Error::SearchExhausted(attempts))
}
