//! Restrictions along injections `A_d -> A_r`, membership in `repp(K_r, d)`,
//! decompositions of `K_2`-restrictions, and homogeneity probes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::{enumerate_subspaces, gaussian_binomial, Field, Matrix, PrimeField};
use crate::functors::preprojective_family;
use crate::homalg::hom_dim;
use crate::kronrep::{DimVec, KronRep, Provenance};

/// A `d`-dimensional subspace of `A_r`, as a full-rank `d x r` basis matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBasis<F: Field> {
    basis: Matrix<F>,
}

impl<F: Field> PlaneBasis<F> {
    pub fn new(basis: Matrix<F>) -> Result<Self> {
        let (d, r) = basis.shape();
        if d == 0 || d > r {
            return Err(Error::BadD { r, d });
        }
        if basis.rank() != d {
            return Err(Error::Invalid(format!("plane basis has rank {} < {d}", basis.rank())));
        }
        Ok(PlaneBasis { basis })
    }

    /// The span of the given standard arrows (0-based indices).
    pub fn coordinate(field: &F, r: usize, arrows: &[usize]) -> Result<Self> {
        let mut m = Matrix::zeros(field, arrows.len(), r);
        for (row, &a) in arrows.iter().enumerate() {
            if a >= r {
                return Err(Error::BadRange(format!("arrow {a} out of range for r = {r}")));
            }
            m.set(row, a, field.one());
        }
        Self::new(m)
    }

    pub fn r(&self) -> usize {
        self.basis.cols()
    }
    pub fn d(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
}

/// Multiplicities `n_i` of `P_i(2)` in a restriction to `K_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K2Decomposition {
    pub multiplicities: Vec<usize>,
    pub hom_dims: Vec<usize>,
    pub consistent: bool,
}

impl K2Decomposition {
    /// `sum n_i (i, i+1)`.
    pub fn dim_vec(&self) -> DimVec {
        self.multiplicities
            .iter()
            .enumerate()
            .fold(DimVec::default(), |acc, (i, &n)| acc + DimVec::new(n * i, n * (i + 1)))
    }

    /// Builds the expected decomposition from `(i, n_i)` pairs.
    pub fn from_terms(terms: &[(usize, usize)]) -> Vec<usize> {
        let len = terms.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut v = vec![0; len];
        for &(i, n) in terms {
            v[i] += n;
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

/// Options for randomized plane sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerOpts {
    pub samples: usize,
    pub seed: u64,
    /// Entries of sampled planes over Q lie in `[-bound, bound]`.
    pub bound: u64,
    /// Prime for exhaustive enumeration of `F_p`-rational planes.
    pub fp: Option<u32>,
    pub guard: u128,
}

impl Default for SamplerOpts {
    fn default() -> Self {
        SamplerOpts { samples: 20, seed: 0, bound: 65536, fp: None, guard: crate::exactmat::DEFAULT_GUARD }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipStatus<F: Field> {
    /// Some `d`-plane restricts to a non-projective representation. The
    /// witness is absent when only the dimension bound proves it.
    CertifiedNonMember {
        witness: Option<PlaneBasis<F>>,
        reason: String,
    },
    CertifiedMember {
        rule: String,
    },
    ProbableMember {
        samples: usize,
        fp_exhaustive: Option<(u32, u128)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict<F: Field> {
    pub d: usize,
    pub status: MembershipStatus<F>,
}

impl<F: Field> MembershipVerdict<F> {
    pub fn is_member(&self) -> bool {
        !matches!(self.status, MembershipStatus::CertifiedNonMember { .. })
    }

    pub fn is_certified_member(&self) -> bool {
        matches!(self.status, MembershipStatus::CertifiedMember { .. })
    }
}

/// `alpha^*(M)`: the representation of `K_d` with `N(gamma_j) = sum_i alpha_ji M(gamma_i)`.
pub fn pullback<F: Field>(m: &KronRep<F>, alpha: &PlaneBasis<F>) -> Result<KronRep<F>> {
    if alpha.r() != m.r() {
        return Err(Error::Mismatch(format!("plane lives in A_{}, representation has r = {}", alpha.r(), m.r())));
    }
    if alpha.basis.field() != m.field() {
        return Err(Error::FieldMismatch("plane and representation are over different fields".into()));
    }
    let maps = (0..alpha.d()).map(|j| m.combine(alpha.basis.row(j).iter().cloned())).collect();
    KronRep::new(alpha.d(), m.field(), maps)
}

/// True iff `psi` of the restriction has full column rank `d dim1`.
pub fn is_projective_restriction<F: Field>(m: &KronRep<F>, alpha: &PlaneBasis<F>) -> Result<bool> {
    let n = pullback(m, alpha)?;
    Ok(n.psi().rank() == alpha.d() * m.dim1())
}

/// Decomposes a `K_2`-representation through `d_i = dim Hom(P_i(2), N)`.
pub fn k2_decompose<F: Field>(n: &KronRep<F>) -> Result<K2Decomposition> {
    if n.r() != 2 {
        return Err(Error::Mismatch(format!("expected a representation of K_2, got r = {}", n.r())));
    }
    let top = n.dim1() + 2;
    let probes = preprojective_family(n.field(), 2, top)?;
    let hom_dims: Vec<usize> = probes.iter().map(|p| hom_dim(p, n)).collect::<Result<_>>()?;
    Ok(decompose_from_hom_dims(hom_dims, n.dim_vec()))
}

fn decompose_from_hom_dims(hom_dims: Vec<usize>, dims: DimVec) -> K2Decomposition {
    let d: Vec<i64> = hom_dims.iter().map(|&x| x as i64).collect();
    let raw: Vec<i64> = (0..d.len() - 2).map(|i| d[i] - 2 * d[i + 1] + d[i + 2]).collect();
    let nonneg = raw.iter().all(|&x| x >= 0);
    let mut multiplicities: Vec<usize> = raw.iter().map(|&x| x.max(0) as usize).collect();
    while multiplicities.last() == Some(&0) {
        multiplicities.pop();
    }
    let mut out = K2Decomposition { multiplicities, hom_dims, consistent: false };
    out.consistent = nonneg && out.dim_vec() == dims;
    out
}

/// Draws a uniformly random plane of rank `d` (integer entries in `[-bound, bound]` over Q).
pub fn random_plane<F: Field>(
    field: &F,
    r: usize,
    d: usize,
    bound: u64,
    rng: &mut ChaCha8Rng,
) -> Result<PlaneBasis<F>> {
    if d == 0 || d > r {
        return Err(Error::BadD { r, d });
    }
    loop {
        let data = (0..d * r).map(|_| field.random(rng, bound)).collect();
        let m = Matrix::from_vec(field, d, r, data);
        if m.rank() == d {
            return Ok(PlaneBasis { basis: m });
        }
    }
}

/// Generic splitting type over 2-planes: the coordinatewise minimum of the
/// `d_i` vectors of `samples` random restrictions.
pub fn generic_splitting<F: Field>(m: &KronRep<F>, samples: usize, seed: u64, bound: u64) -> Result<K2Decomposition> {
    if m.r() < 2 {
        return Err(Error::BadD { r: m.r(), d: 2 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Vec<usize>> = None;
    for _ in 0..samples.max(1) {
        let plane = random_plane(m.field(), m.r(), 2, bound, &mut rng)?;
        let dec = k2_decompose(&pullback(m, &plane)?)?;
        if !dec.consistent {
            return Err(Error::InconsistentRestriction(format!("sampled restriction has hom dims {:?}", dec.hom_dims)));
        }
        best = Some(match best {
            None => dec.hom_dims,
            Some(b) => b.iter().zip(&dec.hom_dims).map(|(x, y)| *x.min(y)).collect(),
        });
    }
    Ok(decompose_from_hom_dims(best.expect("at least one sample"), m.dim_vec()))
}

/// Whether `(r - d) min(dim1, d) <= Delta(d)`, a necessary condition for membership.
pub fn satisfies_bound(dims: DimVec, r: usize, d: usize) -> bool {
    dims.d1 == 0 || dims.delta(d) >= ((r - d) * dims.d1.min(d)) as i64
}

/// Is the representation with this provenance certified to lie in `repp(K_r, r-1)`
/// (hence in every `repp(K_r, d)`, `d <= r-1`)?
fn certified_rule(p: &Provenance) -> Option<&'static str> {
    match p {
        Provenance::Preprojective(_) => Some("preprojective"),
        Provenance::SigmaShift { base, n } if *n <= -1 => match base.as_ref() {
            Provenance::Schwarzenberger(_) | Provenance::Hyperplane => Some("inverse-shift"),
            _ => None,
        },
        _ => None,
    }
}

/// Decides membership of `M` in `repp(K_r, d)` as far as the evidence allows.
pub fn membership<F: Field>(m: &KronRep<F>, d: usize, opts: &SamplerOpts) -> Result<MembershipVerdict<F>> {
    let r = m.r();
    if d == 0 || d >= r {
        return Err(Error::BadD { r, d });
    }
    let verdict = |status| Ok(MembershipVerdict { d, status });
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    if !satisfies_bound(m.dim_vec(), r, d) {
        let mut witness = None;
        for _ in 0..opts.samples.clamp(1, 8) {
            let plane = random_plane(m.field(), r, d, opts.bound, &mut rng)?;
            if !is_projective_restriction(m, &plane)? {
                witness = Some(plane);
                break;
            }
        }
        let reason = format!(
            "Delta({d}) = {} is below (r-d) min(dim1, d) = {}",
            m.dim_vec().delta(d),
            (r - d) * m.dim1().min(d)
        );
        return verdict(MembershipStatus::CertifiedNonMember { witness, reason });
    }
    if let Some(rule) = certified_rule(m.provenance()) {
        return verdict(MembershipStatus::CertifiedMember { rule: rule.into() });
    }
    if m.dim1() == 0 {
        return verdict(MembershipStatus::CertifiedMember { rule: "semisimple-projective".into() });
    }
    for _ in 0..opts.samples {
        let plane = random_plane(m.field(), r, d, opts.bound, &mut rng)?;
        if !is_projective_restriction(m, &plane)? {
            return verdict(MembershipStatus::CertifiedNonMember {
                witness: Some(plane),
                reason: "sampled plane restricts to a non-projective representation".into(),
            });
        }
    }
    let mut fp_exhaustive = None;
    if let Some(p) = opts.fp {
        match exhaust_fp_planes(m, d, p, opts.guard)? {
            FpOutcome::AllProjective(count) => fp_exhaustive = Some((p, count)),
            FpOutcome::Witness(plane) => {
                return verdict(MembershipStatus::CertifiedNonMember {
                    witness: Some(plane),
                    reason: format!("F_{p}-rational plane restricts to a non-projective representation"),
                })
            }
            FpOutcome::Inconclusive => {}
        }
    }
    verdict(MembershipStatus::ProbableMember { samples: opts.samples, fp_exhaustive })
}

enum FpOutcome<F: Field> {
    AllProjective(u128),
    Witness(PlaneBasis<F>),
    Inconclusive,
}

/// Runs through all `F_p`-rational `d`-planes. For representations over Q the
/// check runs on the reduction mod `p`; failing planes are lifted and rechecked.
fn exhaust_fp_planes<F: Field>(m: &KronRep<F>, d: usize, p: u32, guard: u128) -> Result<FpOutcome<F>> {
    let fp = PrimeField::new(p)?;
    let r = m.r();
    let count = gaussian_binomial(p as u64, r, d).unwrap_or(u128::MAX);
    if count > guard {
        return Ok(FpOutcome::Inconclusive);
    }
    let Some(reduced) = m.reduce_mod(&fp) else {
        return Ok(FpOutcome::Inconclusive);
    };
    let mut lifted_failure = false;
    for plane in enumerate_subspaces(&fp, r, d, guard)? {
        let plane = PlaneBasis { basis: plane };
        if is_projective_restriction(&reduced, &plane)? {
            continue;
        }
        let lifted: Vec<F::Elem> = plane.basis.data().iter().map(|&x| m.field().from_i64(x as i64)).collect();
        let lifted = PlaneBasis { basis: Matrix::from_vec(m.field(), d, r, lifted) };
        if !is_projective_restriction(m, &lifted)? {
            return Ok(FpOutcome::Witness(lifted));
        }
        lifted_failure = true;
    }
    Ok(if lifted_failure { FpOutcome::Inconclusive } else { FpOutcome::AllProjective(count) })
}

/// Sampled planes whose restriction is not projective.
pub fn rank_variety_sample<F: Field>(
    m: &KronRep<F>,
    d: usize,
    samples: usize,
    seed: u64,
    bound: u64,
    extra: &[PlaneBasis<F>],
) -> Result<Vec<PlaneBasis<F>>> {
    if d == 0 || d >= m.r() {
        return Err(Error::BadD { r: m.r(), d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planes: Vec<PlaneBasis<F>> = extra.to_vec();
    for _ in 0..samples {
        planes.push(random_plane(m.field(), m.r(), d, bound, &mut rng)?);
    }
    let mut out = Vec::new();
    for p in planes {
        if p.d() != d {
            return Err(Error::BadD { r: m.r(), d: p.d() });
        }
        if !is_projective_restriction(m, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Invariant of a restriction used to compare planes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RestrictionInvariant {
    K2(K2Decomposition),
    Fingerprint(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniformityProbe<F: Field> {
    NoWitness { samples: usize },
    Witness { planes: (PlaneBasis<F>, PlaneBasis<F>), invariants: (RestrictionInvariant, RestrictionInvariant) },
}

fn restriction_invariant<F: Field>(m: &KronRep<F>, plane: &PlaneBasis<F>) -> Result<RestrictionInvariant> {
    let n = pullback(m, plane)?;
    if plane.d() == 2 {
        return Ok(RestrictionInvariant::K2(k2_decompose(&n)?));
    }
    let probes = preprojective_family(m.field(), plane.d(), m.dim1().min(3) + 1)?;
    Ok(RestrictionInvariant::Fingerprint(crate::homalg::hom_fingerprint(&n, &probes)?))
}

/// Looks for two `e`-planes with non-isomorphic restrictions. The given
/// planes are tried first, then `samples` random ones.
pub fn uniformity_probe<F: Field>(
    m: &KronRep<F>,
    e: usize,
    samples: usize,
    seed: u64,
    bound: u64,
    extra: &[PlaneBasis<F>],
) -> Result<UniformityProbe<F>> {
    if e < 2 || e > m.r() {
        return Err(Error::BadD { r: m.r(), d: e });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planes: Vec<PlaneBasis<F>> = extra.to_vec();
    for _ in 0..samples {
        planes.push(random_plane(m.field(), m.r(), e, bound, &mut rng)?);
    }
    let mut first: Option<(PlaneBasis<F>, RestrictionInvariant)> = None;
    for p in planes {
        let inv = restriction_invariant(m, &p)?;
        match &first {
            None => first = Some((p, inv)),
            Some((p0, inv0)) if *inv0 != inv => {
                return Ok(UniformityProbe::Witness { planes: (p0.clone(), p), invariants: (inv0.clone(), inv) });
            }
            Some(_) => {}
        }
    }
    Ok(UniformityProbe::NoWitness { samples: samples + extra.len() })
}
