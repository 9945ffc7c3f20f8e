//! Numerical invariants of the Steiner bundle attached to a representation:
//! rank `Delta_M(d)`, first Chern class `dim M_1` (as a multiple of `sigma_1`),
//! exceptional tables, small-rank classification, and splitting on lines.
//!
//! No sheaves are built; every number is read off the representation side.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::{Field, Rational};
use crate::kronrep::{a_seq, euler_form, tits_form, DimVec, KronRep};
use crate::restrict::{k2_decompose, pullback, MembershipStatus, MembershipVerdict, PlaneBasis};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinerInvariants {
    pub r: usize,
    pub d: usize,
    pub rank: i64,
    pub c1: usize,
    #[serde(serialize_with = "ser_opt_rational")]
    pub slope: Option<Rational>,
    /// How membership in `repp(K_r, d)` was established.
    pub membership: String,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl SteinerInvariants {
    /// `(c1, rank + d c1)`.
    pub fn dim_vec(&self) -> DimVec {
        DimVec::new(self.c1, (self.rank + (self.d * self.c1) as i64) as usize)
    }
}

fn describe<F: Field>(v: &MembershipVerdict<F>) -> String {
    match &v.status {
        MembershipStatus::CertifiedMember { rule } => format!("certified({rule})"),
        MembershipStatus::ProbableMember { samples, fp_exhaustive: Some((p, n)) } => {
            format!("probable({samples} samples, {n} planes over F{p})")
        }
        MembershipStatus::ProbableMember { samples, fp_exhaustive: None } => format!("probable({samples} samples)"),
        MembershipStatus::CertifiedNonMember { reason, .. } => format!("non-member({reason})"),
    }
}

pub fn steiner_invariants<F: Field>(
    m: &KronRep<F>,
    d: usize,
    verdict: &MembershipVerdict<F>,
) -> Result<SteinerInvariants> {
    if verdict.d != d {
        return Err(Error::Mismatch(format!("membership verdict is for d = {}, not {d}", verdict.d)));
    }
    if let MembershipStatus::CertifiedNonMember { reason, .. } = &verdict.status {
        return Err(Error::NotAMember(reason.clone()));
    }
    let rank = m.delta(d)?;
    let c1 = m.dim1();
    let slope = (rank > 0).then(|| Rational::new(c1 as i64, rank));
    Ok(SteinerInvariants { r: m.r(), d, rank, c1, slope, membership: describe(verdict) })
}

/// Euler characteristic of the sheaf-Hom between the two bundles, equal to
/// the Euler form of the dimension vectors.
pub fn chi_hom<F: Field>(m: &KronRep<F>, n: &KronRep<F>) -> Result<i64> {
    if m.r() != n.r() {
        return Err(Error::Mismatch(format!("r = {} and r = {}", m.r(), n.r())));
    }
    Ok(euler_form(m.r(), m.dim_vec(), n.dim_vec()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalEntry {
    pub n: usize,
    pub rank: i128,
    pub c1: u128,
}

impl ExceptionalEntry {
    pub fn dim_vec(&self, d: usize) -> (i128, i128) {
        (self.c1 as i128, self.rank + d as i128 * self.c1 as i128)
    }
}

/// Rank `a_{n+1} - d a_n` and `c1 = a_n` of the exceptional Steiner bundles, `n = 0..=n_max`.
pub fn exceptional_table(r: usize, d: usize, n_max: usize) -> Result<Vec<ExceptionalEntry>> {
    if r < 3 || d == 0 || d >= r {
        return Err(Error::BadD { r, d });
    }
    Ok((0..=n_max)
        .map(|n| {
            let (a, b) = (a_seq(r, n), a_seq(r, n + 1));
            ExceptionalEntry { n, rank: b as i128 - d as i128 * a as i128, c1: a }
        })
        .collect())
}

/// `q_r(c1, rank + d c1) = 1`.
pub fn is_exceptional_pair(r: usize, d: usize, e: &ExceptionalEntry) -> bool {
    let (x, y) = e.dim_vec(d);
    match (usize::try_from(x), usize::try_from(y)) {
        (Ok(x), Ok(y)) => tits_form(r, DimVec::new(x, y)) == 1,
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SmallRank {
    /// `O^trivial (+) Q^quotient` with `Q` the universal quotient bundle.
    SplitForm {
        trivial: u64,
        quotient: u64,
    },
    SimpleOrSplit {
        simple_forced: bool,
    },
    NoConstraint,
}

impl fmt::Display for SmallRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmallRank::SplitForm { trivial, quotient } => write!(f, "split(O^{trivial} + Q^{quotient})"),
            SmallRank::SimpleOrSplit { simple_forced: true } => write!(f, "simple"),
            SmallRank::SimpleOrSplit { simple_forced: false } => write!(f, "simple-or-split"),
            SmallRank::NoConstraint => write!(f, "no-constraint"),
        }
    }
}

pub fn classify_small_rank(r: usize, d: usize, rank: u64, c1: u64) -> Result<SmallRank> {
    if d == 0 || d >= r {
        return Err(Error::BadD { r, d });
    }
    let (rd, dd) = ((r - d) as u64, d as u64);
    if rank < rd * c1.min(dd) {
        return Err(Error::Impossible(format!("rank {rank} < {rd} * min({c1}, {d})")));
    }
    if c1 <= dd || rank < dd * rd {
        let trivial =
            rank.checked_sub(rd * c1).ok_or_else(|| Error::Impossible(format!("rank {rank} < {rd} * {c1}")))?;
        return Ok(SmallRank::SplitForm { trivial, quotient: c1 });
    }
    if rank == dd * rd {
        return Ok(SmallRank::SimpleOrSplit { simple_forced: c1 > dd });
    }
    Ok(SmallRank::NoConstraint)
}

/// Multiplicities `a_i` of `O_L(i)` on a line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    pub parts: BTreeMap<usize, usize>,
}

impl SplittingType {
    pub fn from_multiplicities(ns: &[usize]) -> Self {
        SplittingType { parts: ns.iter().enumerate().filter(|(_, &n)| n > 0).map(|(i, &n)| (i, n)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(i, n)| i * n).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(i, n)| format!("{i}:{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Splitting on the line of the 2-plane `v`: `M|_v = sum n_i P_i(2)` gives `sum n_i O_L(i)`.
pub fn line_splitting<F: Field>(m: &KronRep<F>, v: &PlaneBasis<F>) -> Result<SplittingType> {
    if v.d() != 2 {
        return Err(Error::BadD { r: v.r(), d: v.d() });
    }
    let dec = k2_decompose(&pullback(m, v)?)?;
    if !dec.consistent {
        return Err(Error::InconsistentRestriction(format!("restriction of {} is not projective", m.dim_vec())));
    }
    Ok(SplittingType::from_multiplicities(&dec.multiplicities))
}
