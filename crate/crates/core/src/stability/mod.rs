//! Slopes, (semi)stability verdicts, Harder-Narasimhan filtrations, and
//! quasi-composition series.
//!
//! Subrepresentations are searched on the source side only: for a fixed
//! `U_1` the subrepresentation of largest slope has `U_2 = sum_i M(gamma_i) U_1`.
//! Two exact routes find the subrepresentation of maximal slope. The oracle
//! enumerates every `U_1` over `F_p`; the certified route runs a
//! Stern-Brocot search on the slope and solves each step with a random
//! blow-up, accepting a result only when a rank bound proves it optimal.

mod certified;
mod oracle;
mod rules;
mod series;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::{is_prime, Field, Matrix, PrimeField, Rational};
use crate::kronrep::{DimVec, FpRep, KronRep, QRep};
use crate::FpMatrix;

pub use certified::{maximal_maximizer, minimal_maximizer, semistable_certified};
pub use oracle::{hn_oracle, layer_quotients, max_slope_subrep, semistable_oracle, OracleOpts, Strategy};
pub use rules::{stability_certify, RULE_ELEMENTARY, RULE_MINIMAL_TYPE, RULE_PREPROJECTIVE, RULE_SIGMA_TRANSFER};
pub use series::{elementary_filtration_predicate, quasi_series};

/// Attached to oracle verdicts of stability: equal-slope subrepresentations
/// defined only over an extension of `F_p` are not searched.
pub const STRICTNESS_CAVEAT: &str = "base-field witness search only for strictness";

/// Attached to certified verdicts, which decide semistability only.
pub const CERTIFIED_CAVEAT: &str = "certified route decides semistability, not strictness";

/// `mu = dim1 / (dim2 - dim1)`.
pub fn dim_slope(x: DimVec) -> Result<Rational> {
    let delta = x.delta(1);
    if delta <= 0 {
        return Err(Error::ZeroDenominator(format!("slope of {x} needs dim2 > dim1")));
    }
    Ok(Rational::new(x.d1 as i64, delta))
}

pub fn slope<F: Field>(m: &KronRep<F>) -> Result<Rational> {
    dim_slope(m.dim_vec())
}

/// `nu = dim2 / dim1`.
pub fn nu(x: DimVec) -> Result<Rational> {
    if x.d1 == 0 {
        return Err(Error::ZeroDenominator(format!("nu of {x} needs dim1 > 0")));
    }
    Ok(Rational::new(x.d2 as i64, x.d1 as i64))
}

fn rank_profile<F: Field>(m: &KronRep<F>) -> Vec<usize> {
    let mut out: Vec<usize> = m.maps().iter().map(Matrix::rank).collect();
    out.push(m.psi().rank());
    out.push(m.dual().psi().rank());
    out
}

/// Reduction mod the first prime `>= p` that keeps the ranks of every map,
/// of `psi_M` and of its dual block matrix. Tries `attempts` primes.
pub fn generic_reduction(m: &QRep, p: u32, attempts: usize) -> Result<FpRep> {
    let want = rank_profile(m);
    let mut q = p.max(2);
    for _ in 0..attempts {
        while !is_prime(q as u64) {
            q += 1;
        }
        let f = PrimeField::new(q)?;
        if let Some(red) = m.reduce_mod(&f) {
            if rank_profile(&red) == want {
                return Ok(red);
            }
        }
        q += 1;
    }
    Err(Error::Invalid(format!("no rank-preserving reduction among {attempts} primes from {p}")))
}

/// `1 / (L_r - 1)` with `L_r = (r + sqrt(r^2 - 4)) / 2`, the limit of
/// preprojective slopes.
pub fn slope_limit(r: usize) -> f64 {
    let r = r as f64;
    let l = (r + (r * r - 4.0).sqrt()) / 2.0;
    1.0 / (l - 1.0)
}

/// A subrepresentation `(U_1, U_2)` given by row bases in the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subrep {
    pub dims: DimVec,
    pub slope: Rational,
    pub source: FpMatrix,
    pub target: FpMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityStatus {
    Stable,
    /// Semistable; strictness was not decided.
    Semistable,
    SemistableNotStable,
    Unstable(Subrep),
    Unknown,
}

impl StabilityStatus {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityStatus::Stable => "stable",
            StabilityStatus::Semistable => "semistable",
            StabilityStatus::SemistableNotStable => "semistable-not-stable",
            StabilityStatus::Unstable(_) => "unstable",
            StabilityStatus::Unknown => "unknown",
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityStatus::Stable)
    }

    pub fn is_unstable(&self) -> bool {
        matches!(self, StabilityStatus::Unstable(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Method {
    Oracle { p: u32 },
    Certified { p: u32 },
    Rule { id: String },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Oracle { p } => write!(f, "oracle(F{p})"),
            Method::Certified { p } => write!(f, "certified(F{p})"),
            Method::Rule { id } => write!(f, "rule({id})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub method: Method,
    pub caveat: Option<String>,
}

/// One step `F^i` of a Harder-Narasimhan filtration: the dimension vector
/// of `F^i`, the slope of `F^i / F^{i-1}`, and bases of `F^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnLayer {
    pub dims: DimVec,
    pub slope: Rational,
    pub source: FpMatrix,
    pub target: FpMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFiltration {
    pub layers: Vec<HnLayer>,
    pub method: Method,
}

impl HnFiltration {
    /// Dimension vectors of the successive quotients `F^i / F^{i-1}`.
    pub fn quotient_dims(&self) -> Vec<DimVec> {
        let mut prev = DimVec::default();
        self.layers
            .iter()
            .map(|l| {
                let q = DimVec::new(l.dims.d1 - prev.d1, l.dims.d2 - prev.d2);
                prev = l.dims;
                q
            })
            .collect()
    }

    pub fn slopes_decreasing(&self) -> bool {
        self.layers.windows(2).all(|w| w[0].slope > w[1].slope)
    }
}
