//! Stability read off provenance and membership evidence.

use super::{Method, StabilityStatus, StabilityVerdict};
use crate::exactmat::Field;
use crate::functors::ekp_min_rep;
use crate::kronrep::{KronRep, Provenance};
use crate::restrict::{membership, MembershipStatus, MembershipVerdict, SamplerOpts};

/// Preprojective indecomposables are stable.
pub const RULE_PREPROJECTIVE: &str = "preprojective";
/// Non-projective members of `repp(K_r, d)` with `Delta(d) = d(r - d)` are stable.
pub const RULE_MINIMAL_TYPE: &str = "minimal-type";
/// Elementary representations with the equal-kernels property are stable.
pub const RULE_ELEMENTARY: &str = "elementary-ekp";
/// For `M` with the equal-kernels property, `M` is stable iff `sigma^{-1} M` is.
pub const RULE_SIGMA_TRANSFER: &str = "sigma-transfer";

fn passes_ekp<F: Field>(m: &KronRep<F>, evidence: Option<&MembershipVerdict<F>>, opts: &SamplerOpts) -> bool {
    if let Some(v) = evidence.filter(|v| v.d == 1) {
        return v.is_member();
    }
    membership(m, 1, opts).map(|v| v.is_member()).unwrap_or(false)
}

fn direct<F: Field>(m: &KronRep<F>, evidence: Option<&MembershipVerdict<F>>, opts: &SamplerOpts) -> Option<String> {
    let (base, shift) = m.provenance().base_and_shift();
    if matches!(m.provenance(), Provenance::Preprojective(_)) {
        return Some(RULE_PREPROJECTIVE.into());
    }
    if let Some(v) = evidence {
        let r = m.r();
        let minimal = v.d >= 1 && v.d < r && m.delta(v.d).ok() == Some((v.d * (r - v.d)) as i64);
        if matches!(v.status, MembershipStatus::CertifiedMember { .. }) && m.dim1() > 0 && minimal {
            return Some(RULE_MINIMAL_TYPE.into());
        }
    }
    if matches!(base, Provenance::ElementaryCertified) && passes_ekp(m, evidence, opts) {
        // Shifts of an elementary representation stay elementary.
        return Some(if shift == 0 {
            RULE_ELEMENTARY.into()
        } else {
            format!("{RULE_SIGMA_TRANSFER}+{RULE_ELEMENTARY}")
        });
    }
    None
}

/// Applies the provenance and evidence rules, then retries them on the
/// `sigma`-minimal representative. Returns `Unknown` when nothing applies.
pub fn stability_certify<F: Field>(
    m: &KronRep<F>,
    evidence: Option<&MembershipVerdict<F>>,
    opts: &SamplerOpts,
) -> StabilityVerdict {
    let verdict =
        |id: String| StabilityVerdict { status: StabilityStatus::Stable, method: Method::Rule { id }, caveat: None };
    if let Some(id) = direct(m, evidence, opts) {
        return verdict(id);
    }
    if let Ok((min, shift)) = ekp_min_rep(m, opts) {
        if shift > 0 {
            if let Some(id) = direct(&min, None, opts) {
                return verdict(format!("{RULE_SIGMA_TRANSFER}+{id}"));
            }
        }
    }
    StabilityVerdict { status: StabilityStatus::Unknown, method: Method::Rule { id: "none".into() }, caveat: None }
}
