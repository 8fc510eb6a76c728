//! Constructions of `e`-Galois self-orthogonal (extended) GRS codes.
//!
//! Every builder returns a [`CertifiedCode`] whose `e`- and `(m−e)`-Gram
//! matrices have been checked to vanish. Builders that rely on the bound
//! `p^e ≤ p^{m−e}` work with `min(e, m−e)` internally; the two Galois duals
//! agree on self-orthogonality, so the certificate covers the requested `e`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::codes::{CertifiedCode, CodeError, GrsSpec, MdsStatus};
use crate::gf::{gcd, FieldCtx, GfError, HCase};
use crate::orth::gram_report_grs;

mod affine;
mod coset;
mod enumerate;
mod hermitian;
mod lambda_search;
mod qplus1;
mod subcode;
mod theta;
mod transfer;

pub use affine::{construct_affine, construct_distinct};
pub use coset::{coset_locators, construct_coset_sum};
pub use enumerate::{
    build_row, enumerate_params, formula_k_max, table_cells, ParamRow, VERIFY_LIMIT,
};
pub use hermitian::{base_witness_search, construct_hermitian_lift, embed_subfield};
pub use lambda_search::{lambda_search, LambdaSearch};
pub use qplus1::{construct_q_plus_1, noroot_poly, qplus1_k_max, NoRootPoly};
pub use subcode::subcode;
pub use theta::{construct_theta_blocks, divisible_u, theta_all_nonzero_null_vector};
pub use transfer::transfer_eprime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("NotEnoughLocators: need {needed}, only {available} available")]
    NotEnoughLocators { needed: usize, available: usize },
    #[error("CaseHypothesisFailed: {0}")]
    CaseHypothesisFailed(String),
    #[error("WitnessNotInH: no λ witness with all values in H")]
    WitnessNotInH,
    #[error("BadPartition: {0}")]
    BadPartition(String),
    #[error("BlockWitnessMissing: block {0} has no self-orthogonal witness")]
    BlockWitnessMissing(usize),
    #[error("NoBaseCode: no base code for n = {n}, k = {k}")]
    NoBaseCode { n: usize, k: usize },
    #[error("EmbeddingFailure: the subfield modulus has no root in F_q")]
    EmbeddingFailure,
    #[error("NoAllNonzeroSolution: the block system has no all-nonzero null vector")]
    NoAllNonzeroSolution,
    #[error("KOutOfRange: k = {k} is outside {lo}..={hi}")]
    KOutOfRange { k: usize, lo: usize, hi: usize },
    #[error("GcdMismatch: the subgroups H for e = {e} and e' = {e_prime} differ")]
    GcdMismatch { e: u32, e_prime: u32 },
    #[error("NoLambdaWitness: the base code has no λ witness within its degree bound")]
    NoLambdaWitness,
    #[error("BadDimension: k = {k} must satisfy 1 <= k <= {max}")]
    BadDimension { k: usize, max: usize },
    #[error("NoGrsSubcode: no extended GRS subcode of dimension {k} on these locators")]
    NoGrsSubcode { k: usize },
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("VerificationFailed: the constructed code is not {e}-Galois self-orthogonal")]
    VerificationFailed { e: u32 },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Construction family behind a code or a parameter row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Locators with `σ^e(a) = αa + β`.
    Affine,
    /// Blocks inside disjoint additive cosets of `F_{p^s}`.
    Coset,
    /// Any distinct locators with `λ = 1` when `H = F_q^*`.
    Distinct,
    /// Hermitian base code over `F_{p^{2s}}` read inside `F_q`.
    Hermitian,
    /// Multiplicative `θ`-blocks with a solved multiplier system.
    Theta,
    /// Length `q + 1` from a root-free λ.
    QPlus1,
    /// Length `q + 1` at `k = (q−1)/(p^e+1) + 1` with `λ = 1`.
    QPlus1Iso,
    /// λ witness carried over from another `e'` with the same `H`.
    Transfer,
    Subcode,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Affine,
        Method::Coset,
        Method::Distinct,
        Method::Hermitian,
        Method::Theta,
        Method::QPlus1,
        Method::QPlus1Iso,
        Method::Transfer,
        Method::Subcode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Affine => "affine",
            Method::Coset => "coset",
            Method::Distinct => "distinct",
            Method::Hermitian => "hermitian",
            Method::Theta => "theta",
            Method::QPlus1 => "qplus1",
            Method::QPlus1Iso => "qplus1-iso",
            Method::Transfer => "transfer",
            Method::Subcode => "subcode",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// `min(e, m − e)` for `e` reduced mod `m`.
pub fn effective_e(m: u32, e: u32) -> u32 {
    let e = e % m;
    e.min((m - e) % m)
}

/// `gcd(e, m)` with `gcd(0, m) = m`.
pub fn s_of(m: u32, e: u32) -> u32 {
    gcd(e as u64, m as u64) as u32
}

pub(crate) fn check_e(f: &FieldCtx, e: u32) -> Result<(), ConstructError> {
    if e >= f.m() {
        return Err(ConstructError::PreconditionViolated(format!(
            "need 0 <= e < m = {}, got e = {e}",
            f.m()
        )));
    }
    Ok(())
}

pub(crate) fn case_of(f: &FieldCtx, e: u32) -> HCase {
    crate::gf::classify(f.p() as u64, f.m(), e)
}

/// Checks that `spec` is self-orthogonal for `e` and `m − e` and wraps it.
pub fn certify(
    spec: GrsSpec,
    e: u32,
    lambda_degree: Option<usize>,
) -> Result<CertifiedCode, ConstructError> {
    let m = spec.ctx.m();
    let report = gram_report_grs(&spec, e);
    if !report.is_zero {
        return Err(ConstructError::VerificationFailed { e });
    }
    let dual_e = (m - e % m) % m;
    if !gram_report_grs(&spec, dual_e).is_zero {
        return Err(ConstructError::VerificationFailed { e: dual_e });
    }
    Ok(CertifiedCode {
        e,
        hull_dim: report.hull_dim,
        mds: MdsStatus::Structural,
        gram_zero: true,
        lambda_degree,
        spec,
    })
}

pub(crate) fn new_spec(
    ctx: &Arc<FieldCtx>,
    a: Vec<crate::gf::Fe>,
    v: Vec<crate::gf::Fe>,
    k: usize,
    extended: bool,
) -> Result<GrsSpec, ConstructError> {
    Ok(GrsSpec::new(ctx.clone(), a, v, k, extended)?)
}
