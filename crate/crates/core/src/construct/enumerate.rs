//! Parameter tables `(n, kMax)` per construction family.

use std::sync::Arc;

use rayon::prelude::*;

use crate::codes::GrsSpec;
use crate::gf::{classify, FieldCtx, Fe, HCase};

use super::lambda_search::lambda_search;
use super::{
    certify, construct_affine, construct_coset_sum, construct_distinct, construct_hermitian_lift,
    construct_q_plus_1, construct_theta_blocks, effective_e, qplus1_k_max, s_of, transfer_eprime,
    ConstructError, Method,
};

/// Rows on fields up to this order are checked by building their `kMax` code.
pub const VERIFY_LIMIT: u32 = 1 << 13;

const THETA_SEED: u64 = 0;

/// One achievable `(n, kMax)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRow {
    pub p: u32,
    pub m: u32,
    pub e: u32,
    pub n: usize,
    pub k_max: usize,
    pub method: Method,
    pub verified: bool,
}

/// Closed-form `kMax` of `method` at length `n`, or `None` where the family
/// has no row.
pub fn formula_k_max(p: u32, m: u32, e: u32, method: Method, n: usize) -> Option<usize> {
    let ee = effective_e(m, e);
    let s = s_of(m, ee);
    let q = (p as usize).pow(m);
    let ps = (p as usize).pow(s);
    let pe = (p as usize).pow(ee);
    let case = classify(p as u64, m, ee);
    let in_subfield_square = s < m && n > ps && n <= (ps * ps).min(q);
    let k = match (case, method) {
        (HCase::Full | HCase::EvenQuotient, Method::Affine) if n >= 2 && n <= (ps + 1).min(q) => n / 2,
        (HCase::Squares, Method::Affine) if n == ps => ps / 2,
        (HCase::Full, Method::Coset) if in_subfield_square => {
            let t = n.div_ceil(ps);
            (n / t) / 2
        }
        (HCase::Squares, Method::Coset) if s < m && n.is_multiple_of(ps) && (2..=ps).contains(&(n / ps)) => {
            ps / 2
        }
        (HCase::Full, Method::Distinct) if n > ps && n <= q => (n + pe - 1) / (pe + 1),
        (HCase::Full, Method::Theta) if ee >= 1 && m.is_multiple_of(ee) => {
            let r = (n.checked_sub(1)?) / (pe - 1);
            let r_max = (pe + 1).min((q - 1) / (pe - 1));
            let exact = r * (pe - 1) + 1 == n;
            (exact && (1..=r_max).contains(&r)).then_some((pe + r - 1) / 2)?
        }
        (HCase::Squares, Method::Transfer) if ee >= 1 && n == q => 1 + (q - 3) / (pe + 1),
        (HCase::EvenQuotient, Method::Hermitian) if n == ps * ps => ps - 1,
        (HCase::EvenQuotient, Method::Hermitian) if n == ps * ps + 1 => ps,
        (_, Method::QPlus1) if n == q + 1 => qplus1_k_max(p, m, e).0,
        (_, Method::QPlus1Iso) if n == q + 1 => qplus1_k_max(p, m, e).1?,
        _ => return None,
    };
    (k >= 1).then_some(k)
}

/// Candidate `(method, n)` cells for one `e`, before filtering by formula.
fn cells(p: u32, m: u32, e: u32) -> Vec<(Method, usize)> {
    let ee = effective_e(m, e);
    let s = s_of(m, ee);
    let q = (p as usize).pow(m);
    let ps = (p as usize).pow(s);
    let pe = (p as usize).pow(ee);
    let mut out = Vec::new();
    for n in 2..=(ps + 1).min(q) {
        out.push((Method::Affine, n));
    }
    if s < m {
        for n in ps + 1..=(ps * ps).min(q) {
            out.push((Method::Coset, n));
            out.push((Method::Distinct, n));
        }
        out.push((Method::Hermitian, ps * ps));
        out.push((Method::Hermitian, ps * ps + 1));
    }
    if ee >= 1 {
        for r in 1..=pe + 1 {
            out.push((Method::Theta, r * (pe - 1) + 1));
        }
    }
    out.push((Method::Transfer, q));
    out.push((Method::QPlus1, q + 1));
    out.push((Method::QPlus1Iso, q + 1));
    out
}

/// Tabulated `(method, n, kMax)` triples for one `e`, sorted by `(n, method)`.
pub fn table_cells(p: u32, m: u32, e: u32, max_n: Option<usize>) -> Vec<(Method, usize, usize)> {
    let mut out: Vec<(Method, usize, usize)> = cells(p, m, e)
        .into_iter()
        .filter(|&(_, n)| max_n.is_none_or(|cap| n <= cap))
        .filter_map(|(method, n)| formula_k_max(p, m, e, method, n).map(|k| (method, n, k)))
        .collect();
    out.sort_by_key(|&(method, n, _)| (n, method));
    out.dedup();
    out
}

/// All rows for one `e`, sorted by `(n, method)`, each verified when
/// `q ≤ VERIFY_LIMIT`.
pub fn enumerate_params(ctx: &Arc<FieldCtx>, e: u32, max_n: Option<usize>) -> Vec<ParamRow> {
    let (p, m) = (ctx.p(), ctx.m());
    let check = ctx.q() <= VERIFY_LIMIT;
    table_cells(p, m, e, max_n)
        .into_par_iter()
        .map(|(method, n, k_max)| ParamRow {
            p,
            m,
            e,
            n,
            k_max,
            method,
            verified: check && build_row(ctx, e, method, n, k_max).is_ok(),
        })
        .collect()
}

/// Builds the `kMax` code behind a row.
pub fn build_row(
    ctx: &Arc<FieldCtx>,
    e: u32,
    method: Method,
    n: usize,
    k: usize,
) -> Result<crate::codes::CertifiedCode, ConstructError> {
    let f = &**ctx;
    let ee = effective_e(f.m(), e);
    let ps = f.p_pow(s_of(f.m(), ee)) as usize;
    match method {
        Method::Affine => construct_affine(ctx, e, Fe::ONE, Fe::ZERO, n, k),
        Method::Coset => {
            let t = n.div_ceil(ps);
            let part: Vec<usize> = (0..t).map(|i| n / t + (i < n % t) as usize).collect();
            construct_coset_sum(ctx, e, &part, k)
        }
        Method::Distinct => construct_distinct(ctx, e, n, k),
        Method::Hermitian => construct_hermitian_lift(ctx, e, n, k, None),
        Method::Theta => {
            let pe = f.p_pow(ee) as usize;
            construct_theta_blocks(ctx, e, (n - 1) / (pe - 1), k, THETA_SEED)
        }
        Method::QPlus1 | Method::QPlus1Iso => construct_q_plus_1(ctx, e, k),
        Method::Transfer => {
            let base = euclidean_full_field(ctx)?;
            transfer_eprime(&base, e, k)
        }
        Method::Subcode => Err(ConstructError::PreconditionViolated(
            "subcode rows are not tabulated".into(),
        )),
    }
}

/// Euclidean `[q, (q−1)/2]` code on all of `F_q`, q odd.
fn euclidean_full_field(ctx: &Arc<FieldCtx>) -> Result<crate::codes::CertifiedCode, ConstructError> {
    let f = &**ctx;
    let a: Vec<Fe> = f.elements().collect();
    let k = (a.len() - 1) / 2;
    let found = lambda_search(f, &a, 0, 1, false, Fe::ONE, 1 << 12).ok_or(ConstructError::NoLambdaWitness)?;
    let deg = found.lam.degree();
    certify(GrsSpec::new(ctx.clone(), a, found.v, k, false)?, 0, deg)
}
