//! Sums of blocks placed in disjoint additive cosets `F_{p^s} + b_i ζ`.

use std::sync::Arc;

use crate::codes::CertifiedCode;
use crate::gf::{FieldCtx, Fe};
use crate::orth::affine_lambda_degree_bound;

use super::affine::Combinations;
use super::lambda_search::lambda_search;
use super::{certify, check_e, effective_e, new_spec, s_of, ConstructError};

const SEARCH_BUDGET: u64 = 1 << 14;
const SUBSET_BUDGET: usize = 2048;

/// The first `t` cosets `S_i = F_{p^s} + b_i ζ`, each in subfield order.
///
/// `ζ` is the least element outside `F_{p^s}` and `b_i` runs over the
/// subfield in increasing order, so `S_1 = F_{p^s}`.
pub fn coset_locators(
    ctx: &FieldCtx,
    e: u32,
    t: usize,
) -> Result<Vec<Vec<Fe>>, ConstructError> {
    check_e(ctx, e)?;
    let s = s_of(ctx.m(), effective_e(ctx.m(), e));
    if s == ctx.m() {
        return Err(ConstructError::BadPartition("F_{p^s} is the whole field".into()));
    }
    let sub = ctx.subfield_elements(s)?;
    if t > sub.len() {
        return Err(ConstructError::BadPartition(format!(
            "{t} blocks exceed the {} available cosets",
            sub.len()
        )));
    }
    let zeta = ctx
        .elements()
        .find(|x| sub.binary_search(x).is_err())
        .expect("s < m leaves elements outside the subfield");
    Ok(sub[..t]
        .iter()
        .map(|&b| {
            let shift = ctx.mul(b, zeta);
            sub.iter().map(|&x| ctx.add(x, shift)).collect()
        })
        .collect())
}

/// `[Σ n_i, k]` code whose `i`-th block lies in `S_i`.
///
/// Each block gets its own self-orthogonal witness over `n_i` locators of
/// `S_i`, so `k ≤ min ⌊n_i/2⌋`.
pub fn construct_coset_sum(
    ctx: &Arc<FieldCtx>,
    e: u32,
    partition: &[usize],
    k: usize,
) -> Result<CertifiedCode, ConstructError> {
    check_e(ctx, e)?;
    let f = &**ctx;
    let t = partition.len();
    if t < 2 {
        return Err(ConstructError::BadPartition(
            "at least two blocks are needed; use the affine build otherwise".into(),
        ));
    }
    let ps = f.p_pow(s_of(f.m(), effective_e(f.m(), e))) as usize;
    if let Some(&bad) = partition.iter().find(|&&ni| ni == 0 || ni > ps) {
        return Err(ConstructError::BadPartition(format!("block size {bad} outside 1..={ps}")));
    }
    let cosets = coset_locators(f, e, t)?;
    let hi = partition.iter().map(|&ni| ni / 2).min().unwrap_or(0);
    if k == 0 || k > hi {
        return Err(ConstructError::KOutOfRange { k, lo: 1, hi });
    }
    let mut a = Vec::new();
    let mut v = Vec::new();
    for (i, (coset, &ni)) in cosets.iter().zip(partition).enumerate() {
        let bound = affine_lambda_degree_bound(ni, k, false).expect("k <= n_i/2");
        let found = Combinations::new(coset.len(), ni)
            .take(SUBSET_BUDGET)
            .find_map(|idx| {
                let block: Vec<Fe> = idx.iter().map(|&j| coset[j]).collect();
                lambda_search(f, &block, e, bound, false, Fe::ONE, SEARCH_BUDGET)
                    .map(|found| (block, found.v))
            })
            .ok_or(ConstructError::BlockWitnessMissing(i))?;
        a.extend(found.0);
        v.extend(found.1);
    }
    certify(new_spec(ctx, a, v, k, false)?, e, None)
}
