//! MDS codes with prescribed Galois hull dimension and the entanglement-assisted
//! quantum parameters they yield.
//!
//! [`propagate`] applies one of seven transforms to a self-orthogonal (extended)
//! GRS code. Each transform is a structural step whose hull is provably at
//! least the largest admissible target, followed by single-coordinate multiplier
//! changes. Scaling `v_j` changes the Gram matrix by a rank-one term, so each
//! change moves the hull dimension by at most one; the walk stops at the target.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{egrs_to_grs_shifted, CertifiedCode, CodeError, GrsSpec, MdsStatus};
use crate::gf::Fe;
use crate::orth::gram_report_grs;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("TargetOutOfRange: {0}")]
    TargetOutOfRange(String),
    #[error("PerturbationExhausted: wanted hull dimension {target}, reached {best}")]
    PerturbationExhausted { target: usize, best: usize },
    #[error("NegativeParameter: hull dimension {l} exceeds {limit}")]
    NegativeParameter { l: usize, limit: usize },
    #[error("BaseMismatch: outer code is over {got}, expected {expected}")]
    BaseMismatch { expected: u128, got: u128 },
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Rule number (1–7), offset `i` and target hull dimension `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HullTarget {
    pub rule: u8,
    pub i: usize,
    pub l: usize,
}

/// An MDS (extended) GRS code with a measured `e`-Galois hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCode {
    pub spec: GrsSpec,
    pub e: u32,
    pub hull_dim: usize,
    pub mds: MdsStatus,
}

impl HullCode {
    pub fn n(&self) -> usize {
        self.spec.length()
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }
}

/// `(n', k')` produced by a rule from an `[n, k]` base, and the largest `l`.
pub fn rule_shape(
    rule: u8,
    n: usize,
    k: usize,
    i: usize,
    q: usize,
) -> Result<(usize, usize, usize), QuantumError> {
    let out = |msg: String| Err(QuantumError::TargetOutOfRange(msg));
    let short = n < q + 1;
    let room = (q + 1).saturating_sub(n);
    match rule {
        1 if i == 0 => Ok((n, k, k)),
        1 => out("rule 1 takes i = 0".into()),
        2 | 7 if i == 0 || i >= k => out(format!("rule {rule} needs 1 <= i <= {}", k - 1)),
        3 | 5 if i == 0 || i > k => out(format!("rule {rule} needs 1 <= i <= {k}")),
        4 | 6 if i == 0 || i > k.min(room) => {
            out(format!("rule {rule} needs 1 <= i <= min(k, q+1-n) = {}", k.min(room)))
        }
        5..=7 if !short => out(format!("rule {rule} needs n < q + 1")),
        2 => Ok((n - i, k - i, k - i)),
        3 => Ok((n - i, k, k - i)),
        4 => Ok((n + i, k, k - i)),
        5 => Ok((n, k + i, k - i)),
        6 => Ok((n + i, k + i, k - i)),
        7 => Ok((n, k - i, k - i)),
        _ => out(format!("unknown rule {rule}")),
    }
}

/// Applies a propagation rule and perturbs multipliers until the hull has
/// dimension `t.l`. `seed` rotates the coordinate order of the search.
pub fn propagate(
    code: &CertifiedCode,
    t: HullTarget,
    seed: u64,
) -> Result<HullCode, QuantumError> {
    let base = &code.spec;
    let f = &*base.ctx;
    let q = f.q() as usize;
    if q <= 4 {
        return Err(QuantumError::PreconditionViolated("propagation needs q > 4".into()));
    }
    let (n, k) = (base.length(), base.k);
    let (_, _, l_max) = rule_shape(t.rule, n, k, t.i, q)?;
    if t.l > l_max {
        return Err(QuantumError::TargetOutOfRange(format!("need l <= {l_max}, got {}", t.l)));
    }
    let spec = structural(base, t.rule, t.i)?;
    let e = code.e;
    let hull = gram_report_grs(&spec, e).hull_dim;
    let (spec, hull) = walk(spec, e, hull, t.l, seed)?;
    Ok(HullCode { spec, e, hull_dim: hull, mds: MdsStatus::Structural })
}

/// The rule's structural step, before any multiplier perturbation.
fn structural(base: &GrsSpec, rule: u8, i: usize) -> Result<GrsSpec, QuantumError> {
    let f = &*base.ctx;
    let mut spec = base.clone();
    // Rules 4–7 act on a GRS form; an EGRS code with a free finite element
    // equals a GRS code on the same coordinates.
    if rule >= 4 && spec.extended && spec.a.len() < f.q() as usize {
        spec = egrs_to_grs_shifted(&spec)?.0;
    }
    let k = spec.k;
    match rule {
        1 => Ok(spec),
        2 | 3 => {
            let keep = spec.a.len() - i;
            let removed: Vec<Fe> = spec.a[keep..].to_vec();
            let mut a = spec.a;
            a.truncate(keep);
            let mut v = spec.v;
            v.truncate(keep);
            let k_out = if rule == 2 {
                let pi = Poly::from_roots(f, &removed);
                for (vj, &aj) in v.iter_mut().zip(&a) {
                    *vj = f.mul(*vj, pi.eval(f, aj));
                }
                k - i
            } else {
                k
            };
            Ok(GrsSpec::new(spec.ctx.clone(), a, v, k_out, spec.extended)?)
        }
        4 | 6 => {
            let mut sorted = spec.a.clone();
            sorted.sort();
            let mut fresh: Vec<Fe> = f
                .elements()
                .filter(|x| sorted.binary_search(x).is_err())
                .take(i)
                .collect();
            let add_infinity = fresh.len() < i;
            if add_infinity && spec.extended {
                return Err(QuantumError::TargetOutOfRange("no free locator left".into()));
            }
            let mut a = spec.a.clone();
            let mut v = spec.v.clone();
            if rule == 6 {
                let pi = Poly::from_roots(f, &fresh);
                for (vj, &aj) in v.iter_mut().zip(&a) {
                    *vj = f.div(*vj, pi.eval(f, aj)).expect("fresh locators are not roots");
                }
            }
            v.extend(std::iter::repeat_n(Fe::ONE, fresh.len()));
            a.append(&mut fresh);
            let k_out = if rule == 6 { k + i } else { k };
            Ok(GrsSpec::new(spec.ctx.clone(), a, v, k_out, spec.extended || add_infinity)?)
        }
        5 => Ok(spec.with_k(k + i)?),
        7 => Ok(spec.with_k(k - i)?),
        _ => unreachable!("rule checked by rule_shape"),
    }
}

/// Moves the hull dimension one step at a time towards `target`.
fn walk(
    mut spec: GrsSpec,
    e: u32,
    mut hull: usize,
    target: usize,
    seed: u64,
) -> Result<(GrsSpec, usize), QuantumError> {
    let f = spec.ctx.clone();
    let pe = f.p_pow(e % f.m());
    // One representative per nontrivial change of v_j^{p^e+1}.
    let mut seen = vec![false; f.q() as usize];
    seen[1] = true;
    let scalars: Vec<Fe> = f
        .nonzero_elements()
        .filter(|&c| !std::mem::replace(&mut seen[f.pow(c, pe + 1).0 as usize], true))
        .collect();
    let n = spec.a.len();
    let start = if n == 0 { 0 } else { (seed % n as u64) as usize };
    let order: Vec<usize> = (0..n).map(|j| (start + j) % n).collect();
    let mut budget = 4 * (spec.k + 1);
    while hull != target {
        if budget == 0 || scalars.is_empty() {
            return Err(QuantumError::PerturbationExhausted { target, best: hull });
        }
        budget -= 1;
        let want = if hull > target { hull - 1 } else { hull + 1 };
        let step = order.par_iter().find_map_first(|&j| {
            scalars.iter().find_map(|&c| {
                let mut trial = spec.clone();
                trial.v[j] = f.mul(trial.v[j], c);
                (gram_report_grs(&trial, e).hull_dim == want).then_some(trial)
            })
        });
        match step {
            Some(next) => {
                spec = next;
                hull = want;
            }
            None => return Err(QuantumError::PerturbationExhausted { target, best: hull }),
        }
    }
    Ok((spec, hull))
}

/// `[[n, k, d; c]]_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub c: u64,
    pub q: u128,
}

impl fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]_{}", self.n, self.k, self.d, self.c, self.q)
    }
}

/// Both EAQECCs from an `[n, k]_q` MDS code whose hull has dimension `l`:
/// `[[n, k−l, n−k+1; n−k−l]]` and `[[n, n−k−l, k+1; k−l]]`.
pub fn eaqecc_params(
    n: u64,
    k: u64,
    l: u64,
    q: u128,
) -> Result<(QuantumParams, QuantumParams), QuantumError> {
    let limit = k.min(n.saturating_sub(k));
    if l > limit || k > n {
        return Err(QuantumError::NegativeParameter { l: l as usize, limit: limit as usize });
    }
    Ok((
        QuantumParams { n, k: k - l, d: n - k + 1, c: n - k - l, q },
        QuantumParams { n, k: n - k - l, d: k + 1, c: k - l, q },
    ))
}

/// Which EA-Singleton inequality a tuple violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingletonBound {
    /// `k ≤ c + max{0, n − 2d + 2}`.
    First,
    /// `k ≤ n − d + 1`.
    Second,
    /// `k ≤ (n−d+1)(c+2d−2−n)/(3d−3−n)` when `2d ≥ n + 2`.
    Third,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingletonVerdict {
    /// All bounds hold; `mds` is equality in the governing bound.
    Pass { mds: bool },
    Fail(SingletonBound),
}

impl SingletonVerdict {
    pub fn passed(self) -> bool {
        matches!(self, SingletonVerdict::Pass { .. })
    }
}

/// Checks all applicable EA-Singleton inequalities with exact integers.
pub fn ea_singleton_check(qp: &QuantumParams) -> SingletonVerdict {
    let (n, k, d, c) = (qp.n as i128, qp.k as i128, qp.d as i128, qp.c as i128);
    let first = c + (n - 2 * d + 2).max(0);
    if k > first {
        return SingletonVerdict::Fail(SingletonBound::First);
    }
    if k > n - d + 1 {
        return SingletonVerdict::Fail(SingletonBound::Second);
    }
    if 2 * d >= n + 2 {
        // 2d ≥ n + 2 makes both factors nonnegative and the denominator positive.
        let num = (n - d + 1) * (c + 2 * d - 2 - n);
        let den = 3 * d - 3 - n;
        if k * den > num {
            return SingletonVerdict::Fail(SingletonBound::Third);
        }
        return SingletonVerdict::Pass { mds: k * den == num };
    }
    SingletonVerdict::Pass { mds: k == first }
}

/// `[[n'n, k'k, ≥ d'd; c'n + ck']]_p` from an inner code over `p` and an outer
/// code over `p^{k'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConcatParams {
    pub n: u64,
    pub k: u64,
    pub d_lower: u64,
    pub c: u64,
    pub q: u128,
}

impl fmt::Display for ConcatParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},>={};{}]]_{}", self.n, self.k, self.d_lower, self.c, self.q)
    }
}

pub fn eacqc_compose(
    inner: &QuantumParams,
    outer: &QuantumParams,
) -> Result<ConcatParams, QuantumError> {
    let expected = u32::try_from(inner.k)
        .ok()
        .and_then(|k| inner.q.checked_pow(k))
        .ok_or(QuantumError::BaseMismatch { expected: u128::MAX, got: outer.q })?;
    if outer.q != expected {
        return Err(QuantumError::BaseMismatch { expected, got: outer.q });
    }
    Ok(ConcatParams {
        n: inner.n * outer.n,
        k: inner.k * outer.k,
        d_lower: inner.d * outer.d,
        c: inner.c * outer.n + outer.c * inner.k,
        q: inner.q,
    })
}
