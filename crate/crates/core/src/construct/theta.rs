//! Multiplicative `θ`-blocks `w^l ⟨θ⟩` plus the zero locator.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::CertifiedCode;
use crate::gf::{FieldCtx, Fe, HCase};
use crate::linalg::FMatrix;

use super::{case_of, certify, check_e, effective_e, new_spec, ConstructError};

const RANDOM_TRIES: usize = 512;

/// Every `u ≥ 1` with `(p^e − 1) u = p^e i + j` for some `0 ≤ i, j ≤ k − 1`, sorted.
pub fn divisible_u(pe: u64, k: usize) -> Vec<u64> {
    let k = k as u64;
    let mut out: Vec<u64> = (0..k)
        .flat_map(|i| (0..k).map(move |j| pe * i + j))
        .filter(|&x| x > 0 && x % (pe - 1) == 0)
        .map(|x| x / (pe - 1))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A null vector of `b` with no zero coordinate.
///
/// Tries kernel basis vectors, then `b_i + c·b_j`, then seeded random
/// combinations of the basis.
pub fn theta_all_nonzero_null_vector(f: &FieldCtx, b: &FMatrix, seed: u64) -> Option<Vec<Fe>> {
    let basis = b.kernel(f);
    let all_nonzero = |x: &Vec<Fe>| x.iter().all(|c| !c.is_zero());
    if let Some(x) = basis.iter().find(|x| all_nonzero(x)) {
        return Some(x.clone());
    }
    let combine = |coeffs: &[Fe]| -> Vec<Fe> {
        let mut acc = vec![Fe::ZERO; b.cols()];
        for (c, x) in coeffs.iter().zip(&basis) {
            for (slot, &xi) in acc.iter_mut().zip(x) {
                *slot = f.add(*slot, f.mul(*c, xi));
            }
        }
        acc
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for c in f.nonzero_elements() {
                let mut coeffs = vec![Fe::ZERO; basis.len()];
                coeffs[i] = Fe::ONE;
                coeffs[j] = c;
                let x = combine(&coeffs);
                if all_nonzero(&x) {
                    return Some(x);
                }
            }
        }
    }
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_TRIES)
        .map(|_| {
            let coeffs: Vec<Fe> = basis.iter().map(|_| Fe(rng.gen_range(0..f.q()))).collect();
            combine(&coeffs)
        })
        .find(all_nonzero)
}

/// `[r(p^e−1)+1, k]` code on `(0, w^l θ^ν)` with one multiplier per block.
pub fn construct_theta_blocks(
    ctx: &Arc<FieldCtx>,
    e: u32,
    r: usize,
    k: usize,
    seed: u64,
) -> Result<CertifiedCode, ConstructError> {
    check_e(ctx, e)?;
    let f = &**ctx;
    let m = f.m();
    let ee = effective_e(m, e);
    if ee == 0 || !m.is_multiple_of(ee) || case_of(f, ee) != HCase::Full {
        return Err(ConstructError::CaseHypothesisFailed(
            "θ-blocks need p = 2 and e | m with m/e odd".into(),
        ));
    }
    let pe = f.p_pow(ee);
    let q1 = f.q() as u64 - 1;
    let r_max = (pe as usize + 1).min((q1 / (pe - 1)) as usize);
    if r == 0 || r > r_max {
        return Err(ConstructError::PreconditionViolated(format!("need 1 <= r <= {r_max}, got {r}")));
    }
    let hi = (pe as usize + r - 1) / 2;
    if k == 0 || k > hi {
        return Err(ConstructError::KOutOfRange { k, lo: 1, hi });
    }

    let theta = f.exp((q1 / (pe - 1)) as i64);
    let mut rows = vec![vec![Fe::ONE; r + 1]];
    for u in divisible_u(pe, k) {
        let alpha_u = f.exp(((pe - 1) * u % q1) as i64);
        let mut row = vec![Fe::ZERO];
        row.extend((1..=r as u64).map(|l| f.pow(alpha_u, l)));
        rows.push(row);
    }
    let b = FMatrix::from_rows(rows);
    let x = theta_all_nonzero_null_vector(f, &b, seed).ok_or(ConstructError::NoAllNonzeroSolution)?;

    let block = (pe - 1) as usize;
    let mut a = vec![Fe::ZERO];
    let mut v = vec![f.galois_root(f.mul(x[0], f.from_int(pe as i64 - 1)), ee)?];
    for (l, &xl) in x.iter().enumerate().take(r + 1).skip(1) {
        let vl = f.galois_root(xl, ee)?;
        let wl = f.exp(l as i64);
        for nu in 0..block {
            a.push(f.mul(wl, f.pow(theta, nu as u64)));
            v.push(vl);
        }
    }
    certify(new_spec(ctx, a, v, k, false)?, e, None)
}
