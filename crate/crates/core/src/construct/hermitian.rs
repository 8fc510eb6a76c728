//! Hermitian self-orthogonal codes over `F_{p^{2s}}` read inside `F_q`.

use std::sync::Arc;

use crate::codes::{CertifiedCode, GrsSpec};
use crate::gf::{FieldCtx, Fe, HCase};
use crate::orth::{gram_report_grs, lambda_degree_bound};

use super::affine::Combinations;
use super::lambda_search::lambda_search;
use super::qplus1::construct_q_plus_1;
use super::{case_of, certify, check_e, effective_e, new_spec, s_of, ConstructError};

const SEARCH_BUDGET: u64 = 1 << 14;
const SUBSET_BUDGET: usize = 1024;

/// An `e_base`-Galois self-orthogonal spec of length `n` over `sub`.
///
/// Extended lengths `|sub| + 1` use the full-field `q + 1` recipe first.
/// Otherwise the λ search runs over locator subsets in lexicographic order,
/// starting from the first `n` elements.
pub fn base_witness_search(
    sub: &Arc<FieldCtx>,
    e_base: u32,
    n: usize,
    k: usize,
    extended: bool,
) -> Option<(GrsSpec, Option<usize>)> {
    let big_q = sub.q() as usize;
    let n_fin = n.checked_sub(extended as usize)?;
    if k == 0 || k > n || n_fin > big_q || e_base >= sub.m() {
        return None;
    }
    if extended && n_fin == big_q {
        if let Ok(c) = construct_q_plus_1(sub, e_base, k) {
            return Some((c.spec, c.lambda_degree));
        }
        if 2 * e_base == sub.m() {
            return norm_trace_base(sub, e_base, k).map(|spec| (spec, None));
        }
    }
    let pe = sub.p_pow(effective_e(sub.m(), e_base));
    let bound = lambda_degree_bound(n_fin, k, pe, extended)?;
    let pool: Vec<Fe> = sub.elements().collect();
    Combinations::new(pool.len(), n_fin).take(SUBSET_BUDGET).find_map(|idx| {
        let a: Vec<Fe> = idx.iter().map(|&i| pool[i]).collect();
        let found = lambda_search(sub, &a, e_base, bound, extended, Fe::ONE, SEARCH_BUDGET)?;
        let spec = GrsSpec::new(sub.clone(), a, found.v, k, extended).ok()?;
        gram_report_grs(&spec, e_base).is_zero.then(|| (spec, found.lam.degree()))
    })
}

/// Extended Hermitian code on all of `F_Q`, `Q = p^{2s}`, with
/// `v_a^{p^s+1} = N(a)^{p^s−k} + Tr(γ a^t) + c` for `1 ≤ t < p^s`.
///
/// The Gram equations pin the coefficient of `x^{(p^s+1)(p^s−k)}` in
/// `v^{p^s+1}` to one and forbid exponents whose base-`p^s` digits are both
/// at least `p^s−k`; the trace and constant terms avoid them. The first
/// `(t, γ, c)` making every value nonzero wins.
fn norm_trace_base(sub: &Arc<FieldCtx>, s: u32, k: usize) -> Option<GrsSpec> {
    let f = &**sub;
    let ps = f.p_pow(s);
    if k == 0 || k as u64 >= ps {
        return None;
    }
    let a: Vec<Fe> = f.elements().collect();
    let lead: Vec<Fe> = a.iter().map(|&x| f.pow(x, (ps + 1) * (ps - k as u64))).collect();
    let small = f.subfield_elements(s).ok()?;
    for t in 1..ps {
        for gamma in f.nonzero_elements() {
            let w: Vec<Fe> = a
                .iter()
                .zip(&lead)
                .map(|(&x, &l)| {
                    let y = f.mul(gamma, f.pow(x, t));
                    f.add(l, f.add(y, f.frobenius_pow(y, s)))
                })
                .collect();
            let mut hit = vec![false; f.q() as usize];
            for &y in &w {
                hit[y.0 as usize] = true;
            }
            let Some(&c) = small.iter().find(|&&c| !hit[f.neg(c).0 as usize]) else { continue };
            let v = w
                .iter()
                .map(|&y| f.galois_root(f.add(y, c), s))
                .collect::<Result<Vec<_>, _>>()
                .ok()?;
            return GrsSpec::new(sub.clone(), a, v, k, true).ok();
        }
    }
    None
}

/// Field embedding `sub → big` as a table indexed by `sub` encodings.
///
/// The generator `x` of `sub` goes to the least root in `big` of the
/// modulus of `sub`.
pub fn embed_subfield(sub: &FieldCtx, big: &FieldCtx) -> Result<Vec<Fe>, ConstructError> {
    if sub.p() != big.p() || !big.m().is_multiple_of(sub.m()) {
        return Err(ConstructError::EmbeddingFailure);
    }
    let modulus: Vec<Fe> = sub.modulus().iter().map(|&c| big.from_int(c as i64)).collect();
    let eval = |x: Fe| modulus.iter().rev().fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, x), c));
    let beta = big.elements().find(|&x| eval(x).is_zero()).ok_or(ConstructError::EmbeddingFailure)?;
    let powers: Vec<Fe> = (0..sub.m()).map(|i| big.pow(beta, i as u64)).collect();
    Ok(sub
        .elements()
        .map(|x| {
            sub.digits(x).iter().zip(&powers).fold(Fe::ZERO, |acc, (&d, &b)| {
                big.add(acc, big.mul(big.from_int(d as i64), b))
            })
        })
        .collect())
}

/// `[n, k]` code over `F_q` from a Hermitian self-orthogonal code over
/// `F_{p^{2s}}`; needs `m/s` even.
///
/// Without a supplied base, lengths up to `p^{2s}` try a GRS base first and an
/// extended one second.
pub fn construct_hermitian_lift(
    ctx: &Arc<FieldCtx>,
    e: u32,
    n: usize,
    k: usize,
    base: Option<GrsSpec>,
) -> Result<CertifiedCode, ConstructError> {
    check_e(ctx, e)?;
    let f = &**ctx;
    let ee = effective_e(f.m(), e);
    if case_of(f, ee) != HCase::EvenQuotient {
        return Err(ConstructError::CaseHypothesisFailed("the Hermitian lift needs m/s even".into()));
    }
    let s = s_of(f.m(), ee);
    let sub = Arc::new(FieldCtx::new(f.p(), 2 * s)?);
    let (base, lambda_degree) = match base {
        Some(spec) => {
            let fits = *spec.ctx == *sub
                && spec.length() == n
                && spec.k == k
                && gram_report_grs(&spec, s).is_zero;
            if !fits {
                return Err(ConstructError::NoBaseCode { n, k });
            }
            (spec, None)
        }
        None => [false, true]
            .into_iter()
            .find_map(|extended| base_witness_search(&sub, s, n, k, extended))
            .ok_or(ConstructError::NoBaseCode { n, k })?,
    };
    let table = embed_subfield(&sub, f)?;
    let lift = |xs: &[Fe]| xs.iter().map(|x| table[x.0 as usize]).collect::<Vec<_>>();
    let spec = new_spec(ctx, lift(&base.a), lift(&base.v), k, base.extended)?;
    certify(spec, e, lambda_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::qplus1_k_max;

    fn ctx(p: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    /// Largest `k` with a Hermitian base of length `n` built on all of `F_{p^{2s}}`.
    fn hermitian_full_k(p: u32, s: u32, extended: bool) -> usize {
        if extended {
            qplus1_k_max(p, 2 * s, s).1.expect("s = e over F_{p^{2s}}")
        } else {
            (p as usize).pow(s) - 1
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for (p, s, m) in [(2, 2, 4), (2, 2, 6), (3, 2, 4), (2, 1, 4)] {
            let sub = ctx(p, s);
            let big = ctx(p, m);
            let t = embed_subfield(&sub, &big).unwrap();
            for x in sub.elements() {
                for y in sub.elements() {
                    assert_eq!(t[sub.add(x, y).0 as usize], big.add(t[x.0 as usize], t[y.0 as usize]));
                    assert_eq!(t[sub.mul(x, y).0 as usize], big.mul(t[x.0 as usize], t[y.0 as usize]));
                }
            }
            let mut img = t.clone();
            img.sort();
            assert_eq!(img, big.subfield_elements(s).unwrap());
        }
        assert_eq!(embed_subfield(&ctx(2, 2), &ctx(2, 3)), Err(ConstructError::EmbeddingFailure));
    }

    #[test]
    fn f16_from_f4() {
        // m = 4, e = 1: s = 1, base field F_4.
        let f = ctx(2, 4);
        let c = construct_hermitian_lift(&f, 1, 4, 1, None).unwrap();
        assert_eq!((c.n(), c.k()), (4, 1));
        let c = construct_hermitian_lift(&f, 1, 5, 2, None).unwrap();
        assert_eq!((c.n(), c.k(), c.spec.extended), (5, 2, true));
        assert!(matches!(
            construct_hermitian_lift(&f, 1, 4, 2, None),
            Err(ConstructError::NoBaseCode { .. })
        ));
    }

    #[test]
    fn full_field_bases() {
        for (p, s, m) in [(2, 1, 4), (2, 2, 8), (3, 1, 4), (2, 1, 8)] {
            let f = ctx(p, m);
            let e = s;
            let big_q = (p as usize).pow(2 * s);
            for extended in [false, true] {
                let k = hermitian_full_k(p, s, extended);
                let c = construct_hermitian_lift(&f, e, big_q + extended as usize, k, None).unwrap();
                assert_eq!(c.k(), k);
            }
        }
    }

    #[test]
    fn supplied_base_checked() {
        let f = ctx(2, 4);
        let sub = ctx(2, 2);
        let (spec, _) = base_witness_search(&sub, 1, 4, 1, false).unwrap();
        let c = construct_hermitian_lift(&f, 1, 4, 1, Some(spec.clone())).unwrap();
        assert!(c.gram_zero);
        assert!(matches!(
            construct_hermitian_lift(&f, 1, 4, 1, Some(spec.with_k(2).unwrap())),
            Err(ConstructError::NoBaseCode { .. })
        ));
        assert!(matches!(
            construct_hermitian_lift(&ctx(2, 3), 1, 4, 1, None),
            Err(ConstructError::CaseHypothesisFailed(_))
        ));
    }

    #[test]
    fn norm_trace_below_the_isolated_k() {
        // Oracle: brute force over w ∈ {1, 2}^9 finds [10, 2]_9 Hermitian bases.
        for (p, s, k) in [(3, 1, 1), (3, 1, 2), (5, 1, 4), (3, 2, 8), (2, 3, 7)] {
            let sub = ctx(p, 2 * s);
            let spec = norm_trace_base(&sub, s, k).unwrap();
            assert_eq!((spec.length(), spec.k), (sub.q() as usize + 1, k));
            assert!(gram_report_grs(&spec, s).is_zero, "p={p} s={s} k={k}");
        }
        // No [17, 3]_16 or [5, 1]_4 extended Hermitian base exists on these locators.
        assert!(norm_trace_base(&ctx(2, 4), 2, 3).is_none());
        assert!(norm_trace_base(&ctx(2, 2), 1, 1).is_none());
    }
}
