//! Locators fixed by an affine Frobenius relation, and the `λ = 1` build on
//! arbitrary locators when `H = F_q^*`.

use std::sync::Arc;

use crate::codes::{u_vector, CertifiedCode};
use crate::gf::{FieldCtx, Fe, HCase};
use crate::orth::affine_lambda_degree_bound;

use super::lambda_search::lambda_search;
use super::{case_of, certify, check_e, effective_e, new_spec, ConstructError};

const SEARCH_BUDGET: u64 = 1 << 16;
const SUBSET_BUDGET: usize = 4096;

/// An `[n, k]` code on locators with `σ^e(a_i) = α a_i + β`.
///
/// Tries `n` such locators first and `n − 1` plus the `∞` coordinate second,
/// each over locator subsets in lexicographic order.
pub fn construct_affine(
    ctx: &Arc<FieldCtx>,
    e: u32,
    alpha: Fe,
    beta: Fe,
    n: usize,
    k: usize,
) -> Result<CertifiedCode, ConstructError> {
    check_e(ctx, e)?;
    let f = &**ctx;
    if alpha.is_zero() {
        return Err(ConstructError::PreconditionViolated("α must be nonzero".into()));
    }
    let set = f.affine_frobenius_set(alpha, beta, e);
    let q = f.q() as usize;
    if n < 2 || n > set.len() + 1 || (n > set.len() && set.len() >= q) {
        return Err(ConstructError::NotEnoughLocators { needed: n, available: set.len() });
    }
    if k == 0 || k > n / 2 {
        return Err(ConstructError::KOutOfRange { k, lo: 1, hi: n / 2 });
    }
    // The top row of the reduced system forces the leading coefficient α^{1−k}.
    let lead = f.pow(f.inv(alpha)?, k as u64 - 1);
    let mut shapes = Vec::new();
    if n <= set.len() {
        shapes.push((n, false));
    }
    if n - 1 <= set.len() && n - 1 < q {
        shapes.push((n - 1, true));
    }
    for (size, extended) in shapes {
        let bound = affine_lambda_degree_bound(size, k, extended).expect("k <= n/2");
        for idx in Combinations::new(set.len(), size).take(SUBSET_BUDGET) {
            let a: Vec<Fe> = idx.iter().map(|&i| set[i]).collect();
            if let Some(found) = lambda_search(f, &a, e, bound, extended, lead, SEARCH_BUDGET) {
                let deg = found.lam.degree();
                return certify(new_spec(ctx, a, found.v, k, extended)?, e, deg);
            }
        }
    }
    Err(ConstructError::WitnessNotInH)
}

/// Lexicographic `size`-subsets of `0..n`.
pub(crate) struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, size: usize) -> Self {
        Combinations { idx: (0..size).collect(), n, done: size > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let size = self.idx.len();
        let mut i = size;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - size + i {
                self.idx[i] += 1;
                for j in i + 1..size {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `GRS_k(a, v)` on the first `n` field elements with `λ = 1`; needs `H = F_q^*`.
pub fn construct_distinct(
    ctx: &Arc<FieldCtx>,
    e: u32,
    n: usize,
    k: usize,
) -> Result<CertifiedCode, ConstructError> {
    check_e(ctx, e)?;
    let f = &**ctx;
    if case_of(f, e) != HCase::Full {
        return Err(ConstructError::CaseHypothesisFailed(
            "λ = 1 on arbitrary locators needs m/s odd and p = 2".into(),
        ));
    }
    if n < 2 || n > f.q() as usize {
        return Err(ConstructError::NotEnoughLocators { needed: n, available: f.q() as usize });
    }
    let ee = effective_e(f.m(), e);
    let pe = f.p_pow(ee) as usize;
    let hi = (n + pe - 1) / (pe + 1);
    if k == 0 || k > hi {
        return Err(ConstructError::KOutOfRange { k, lo: 1, hi });
    }
    let a: Vec<Fe> = f.elements().take(n).collect();
    let v = u_vector(f, &a)?
        .into_iter()
        .map(|u| f.galois_root(u, ee))
        .collect::<Result<Vec<_>, _>>()?;
    certify(new_spec(ctx, a, v, k, false)?, e, Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    #[test]
    fn f8_prime_subfield() {
        let f = ctx(2, 3);
        let c = construct_affine(&f, 1, Fe::ONE, Fe::ZERO, 2, 1).unwrap();
        assert_eq!((c.n(), c.k(), c.spec.extended), (2, 1, false));
        assert!(c.gram_zero);
        let c = construct_affine(&f, 1, Fe::ONE, Fe::ZERO, 3, 1).unwrap();
        assert!(c.spec.extended);
    }

    #[test]
    fn subfield_lengths_f64_e2() {
        let f = ctx(2, 6);
        for n in 2..=5 {
            for k in 1..=n / 2 {
                let c = construct_affine(&f, 2, Fe::ONE, Fe::ZERO, n, k).unwrap();
                assert_eq!((c.n(), c.k()), (n, k));
            }
        }
        assert!(matches!(
            construct_affine(&f, 2, Fe::ONE, Fe::ZERO, 6, 2),
            Err(ConstructError::NotEnoughLocators { .. })
        ));
        assert!(matches!(
            construct_affine(&f, 2, Fe::ONE, Fe::ZERO, 5, 3),
            Err(ConstructError::KOutOfRange { .. })
        ));
    }

    #[test]
    fn odd_quotient_f729() {
        // s = 2 and m/s = 3: H is the squares and the locators lie in F_9.
        let f = ctx(3, 6);
        let c = construct_affine(&f, 2, Fe::ONE, Fe::ZERO, 4, 2).unwrap();
        assert_eq!((c.n(), c.k()), (4, 2));
        let mut failures = Vec::new();
        for n in 2..=10 {
            for k in 1..=n / 2 {
                if construct_affine(&f, 2, Fe::ONE, Fe::ZERO, n, k).is_err() {
                    failures.push((n, k));
                }
            }
        }
        // Eight locators of F_9 give u_i = −(a_i − b) with both quadratic
        // characters, so no constant witness exists at k = 4.
        assert_eq!(failures, vec![(8, 4)]);
    }

    #[test]
    fn nontrivial_affine_relation() {
        // σ(x) = x^2 over F_8; α = w^3, β = 0 picks the solutions of x^2 = w^3 x.
        let f = ctx(2, 3);
        let alpha = f.exp(3);
        let set = f.affine_frobenius_set(alpha, Fe::ZERO, 1);
        assert_eq!(set.len(), 2);
        let c = construct_affine(&f, 1, alpha, Fe::ZERO, 3, 1).unwrap();
        assert!(c.spec.extended);
        let c = construct_affine(&f, 1, alpha, Fe::ZERO, 2, 1).unwrap();
        assert!(!c.spec.extended);
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn distinct_branch() {
        let f = ctx(2, 6);
        let c = construct_distinct(&f, 2, 20, 4).unwrap();
        assert_eq!((c.n(), c.k()), (20, 4));
        assert!(matches!(construct_distinct(&f, 2, 20, 5), Err(ConstructError::KOutOfRange { .. })));
        let f9 = ctx(3, 2);
        assert!(matches!(
            construct_distinct(&f9, 1, 5, 1),
            Err(ConstructError::CaseHypothesisFailed(_))
        ));
    }
}
