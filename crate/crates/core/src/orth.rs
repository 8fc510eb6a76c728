//! `e`-Galois Gram matrices, hull dimensions and the λ-polynomial criteria.
//!
//! For a code with generator rows `g_1..g_k`, the `e`-Galois Gram matrix has
//! entries `⟨g_i, g_j⟩_e = Σ_l g_{i,l} g_{j,l}^{p^e}`. A codeword `xG` lies in
//! `C^{⊥_e}` iff `Gram · σ^e(x)^T = 0`, so `dim Hull_e(C) = k − rank(Gram)`.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{u_vector, GrsSpec, LinearCode};
use crate::gf::{FieldCtx, Fe};
use crate::linalg::{galois_inner, FMatrix};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthError {
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub e: u32,
    pub gram: FMatrix,
    pub is_zero: bool,
    pub hull_dim: usize,
}

impl GramReport {
    fn from_gram(f: &FieldCtx, e: u32, gram: FMatrix) -> Self {
        let k = gram.rows();
        let is_zero = (0..k).all(|i| gram.row(i).iter().all(|x| x.is_zero()));
        let rank = if is_zero { 0 } else { gram.rank(f) };
        GramReport { e, gram, is_zero, hull_dim: k - rank }
    }
}

/// Gram matrix of the rows of `g` under `⟨·,·⟩_e`.
pub fn gram_direct(f: &FieldCtx, g: &FMatrix, e: u32) -> FMatrix {
    let k = g.rows();
    let rows: Vec<Vec<Fe>> = (0..k)
        .into_par_iter()
        .map(|i| (0..k).map(|j| galois_inner(f, g.row(i), g.row(j), e)).collect())
        .collect();
    FMatrix::from_rows(rows)
}

pub fn is_galois_so_direct(code: &LinearCode, e: u32) -> GramReport {
    GramReport::from_gram(&code.ctx, e, gram_direct(&code.ctx, &code.g, e))
}

/// Gram matrix of a GRS or EGRS generator from the power sums
/// `S(T) = Σ_l a_l^T v_l^{p^e+1}`, using `(i, j) ↦ S(i + p^e j)`.
pub fn gram_grs(spec: &GrsSpec, e: u32) -> FMatrix {
    let f = &*spec.ctx;
    let k = spec.k;
    let pe = f.p_pow(e % f.m());
    let q1 = f.q() as u64 - 1;
    let x: Vec<Fe> = spec.v.iter().map(|&v| f.pow(v, pe + 1)).collect();
    // S(T) depends on T only through this key, with 0^0 = 1.
    let key = |t: u64| if t == 0 { 0 } else { (t - 1) % q1 + 1 };
    let mut keys: Vec<u64> = (0..k as u64)
        .flat_map(|i| (0..k as u64).map(move |j| key(i + pe * j)))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let sums: HashMap<u64, Fe> = keys
        .par_iter()
        .map(|&t| {
            let s = spec
                .a
                .iter()
                .zip(&x)
                .fold(Fe::ZERO, |acc, (&a, &xl)| f.add(acc, f.mul(f.pow(a, t), xl)));
            (t, s)
        })
        .collect();
    let mut gram = FMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, sums[&key(i as u64 + pe * j as u64)]);
        }
    }
    if spec.extended {
        let c = gram.get(k - 1, k - 1);
        gram.set(k - 1, k - 1, f.add(c, Fe::ONE));
    }
    gram
}

pub fn gram_report_grs(spec: &GrsSpec, e: u32) -> GramReport {
    GramReport::from_gram(&spec.ctx, e, gram_grs(spec, e))
}

/// Gram report through the structured route when the code has a GRS origin.
pub fn gram_report(code: &LinearCode, e: u32) -> GramReport {
    match &code.origin {
        Some(spec) => gram_report_grs(spec, e),
        None => is_galois_so_direct(code, e),
    }
}

pub fn hull_dim(code: &LinearCode, e: u32) -> usize {
    gram_report(code, e).hull_dim
}

/// `e`- and `(m−e)`-self-orthogonality agree.
pub fn duality_symmetry_check(code: &LinearCode, e: u32) -> bool {
    let m = code.ctx.m();
    let e = e % m;
    is_galois_so_direct(code, e).is_zero == is_galois_so_direct(code, (m - e) % m).is_zero
}

/// `dim Hull_e(C)` by enumerating all codewords and testing membership in
/// `C^{⊥_e}` one by one. Panics when `q^k` exceeds `limit`.
pub fn hull_dim_enumerate(code: &LinearCode, e: u32, limit: u64) -> usize {
    let f = &*code.ctx;
    let q = f.q() as u64;
    let k = code.k();
    let total = (q as u128).pow(k as u32);
    assert!(total <= limit as u128, "q^k exceeds the enumeration limit");
    let rows: Vec<&[Fe]> = (0..k).map(|i| code.g.row(i)).collect();
    let count = (0..total as u64)
        .into_par_iter()
        .filter(|&idx| {
            let mut c = vec![Fe::ZERO; code.n()];
            let mut rest = idx;
            for row in &rows {
                let s = Fe((rest % q) as u32);
                rest /= q;
                if s.is_zero() {
                    continue;
                }
                for (cj, &g) in c.iter_mut().zip(*row) {
                    *cj = f.add(*cj, f.mul(s, g));
                }
            }
            rows.iter().all(|row| galois_inner(f, row, &c, e).is_zero())
        })
        .count() as u64;
    let mut dim = 0;
    let mut size = 1u64;
    while size < count {
        size *= q;
        dim += 1;
    }
    assert_eq!(size, count, "the hull is a subspace");
    dim
}

/// `(α, β)` with `σ^e(a_i) = α a_i + β` for every locator, if one exists.
pub fn affine_relation(f: &FieldCtx, a: &[Fe], e: u32) -> Option<(Fe, Fe)> {
    let image = |x: Fe| f.frobenius_pow(x, e);
    let (alpha, beta) = match a {
        [] => return Some((Fe::ONE, Fe::ZERO)),
        [x] => (Fe::ONE, f.sub(image(*x), *x)),
        [x, y, ..] => {
            let alpha = f.div(f.sub(image(*x), image(*y)), f.sub(*x, *y)).ok()?;
            (alpha, f.sub(image(*x), f.mul(alpha, *x)))
        }
    };
    if alpha.is_zero() {
        return None;
    }
    a.iter()
        .all(|&x| image(x) == f.add(f.mul(alpha, x), beta))
        .then_some((alpha, beta))
}

/// Linear systems whose solutions `x ∈ H^n` are exactly the vectors
/// `v^{p^e+1}` of self-orthogonal multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoSystem {
    /// Rows `a^{p^e i + j}` for `0 ≤ i, j ≤ k−1`, `i` major.
    pub full: FMatrix,
    pub full_rhs: Vec<Fe>,
    /// Rows `a^0 … a^{(k−1)(p^e+1)}`, present when `p^e ≤ k`.
    pub collapsed: Option<(FMatrix, Vec<Fe>)>,
    /// Rows `a^0 … a^{2k−2}`, present when `σ^e(a) = αa + β1`.
    pub affine: Option<(FMatrix, Vec<Fe>)>,
}

fn power_rows(f: &FieldCtx, a: &[Fe], exps: impl Iterator<Item = u64>) -> FMatrix {
    FMatrix::from_rows(exps.map(|t| a.iter().map(|&x| f.pow(x, t)).collect()).collect())
}

fn last_rhs(f: &FieldCtx, len: usize, extended: bool, last: Fe) -> Vec<Fe> {
    let mut rhs = vec![Fe::ZERO; len];
    if extended {
        rhs[len - 1] = f.neg(last);
    }
    rhs
}

pub fn so_system(spec: &GrsSpec, e: u32) -> SoSystem {
    let f = &*spec.ctx;
    let a = &spec.a;
    let k = spec.k as u64;
    let pe = f.p_pow(e % f.m());
    let full = power_rows(f, a, (0..k).flat_map(|i| (0..k).map(move |j| pe * i + j)));
    let full_rhs = last_rhs(f, (k * k) as usize, spec.extended, Fe::ONE);
    let collapsed = (pe <= k).then(|| {
        let top = (k - 1) * (pe + 1);
        (power_rows(f, a, 0..=top), last_rhs(f, top as usize + 1, spec.extended, Fe::ONE))
    });
    let affine = affine_relation(f, a, e).map(|(alpha, _)| {
        let lead = f.pow(f.inv(alpha).unwrap(), k - 1);
        (power_rows(f, a, 0..2 * k - 1), last_rhs(f, 2 * k as usize - 1, spec.extended, lead))
    });
    SoSystem { full, full_rhs, collapsed, affine }
}

/// Some `x ∈ H^n` with `M x = rhs`, if one exists.
/// Exponential in `n`; panics when `n > 8`.
pub fn h_scan(f: &FieldCtx, m: &FMatrix, rhs: &[Fe], e: u32) -> Option<Vec<Fe>> {
    let n = m.cols();
    assert!(n <= 8, "exhaustive H scan is limited to n <= 8");
    let h = f.h_subgroup(e);
    let elems: Vec<Fe> = (0..h.order).map(|i| f.pow(h.generator, i)).collect();
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<Fe> = idx.iter().map(|&i| elems[i]).collect();
        let ok = (0..m.rows()).all(|r| crate::linalg::dot(f, m.row(r), &x) == rhs[r]);
        if ok {
            return Some(x);
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaKind {
    /// `λ(a_i) u_i = v_i^{p^e+1}`, `λ ≠ 0`, `deg λ ≤ bound`.
    NonzeroForGrs,
    /// `−λ(a_i) u_i = v_i^{p^e+1}`, `deg λ = bound`.
    MonicForEgrs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaWitness {
    pub lam: Poly,
    pub kind: LambdaKind,
    pub degree_bound: usize,
}

/// `n − (k−1)(p^e+1) − 2` for GRS and one more for EGRS, if nonnegative.
pub fn lambda_degree_bound(n: usize, k: usize, pe: u64, extended: bool) -> Option<usize> {
    let used = (k as i64 - 1) * (pe as i64 + 1) + 2 - extended as i64;
    usize::try_from(n as i64 - used).ok()
}

/// The same bound when `σ^e(a) = αa + β1`: `n − 2k`, or `n − 2k + 1` for EGRS.
pub fn affine_lambda_degree_bound(n: usize, k: usize, extended: bool) -> Option<usize> {
    usize::try_from(n as i64 - 2 * k as i64 + extended as i64).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailReason {
    NotInH,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("multiplier {index} fails: {reason:?}")]
    Fail { index: usize, reason: FailReason },
    #[error("λ violates its degree bound")]
    DegreeBound,
}

/// Multipliers `v_i = galois_root(±λ(a_i) u_i)` realized by a witness.
pub fn lambda_to_multipliers(
    f: &FieldCtx,
    a: &[Fe],
    lam: &LambdaWitness,
    e: u32,
) -> Result<Vec<Fe>, LambdaError> {
    let deg_ok = match (lam.kind, lam.lam.degree()) {
        (_, None) => false,
        (LambdaKind::NonzeroForGrs, Some(d)) => d <= lam.degree_bound,
        (LambdaKind::MonicForEgrs, Some(d)) => d == lam.degree_bound,
    };
    if !deg_ok {
        return Err(LambdaError::DegreeBound);
    }
    let u = u_vector(f, a).expect("distinct locators");
    a.iter()
        .zip(&u)
        .enumerate()
        .map(|(index, (&ai, &ui))| {
            let mut w = f.mul(lam.lam.eval(f, ai), ui);
            if lam.kind == LambdaKind::MonicForEgrs {
                w = f.neg(w);
            }
            if w.is_zero() {
                return Err(LambdaError::Fail { index, reason: FailReason::Zero });
            }
            f.galois_root(w, e)
                .map_err(|_| LambdaError::Fail { index, reason: FailReason::NotInH })
        })
        .collect()
}

/// The unique polynomial of degree below `n` with `±λ(a_i) u_i = v_i^{p^e+1}`.
pub fn interpolate_lambda(spec: &GrsSpec, e: u32) -> Poly {
    let f = &*spec.ctx;
    let pe = f.p_pow(e % f.m());
    let u = u_vector(f, &spec.a).expect("distinct locators");
    let ys: Vec<Fe> = spec
        .v
        .iter()
        .zip(&u)
        .map(|(&v, &ui)| {
            let y = f.div(f.pow(v, pe + 1), ui).unwrap();
            if spec.extended {
                f.neg(y)
            } else {
                y
            }
        })
        .collect();
    Poly::interpolate(f, &spec.a, &ys)
}

/// Recovers the λ witness of a self-orthogonal spec; `None` when the spec is
/// not `e`-Galois self-orthogonal.
pub fn multipliers_to_lambda(spec: &GrsSpec, e: u32) -> Result<Option<LambdaWitness>, OrthError> {
    let f = &*spec.ctx;
    let m = f.m();
    if 2 * e > m {
        return Err(OrthError::PreconditionViolated(format!("need 2e <= m, got e = {e}, m = {m}")));
    }
    let pe = f.p_pow(e);
    let n = spec.n();
    let upper = if spec.extended {
        (n as u64 + pe) / (pe + 1)
    } else {
        (n as u64 + pe - 1) / (pe + 1)
    };
    let k = spec.k as u64;
    if k < pe || k > upper {
        return Err(OrthError::PreconditionViolated(format!(
            "need {pe} <= k <= {upper}, got k = {k}"
        )));
    }
    let bound = lambda_degree_bound(n, spec.k, pe, spec.extended).expect("bracket implies bound");
    let lam = interpolate_lambda(spec, e);
    let ok = match (spec.extended, lam.degree()) {
        (false, Some(d)) => d <= bound,
        (true, Some(d)) => d == bound && lam.is_monic(),
        (_, None) => false,
    };
    let kind = if spec.extended { LambdaKind::MonicForEgrs } else { LambdaKind::NonzeroForGrs };
    Ok(ok.then_some(LambdaWitness { lam, kind, degree_bound: bound }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeError;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ctx(p: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    fn code(f: &Arc<FieldCtx>, rows: Vec<Vec<Fe>>) -> LinearCode {
        LinearCode::new(f.clone(), FMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn direct_gram_examples() {
        let f = ctx(2, 2);
        let r = is_galois_so_direct(&code(&f, vec![vec![Fe::ONE; 2]]), 1);
        assert!(r.is_zero);
        assert_eq!(r.hull_dim, 1);
        let r = is_galois_so_direct(&code(&f, vec![vec![Fe::ONE; 3]]), 1);
        assert_eq!(r.gram.row_vecs(), vec![vec![Fe::ONE]]);
        assert_eq!(r.hull_dim, 0);
        assert!(duality_symmetry_check(&code(&f, vec![vec![Fe::ONE; 3]]), 0));
    }

    #[test]
    fn structured_gram_matches_direct() {
        for (p, m) in [(2, 3), (3, 2), (2, 4), (5, 2)] {
            let f = ctx(p, m);
            let q = f.q() as usize;
            for e in 0..m {
                for n in [3, q / 2, q] {
                    for ext in [false, true] {
                        let a: Vec<Fe> = f.elements().take(n).collect();
                        let v: Vec<Fe> = (0..n).map(|i| f.exp(3 * i as i64 + 1)).collect();
                        for k in 1..=n.min(5) {
                            let spec = GrsSpec::new(f.clone(), a.clone(), v.clone(), k, ext).unwrap();
                            assert_eq!(
                                gram_grs(&spec, e),
                                gram_direct(&f, &spec.generator(), e),
                                "p={p} m={m} e={e} n={n} k={k} ext={ext}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn so_system_shapes() {
        let f = ctx(2, 3);
        let a: Vec<Fe> = f.elements().take(5).collect();
        let spec = GrsSpec::new(f.clone(), a.clone(), vec![Fe::ONE; 5], 1, false).unwrap();
        let sys = so_system(&spec, 1);
        assert_eq!(sys.full.row_vecs(), vec![vec![Fe::ONE; 5]]);
        assert_eq!(sys.full_rhs, vec![Fe::ZERO]);
        let ext = GrsSpec { extended: true, ..spec.clone() };
        assert_eq!(so_system(&ext, 1).full_rhs, vec![Fe::ONE]);

        let spec2 = spec.with_k(2).unwrap();
        let sys = so_system(&spec2, 1);
        assert_eq!(sys.full.rows(), 4);
        let (b, _) = sys.collapsed.unwrap();
        let mut full_rows = sys.full.row_vecs();
        full_rows.sort();
        let mut b_rows = b.row_vecs();
        b_rows.sort();
        assert_eq!(full_rows, b_rows);
    }

    #[test]
    fn h_scan_small_example() {
        let f = ctx(2, 2);
        let spec = GrsSpec::new(f.clone(), vec![Fe::ZERO, Fe::ONE], vec![Fe::ONE; 2], 1, false)
            .unwrap();
        let sys = so_system(&spec, 1);
        let x = h_scan(&f, &sys.full, &sys.full_rhs, 1).unwrap();
        assert_eq!(x, vec![Fe::ONE, Fe::ONE]);
        assert!(gram_report_grs(&spec, 1).is_zero);
    }

    #[test]
    fn lambda_examples() {
        let f8 = ctx(2, 3);
        let a: Vec<Fe> = f8.elements().collect();
        let one = LambdaWitness {
            lam: Poly::one(),
            kind: LambdaKind::NonzeroForGrs,
            degree_bound: lambda_degree_bound(8, 3, 2, false).unwrap(),
        };
        let v = lambda_to_multipliers(&f8, &a, &one, 1).unwrap();
        assert_eq!(v, vec![Fe::ONE; 8]);
        let spec = GrsSpec::new(f8.clone(), a.clone(), v, 3, false).unwrap();
        assert!(gram_report_grs(&spec, 1).is_zero);
        let back = multipliers_to_lambda(&spec, 1).unwrap().unwrap();
        assert_eq!(back.lam, Poly::one());

        let f4 = ctx(2, 2);
        let w = f4.w();
        // u = (w^2, w, 1) and H = {1}: the first coordinate already fails.
        let wit = LambdaWitness { lam: Poly::one(), kind: LambdaKind::NonzeroForGrs, degree_bound: 1 };
        assert_eq!(
            lambda_to_multipliers(&f4, &[Fe::ZERO, Fe::ONE, w], &wit, 1),
            Err(LambdaError::Fail { index: 0, reason: FailReason::NotInH })
        );
    }

    #[test]
    fn egrs_lambda_without_roots() {
        // x^4 + x + 1 has no roots in F_8 (it is irreducible over F_2 of degree 4).
        let f = ctx(2, 3);
        let a: Vec<Fe> = f.elements().collect();
        let lam = Poly::new(vec![Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE]);
        assert!(a.iter().all(|&x| !lam.eval(&f, x).is_zero()));
        let bound = lambda_degree_bound(8, 2, 2, true).unwrap();
        assert_eq!(bound, 4);
        let wit = LambdaWitness { lam: lam.clone(), kind: LambdaKind::MonicForEgrs, degree_bound: bound };
        let v = lambda_to_multipliers(&f, &a, &wit, 1).unwrap();
        let spec = GrsSpec::new(f.clone(), a, v, 2, true).unwrap();
        assert!(is_galois_so_direct(&spec.to_code(), 1).is_zero);
        assert_eq!(multipliers_to_lambda(&spec, 1).unwrap().unwrap().lam, lam);
    }

    #[test]
    fn lambda_preconditions() {
        let f = ctx(2, 3);
        let a: Vec<Fe> = f.elements().collect();
        let spec = GrsSpec::new(f.clone(), a, vec![Fe::ONE; 8], 1, false).unwrap();
        assert!(multipliers_to_lambda(&spec, 1).is_err());
        assert!(multipliers_to_lambda(&spec.with_k(3).unwrap(), 2).is_err());
        let non_so = GrsSpec { v: (0..8).map(|i| f.exp(i)).collect(), ..spec.with_k(2).unwrap() };
        assert!(!gram_report_grs(&non_so, 1).is_zero);
        assert_eq!(multipliers_to_lambda(&non_so, 1).unwrap(), None);
    }

    #[test]
    fn enumerated_hull_matches_rank() {
        let f = ctx(3, 2);
        let a: Vec<Fe> = f.elements().collect();
        for k in 1..=3 {
            for shift in 0..4 {
                let v: Vec<Fe> = (0..9).map(|i| f.exp((i * shift) as i64)).collect();
                let c = GrsSpec::new(f.clone(), a.clone(), v, k, false).unwrap().to_code();
                for e in 0..2 {
                    assert_eq!(hull_dim(&c, e), hull_dim_enumerate(&c, e, 1 << 16));
                }
            }
        }
    }

    #[test]
    fn u_vector_rejects_duplicates() {
        let f = ctx(2, 2);
        assert_eq!(u_vector(&f, &[Fe::ONE, Fe::ONE]), Err(CodeError::DuplicateLocator(1)));
    }

    fn all_h_vectors(f: &FieldCtx, e: u32, n: usize) -> Vec<Vec<Fe>> {
        let h = f.h_subgroup(e);
        let elems: Vec<Fe> = (0..h.order).map(|i| f.pow(h.generator, i)).collect();
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| elems.iter().map(move |&x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    fn solves(f: &FieldCtx, m: &FMatrix, rhs: &[Fe], x: &[Fe]) -> bool {
        (0..m.rows()).all(|r| crate::linalg::dot(f, m.row(r), x) == rhs[r])
    }

    #[test]
    fn system_forms_agree_on_h_vectors() {
        for (p, m) in [(2, 2), (2, 3), (3, 2)] {
            let f = ctx(p, m);
            let q = f.q() as usize;
            for e in 0..m {
                for n in 2..=q.min(6) {
                    let a: Vec<Fe> = f.elements().take(n).collect();
                    for k in 1..=n.min(3) {
                        for ext in [false, true] {
                            let spec =
                                GrsSpec::new(f.clone(), a.clone(), vec![Fe::ONE; n], k, ext).unwrap();
                            let sys = so_system(&spec, e);
                            for x in all_h_vectors(&f, e, n) {
                                let full = solves(&f, &sys.full, &sys.full_rhs, &x);
                                if let Some((b, rhs)) = &sys.collapsed {
                                    assert_eq!(full, solves(&f, b, rhs, &x));
                                }
                                if let Some((c, rhs)) = &sys.affine {
                                    assert_eq!(full, solves(&f, c, rhs, &x));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h_scan_matches_gram_on_small_fields() {
        // A solution over H^n exists iff some multiplier vector is self-orthogonal.
        for (p, m) in [(2, 2), (2, 3), (3, 2)] {
            let f = ctx(p, m);
            let q = f.q() as usize;
            for e in 0..m {
                for n in 2..=q.min(5) {
                    let a: Vec<Fe> = f.elements().take(n).collect();
                    for k in 1..=2.min(n) {
                        for ext in [false, true] {
                            let spec =
                                GrsSpec::new(f.clone(), a.clone(), vec![Fe::ONE; n], k, ext).unwrap();
                            let sys = so_system(&spec, e);
                            let found = h_scan(&f, &sys.full, &sys.full_rhs, e);
                            let brute = all_h_vectors(&f, e, n).into_iter().find_map(|x| {
                                let v: Vec<Fe> =
                                    x.iter().map(|&xi| f.galois_root(xi, e).unwrap()).collect();
                                let s = GrsSpec { v, ..spec.clone() };
                                gram_report_grs(&s, e).is_zero.then_some(x)
                            });
                            assert_eq!(found.is_some(), brute.is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_criterion_equivalence_exhaustive() {
        // Every multiplier vector over small fields: Gram zero iff a witness exists.
        for (p, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = ctx(p, m);
            let q = f.q() as usize;
            for e in 0..=m / 2 {
                let pe = f.p_pow(e) as usize;
                let n_max = if q > 9 { 4 } else { 5 };
                for n in 2..=q.min(n_max) {
                    let a: Vec<Fe> = f.elements().collect::<Vec<_>>().into_iter().rev().take(n).collect();
                    for ext in [false, true] {
                        let upper = if ext { (n + pe) / (pe + 1) } else { (n + pe - 1) / (pe + 1) };
                        for k in pe.max(1)..=upper {
                            let mut idx = vec![0u32; n];
                            loop {
                                let v: Vec<Fe> = idx.iter().map(|&i| f.exp(i as i64)).collect();
                                let spec = GrsSpec::new(f.clone(), a.clone(), v, k, ext).unwrap();
                                let so = gram_report_grs(&spec, e).is_zero;
                                let wit = multipliers_to_lambda(&spec, e).unwrap();
                                assert_eq!(so, wit.is_some());
                                let mut i = 0;
                                while i < n {
                                    idx[i] += 1;
                                    if idx[i] < q as u32 - 1 {
                                        break;
                                    }
                                    idx[i] = 0;
                                    i += 1;
                                }
                                if i == n {
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_criterion_small() {
        // Φ_v(C) is e-SO iff v^{p^e+1} ⊥_E every c_i ⋆ σ^e(c_j).
        let f = ctx(3, 2);
        let base = FMatrix::from_rows(vec![
            vec![Fe::ONE, Fe::ONE, Fe::ONE, Fe::ONE],
            vec![Fe::ZERO, Fe::ONE, f.exp(1), f.exp(2)],
        ]);
        for e in 0..2 {
            let pe = f.p_pow(e);
            for s in 0..64u32 {
                let v: Vec<Fe> = (0..4).map(|i| f.exp(((s >> (i + i)) & 3) as i64 * 2 + i as i64)).collect();
                let scaled: Vec<Vec<Fe>> = base
                    .row_vecs()
                    .iter()
                    .map(|r| r.iter().zip(&v).map(|(&x, &y)| f.mul(x, y)).collect())
                    .collect();
                let so = is_galois_so_direct(&code(&f, scaled), e).is_zero;
                let x: Vec<Fe> = v.iter().map(|&y| f.pow(y, pe + 1)).collect();
                let schur_ok = (0..2).all(|i| {
                    (0..2).all(|j| {
                        let prod: Vec<Fe> = base
                            .row(i)
                            .iter()
                            .zip(base.row(j))
                            .map(|(&c, &d)| f.mul(c, f.frobenius_pow(d, e)))
                            .collect();
                        crate::linalg::dot(&f, &prod, &x).is_zero()
                    })
                });
                assert_eq!(so, schur_ok);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn symmetry_and_lambda_on_f16_f64(m in prop_oneof![Just(4u32), Just(6u32)], seed in any::<u64>(), k in 2usize..5, n in 6usize..16) {
            use rand::{Rng, SeedableRng};
            let f = ctx(2, m);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let q = f.q();
            let mut a: Vec<Fe> = f.elements().collect();
            for i in (1..a.len()).rev() {
                a.swap(i, rng.gen_range(0..=i));
            }
            a.truncate(n);
            let v: Vec<Fe> = (0..n).map(|_| Fe(rng.gen_range(1..q))).collect();
            let spec = GrsSpec::new(f.clone(), a.clone(), v, k, false).unwrap();
            for e in 0..m {
                prop_assert!(duality_symmetry_check(&spec.to_code(), e));
            }
            // A witness-built spec must be self-orthogonal, and random ones agree with the Gram.
            let e = 1;
            let pe = 2usize;
            if k >= pe && k <= (n + pe - 1) / (pe + 1) {
                let so = gram_report_grs(&spec, e).is_zero;
                prop_assert_eq!(so, multipliers_to_lambda(&spec, e).unwrap().is_some());
                let bound = lambda_degree_bound(n, k, pe as u64, false).unwrap();
                let coeffs: Vec<Fe> = (0..=bound).map(|_| Fe(rng.gen_range(0..q))).collect();
                let lam = Poly::new(coeffs);
                if !lam.is_zero() {
                    let wit = LambdaWitness { lam, kind: LambdaKind::NonzeroForGrs, degree_bound: bound };
                    if let Ok(v) = lambda_to_multipliers(&f, &a, &wit, e) {
                        let s = GrsSpec::new(f.clone(), a.clone(), v, k, false).unwrap();
                        prop_assert!(gram_report_grs(&s, e).is_zero);
                        prop_assert_eq!(multipliers_to_lambda(&s, e).unwrap().unwrap().lam, wit.lam);
                    }
                }
            }
        }
    }
}
