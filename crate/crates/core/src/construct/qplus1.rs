//! Extended codes of length `q + 1` on all of `F_q`, plus root-free polynomials.

use std::sync::Arc;

use crate::codes::CertifiedCode;
use crate::gf::{FieldCtx, Fe, HCase};
use crate::poly::Poly;

use super::{case_of, certify, check_e, effective_e, new_spec, s_of, ConstructError};

/// `g2^i · g3^j`: a monic polynomial of degree `2i + 3j` without roots in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoRootPoly {
    pub g2: Poly,
    pub g3: Poly,
    pub i: u64,
    pub j: u64,
}

impl NoRootPoly {
    pub fn degree(&self) -> u64 {
        2 * self.i + 3 * self.j
    }

    pub fn eval(&self, f: &FieldCtx, x: Fe) -> Fe {
        f.mul(f.pow(self.g2.eval(f, x), self.i), f.pow(self.g3.eval(f, x), self.j))
    }

    pub fn to_poly(&self, f: &FieldCtx) -> Poly {
        self.g2.pow(f, self.i).mul(f, &self.g3.pow(f, self.j))
    }
}

/// Least monic polynomial of the given degree (2 or 3) without roots, in
/// packed order of its lower coefficients. Such polynomials are irreducible.
fn least_rootless(f: &FieldCtx, degree: u32) -> Poly {
    let q = f.q() as u64;
    (0..q.pow(degree))
        .map(|idx| {
            let mut rest = idx;
            let mut c: Vec<Fe> = (0..degree)
                .map(|_| {
                    let d = Fe((rest % q) as u32);
                    rest /= q;
                    d
                })
                .collect();
            c.push(Fe::ONE);
            Poly::new(c)
        })
        .find(|g| f.elements().all(|x| !g.eval(f, x).is_zero()))
        .expect("irreducible polynomials of degree 2 and 3 exist over every finite field")
}

/// Monic root-free polynomial of degree `l ≥ 2` with the fewest cubic factors.
pub fn noroot_poly(f: &FieldCtx, l: usize) -> NoRootPoly {
    assert!(l >= 2, "no monic root-free polynomial of degree below 2 over a field");
    let l = l as u64;
    let j = l % 2;
    let i = (l - 3 * j) / 2;
    NoRootPoly { g2: least_rootless(f, 2), g3: least_rootless(f, 3), i, j }
}

/// Largest `k` of the contiguous range and the isolated `k`, if any.
pub fn qplus1_k_max(p: u32, m: u32, e: u32) -> (usize, Option<usize>) {
    let ee = effective_e(m, e);
    let q = (p as i64).pow(m);
    let pe = (p as i64).pow(ee);
    let s = s_of(m, ee);
    let case = crate::gf::classify(p as u64, m, ee);
    let top = match case {
        HCase::Full => q + pe - 2,
        HCase::Squares => q + pe - 4,
        HCase::EvenQuotient => q + pe - 2 * ((p as i64).pow(s) + 1),
    };
    let k_max = (top.max(0) / (pe + 1)) as usize;
    let iso = (case == HCase::EvenQuotient && s == ee).then(|| ((q - 1) / (pe + 1) + 1) as usize);
    (k_max, iso)
}

/// `GRS_k(F_q, v, ∞)` with `v_i^{p^e+1} = λ(a_i)` for the case's λ.
pub fn construct_q_plus_1(
    ctx: &Arc<FieldCtx>,
    e: u32,
    k: usize,
) -> Result<CertifiedCode, ConstructError> {
    check_e(ctx, e)?;
    let f = &**ctx;
    let (p, m) = (f.p(), f.m());
    let ee = effective_e(m, e);
    let q = f.q() as i64;
    let pe = f.p_pow(ee) as i64;
    let (k_max, iso) = qplus1_k_max(p, m, e);
    let a: Vec<Fe> = f.elements().collect();

    if iso == Some(k) {
        let v = vec![Fe::ONE; a.len()];
        return certify(new_spec(ctx, a, v, k, true)?, e, Some(0));
    }
    if k == 0 || k > k_max {
        return Err(ConstructError::KOutOfRange { k, lo: 1, hi: k_max });
    }
    let l = q - (k as i64 - 1) * (pe + 1) - 1;
    let power = match case_of(f, ee) {
        HCase::Full => 1,
        HCase::Squares => 2,
        HCase::EvenQuotient => f.p_pow(s_of(m, ee)) as i64 + 1,
    };
    assert_eq!(l % power, 0, "case divisibility of l");
    let base = noroot_poly(f, (l / power) as usize);
    // −λ(a_i)u_i = λ(a_i) because u_i = −1 on all of F_q.
    let v = a
        .iter()
        .map(|&x| {
            let lam = f.pow(base.eval(f, x), power as u64);
            f.galois_root(lam, ee)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ConstructError::WitnessNotInH)?;
    certify(new_spec(ctx, a, v, k, true)?, e, Some(l as usize))
}
