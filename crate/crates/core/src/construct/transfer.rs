//! Moving a λ witness between two `e` with the same subgroup `H`.

use crate::codes::CertifiedCode;
use crate::gf::gcd;
use crate::orth::{interpolate_lambda, lambda_to_multipliers, LambdaKind, LambdaWitness};
use crate::poly::Poly;

use super::subcode::subcode;
use super::{certify, check_e, effective_e, new_spec, ConstructError};

/// Re-derives the multipliers of `base` for `e` and sets the dimension to `k`.
///
/// The witness is the interpolant of `±v_i^{p^{e'}+1}/u_i`, which is unique,
/// so the only freedom is choosing `e'` or `m − e'`; lower degrees go first.
/// A target with the same effective `e` reduces to a subcode.
/// GRS targets accept `k ≤ ⌊(n + p^e − 1 − deg λ)/(p^e + 1)⌋`; extended
/// targets need `deg λ = n − (k−1)(p^e+1) − 1` exactly with λ monic.
pub fn transfer_eprime(
    base: &CertifiedCode,
    e: u32,
    k: usize,
) -> Result<CertifiedCode, ConstructError> {
    let spec = &base.spec;
    let f = &*spec.ctx;
    check_e(f, e)?;
    let m = f.m();
    let q1 = f.q() as u64 - 1;
    let ee = effective_e(m, e);
    let ee_base = effective_e(m, base.e);
    let index = |x: u32| gcd(f.p_pow(x) + 1, q1);
    if index(ee) != index(ee_base) {
        return Err(ConstructError::GcdMismatch { e, e_prime: base.e });
    }
    if ee == ee_base && k <= base.k() {
        return subcode(base, k);
    }
    let candidates: Vec<Poly> = {
        let mut c: Vec<Poly> = [base.e % m, (m - base.e % m) % m]
            .into_iter()
            .map(|x| interpolate_lambda(spec, x))
            .filter(|lam| !lam.is_zero() && (!spec.extended || lam.is_monic()))
            .collect();
        c.sort_by_key(|lam| lam.degree());
        c
    };
    let mut err = ConstructError::NoLambdaWitness;
    for lam in candidates {
        match with_witness(base, lam, ee, e, k) {
            Ok(code) => return Ok(code),
            Err(ConstructError::NoLambdaWitness) => {}
            Err(other) => err = other,
        }
    }
    Err(err)
}

fn with_witness(
    base: &CertifiedCode,
    lam: Poly,
    ee: u32,
    e: u32,
    k: usize,
) -> Result<CertifiedCode, ConstructError> {
    let spec = &base.spec;
    let f = &*spec.ctx;
    let pe = f.p_pow(ee) as usize;
    let n = spec.n();
    let deg = lam.degree().expect("nonzero");
    let (kind, bound) = if spec.extended {
        let room = (n as i64) - 1 - deg as i64;
        if room < 0 || !(room as usize).is_multiple_of(pe + 1) {
            return Err(ConstructError::NoLambdaWitness);
        }
        let exact = room as usize / (pe + 1) + 1;
        if k != exact {
            return Err(ConstructError::KOutOfRange { k, lo: exact, hi: exact });
        }
        (LambdaKind::MonicForEgrs, deg)
    } else {
        let room = (n + pe - 1).saturating_sub(deg);
        let hi = room / (pe + 1);
        if hi == 0 {
            return Err(ConstructError::NoLambdaWitness);
        }
        if k == 0 || k > hi {
            return Err(ConstructError::KOutOfRange { k, lo: 1, hi });
        }
        (LambdaKind::NonzeroForGrs, n - (k - 1) * (pe + 1) - 2)
    };
    let wit = LambdaWitness { lam, kind, degree_bound: bound };
    let v = lambda_to_multipliers(f, &spec.a, &wit, ee)
        .map_err(|_| ConstructError::NoLambdaWitness)?;
    certify(new_spec(&spec.ctx, spec.a.clone(), v, k, spec.extended)?, e, Some(deg))
}
