//! Smaller dimensions from a certified code.

use crate::codes::CertifiedCode;
use crate::gf::Fe;
use crate::poly::Poly;

use super::qplus1::noroot_poly;
use super::{certify, effective_e, ConstructError};

/// A self-orthogonal MDS code of dimension `k` on the same locators.
///
/// GRS codes keep their multipliers. Extended codes need the witness degree to
/// grow by `d(p^e+1)` with `d = k0 − k`, so the multipliers are scaled by
/// `h(a_i)` for a monic `h` of degree `d` without roots among the locators:
/// `(x − c)^d` for the least non-locator `c`, or a root-free `h` when the
/// locators fill `F_q`.
pub fn subcode(code: &CertifiedCode, k: usize) -> Result<CertifiedCode, ConstructError> {
    let k0 = code.k();
    if k == 0 || k > k0 {
        return Err(ConstructError::BadDimension { k, max: k0 });
    }
    let spec = &code.spec;
    if !spec.extended || k == k0 {
        return certify(spec.with_k(k)?, code.e, code.lambda_degree);
    }
    let f = &*spec.ctx;
    let d = k0 - k;
    let mut sorted = spec.a.clone();
    sorted.sort();
    let free = f.elements().find(|x| sorted.binary_search(x).is_err());
    let h = match free {
        Some(c) => Poly::linear(f, c).pow(f, d as u64),
        None if d >= 2 => noroot_poly(f, d).to_poly(f),
        None => return Err(ConstructError::NoGrsSubcode { k }),
    };
    let v: Vec<Fe> = spec.a.iter().zip(&spec.v).map(|(&x, &vi)| f.mul(vi, h.eval(f, x))).collect();
    let mut out = spec.with_k(k)?;
    out.v = v;
    let pe = f.p_pow(effective_e(f.m(), code.e)) as usize;
    certify(out, code.e, code.lambda_degree.map(|l| l + d * (pe + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_affine, construct_q_plus_1, qplus1_k_max};
    use crate::gf::FieldCtx;
    use std::sync::Arc;

    #[test]
    fn grs_keeps_multipliers() {
        let f = Arc::new(FieldCtx::new(2, 6).unwrap());
        let c = construct_affine(&f, 2, Fe::ONE, Fe::ZERO, 4, 2).unwrap();
        let s = subcode(&c, 1).unwrap();
        assert_eq!(s.spec.v, c.spec.v);
        assert_eq!(s.k(), 1);
        assert!(matches!(subcode(&c, 3), Err(ConstructError::BadDimension { .. })));
    }

    #[test]
    fn extended_full_field() {
        for (p, m, e) in [(2, 3, 1), (3, 2, 1), (2, 4, 1), (3, 3, 1)] {
            let f = Arc::new(FieldCtx::new(p, m).unwrap());
            let (k_max, _) = qplus1_k_max(p, m, e);
            let top = construct_q_plus_1(&f, e, k_max).unwrap();
            for k in 1..k_max.saturating_sub(1) {
                let s = subcode(&top, k).unwrap();
                assert_eq!((s.k(), s.n()), (k, top.n()));
            }
            if k_max >= 2 {
                assert_eq!(
                    subcode(&top, k_max - 1).unwrap_err(),
                    ConstructError::NoGrsSubcode { k: k_max - 1 }
                );
            }
        }
    }

    #[test]
    fn extended_with_free_point() {
        let f = Arc::new(FieldCtx::new(2, 6).unwrap());
        let c = construct_affine(&f, 2, Fe::ONE, Fe::ZERO, 5, 2).unwrap();
        assert!(c.spec.extended);
        let s = subcode(&c, 1).unwrap();
        assert_eq!((s.n(), s.k()), (5, 1));
    }
}
