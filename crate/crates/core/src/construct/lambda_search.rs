//! Deterministic search for λ witnesses over a fixed locator set.

use crate::gf::{FieldCtx, Fe};
use crate::orth::{lambda_to_multipliers, LambdaKind, LambdaWitness};
use crate::poly::Poly;

use super::hermitian::embed_subfield;
use super::qplus1::noroot_poly;

/// A witness and the multipliers it yields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSearch {
    pub lam: Poly,
    pub v: Vec<Fe>,
}

/// Finds λ with `±λ(a_i) u_i ∈ H` for every locator.
///
/// For GRS codes `λ ≠ 0` and `deg λ ≤ bound`; for extended codes
/// `deg λ = bound` with leading coefficient `lead`. Candidates are tried in a
/// fixed order: constants, monomials `c·x^j`, shifted powers `c·(x−b)^j`,
/// root-free polynomials over `F_q`, then over the smallest subfield holding
/// the locators, then every polynomial in range when at most `budget` exist.
pub fn lambda_search(
    f: &FieldCtx,
    a: &[Fe],
    e: u32,
    bound: usize,
    extended: bool,
    lead: Fe,
    budget: u64,
) -> Option<LambdaSearch> {
    let kind = if extended { LambdaKind::MonicForEgrs } else { LambdaKind::NonzeroForGrs };
    let try_poly = |lam: Poly| {
        let wit = LambdaWitness { lam, kind, degree_bound: bound };
        lambda_to_multipliers(f, a, &wit, e).ok().map(|v| LambdaSearch { lam: wit.lam, v })
    };
    let scalars: Vec<Fe> = if extended { vec![lead] } else { f.nonzero_elements().collect() };
    let degrees: Vec<usize> = if extended { vec![bound] } else { (0..=bound).collect() };

    for &j in &degrees {
        for &c in &scalars {
            if let Some(found) = try_poly(Poly::monomial(c, j)) {
                return Some(found);
            }
        }
    }
    for &j in degrees.iter().filter(|&&j| j > 0) {
        for b in f.nonzero_elements() {
            let base = Poly::linear(f, b).pow(f, j as u64);
            for &c in &scalars {
                if let Some(found) = try_poly(base.scale(f, c)) {
                    return Some(found);
                }
            }
        }
    }
    for &j in degrees.iter().filter(|&&j| j >= 2) {
        let base = noroot_poly(f, j).to_poly(f);
        for &c in &scalars {
            if let Some(found) = try_poly(base.scale(f, c)) {
                return Some(found);
            }
        }
    }
    if let Some(sub) = SmallestSubfield::of(f, a) {
        for &j in degrees.iter().filter(|&&j| j >= 2) {
            let base = sub.rootless(j);
            for &c in &scalars {
                if let Some(found) = try_poly(base.scale(f, c)) {
                    return Some(found);
                }
            }
        }
    }
    exhaustive(f, bound, extended, lead, budget).find_map(try_poly)
}

/// The smallest proper subfield `F_{p^d}` holding every locator.
struct SmallestSubfield {
    ctx: FieldCtx,
    embed: Vec<Fe>,
}

impl SmallestSubfield {
    fn of(f: &FieldCtx, a: &[Fe]) -> Option<Self> {
        let m = f.m();
        let d = (1..m).filter(|d| m.is_multiple_of(*d)).find(|&d| {
            let sub = f.subfield_elements(d).expect("d divides m");
            a.iter().all(|x| sub.binary_search(x).is_ok())
        })?;
        let ctx = FieldCtx::new(f.p(), d).ok()?;
        let embed = embed_subfield(&ctx, f).ok()?;
        Some(SmallestSubfield { ctx, embed })
    }

    /// A monic polynomial of degree `j ≥ 2` over the subfield with no root
    /// there, read in `F_q`. Its values on subfield locators stay in the subfield.
    fn rootless(&self, j: usize) -> Poly {
        let g = noroot_poly(&self.ctx, j).to_poly(&self.ctx);
        Poly::new(g.coeffs().iter().map(|c| self.embed[c.0 as usize]).collect())
    }
}

/// Every candidate polynomial in increasing packed order, if few enough.
fn exhaustive(
    f: &FieldCtx,
    bound: usize,
    extended: bool,
    lead: Fe,
    budget: u64,
) -> Box<dyn Iterator<Item = Poly> + '_> {
    let q = f.q() as u128;
    let free = if extended { bound } else { bound + 1 };
    let total = q.checked_pow(free as u32).filter(|&t| t <= budget as u128);
    let Some(total) = total else {
        return Box::new(std::iter::empty());
    };
    Box::new((0..total as u64).filter_map(move |idx| {
        let mut rest = idx;
        let mut coeffs: Vec<Fe> = (0..free)
            .map(|_| {
                let c = Fe((rest % q as u64) as u32);
                rest /= q as u64;
                c
            })
            .collect();
        if extended {
            coeffs.push(lead);
        }
        let p = Poly::new(coeffs);
        (!p.is_zero()).then_some(p)
    }))
}
