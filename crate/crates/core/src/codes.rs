//! GRS and extended GRS codes, generic linear codes and exact MDS checks.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{FieldCtx, Fe};
use crate::linalg::FMatrix;

/// Default bound on `q^k` for exhaustive minimum-distance scans.
pub const DEFAULT_MDS_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("DuplicateLocator: locator {0} appears more than once")]
    DuplicateLocator(u32),
    #[error("ZeroMultiplier: multiplier at index {0} is zero")]
    ZeroMultiplier(usize),
    #[error("ZeroLocator: locator at index {0} is zero")]
    ZeroLocator(usize),
    #[error("ZeroScale: locator scale must be nonzero")]
    ZeroScale,
    #[error("NotInField: element {0} is outside the field")]
    NotInField(u32),
    #[error("LengthMismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("InvalidDimension: need 1 <= k <= {n}, got k = {k}")]
    InvalidDimension { k: usize, n: usize },
    #[error("TooLong: length {len} exceeds q + 1 = {max}")]
    TooLong { len: usize, max: usize },
    #[error("MultiplierMismatch: an extended code requires the multiplier a^(1-k)")]
    MultiplierMismatch,
    #[error("RankDeficient: generator has rank {rank} < {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("BudgetExceeded: q^k = {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
}

/// `GRS_k(a, v)`, or `GRS_k(a, v, ∞)` when `extended` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    pub ctx: Arc<FieldCtx>,
    pub a: Vec<Fe>,
    pub v: Vec<Fe>,
    pub k: usize,
    pub extended: bool,
}

impl GrsSpec {
    pub fn new(
        ctx: Arc<FieldCtx>,
        a: Vec<Fe>,
        v: Vec<Fe>,
        k: usize,
        extended: bool,
    ) -> Result<Self, CodeError> {
        if a.len() != v.len() {
            return Err(CodeError::LengthMismatch { expected: a.len(), got: v.len() });
        }
        if let Some(&x) = a.iter().chain(&v).find(|x| !ctx.contains(**x)) {
            return Err(CodeError::NotInField(x.0));
        }
        check_distinct(ctx.q(), &a)?;
        if let Some(i) = v.iter().position(|x| x.is_zero()) {
            return Err(CodeError::ZeroMultiplier(i));
        }
        let len = a.len() + extended as usize;
        if k == 0 || k > len {
            return Err(CodeError::InvalidDimension { k, n: len });
        }
        if len > ctx.q() as usize + 1 {
            return Err(CodeError::TooLong { len, max: ctx.q() as usize + 1 });
        }
        Ok(GrsSpec { ctx, a, v, k, extended })
    }

    /// Number of finite locators.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Code length, counting the `∞` coordinate.
    pub fn length(&self) -> usize {
        self.a.len() + self.extended as usize
    }

    /// `k × length` generator: row `i` is `a^i ⋆ v`, plus `(0,…,0,1)^T` when extended.
    pub fn generator(&self) -> FMatrix {
        let f = &self.ctx;
        let rows = (0..self.k)
            .map(|i| {
                let mut row: Vec<Fe> = self
                    .a
                    .iter()
                    .zip(&self.v)
                    .map(|(&a, &v)| f.mul(f.pow(a, i as u64), v))
                    .collect();
                if self.extended {
                    row.push(if i + 1 == self.k { Fe::ONE } else { Fe::ZERO });
                }
                row
            })
            .collect();
        FMatrix::from_rows(rows)
    }

    pub fn to_code(&self) -> LinearCode {
        LinearCode { ctx: self.ctx.clone(), g: self.generator(), origin: Some(self.clone()) }
    }

    /// Same locators and multipliers with a different dimension.
    pub fn with_k(&self, k: usize) -> Result<Self, CodeError> {
        GrsSpec::new(self.ctx.clone(), self.a.clone(), self.v.clone(), k, self.extended)
    }
}

fn check_distinct(q: u32, a: &[Fe]) -> Result<(), CodeError> {
    let mut seen = vec![false; q as usize];
    for &x in a {
        if std::mem::replace(&mut seen[x.0 as usize], true) {
            return Err(CodeError::DuplicateLocator(x.0));
        }
    }
    Ok(())
}

/// `u_i = Π_{j≠i} (a_i − a_j)^{−1}`.
pub fn u_vector(f: &FieldCtx, a: &[Fe]) -> Result<Vec<Fe>, CodeError> {
    check_distinct(f.q(), a)?;
    Ok(a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = a
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Fe::ONE, |acc, (_, &aj)| f.mul(acc, f.sub(ai, aj)));
            f.inv(prod).expect("distinct locators")
        })
        .collect())
}

/// Multiplier for [`equiv_transform`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplier {
    /// `1` for GRS codes, `aScale^{1−k}` for extended codes.
    Auto,
    Value(Fe),
}

/// `GRS_k(αa + β1, λv)`; extended codes require `λ = α^{1−k}`.
pub fn equiv_transform(
    spec: &GrsSpec,
    a_scale: Fe,
    b_shift: Fe,
    mult: Multiplier,
) -> Result<GrsSpec, CodeError> {
    let f = &spec.ctx;
    if a_scale.is_zero() {
        return Err(CodeError::ZeroScale);
    }
    let forced = f.exp(-(f.log(a_scale).unwrap() as i64) * (spec.k as i64 - 1));
    let lam = match mult {
        Multiplier::Auto if spec.extended => forced,
        Multiplier::Auto => Fe::ONE,
        Multiplier::Value(l) if spec.extended && l != forced => {
            return Err(CodeError::MultiplierMismatch)
        }
        Multiplier::Value(l) if l.is_zero() => return Err(CodeError::ZeroMultiplier(0)),
        Multiplier::Value(l) => l,
    };
    let a = spec.a.iter().map(|&x| f.add(f.mul(a_scale, x), b_shift)).collect();
    let v = spec.v.iter().map(|&x| f.mul(lam, x)).collect();
    GrsSpec::new(spec.ctx.clone(), a, v, spec.k, spec.extended)
}

/// `GRS_k(a,v,∞) = GRS_k((a^{−1}, 0), (v ⋆ a^{k−1}, 1))` for nonzero locators.
pub fn egrs_to_grs(spec: &GrsSpec) -> Result<GrsSpec, CodeError> {
    assert!(spec.extended, "egrs_to_grs expects an extended spec");
    let f = &spec.ctx;
    if let Some(i) = spec.a.iter().position(|x| x.is_zero()) {
        return Err(CodeError::ZeroLocator(i));
    }
    let mut a: Vec<Fe> = spec.a.iter().map(|&x| f.inv(x).unwrap()).collect();
    let mut v: Vec<Fe> = spec
        .a
        .iter()
        .zip(&spec.v)
        .map(|(&x, &y)| f.mul(y, f.pow(x, spec.k as u64 - 1)))
        .collect();
    a.push(Fe::ZERO);
    v.push(Fe::ONE);
    GrsSpec::new(spec.ctx.clone(), a, v, spec.k, false)
}

/// Shifts the locators by the least `b` making them all nonzero, then applies
/// [`egrs_to_grs`]. Returns the converted spec and the shift.
pub fn egrs_to_grs_shifted(spec: &GrsSpec) -> Result<(GrsSpec, Fe), CodeError> {
    let f = &spec.ctx;
    let b = f
        .elements()
        .find(|&b| spec.a.iter().all(|&x| f.add(x, b) != Fe::ZERO))
        .ok_or(CodeError::ZeroLocator(0))?;
    let shifted = equiv_transform(spec, Fe::ONE, b, Multiplier::Auto)?;
    Ok((egrs_to_grs(&shifted)?, b))
}

/// A linear code given by a full-rank generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub ctx: Arc<FieldCtx>,
    pub g: FMatrix,
    pub origin: Option<GrsSpec>,
}

impl LinearCode {
    pub fn new(ctx: Arc<FieldCtx>, g: FMatrix) -> Result<Self, CodeError> {
        let rank = g.rank(&ctx);
        if rank != g.rows() {
            return Err(CodeError::RankDeficient { rank, rows: g.rows() });
        }
        Ok(LinearCode { ctx, g, origin: None })
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }
}

/// `G̃(Φ_v(C))`: generator `[G·diag(v) | (0,…,0,1)^T]`.
pub fn extend_phi(code: &LinearCode, v: &[Fe]) -> Result<LinearCode, CodeError> {
    let f = &code.ctx;
    if v.len() != code.n() {
        return Err(CodeError::LengthMismatch { expected: code.n(), got: v.len() });
    }
    if let Some(i) = v.iter().position(|x| x.is_zero()) {
        return Err(CodeError::ZeroMultiplier(i));
    }
    let k = code.k();
    let rows = (0..k)
        .map(|i| {
            let mut row: Vec<Fe> = code.g.row(i).iter().zip(v).map(|(&g, &s)| f.mul(g, s)).collect();
            row.push(if i + 1 == k { Fe::ONE } else { Fe::ZERO });
            row
        })
        .collect();
    let origin = code.origin.as_ref().filter(|s| !s.extended).map(|s| GrsSpec {
        v: s.v.iter().zip(v).map(|(&x, &y)| f.mul(x, y)).collect(),
        extended: true,
        ..s.clone()
    });
    Ok(LinearCode { ctx: code.ctx.clone(), g: FMatrix::from_rows(rows), origin })
}

/// Exact minimum distance by enumerating every codeword up to scaling.
pub fn min_distance_exhaustive(code: &LinearCode, budget: u64) -> Result<usize, CodeError> {
    let f = &*code.ctx;
    let q = f.q() as u64;
    let k = code.k();
    let n = code.n();
    let size = (q as u128).pow(k as u32);
    if size > budget as u128 {
        return Err(CodeError::BudgetExceeded { size, budget });
    }
    // Scalar with index 0 is zero and index t ≥ 1 is w^{t-1}.
    let scalar = |t: u64| if t == 0 { Fe::ZERO } else { f.exp(t as i64 - 1) };
    let rows: Vec<&[Fe]> = (0..k).map(|i| code.g.row(i)).collect();
    // Codewords whose last nonzero message coordinate `lead` is one; the
    // coordinate below it is fixed per task to spread the work.
    let tasks: Vec<(usize, Option<u64>)> = (0..k)
        .flat_map(|lead| {
            if lead == 0 {
                vec![(0, None)]
            } else {
                (0..q).map(|d| (lead, Some(d))).collect()
            }
        })
        .collect();
    let best = tasks
        .par_iter()
        .map(|&(lead, top)| {
            let mut c: Vec<Fe> = rows[lead].to_vec();
            let free = match top {
                None => 0,
                Some(d) => {
                    let s = scalar(d);
                    for (cj, &g) in c.iter_mut().zip(rows[lead - 1]) {
                        *cj = f.add(*cj, f.mul(s, g));
                    }
                    lead - 1
                }
            };
            let weight = |c: &[Fe]| c.iter().filter(|x| !x.is_zero()).count();
            let mut best = weight(&c);
            let mut digits = vec![0u64; free];
            loop {
                let mut i = 0;
                while i < free {
                    let old = scalar(digits[i]);
                    digits[i] = (digits[i] + 1) % q;
                    let delta = f.sub(scalar(digits[i]), old);
                    for (cj, &g) in c.iter_mut().zip(rows[i]) {
                        *cj = f.add(*cj, f.mul(delta, g));
                    }
                    if digits[i] != 0 {
                        break;
                    }
                    i += 1;
                }
                if i == free {
                    break;
                }
                best = best.min(weight(&c));
            }
            best
        })
        .min()
        .unwrap_or(n);
    Ok(best)
}

/// Evidence that a code meets the Singleton bound `d = n − k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdsStatus {
    /// The code is (extended) GRS by construction.
    Structural,
    /// Exhaustive scan found `d = n − k + 1`.
    Exhaustive(usize),
    /// Exhaustive scan found a smaller distance.
    NotMds(usize),
    Unknown,
}

impl MdsStatus {
    pub fn is_mds(self) -> bool {
        matches!(self, MdsStatus::Structural | MdsStatus::Exhaustive(_))
    }
}

/// Structural when the code carries a GRS origin, otherwise an exhaustive
/// verdict within the budget.
pub fn is_mds(code: &LinearCode, budget: u64) -> MdsStatus {
    if code.origin.is_some() {
        return MdsStatus::Structural;
    }
    mds_exhaustive(code, budget)
}

/// Exhaustive verdict ignoring any structural origin.
pub fn mds_exhaustive(code: &LinearCode, budget: u64) -> MdsStatus {
    match min_distance_exhaustive(code, budget) {
        Ok(d) if d == code.n() - code.k() + 1 => MdsStatus::Exhaustive(d),
        Ok(d) => MdsStatus::NotMds(d),
        Err(_) => MdsStatus::Unknown,
    }
}

/// A GRS-backed code with its verified `e`-Galois hull and MDS evidence.
#[derive(Clone, Debug)]
pub struct CertifiedCode {
    pub spec: GrsSpec,
    pub e: u32,
    pub hull_dim: usize,
    pub mds: MdsStatus,
    pub gram_zero: bool,
    /// Degree of the λ witness behind the multipliers, when one was used.
    pub lambda_degree: Option<usize>,
}

impl CertifiedCode {
    pub fn code(&self) -> LinearCode {
        self.spec.to_code()
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    /// Code length, counting the `∞` coordinate.
    pub fn n(&self) -> usize {
        self.spec.length()
    }
}
