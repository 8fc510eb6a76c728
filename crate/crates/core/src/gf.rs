//! Table-driven arithmetic in `F_q`, `q = p^m`.
//!
//! Elements are packed as integers: the coefficient vector `(c_0, …, c_{m-1})`
//! of the polynomial-basis representation is stored as `Σ c_i p^i`. Zero is
//! `0` and one is `1` regardless of the modulus, so encodings are portable
//! between any two contexts that share a modulus.
//!
//! Multiplication goes through discrete-log tables relative to a fixed
//! primitive element `w`. Addition is XOR in characteristic two and a Zech
//! logarithm lookup otherwise.

use std::fmt;

use thiserror::Error;

/// Largest field order for which tables are built unless overridden.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_TABLE_LIMIT`].
pub const TABLE_LIMIT_ENV: &str = "GSO_TABLE_LIMIT";

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("DegreeTooLarge: {p}^{m} exceeds the table limit {limit}")]
    DegreeTooLarge { p: u64, m: u32, limit: u64 },
    #[error("InvalidDegree: extension degree must be at least 1")]
    InvalidDegree,
    #[error("BadModulus: expected a monic polynomial of degree {m} with coefficients below {p}")]
    BadModulus { p: u32, m: u32 },
    #[error("ReducibleModulus: the modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("NotInH: element {x} is not a ({pe}+1)-th power")]
    NotInH { x: u32, pe: u64 },
    #[error("ZeroElement: zero has no inverse or logarithm")]
    ZeroElement,
    #[error("NotADivisor: {s} does not divide {m}")]
    NotADivisor { s: u32, m: u32 },
}

/// One element of `F_q`, identified by its packed coefficient vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the three shapes `H` takes, by the parity of `m/s` and `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HCase {
    /// `m/s` odd and `p = 2`: `gcd(p^e+1, q-1) = 1`, `H = F_q^*`.
    Full,
    /// `m/s` odd and `p` odd: `gcd = 2`, `H` is the set of nonzero squares.
    Squares,
    /// `m/s` even: `gcd = p^s + 1`.
    EvenQuotient,
}

/// The cyclic group `H = <w^{p^e+1}>` of `(p^e+1)`-th powers in `F_q^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgroupH {
    pub e: u32,
    pub s: u32,
    /// `gcd(p^e + 1, q - 1)`; `x ∈ H` iff this divides `log_w(x)`.
    pub index: u64,
    pub order: u64,
    pub generator: Fe,
    pub case: HCase,
}

impl SubgroupH {
    /// Order predicted by the three-case gcd formula, independent of any
    /// gcd computation on `p^e + 1`.
    pub fn case_order(p: u64, m: u32, e: u32) -> u64 {
        let q1 = p.pow(m) - 1;
        let s = gcd(e as u64, m as u64) as u32;
        match classify(p, m, e) {
            HCase::Full => q1,
            HCase::Squares => q1 / 2,
            HCase::EvenQuotient => q1 / (p.pow(s) + 1),
        }
    }
}

/// Classification of `(p, m, e)` into the three `H` cases.
pub fn classify(p: u64, m: u32, e: u32) -> HCase {
    let s = gcd(e as u64, m as u64) as u32;
    if (m / s).is_multiple_of(2) {
        HCase::EvenQuotient
    } else if p == 2 {
        HCase::Full
    } else {
        HCase::Squares
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Inverse of `a` modulo `n`, if it exists.
pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

/// Table limit from [`TABLE_LIMIT_ENV`], falling back to the default.
pub fn table_limit_from_env() -> u64 {
    std::env::var(TABLE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TABLE_LIMIT)
}

// Polynomials over F_p as coefficient vectors, used only while choosing a
// modulus and building tables.
mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    /// Remainder of `a` modulo the monic `f`.
    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let m = f.len() - 1;
        let mut a = a.to_vec();
        while a.len() > m {
            let top = a.pop().unwrap() % p;
            if top != 0 {
                let off = a.len() - m;
                for i in 0..m {
                    a[off + i] = (a[off + i] + (p - top) * f[i]) % p;
                }
            }
        }
        a.resize(m, 0);
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, f, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let m = f.len() - 1;
        let mut result = vec![0u64; m];
        result[0] = 1;
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let lead_inv = inv(*b.last().unwrap(), p);
            let monic: Vec<u64> = b.iter().map(|c| c * lead_inv % p).collect();
            let r = if a.len() >= monic.len() {
                trim(rem(&a, &monic, p))
            } else {
                a.clone()
            };
            a = monic;
            b = r;
        }
        a
    }

    pub fn is_one(a: &[u64]) -> bool {
        a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
    }
}

/// Immutable description of `F_{p^m}` with its log/exp tables.
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    w: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("w", &self.w)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus && self.w == other.w
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `F_{p^m}` with the default table limit.
    pub fn new(p: u32, m: u32) -> Result<Self, GfError> {
        Self::with_limit(p, m, DEFAULT_TABLE_LIMIT)
    }

    /// Builds `F_{p^m}` whose modulus is the least monic polynomial (in
    /// packed order of its lower coefficients) with a primitive root.
    pub fn with_limit(p: u32, m: u32, limit: u64) -> Result<Self, GfError> {
        let q = check_size(p, m, limit)?;
        let pp = p as u64;
        let q1 = q as u64 - 1;
        let factors = prime_factors(q1);
        for idx in 0..q {
            let mut f: Vec<u64> = unpack(idx, p, m).into_iter().map(u64::from).collect();
            if f[0] == 0 {
                continue;
            }
            f.push(1);
            let x = x_mod(&f, pp);
            if has_order(&x, q1, &factors, &f, pp) {
                let modulus = f.iter().map(|&c| c as u32).collect();
                return Ok(Self::build(p, m, q, modulus, x));
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// Builds `F_{p^m}` from an explicit monic irreducible modulus given as
    /// ascending coefficients (length `m + 1`, last entry `1`).
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32], limit: u64) -> Result<Self, GfError> {
        let q = check_size(p, m, limit)?;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(GfError::BadModulus { p, m });
        }
        let pp = p as u64;
        let f: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if !rabin_irreducible(&f, pp, m) {
            return Err(GfError::ReducibleModulus(p));
        }
        let q1 = q as u64 - 1;
        let factors = prime_factors(q1);
        let x = x_mod(&f, pp);
        let w = if has_order(&x, q1, &factors, &f, pp) {
            x
        } else {
            (2..q)
                .map(|enc| unpack(enc, p, m).into_iter().map(u64::from).collect::<Vec<_>>())
                .find(|g| has_order(g, q1, &factors, &f, pp))
                .expect("the multiplicative group of a field is cyclic")
        };
        Ok(Self::build(p, m, q, modulus.to_vec(), w))
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>, w: Vec<u64>) -> Self {
        let pp = p as u64;
        let f: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        let q1 = (q - 1) as usize;
        let w_is_x = m >= 2 && w[1] == 1 && w.iter().enumerate().all(|(i, &c)| i == 1 || c == 0);
        let mut exp = Vec::with_capacity(q1);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        for i in 0..q1 {
            let enc = pack(&cur, pp);
            debug_assert_eq!(log[enc as usize], NO_LOG);
            exp.push(enc);
            log[enc as usize] = i as u32;
            cur = if w_is_x {
                times_x(&cur, &f, pp)
            } else {
                fp::mulmod(&cur, &w, &f, pp)
            };
        }
        let mut zech = Vec::new();
        if p != 2 {
            zech = (0..q1)
                .map(|i| {
                    let s = add_packed(1, exp[i], p);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect();
        }
        let w = Fe(pack(&w, pp));
        FieldCtx { p, m, q, modulus, w, exp, log, zech }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn w(&self) -> Fe {
        self.w
    }

    /// `p^e` as an integer.
    pub fn p_pow(&self, e: u32) -> u64 {
        (self.p as u64).pow(e)
    }

    pub fn contains(&self, x: Fe) -> bool {
        x.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    /// Coefficient vector of `x` in the polynomial basis.
    pub fn digits(&self, x: Fe) -> Vec<u32> {
        unpack(x.0, self.p, self.m)
    }

    fn q1(&self) -> u64 {
        (self.q - 1) as u64
    }

    /// `w^i` for any integer exponent.
    pub fn exp(&self, i: i64) -> Fe {
        let i = i.rem_euclid(self.q1() as i64) as usize;
        Fe(self.exp[i])
    }

    /// Discrete logarithm to base `w`; `None` for zero.
    pub fn log(&self, x: Fe) -> Option<u64> {
        if x.0 == 0 {
            None
        } else {
            Some(self.log[x.0 as usize] as u64)
        }
    }

    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        if self.p == 2 {
            return Fe(x.0 ^ y.0);
        }
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        let q1 = self.q - 1;
        let lx = self.log[x.0 as usize];
        let ly = self.log[y.0 as usize];
        let d = if ly >= lx { ly - lx } else { ly + q1 - lx };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return Fe::ZERO;
        }
        let s = lx as u64 + z as u64;
        Fe(self.exp[(s % q1 as u64) as usize])
    }

    pub fn neg(&self, x: Fe) -> Fe {
        if self.p == 2 || x.0 == 0 {
            return x;
        }
        let q1 = self.q1();
        let l = self.log[x.0 as usize] as u64 + q1 / 2;
        Fe(self.exp[(l % q1) as usize])
    }

    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        if x.0 == 0 || y.0 == 0 {
            return Fe::ZERO;
        }
        let q1 = self.q - 1;
        let s = self.log[x.0 as usize] + self.log[y.0 as usize];
        let s = if s >= q1 { s - q1 } else { s };
        Fe(self.exp[s as usize])
    }

    pub fn inv(&self, x: Fe) -> Result<Fe, GfError> {
        match self.log(x) {
            None => Err(GfError::ZeroElement),
            Some(l) => Ok(self.exp(-(l as i64))),
        }
    }

    pub fn div(&self, x: Fe, y: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^n` with `0^0 = 1`.
    pub fn pow(&self, x: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        match self.log(x) {
            None => Fe::ZERO,
            Some(l) => {
                let q1 = self.q1();
                let e = ((l as u128 * (n % q1) as u128) % q1 as u128) as usize;
                Fe(self.exp[e])
            }
        }
    }

    /// `x^{p^{e mod m}}`.
    pub fn frobenius_pow(&self, x: Fe, e: u32) -> Fe {
        self.pow(x, self.p_pow(e % self.m))
    }

    /// Sum of `p` copies of one, i.e. the integer `n` reduced into `F_p`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn h_subgroup(&self, e: u32) -> SubgroupH {
        let pe1 = self.p_pow(e) + 1;
        let q1 = self.q1();
        let index = gcd(pe1, q1);
        SubgroupH {
            e,
            s: gcd(e as u64, self.m as u64) as u32,
            index,
            order: q1 / index,
            generator: self.exp(pe1 as i64),
            case: classify(self.p as u64, self.m, e),
        }
    }

    /// Whether `x` is a nonzero `(p^e+1)`-th power.
    pub fn in_h(&self, x: Fe, e: u32) -> bool {
        match self.log(x) {
            None => false,
            Some(l) => l % gcd(self.p_pow(e) + 1, self.q1()) == 0,
        }
    }

    /// The `(p^e+1)`-th root of `x` with least discrete logarithm.
    pub fn galois_root(&self, x: Fe, e: u32) -> Result<Fe, GfError> {
        let pe1 = self.p_pow(e) + 1;
        let l = self.log(x).ok_or(GfError::ZeroElement)?;
        let q1 = self.q1();
        let g = gcd(pe1, q1);
        if l % g != 0 {
            return Err(GfError::NotInH { x: x.0, pe: pe1 - 1 });
        }
        let modulus = q1 / g;
        let inv = mod_inverse((pe1 / g) % modulus, modulus).expect("coprime after dividing gcd");
        let y = ((l / g) as u128 * inv as u128 % modulus as u128) as i64;
        Ok(self.exp(y))
    }

    /// All elements of the subfield `F_{p^s}`, in increasing encoding.
    pub fn subfield_elements(&self, s: u32) -> Result<Vec<Fe>, GfError> {
        if s == 0 || !self.m.is_multiple_of(s) {
            return Err(GfError::NotADivisor { s, m: self.m });
        }
        let sub_q1 = self.p_pow(s) - 1;
        let step = self.q1() / sub_q1;
        let mut out: Vec<Fe> = std::iter::once(Fe::ZERO)
            .chain((0..sub_q1).map(|j| self.exp((j * step) as i64)))
            .collect();
        out.sort();
        Ok(out)
    }

    /// All `x` with `x^{p^e} = a·x + b`, sorted by encoding.
    pub fn affine_frobenius_set(&self, a: Fe, b: Fe, e: u32) -> Vec<Fe> {
        self.elements()
            .filter(|&x| self.frobenius_pow(x, e) == self.add(self.mul(a, x), b))
            .collect()
    }
}

fn check_size(p: u32, m: u32, limit: u64) -> Result<u32, GfError> {
    if !is_prime(p as u64) {
        return Err(GfError::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(GfError::InvalidDegree);
    }
    let q = (p as u64).checked_pow(m).filter(|&q| q <= limit && q <= u32::MAX as u64);
    q.map(|q| q as u32).ok_or(GfError::DegreeTooLarge { p: p as u64, m, limit })
}

fn unpack(mut enc: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = enc % p;
            enc /= p;
            d
        })
        .collect()
}

fn pack(digits: &[u64], p: u64) -> u32 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

fn add_packed(mut a: u32, mut b: u32, p: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

/// The residue of `x` modulo the monic `f`.
fn x_mod(f: &[u64], p: u64) -> Vec<u64> {
    fp::rem(&[0, 1], f, p)
}

fn times_x(cur: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = cur.len();
    let top = cur[m - 1];
    let mut out = vec![0u64; m];
    out[1..m].copy_from_slice(&cur[..m - 1]);
    if top != 0 {
        for i in 0..m {
            out[i] = (out[i] + (p - top) * f[i]) % p;
        }
    }
    out
}

fn has_order(g: &[u64], q1: u64, factors: &[u64], f: &[u64], p: u64) -> bool {
    if g.iter().all(|&c| c == 0) {
        return false;
    }
    fp::is_one(&fp::powmod(g, q1, f, p))
        && factors.iter().all(|&r| !fp::is_one(&fp::powmod(g, q1 / r, f, p)))
}

fn rabin_irreducible(f: &[u64], p: u64, m: u32) -> bool {
    let x = x_mod(f, p);
    let frob_iter = |k: u32| {
        let mut y = x.clone();
        for _ in 0..k {
            y = fp::powmod(&y, p, f, p);
        }
        y
    };
    let full = frob_iter(m);
    if full != x {
        return false;
    }
    for r in prime_factors(m as u64) {
        let mut y = frob_iter(m / r as u32);
        // y - x
        if y.len() > 1 {
            y[1] = (y[1] + p - 1) % p;
        } else {
            y[0] = (y[0] + p - x[0]) % p;
        }
        let g = fp::gcd(f, &y, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
