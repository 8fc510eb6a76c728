//! Univariate polynomials over `F_q` with ascending coefficients.

use crate::gf::{FieldCtx, Fe};

/// Polynomial with no trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Fe>);

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Fe) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly(vec![Fe::ONE])
    }

    /// `c·x^j`.
    pub fn monomial(c: Fe, j: usize) -> Self {
        let mut v = vec![Fe::ZERO; j + 1];
        v[j] = c;
        Poly::new(v)
    }

    /// `x - b`.
    pub fn linear(f: &FieldCtx, b: Fe) -> Self {
        Poly::new(vec![f.neg(b), Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.0.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    pub fn eval(&self, f: &FieldCtx, x: Fe) -> Fe {
        self.0.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(Fe::ZERO);
        Poly::new((0..n).map(|i| f.add(get(self, i), get(other, i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly::new(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, f: &FieldCtx, other: &Poly) -> Poly {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &FieldCtx, c: Fe) -> Poly {
        Poly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, f: &FieldCtx, mut e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        result
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &FieldCtx, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.leading()).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], lead_inv);
            q[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dj) in d.0.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// `Π (x - r)` over the given roots.
    pub fn from_roots(f: &FieldCtx, roots: &[Fe]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, &r| acc.mul(f, &Poly::linear(f, r)))
    }

    /// The unique polynomial of degree below `xs.len()` through the points.
    /// Panics if the abscissae are not distinct.
    pub fn interpolate(f: &FieldCtx, xs: &[Fe], ys: &[Fe]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        // Newton divided differences, overwritten in place.
        let mut c = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(c[i], c[i - 1]);
                let den = f.sub(xs[i], xs[i - j]);
                c[i] = f.div(num, den).expect("distinct interpolation points");
            }
        }
        let mut result = Poly::zero();
        for i in (0..n).rev() {
            result = result.mul(f, &Poly::linear(f, xs[i])).add(f, &Poly::constant(c[i]));
        }
        result
    }
}
