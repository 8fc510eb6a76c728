//! Dense matrices over `F_q` and Gaussian elimination.

use crate::gf::{FieldCtx, Fe};

/// Row-major dense matrix. Arithmetic is supplied by a [`FieldCtx`] at each call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        FMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = FMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &FieldCtx, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = FMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        out
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self, f: &FieldCtx) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// A solution of `A x = b` with every free variable set to zero.
    pub fn solve_affine(&self, f: &FieldCtx, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = FMatrix::zeros(self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Whether both matrices span the same row space.
    pub fn row_space_equal(&self, f: &FieldCtx, other: &FMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let ra = a.rref(f).len();
        let rb = b.rref(f).len();
        ra == rb && (0..ra).all(|i| a.row(i) == b.row(i))
    }
}

/// Componentwise product `x ⋆ y`.
pub fn schur(f: &FieldCtx, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    x.iter().zip(y).map(|(&a, &b)| f.mul(a, b)).collect()
}

/// `Σ x_i · y_i^{p^e}`.
pub fn galois_inner(f: &FieldCtx, x: &[Fe], y: &[Fe], e: u32) -> Fe {
    x.iter()
        .zip(y)
        .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, f.frobenius_pow(b, e))))
}

pub fn dot(f: &FieldCtx, x: &[Fe], y: &[Fe]) -> Fe {
    x.iter().zip(y).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}
