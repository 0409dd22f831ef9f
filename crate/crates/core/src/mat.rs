//! Dense matrices over a [`Coeff`] field with one shared elimination kernel.
//!
//! Rank, kernel, and linear solving all reduce to a Gauss-Jordan pass whose
//! zero test is [`Coeff::is_negligible`]: literal zero in exact mode, `≤ ε`
//! in float mode. Pivots are chosen by [`Coeff::pivot_score`], which makes
//! the float path column-pivoted while leaving exact results independent of
//! the choice.

use num::Complex;

use crate::scalar::{Coeff, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Coeff> Mat<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one();
        }
        m
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut K {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<L: Coeff>(&self, f: impl FnMut(&K) -> L) -> Mat<L> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        let mut out: Mat<K> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.at(i, t);
                if a.is_negligible(0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a.clone() * rhs.at(t, j).clone();
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = cur + add;
                }
            }
        }
        out
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(K::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    /// True when every entry is negligible at `eps`.
    pub fn is_zero(&self, eps: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(eps))
    }

    /// True when `self − other` is negligible entrywise.
    pub fn eq_within(&self, other: &Self, eps: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible(eps))
    }

    /// The submatrix of shape `nr × nc` with upper-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Mat::from_fn(nr, nc, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    /// Square block-diagonal assembly of square blocks.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out: Mat<K> = Mat::zeros(n, n);
        let mut o = 0;
        for b in blocks {
            assert!(b.is_square(), "block-diagonal parts must be square");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *out.at_mut(o + i, o + j) = b.at(i, j).clone();
                }
            }
            o += b.rows;
        }
        out
    }

    /// Assembles `[[ul, ur], [ll, lr]]`; the four blocks must fit together.
    pub fn from_blocks(ul: &Self, ur: &Self, ll: &Self, lr: &Self) -> Self {
        assert_eq!(ul.rows, ur.rows);
        assert_eq!(ll.rows, lr.rows);
        assert_eq!(ul.cols, ll.cols);
        assert_eq!(ur.cols, lr.cols);
        Mat::from_fn(ul.rows + ll.rows, ul.cols + ur.cols, |i, j| {
            match (i < ul.rows, j < ul.cols) {
                (true, true) => ul.at(i, j).clone(),
                (true, false) => ur.at(i, j - ul.cols).clone(),
                (false, true) => ll.at(i - ul.rows, j).clone(),
                (false, false) => lr.at(i - ul.rows, j - ul.cols).clone(),
            }
        })
    }

    /// Rank; pivots with score below `eps` count as zero.
    pub fn rank(&self, eps: f64) -> usize {
        let mut work = self.to_rows();
        rref(&mut work, self.cols, eps).len()
    }

    /// A basis of the right kernel `{x | self·x = 0}`.
    pub fn nullspace(&self, eps: f64) -> Vec<Vec<K>> {
        let mut work = self.to_rows();
        let pivots = rref(&mut work, self.cols, eps);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &(_, c) in &pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut x = vec![K::zero(); self.cols];
            x[free] = K::one();
            for &(r, c) in &pivots {
                x[c] = -work[r][free].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `self·x = rhs` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve_linear(&self, rhs: &Self, eps: f64) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve_linear");
        let mut work: Vec<Vec<K>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend(rhs.row(i).iter().cloned());
                row
            })
            .collect();
        let pivots = rref(&mut work, self.cols, eps);
        // Rows with no pivot must have vanished entirely, rhs included.
        let pivot_rows = pivots.len();
        for row in work.iter().skip(pivot_rows) {
            if row[self.cols..].iter().any(|x| !x.is_negligible(eps)) {
                return None;
            }
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for &(r, c) in &pivots {
            for j in 0..rhs.cols {
                *x.at_mut(c, j) = work[r][self.cols + j].clone();
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular at `eps`.
    pub fn inverse(&self, eps: f64) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut work: Vec<Vec<K>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut work, n, eps);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for &(r, c) in &pivots {
            for j in 0..n {
                *inv.at_mut(c, j) = work[r][n + j].clone();
            }
        }
        Some(inv)
    }

    fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Reduced row echelon form in place, eliminating only the first
/// `limit_cols` columns. Returns `(pivot_row, pivot_col)` pairs in order.
fn rref<K: Coeff>(work: &mut [Vec<K>], limit_cols: usize, eps: f64) -> Vec<(usize, usize)> {
    let rows = work.len();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..limit_cols {
        if r0 == rows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (r, row) in work.iter().enumerate().skip(r0) {
            if row[col].is_negligible(eps) {
                continue;
            }
            let score = row[col].pivot_score();
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((r, score));
            }
        }
        let Some((pr, _)) = best else { continue };
        work.swap(r0, pr);
        let inv_pivot = K::one() / work[r0][col].clone();
        for x in work[r0].iter_mut() {
            *x = x.clone() * inv_pivot.clone();
        }
        for r in 0..rows {
            if r == r0 || work[r][col].is_negligible(eps) {
                continue;
            }
            let f = work[r][col].clone();
            let (head, tail) = work.split_at_mut(r0.max(r));
            let (pivot_row, row) = if r > r0 {
                (&head[r0], &mut tail[0])
            } else {
                (&tail[0], &mut head[r])
            };
            for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        pivots.push((r0, col));
        r0 += 1;
    }
    pivots
}

impl<K: Coeff> std::ops::Add for &Mat<K> {
    type Output = Mat<K>;

    fn add(self, rhs: &Mat<K>) -> Mat<K> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<K: Coeff> std::ops::Sub for &Mat<K> {
    type Output = Mat<K>;

    fn sub(self, rhs: &Mat<K>) -> Mat<K> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<K: Coeff> std::ops::Neg for &Mat<K> {
    type Output = Mat<K>;

    fn neg(self) -> Mat<K> {
        self.map(|x| -x.clone())
    }
}

impl<K: Coeff> std::ops::Mul for &Mat<K> {
    type Output = Mat<K>;

    fn mul(self, rhs: &Mat<K>) -> Mat<K> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Mat<S> {
    /// Embeds real entries as complex ones.
    pub fn complexify(&self) -> Mat<Complex<S>> {
        self.map(|x| Complex::new(x.clone(), S::zero()))
    }

    /// Converts entries to `f64`.
    pub fn to_float(&self) -> Mat<f64> {
        self.map(|x| x.approx())
    }

    /// Largest `|entry|` as `f64`, for residual reporting.
    pub fn approx_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.approx().abs())
            .fold(0.0, f64::max)
    }
}
