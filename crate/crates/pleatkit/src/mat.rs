//! Small dense row-major matrices.
//!
//! Everything in this crate happens in dimension at most 11, so plain
//! `Vec<f64>` storage with straightforward O(n^3) kernels is all we need.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::real;

/// Dense square-or-rectangular matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("empty matrix"));
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Mat { rows: r, cols: c, data })
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
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

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[f64]) {
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
    }

    /// Max-norm distance to the identity.
    pub fn distance_to_identity(&self) -> f64 {
        let mut d = 0.0_f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { 1.0 } else { 0.0 };
                d = d.max((self[(i, j)] - target).abs());
            }
        }
        d
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[(i, k)].abs() > a[(p, k)].abs() {
                    p = i;
                }
            }
            if a[(p, k)] == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    let tmp = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = tmp;
                }
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    a[(i, j)] -= f * a[(k, j)];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[(i, k)].abs() > a[(p, k)].abs() {
                    p = i;
                }
            }
            if a[(p, k)].abs() < 1e-300 {
                return Err(Error::InvalidInput("singular matrix"));
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                    inv.data.swap(k * n + j, p * n + j);
                }
            }
            let piv = a[(k, k)];
            for j in 0..n {
                a[(k, j)] /= piv;
                inv[(k, j)] /= piv;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)];
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[(i, j)] -= f * a[(k, j)];
                    inv[(i, j)] -= f * inv[(k, j)];
                }
            }
        }
        Ok(inv)
    }

    /// Solve `A x = b` by the same elimination.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let inv = self.inverse()?;
        Ok(inv.mul_vec(b))
    }

    /// Null vector of a nearly rank-deficient square matrix: the column of V
    /// in a crude complete-pivot elimination associated with the smallest
    /// pivot. Adequate for the well-separated kernels this crate meets.
    pub fn null_vector(&self) -> Vec<f64> {
        // Gaussian elimination with column tracking; back-substitute the free
        // column with the smallest pivot.
        let n = self.rows;
        let mut a = self.clone();
        let mut colperm: Vec<usize> = (0..n).collect();
        let mut rank = 0usize;
        for k in 0..n {
            // full pivot
            let (mut pi, mut pj, mut best) = (k, k, 0.0_f64);
            for i in k..n {
                for j in k..n {
                    if a[(i, j)].abs() > best {
                        best = a[(i, j)].abs();
                        pi = i;
                        pj = j;
                    }
                }
            }
            if best < 1e-9 * (1.0 + self.max_abs()) {
                break;
            }
            if pi != k {
                for j in 0..n {
                    a.data.swap(k * n + j, pi * n + j);
                }
            }
            if pj != k {
                for i in 0..n {
                    let tmp = a[(i, k)];
                    a[(i, k)] = a[(i, pj)];
                    a[(i, pj)] = tmp;
                }
                colperm.swap(k, pj);
            }
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    a[(i, j)] -= f * a[(k, j)];
                }
            }
            rank += 1;
        }
        // Free variable = column `rank`; back-substitute.
        let mut x = vec![0.0; n];
        if rank == n {
            // No numerical kernel; return the last permuted axis anyway.
            x[colperm[n - 1]] = 1.0;
            return x;
        }
        let mut y = vec![0.0; n];
        y[rank] = 1.0;
        for i in (0..rank).rev() {
            let mut s = 0.0;
            for j in i + 1..=rank {
                s += a[(i, j)] * y[j];
            }
            y[i] = -s / a[(i, i)];
        }
        for (k, &c) in colperm.iter().enumerate() {
            x[c] = y[k];
        }
        let norm = real::sqrt(x.iter().map(|v| v * v).sum::<f64>());
        if norm > 0.0 {
            for v in x.iter_mut() {
                *v /= norm;
            }
        }
        x
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor series.
    pub fn expm(&self) -> Mat {
        assert!(self.is_square());
        let norm = self.max_abs() * self.rows as f64;
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            squarings += 1;
            scale *= 0.5;
        }
        let a = self.scale(scale);
        let n = self.rows;
        let mut term = Mat::identity(n);
        let mut sum = Mat::identity(n);
        for k in 1..=24 {
            term = term.mul(&a).scale(1.0 / k as f64);
            sum = sum.add(&term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        let mut out = sum;
        for _ in 0..squarings {
            out = out.mul(&out);
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}
