//! Column-oriented sparse f64 matrices for the truncated oscillator model.
//!
//! Deterministic storage (sorted rows per column, no hashing) so that
//! reports built from these matrices are reproducible byte for byte.

use nalgebra::DMatrix;

#[derive(Clone, Debug)]
pub struct SpMat {
    nrows: usize,
    ncols: usize,
    /// per column: (row, value), sorted by row, no explicit zeros
    cols: Vec<Vec<(u32, f64)>>,
}

impl SpMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SpMat {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.cols[j].push((j as u32, 1.0));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &[(u32, f64)] {
        &self.cols[j]
    }

    /// Builds a column from unsorted entries, merging duplicates.
    pub fn set_col(&mut self, j: usize, mut entries: Vec<(u32, f64)>) {
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            debug_assert!((r as usize) < self.nrows);
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => merged.push((r, v)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        self.cols[j] = merged;
    }

    pub fn transpose(&self) -> SpMat {
        let mut cols = vec![Vec::new(); self.nrows];
        for j in 0..self.ncols {
            for &(r, v) in &self.cols[j] {
                cols[r as usize].push((j as u32, v));
            }
        }
        // column-major traversal already emits rows in ascending order
        SpMat {
            nrows: self.ncols,
            ncols: self.nrows,
            cols,
        }
    }

    /// `self * rhs` via per-column dense accumulation.
    pub fn mul(&self, rhs: &SpMat) -> SpMat {
        assert_eq!(self.ncols, rhs.nrows, "sparse product shape mismatch");
        let mut out = SpMat::zeros(self.nrows, rhs.ncols);
        let mut scratch = vec![0.0f64; self.nrows];
        let mut touched: Vec<u32> = Vec::new();
        for j in 0..rhs.ncols {
            for &(k, bv) in &rhs.cols[j] {
                for &(i, av) in &self.cols[k as usize] {
                    if scratch[i as usize] == 0.0 {
                        touched.push(i);
                    }
                    scratch[i as usize] += av * bv;
                }
            }
            touched.sort_unstable();
            let col: Vec<(u32, f64)> = touched
                .iter()
                .map(|&i| (i, scratch[i as usize]))
                .filter(|e| e.1 != 0.0)
                .collect();
            for &i in &touched {
                scratch[i as usize] = 0.0;
            }
            touched.clear();
            out.cols[j] = col;
        }
        out
    }

    pub fn add(&self, rhs: &SpMat) -> SpMat {
        self.linear_comb(1.0, rhs, 1.0)
    }

    pub fn sub(&self, rhs: &SpMat) -> SpMat {
        self.linear_comb(1.0, rhs, -1.0)
    }

    pub fn scale(&self, c: f64) -> SpMat {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for e in col.iter_mut() {
                e.1 *= c;
            }
        }
        out
    }

    pub fn linear_comb(&self, a: f64, rhs: &SpMat, b: f64) -> SpMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = SpMat::zeros(self.nrows, self.ncols);
        for j in 0..self.ncols {
            let (mut x, mut y) = (self.cols[j].iter().peekable(), rhs.cols[j].iter().peekable());
            let mut col = Vec::new();
            loop {
                match (x.peek(), y.peek()) {
                    (Some(&&(ri, vi)), Some(&&(rj, vj))) => {
                        if ri < rj {
                            col.push((ri, a * vi));
                            x.next();
                        } else if rj < ri {
                            col.push((rj, b * vj));
                            y.next();
                        } else {
                            let v = a * vi + b * vj;
                            if v != 0.0 {
                                col.push((ri, v));
                            }
                            x.next();
                            y.next();
                        }
                    }
                    (Some(&&(ri, vi)), None) => {
                        col.push((ri, a * vi));
                        x.next();
                    }
                    (None, Some(&&(rj, vj))) => {
                        col.push((rj, b * vj));
                        y.next();
                    }
                    (None, None) => break,
                }
            }
            out.cols[j] = col;
        }
        out
    }

    pub fn commutator(&self, rhs: &SpMat) -> SpMat {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn anticommutator(&self, rhs: &SpMat) -> SpMat {
        self.mul(rhs).add(&rhs.mul(self))
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.ncols);
        let mut out = vec![0.0; self.nrows];
        for j in 0..self.ncols {
            if v[j] != 0.0 {
                for &(i, a) in &self.cols[j] {
                    out[i as usize] += a * v[j];
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<f64> {
        assert_eq!(self.nrows, self.ncols);
        (0..self.ncols)
            .map(|j| {
                self.cols[j]
                    .iter()
                    .find(|e| e.0 as usize == j)
                    .map(|e| e.1)
                    .unwrap_or(0.0)
            })
            .collect()
    }

    /// Largest |entry| over the given columns.
    pub fn max_abs_on_cols(&self, cols: &[usize]) -> f64 {
        cols.iter()
            .flat_map(|&j| self.cols[j].iter().map(|e| e.1.abs()))
            .fold(0.0, f64::max)
    }

    /// Largest |A - B| entry over the given columns.
    pub fn max_abs_diff_on_cols(&self, rhs: &SpMat, cols: &[usize]) -> f64 {
        let diff = self.sub(rhs);
        diff.max_abs_on_cols(cols)
    }

    /// Is the matrix diagonal when restricted to the given columns?
    pub fn off_diagonal_max_on_cols(&self, cols: &[usize]) -> f64 {
        cols.iter()
            .flat_map(|&j| {
                self.cols[j]
                    .iter()
                    .filter(move |e| e.0 as usize != j)
                    .map(|e| e.1.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Dense copy of selected columns (all rows).
    pub fn dense_submatrix_cols(&self, cols: &[usize]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for &(i, v) in &self.cols[j] {
                m[(i as usize, jj)] = v;
            }
        }
        m
    }

    /// `self * rhs` with a dense right factor.
    pub fn mul_dense(&self, rhs: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(self.ncols, rhs.nrows());
        let mut out = DMatrix::zeros(self.nrows, rhs.ncols());
        for k in 0..self.ncols {
            for &(i, a) in &self.cols[k] {
                for j in 0..rhs.ncols() {
                    out[(i as usize, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let mut a = SpMat::zeros(2, 3);
        a.set_col(0, vec![(0, 1.0)]);
        a.set_col(1, vec![(1, 2.0)]);
        a.set_col(2, vec![(0, 3.0), (1, -1.0)]);
        let at = a.transpose();
        assert_eq!(at.nrows(), 3);
        let ata = at.mul(&a);
        // (AᵀA) is symmetric
        let d = ata.sub(&ata.transpose());
        assert_eq!(d.max_abs_on_cols(&[0, 1, 2]), 0.0);
    }

    #[test]
    fn linear_combination_merges() {
        let mut a = SpMat::zeros(2, 1);
        a.set_col(0, vec![(0, 1.0), (1, 2.0)]);
        let b = a.scale(-1.0);
        assert_eq!(a.add(&b).max_abs_on_cols(&[0]), 0.0);
    }
}
