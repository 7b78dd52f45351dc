//! Dense exact-rational matrices.
//!
//! Every rank, kernel and solve in the invariant-form complexes goes through
//! this module, so all of it is `BigRational` arithmetic: dimensions of
//! cohomology groups are integers and have to come out bit-exact.

use num::{BigInt, BigRational, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Row-major dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    nrows: usize,
    ncols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMat {
            nrows,
            ncols,
            data: vec![Rat::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat_i(1);
        }
        m
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim, "column length mismatch");
            for i in 0..dim {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.ncols, rhs.nrows, "matrix product shape mismatch");
        let mut out = RatMat::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a * b;
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x = x.clone() + y;
        }
        out
    }

    pub fn sub(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x = x.clone() - y;
        }
        out
    }

    pub fn neg(&self) -> RatMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = -x.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = x.clone() * c;
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.ncols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    /// `[self | rhs]` side by side.
    pub fn hstack(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.nrows, rhs.nrows);
        RatMat::from_fn(self.nrows, self.ncols + rhs.ncols, |i, j| {
            if j < self.ncols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.ncols)].clone()
            }
        })
    }

    /// `[self; rhs]` stacked vertically.
    pub fn vstack(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.ncols, rhs.ncols);
        RatMat::from_fn(self.nrows + rhs.nrows, self.ncols, |i, j| {
            if i < self.nrows {
                self[(i, j)].clone()
            } else {
                rhs[(i - self.nrows, j)].clone()
            }
        })
    }

    /// Reduces `self` in place to reduced row echelon form, returning the
    /// pivot columns. Pivot choice: largest-magnitude entry in the column,
    /// which keeps intermediate numerators small in practice.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            if row == self.nrows {
                break;
            }
            let pivot_row = (row..self.nrows)
                .filter(|&r| !self[(r, col)].is_zero())
                .max_by_key(|&r| self[(r, col)].abs());
            let pr = match pivot_row {
                Some(r) => r,
                None => continue,
            };
            self.swap_rows(row, pr);
            let inv = {
                let p = self[(row, col)].clone();
                Rat::new(p.denom().clone(), p.numer().clone())
            };
            for j in col..self.ncols {
                let v = self[(row, j)].clone() * &inv;
                self[(row, j)] = v;
            }
            for r in 0..self.nrows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.ncols {
                        let v = self[(r, j)].clone() - &factor * &self[(row, j)];
                        self[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.ncols];
            v[free] = rat_i(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// One exact solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.nrows);
        let rhs = RatMat::from_columns(self.nrows, &[b.to_vec()]);
        let mut aug = self.hstack(&rhs);
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c == self.ncols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.ncols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut aug = self.hstack(&RatMat::identity(n));
        let pivots = aug.rref();
        if pivots.len() < n {
            return None;
        }
        Some(RatMat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.ncols + j]
    }
}

/// dim(ker A ∩ ker B) for two maps out of the same space.
pub fn kernel_intersection_dim(a: &RatMat, b: &RatMat) -> usize {
    assert_eq!(a.ncols(), b.ncols());
    a.vstack(b).nullity()
}

/// dim(im A + im B) for two maps into the same space.
pub fn image_sum_dim(a: &RatMat, b: &RatMat) -> usize {
    assert_eq!(a.nrows(), b.nrows());
    a.hstack(b).rank()
}

/// Basis of the intersection of the kernels of several maps.
pub fn kernel_intersection_basis(mats: &[&RatMat]) -> Vec<Vec<Rat>> {
    assert!(!mats.is_empty());
    let mut stacked = mats[0].clone();
    for m in &mats[1..] {
        stacked = stacked.vstack(m);
    }
    stacked.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        // rank-2 3x3 with a known kernel vector (1, -2, 1)
        let m = RatMat::from_fn(3, 3, |i, j| rat_i((i + j) as i64));
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_exact() {
        let m = RatMat::from_fn(2, 2, |i, j| rat_i([[2, 1], [1, 3]][i][j]));
        let x = m.solve(&[rat_i(5), rat_i(10)]).unwrap();
        assert_eq!(x, vec![rat_i(1), rat_i(3)]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m), RatMat::identity(2));
    }

    #[test]
    fn inconsistent_solve_is_none() {
        let m = RatMat::from_fn(2, 1, |_, _| rat_i(1));
        assert!(m.solve(&[rat_i(1), rat_i(2)]).is_none());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("3").unwrap(), rat_i(3));
        assert_eq!(parse_rat("-1/2").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }
}
