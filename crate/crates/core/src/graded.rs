//! Graded operators: one exact rational matrix per form degree, with a fixed
//! degree shift. Matrix realization of d, d^Λ, L, Λ and everything composed
//! from them on a finite invariant-form complex.

use std::collections::BTreeMap;

use crate::exterior::{masks_of_degree, BasisIndex, KForm};
use crate::linalg::{Rat, RatMat};

/// Monomial bases of Ω^k for k = 0..=dim, with mask -> index lookups.
#[derive(Clone, Debug)]
pub struct DegreeBases {
    dim: usize,
    masks: Vec<Vec<BasisIndex>>,
    index: Vec<BTreeMap<BasisIndex, usize>>,
}

impl DegreeBases {
    pub fn new(dim: usize) -> Self {
        let masks: Vec<Vec<BasisIndex>> =
            (0..=dim).map(|k| masks_of_degree(dim, k)).collect();
        let index = masks
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, &m)| (m, i)).collect())
            .collect();
        DegreeBases { dim, masks, index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self, k: usize) -> usize {
        if k > self.dim {
            0
        } else {
            self.masks[k].len()
        }
    }

    pub fn masks(&self, k: usize) -> &[BasisIndex] {
        &self.masks[k]
    }

    pub fn index_of(&self, k: usize, mask: BasisIndex) -> usize {
        self.index[k][&mask]
    }

    /// Coordinates of a homogeneous form in the degree-k monomial basis.
    pub fn coords(&self, k: usize, f: &KForm) -> Vec<Rat> {
        let mut v = vec![Rat::from_integer(0.into()); self.rank(k)];
        for (m, c) in f.terms() {
            v[self.index_of(k, m)] = c.clone();
        }
        v
    }

    pub fn form_from_coords(&self, k: usize, v: &[Rat]) -> KForm {
        let mut f = KForm::zero(self.dim);
        for (j, c) in v.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                f = f.add(&KForm::monomial(self.dim, self.masks[k][j], c.clone()));
            }
        }
        f
    }
}

/// Degree-shift-s operator: matrices Ω^k -> Ω^{k+s} for every k. Degrees
/// falling outside 0..=dim are the zero space (0 rows or columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    dim: usize,
    shift: i32,
    mats: Vec<RatMat>,
}

impl GradedOperator {
    pub fn zero(bases: &DegreeBases, shift: i32) -> Self {
        let dim = bases.dim();
        let mats = (0..=dim)
            .map(|k| {
                let target = k as i32 + shift;
                let rows = if (0..=dim as i32).contains(&target) {
                    bases.rank(target as usize)
                } else {
                    0
                };
                RatMat::zeros(rows, bases.rank(k))
            })
            .collect();
        GradedOperator { dim, shift, mats }
    }

    /// Builds the matrices of a degree-homogeneous linear map given by its
    /// action on monomials.
    pub fn from_kform_op(
        bases: &DegreeBases,
        shift: i32,
        mut op: impl FnMut(usize, BasisIndex) -> KForm,
    ) -> Self {
        let dim = bases.dim();
        let mut g = Self::zero(bases, shift);
        for k in 0..=dim {
            let target = k as i32 + shift;
            if !(0..=dim as i32).contains(&target) {
                continue;
            }
            let tk = target as usize;
            for (j, &mask) in bases.masks(k).iter().enumerate() {
                let img = op(k, mask);
                if let Some(d) = img.degree() {
                    assert_eq!(d, tk, "operator image has wrong degree");
                }
                for (m, c) in img.terms() {
                    g.mats[k][(bases.index_of(tk, m), j)] = c.clone();
                }
            }
        }
        g
    }

    /// Diagonal operator k ↦ c_k · id.
    pub fn diagonal(bases: &DegreeBases, f: impl Fn(usize) -> Rat) -> Self {
        let mut g = Self::zero(bases, 0);
        for k in 0..=bases.dim() {
            g.mats[k] = RatMat::identity(bases.rank(k)).scale(&f(k));
        }
        g
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, k: usize) -> &RatMat {
        &self.mats[k]
    }

    /// `self ∘ rhs` (apply rhs first).
    pub fn compose(&self, rhs: &GradedOperator) -> GradedOperator {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let shift = self.shift + rhs.shift;
        let mats = (0..=dim)
            .map(|k| {
                let mid = k as i32 + rhs.shift;
                let target = k as i32 + shift;
                let rows = Self::rank_or_zero(dim, target);
                let cols = rhs.mats[k].ncols();
                if !(0..=dim as i32).contains(&mid) || rows == 0 {
                    // factor through the zero space
                    RatMat::zeros(rows, cols)
                } else {
                    self.mats[mid as usize].mul(&rhs.mats[k])
                }
            })
            .collect();
        GradedOperator { dim, shift, mats }
    }

    fn rank_or_zero(dim: usize, k: i32) -> usize {
        if (0..=dim as i32).contains(&k) {
            crate::exterior::binomial(dim, k as usize)
        } else {
            0
        }
    }

    pub fn add(&self, rhs: &GradedOperator) -> GradedOperator {
        assert_eq!(self.shift, rhs.shift, "adding operators of different shift");
        let mats = self
            .mats
            .iter()
            .zip(&rhs.mats)
            .map(|(a, b)| a.add(b))
            .collect();
        GradedOperator {
            dim: self.dim,
            shift: self.shift,
            mats,
        }
    }

    pub fn sub(&self, rhs: &GradedOperator) -> GradedOperator {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> GradedOperator {
        GradedOperator {
            dim: self.dim,
            shift: self.shift,
            mats: self.mats.iter().map(|m| m.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> GradedOperator {
        GradedOperator {
            dim: self.dim,
            shift: self.shift,
            mats: self.mats.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Adjoint in the orthonormal monomial basis: per-degree transpose,
    /// reindexed to shift -s.
    pub fn transpose(&self) -> GradedOperator {
        let dim = self.dim;
        let shift = -self.shift;
        let mats = (0..=dim)
            .map(|k| {
                // adjoint maps Ω^k -> Ω^{k - self.shift}; it is the
                // transpose of self on Ω^{k - self.shift}
                let src = k as i32 + shift;
                if (0..=dim as i32).contains(&src) {
                    self.mats[src as usize].transpose()
                } else {
                    RatMat::zeros(
                        Self::rank_or_zero(dim, k as i32 + shift),
                        Self::rank_or_zero(dim, k as i32),
                    )
                }
            })
            .collect();
        GradedOperator { dim, shift, mats }
    }

    pub fn commutator(&self, rhs: &GradedOperator) -> GradedOperator {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    pub fn anticommutator(&self, rhs: &GradedOperator) -> GradedOperator {
        self.compose(rhs).add(&rhs.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    pub fn apply(&self, bases: &DegreeBases, f: &KForm) -> KForm {
        let k = match f.degree() {
            None => return KForm::zero(self.dim),
            Some(k) => k,
        };
        let target = k as i32 + self.shift;
        if !(0..=self.dim as i32).contains(&target) {
            return KForm::zero(self.dim);
        }
        let v = self.mats[k].apply(&bases.coords(k, f));
        bases.form_from_coords(target as usize, &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::SymplecticData;
    use crate::linalg::rat_i;

    #[test]
    fn lefschetz_sl2_relations_as_matrices() {
        for n in 1..=3usize {
            let s = SymplecticData::standard(n);
            let bases = DegreeBases::new(2 * n);
            let l = GradedOperator::from_kform_op(&bases, 2, |_, m| {
                s.lefschetz_l(&KForm::monomial(2 * n, m, rat_i(1)))
            });
            let lam = GradedOperator::from_kform_op(&bases, -2, |_, m| {
                s.lefschetz_lambda(&KForm::monomial(2 * n, m, rat_i(1)))
            });
            let h = GradedOperator::diagonal(&bases, |k| rat_i(n as i64 - k as i64));
            // Λ is the metric adjoint of L
            assert_eq!(lam, l.transpose());
            // [Λ, L] = H, [H, Λ] = 2Λ, [H, L] = -2L
            assert_eq!(lam.commutator(&l), h);
            assert_eq!(h.commutator(&lam), lam.scale(&rat_i(2)));
            assert_eq!(h.commutator(&l), l.scale(&rat_i(-2)));
        }
    }
}
