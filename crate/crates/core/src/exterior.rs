//! Exterior algebra over a 2n-dimensional symplectic vector space.
//!
//! Basis monomials are bitmasks over coordinate slots `1..=2n`, always kept
//! in increasing slot order; wedge and contraction signs come from counting
//! transpositions into that canonical order. The declared basis is
//! orthonormal for the metric, and the symplectic form must satisfy the
//! compatibility gate `J^2 = -I` (equivalently `Ω^2 = -I` on the matrix of
//! ω), which is what makes Λ both the metric adjoint of L and the direct
//! contraction with the Poisson bivector π = ω⁻¹.

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::linalg::{rat_i, Rat, RatMat};

/// Coefficient ring for forms: exact rationals by default, `f64` in the
/// oscillator local model.
pub trait Coeff:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + std::ops::Neg<Output = T>
        + std::ops::Sub<Output = T>
{
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("symplectic form is not invertible")]
    DegenerateForm,
    #[error("compatibility gate failed: J^2 != -I for the declared orthonormal metric")]
    IncompatibleTriple,
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("{0}")]
    Invalid(String),
}

/// Monomial index: set of coordinate slots from `{1, ..., 2n}` as a bitmask
/// (bit `i-1` set means slot `i` present).
pub type BasisIndex = u32;

/// Slots of a mask, in increasing order.
pub fn slots(mask: BasisIndex) -> impl Iterator<Item = u32> {
    (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

pub fn mask_from_slots(slot_list: &[u32]) -> BasisIndex {
    let mut m = 0u32;
    for &s in slot_list {
        assert!(s >= 1, "slots are 1-based");
        assert!(m & (1 << (s - 1)) == 0, "repeated slot {s}");
        m |= 1 << (s - 1);
    }
    m
}

pub fn degree_of(mask: BasisIndex) -> usize {
    mask.count_ones() as usize
}

/// Sign of merging two disjoint increasing index sets into one increasing
/// set, i.e. the sign of `dx_A ∧ dx_B = ± dx_{A∪B}`. `None` when they share
/// a slot.
pub fn merge_sign(a: BasisIndex, b: BasisIndex) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    let mut transpositions = 0u32;
    for bit in slots(b) {
        // count elements of `a` above this element of `b`
        transpositions += (a >> bit).count_ones();
    }
    Some(if transpositions % 2 == 0 { 1 } else { -1 })
}

/// Sign of removing slot `s` from `mask` by interior product.
fn contract_sign(mask: BasisIndex, s: u32) -> Option<i8> {
    if mask & (1 << (s - 1)) == 0 {
        return None;
    }
    let below = (mask & ((1 << (s - 1)) - 1)).count_ones();
    Some(if below % 2 == 0 { 1 } else { -1 })
}

/// All degree-`k` masks over `dim` slots, ascending.
pub fn masks_of_degree(dim: usize, k: usize) -> Vec<BasisIndex> {
    (0u32..1 << dim)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Sparse homogeneous k-form: map from basis mask to coefficient. The zero
/// form carries no fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<S: Coeff = Rat> {
    dim: usize,
    terms: BTreeMap<BasisIndex, S>,
}

impl<S: Coeff> KForm<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 16, "base dimension capped at 16 slots");
        KForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(dim: usize, mask: BasisIndex, coeff: S) -> Self {
        let mut f = Self::zero(dim);
        assert!(
            mask < (1 << dim),
            "mask uses slots beyond the base dimension"
        );
        if !coeff.is_zero() {
            f.terms.insert(mask, coeff);
        }
        f
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(dim, 0, S::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a nonzero homogeneous form; `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| degree_of(*m))
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisIndex, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: BasisIndex) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    fn insert_add(&mut self, mask: BasisIndex, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn assert_homogeneous_with(&self, other: &Self, op: &str) {
        assert_eq!(self.dim, other.dim, "{op}: base dimension mismatch");
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            assert_eq!(a, b, "{op}: mixed degrees {a} and {b}");
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_homogeneous_with(other, "add");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_add(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_homogeneous_with(other, "sub");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_add(m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            out.terms.insert(m, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (m, x) in self.terms() {
            let v = x.clone() * c.clone();
            if !v.is_zero() {
                out.terms.insert(m, v);
            }
        }
        out
    }

    /// Graded-commutative exterior product. Panics on base-dimension
    /// mismatch (forms over different spaces cannot meet in one expression).
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "wedge: base dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if let Some(sign) = merge_sign(ma, mb) {
                    let c = ca.clone() * cb.clone();
                    let c = if sign < 0 { -c } else { c };
                    out.insert_add(ma | mb, c);
                }
            }
        }
        out
    }

    /// Interior product with the coordinate vector field of `slot`.
    pub fn contract_slot(&self, slot: u32) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            if let Some(sign) = contract_sign(m, slot) {
                let c = if sign < 0 { -c.clone() } else { c.clone() };
                out.insert_add(m & !(1 << (slot - 1)), c);
            }
        }
        out
    }

    /// Interior product with a constant vector `v = Σ v_i ∂_i`.
    pub fn contract_vector(&self, v: &[S]) -> Self {
        assert_eq!(v.len(), self.dim);
        let mut out = Self::zero(self.dim);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                out = out.add(&self.contract_slot(i as u32 + 1).scale(vi));
            }
        }
        out
    }

    /// Hodge star for the orthonormal basis, orientation `dx_1 ∧ … ∧ dx_dim`.
    pub fn hodge_star(&self) -> Self {
        let full: BasisIndex = (1u32 << self.dim) - 1;
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            let comp = full & !m;
            let sign = merge_sign(m, comp).expect("complement is disjoint");
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            out.insert_add(comp, c);
        }
        out
    }

    /// Coefficient pairing (the declared monomial basis is orthonormal).
    pub fn inner(&self, other: &Self) -> S {
        assert_eq!(self.dim, other.dim);
        let mut acc = S::zero();
        for (m, c) in self.terms() {
            if let Some(d) = other.terms.get(&m) {
                acc = acc + c.clone() * d.clone();
            }
        }
        acc
    }
}

impl KForm<Rat> {
    pub fn to_f64(&self) -> KForm<f64> {
        let mut out = KForm::<f64>::zero(self.dim);
        for (m, c) in self.terms() {
            out.terms.insert(m, rat_to_f64(c));
        }
        out
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational out of f64 range")
}

/// Constant-coefficient symplectic structure on the orthonormal basis.
///
/// `omega` is the antisymmetric matrix of ω, `pi` its inverse (the Poisson
/// bivector); construction rejects any ω whose associated `J` fails
/// `J^2 = -I` rather than reshaping the metric.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticData {
    n: usize,
    omega: RatMat,
    pi: RatMat,
}

impl SymplecticData {
    /// `entries` lists ω = Σ c_{ij} dx_i ∧ dx_j for i < j, slots 1-based.
    pub fn new(n: usize, entries: &[((u32, u32), Rat)]) -> Result<Self, ExteriorError> {
        let dim = 2 * n;
        let mut omega = RatMat::zeros(dim, dim);
        for ((i, j), c) in entries {
            let (i, j) = (*i as usize, *j as usize);
            if i == 0 || j == 0 || i > dim || j > dim || i >= j {
                return Err(ExteriorError::Invalid(format!(
                    "omega entry ({i},{j}) out of range or not i<j"
                )));
            }
            omega[(i - 1, j - 1)] = omega[(i - 1, j - 1)].clone() + c;
            omega[(j - 1, i - 1)] = omega[(j - 1, i - 1)].clone() - c;
        }
        let pi = omega.inverse().ok_or(ExteriorError::DegenerateForm)?;
        // With the declared orthonormal metric, J = Ω as an endomorphism;
        // compatibility is Ω² = -I.
        let square = omega.mul(&omega);
        if square != RatMat::identity(dim).neg() {
            return Err(ExteriorError::IncompatibleTriple);
        }
        Ok(SymplecticData { n, omega, pi })
    }

    /// Standard Darboux form dx1∧dx2 + dx3∧dx4 + …
    pub fn standard(n: usize) -> Self {
        let entries: Vec<((u32, u32), Rat)> = (0..n)
            .map(|i| ((2 * i as u32 + 1, 2 * i as u32 + 2), rat_i(1)))
            .collect();
        Self::new(n, &entries).expect("standard form is compatible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn omega_matrix(&self) -> &RatMat {
        &self.omega
    }

    pub fn pi_matrix(&self) -> &RatMat {
        &self.pi
    }

    /// ω as a 2-form.
    pub fn omega_form(&self) -> KForm {
        let mut f = KForm::zero(self.dim());
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let c = self.omega[(i, j)].clone();
                if !c.is_zero() {
                    f = f.add(&KForm::monomial(
                        self.dim(),
                        mask_from_slots(&[i as u32 + 1, j as u32 + 1]),
                        c,
                    ));
                }
            }
        }
        f
    }

    pub fn volume_form(&self) -> KForm {
        KForm::monomial(self.dim(), (1 << self.dim()) - 1, rat_i(1))
    }

    /// Lefschetz operator `L: α ↦ ω ∧ α`.
    pub fn lefschetz_l(&self, a: &KForm) -> KForm {
        assert_eq!(a.dim(), self.dim());
        self.omega_form().wedge(a)
    }

    /// Dual Lefschetz operator `Λ: α ↦ ι_π α`, by direct contraction with
    /// the Poisson bivector. Cross-checked against the metric adjoint of L
    /// (transpose in the orthonormal monomial basis) in the test suite.
    pub fn lefschetz_lambda(&self, a: &KForm) -> KForm {
        assert_eq!(a.dim(), self.dim());
        let mut out = KForm::zero(self.dim());
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let c = self.pi[(i, j)].clone();
                if !c.is_zero() {
                    // ι_{∂_i ∧ ∂_j} = ι_{∂_i} ∘ ι_{∂_j}
                    let t = a.contract_slot(j as u32 + 1).contract_slot(i as u32 + 1);
                    out = out.add(&t.scale(&c));
                }
            }
        }
        out
    }

    /// Index counting operator `H: α ↦ (n - k) α`.
    pub fn counting_h(&self, a: &KForm) -> KForm {
        match a.degree() {
            None => a.clone(),
            Some(k) => a.scale(&rat_i(self.n as i64 - k as i64)),
        }
    }

    pub fn is_primitive(&self, a: &KForm) -> bool {
        self.lefschetz_lambda(a).is_zero()
    }

    /// Coeffective test `L a = 0`. For k ≥ n this is cross-checked against
    /// the power criterion `Λ^{k-n+1} a = 0`; for k < n only the zero form
    /// is coeffective (L is injective below the middle degree).
    pub fn is_coeffective(&self, a: &KForm) -> bool {
        let la_zero = self.lefschetz_l(a).is_zero();
        if let Some(k) = a.degree() {
            if k >= self.n {
                let mut b = a.clone();
                for _ in 0..(k - self.n + 1) {
                    b = self.lefschetz_lambda(&b);
                }
                debug_assert_eq!(la_zero, b.is_zero(), "coeffective criteria disagree");
            }
        }
        la_zero
    }

    /// Nullspace basis of Λ on degree-k monomial space.
    pub fn primitive_basis(&self, k: usize) -> Vec<KForm> {
        let dim = self.dim();
        let source = masks_of_degree(dim, k);
        if k < 2 {
            // Λ is the zero map out of degrees 0 and 1
            return source
                .iter()
                .map(|&m| KForm::monomial(dim, m, rat_i(1)))
                .collect();
        }
        let target = masks_of_degree(dim, k - 2);
        let tindex: BTreeMap<BasisIndex, usize> =
            target.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut mat = RatMat::zeros(target.len(), source.len());
        for (j, &m) in source.iter().enumerate() {
            let img = self.lefschetz_lambda(&KForm::monomial(dim, m, rat_i(1)));
            for (tm, c) in img.terms() {
                mat[(tindex[&tm], j)] = c.clone();
            }
        }
        mat.nullspace()
            .into_iter()
            .map(|v| {
                let mut f = KForm::zero(dim);
                for (j, c) in v.into_iter().enumerate() {
                    f.insert_add(source[j], c);
                }
                f
            })
            .collect()
    }

    /// Formula dimension of the primitive space, clamped at zero (the raw
    /// binomial difference goes negative above the middle degree, where no
    /// primitive forms exist).
    pub fn dim_primitive(n: usize, k: usize) -> usize {
        let dim = 2 * n;
        if k > dim {
            return 0;
        }
        let a = binomial(dim, k);
        let b = if k >= 2 { binomial(dim, k - 2) } else { 0 };
        a.saturating_sub(b)
    }

    /// Lefschetz decomposition `a = Σ_r L^r β_r` with every `β_r`
    /// primitive; returns the nonzero `(r, β_r)` components. Computed by an
    /// exact linear solve against bases of each `L^r PΩ^{k-2r}`.
    pub fn primitive_decompose(&self, a: &KForm) -> Vec<(usize, KForm)> {
        let k = match a.degree() {
            None => return Vec::new(),
            Some(k) => k,
        };
        let dim = self.dim();
        let monomials = masks_of_degree(dim, k);
        let mindex: BTreeMap<BasisIndex, usize> =
            monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let r_min = k.saturating_sub(self.n);
        let r_max = k / 2;
        let mut pieces: Vec<(usize, Vec<KForm>)> = Vec::new();
        let mut columns: Vec<Vec<Rat>> = Vec::new();
        for r in r_min..=r_max {
            let prim_deg = k - 2 * r;
            if prim_deg > self.n {
                continue;
            }
            let basis = self.primitive_basis(prim_deg);
            let mut lifted = Vec::new();
            for b in &basis {
                let mut lb = b.clone();
                for _ in 0..r {
                    lb = self.lefschetz_l(&lb);
                }
                let mut col = vec![Rat::zero(); monomials.len()];
                for (m, c) in lb.terms() {
                    col[mindex[&m]] = c.clone();
                }
                columns.push(col);
            }
            lifted.extend(basis);
            pieces.push((r, lifted));
        }
        let mat = RatMat::from_columns(monomials.len(), &columns);
        let mut rhs = vec![Rat::zero(); monomials.len()];
        for (m, c) in a.terms() {
            rhs[mindex[&m]] = c.clone();
        }
        let x = mat
            .solve(&rhs)
            .expect("Lefschetz decomposition always exists");
        let mut out = Vec::new();
        let mut offset = 0;
        for (r, basis) in pieces {
            let mut beta = KForm::zero(dim);
            for b in &basis {
                beta = beta.add(&b.scale(&x[offset]));
                offset += 1;
            }
            if !beta.is_zero() {
                out.push((r, beta));
            }
        }
        out
    }

    /// `α_V = ι_{v_k} … ι_{v_1} vol` for a subspace basis; the caller tests
    /// primitivity/coeffectivity depending on the isotropy type of V.
    pub fn subspace_form(&self, basis: &[Vec<Rat>]) -> Result<KForm, ExteriorError> {
        for v in basis {
            if v.len() != self.dim() {
                return Err(ExteriorError::Invalid(
                    "basis vector length != 2n".to_string(),
                ));
            }
        }
        let cols = RatMat::from_columns(self.dim(), &basis.to_vec());
        if cols.rank() < basis.len() {
            return Err(ExteriorError::DependentBasis);
        }
        let mut form = self.volume_form();
        for v in basis {
            form = form.contract_vector(v);
        }
        Ok(form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn m(slots_list: &[u32]) -> BasisIndex {
        mask_from_slots(slots_list)
    }

    fn mono(dim: usize, slots_list: &[u32], c: i64) -> KForm {
        KForm::monomial(dim, m(slots_list), rat_i(c))
    }

    #[test]
    fn wedge_signs() {
        let dx1 = mono(4, &[1], 1);
        let dx2 = mono(4, &[2], 1);
        assert_eq!(dx1.wedge(&dx2), mono(4, &[1, 2], 1));
        assert_eq!(dx2.wedge(&dx1), mono(4, &[1, 2], -1));
        // (dx1 + dx2) ∧ dx1 = -dx12
        let s = dx1.add(&dx2);
        assert_eq!(s.wedge(&dx1), mono(4, &[1, 2], -1));
    }

    #[test]
    #[should_panic(expected = "base dimension mismatch")]
    fn wedge_dimension_mismatch_panics() {
        let a = mono(4, &[1], 1);
        let b = mono(6, &[1], 1);
        let _ = a.wedge(&b);
    }

    #[test]
    fn contraction_signs() {
        let dx12 = mono(4, &[1, 2], 1);
        assert_eq!(dx12.contract_slot(1), mono(4, &[2], 1));
        assert_eq!(dx12.contract_slot(2), mono(4, &[1], -1));
        assert!(dx12.contract_slot(3).is_zero());
    }

    #[test]
    fn lefschetz_l_examples() {
        let s = SymplecticData::standard(2);
        let one = KForm::one(4);
        assert_eq!(
            s.lefschetz_l(&one),
            mono(4, &[1, 2], 1).add(&mono(4, &[3, 4], 1))
        );
        assert_eq!(s.lefschetz_l(&mono(4, &[1, 2], 1)), mono(4, &[1, 2, 3, 4], 1));
        // L² kills the primitive 2-form dx12 - dx34
        let prim = mono(4, &[1, 2], 1).sub(&mono(4, &[3, 4], 1));
        assert!(s.lefschetz_l(&s.lefschetz_l(&prim)).is_zero());
    }

    #[test]
    fn lefschetz_lambda_examples() {
        let s = SymplecticData::standard(2);
        assert_eq!(s.lefschetz_lambda(&mono(4, &[1, 2], 1)), KForm::one(4));
        assert_eq!(s.lefschetz_lambda(&mono(4, &[3, 4], 1)), KForm::one(4));
        let prim = mono(4, &[1, 2], 1).sub(&mono(4, &[3, 4], 1));
        assert!(s.lefschetz_lambda(&prim).is_zero());
        assert!(s.lefschetz_lambda(&mono(4, &[1, 3], 1)).is_zero());
        // Λω = n
        assert_eq!(s.lefschetz_lambda(&s.omega_form()), KForm::monomial(4, 0, rat_i(2)));
    }

    #[test]
    fn counting_h_examples() {
        let s2 = SymplecticData::standard(2);
        assert_eq!(s2.counting_h(&mono(4, &[1], 1)), mono(4, &[1], 1));
        assert_eq!(s2.counting_h(&mono(4, &[1, 2, 3], 1)), mono(4, &[1, 2, 3], -1));
        let s3 = SymplecticData::standard(3);
        assert!(s3.counting_h(&mono(6, &[1, 2, 3], 1)).is_zero());
    }

    #[test]
    fn hodge_star_examples() {
        let a = mono(2, &[1], 1);
        assert_eq!(a.hodge_star(), mono(2, &[2], 1));
        assert_eq!(mono(2, &[2], 1).hodge_star(), mono(2, &[1], -1));
        assert_eq!(mono(4, &[1, 2], 1).hodge_star(), mono(4, &[3, 4], 1));
        // ⋆⋆ = (-1)^{k(2n-k)} : k=2, 2n=4 gives +1
        let b = mono(4, &[1, 3], 1);
        assert_eq!(b.hodge_star().hodge_star(), b);
        // k=1, 2n=4: ⋆⋆ = -1
        let c = mono(4, &[1], 1);
        assert_eq!(c.hodge_star().hodge_star(), c.neg());
    }

    #[test]
    fn star_defines_inner_product() {
        let a = mono(4, &[1, 2], 2).add(&mono(4, &[1, 3], 3));
        let b = mono(4, &[1, 2], 5).add(&mono(4, &[2, 4], 7));
        let vol_coeff = a.wedge(&b.hodge_star()).coeff(m(&[1, 2, 3, 4]));
        assert_eq!(vol_coeff, a.inner(&b));
        assert_eq!(a.inner(&b), rat_i(10));
    }

    #[test]
    fn compatibility_gate() {
        // both paper forms on R^4 pass
        assert!(SymplecticData::new(2, &[((1, 2), rat_i(1)), ((3, 4), rat_i(1))]).is_ok());
        assert!(SymplecticData::new(2, &[((1, 4), rat_i(1)), ((2, 3), rat_i(1))]).is_ok());
        assert!(SymplecticData::new(2, &[((1, 3), rat_i(1)), ((2, 4), rat_i(1))]).is_ok());
        // scaled form is symplectic but not compatible with the declared metric
        assert_eq!(
            SymplecticData::new(2, &[((1, 2), rat_i(2)), ((3, 4), rat_i(1))]).unwrap_err(),
            ExteriorError::IncompatibleTriple
        );
        // degenerate
        assert_eq!(
            SymplecticData::new(2, &[((1, 2), rat_i(1))]).unwrap_err(),
            ExteriorError::DegenerateForm
        );
    }

    #[test]
    fn primitivity_and_coeffectivity() {
        let s = SymplecticData::standard(2);
        let prim = mono(4, &[1, 2], 1).sub(&mono(4, &[3, 4], 1));
        assert!(s.is_primitive(&prim));
        assert!(!s.is_primitive(&s.omega_form()));
        let top = mono(4, &[1, 2, 3, 4], 1);
        assert!(s.is_coeffective(&top));
        assert!(!s.is_coeffective(&mono(4, &[1], 1)));
    }

    #[test]
    fn dim_primitive_matches_nullspace() {
        for n in 1..=4 {
            let s = SymplecticData::standard(n);
            for k in 0..=(2 * n) {
                let brute = s.primitive_basis(k).len();
                assert_eq!(
                    SymplecticData::dim_primitive(n, k),
                    brute,
                    "n={n} k={k}"
                );
            }
        }
        assert_eq!(SymplecticData::dim_primitive(2, 2), 5);
        assert_eq!(SymplecticData::dim_primitive(1, 0), 1);
        assert_eq!(SymplecticData::dim_primitive(3, 3), 14);
    }

    #[test]
    fn primitive_decompose_examples() {
        let s = SymplecticData::standard(2);
        // already primitive: one component
        let prim = mono(4, &[1, 2], 1).sub(&mono(4, &[3, 4], 1));
        let d = s.primitive_decompose(&prim);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0, 0);
        assert_eq!(d[0].1, prim);
        // dx12 = ½(dx12 - dx34) + ½ ω
        let d = s.primitive_decompose(&mono(4, &[1, 2], 1));
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].1, prim.scale(&rat(1, 2)));
        assert_eq!(d[1].1, KForm::monomial(4, 0, rat(1, 2)));
        // round trip
        let recombined = {
            let mut acc = KForm::zero(4);
            for (r, beta) in &d {
                let mut t = beta.clone();
                for _ in 0..*r {
                    t = s.lefschetz_l(&t);
                }
                acc = acc.add(&t);
            }
            acc
        };
        assert_eq!(recombined, mono(4, &[1, 2], 1));
    }

    #[test]
    fn subspace_forms() {
        // n=1, V = span{∂1} isotropic: α_V = dx2, coeffective
        let s1 = SymplecticData::standard(1);
        let a = s1
            .subspace_form(&[vec![rat_i(1), rat_i(0)]])
            .unwrap();
        assert_eq!(a, mono(2, &[2], 1));
        assert!(s1.is_coeffective(&a));

        // n=2, V = span{∂1, ∂3} Lagrangian: α_V = ±dx24, primitive and coeffective
        let s2 = SymplecticData::standard(2);
        let e = |i: usize| {
            let mut v = vec![rat_i(0); 4];
            v[i - 1] = rat_i(1);
            v
        };
        let a = s2.subspace_form(&[e(1), e(3)]).unwrap();
        assert_eq!(a, mono(4, &[2, 4], 1));
        assert!(s2.is_primitive(&a));
        assert!(s2.is_coeffective(&a));

        // coisotropic V = span{∂1,∂2,∂3}: α_V = ±dx4, primitive
        let a = s2.subspace_form(&[e(1), e(2), e(3)]).unwrap();
        assert_eq!(a.degree(), Some(1));
        assert!(s2.is_primitive(&a));

        // dependent basis rejected
        assert_eq!(
            s2.subspace_form(&[e(1), e(1)]).unwrap_err(),
            ExteriorError::DependentBasis
        );
    }

    #[test]
    fn primitive_iff_lefschetz_power() {
        // Λa = 0 ⇔ L^{n-k+1} a = 0 for k ≤ n, on every monomial combo basis
        for n in 1..=3 {
            let s = SymplecticData::standard(n);
            for k in 0..=n {
                for mask in masks_of_degree(2 * n, k) {
                    let f = KForm::monomial(2 * n, mask, rat_i(1));
                    // test on a slightly mixed form too
                    let g = f.add(&KForm::monomial(
                        2 * n,
                        masks_of_degree(2 * n, k)[0],
                        rat_i(3),
                    ));
                    for h in [f, g] {
                        let mut lp = h.clone();
                        for _ in 0..(n - k + 1) {
                            lp = s.lefschetz_l(&lp);
                        }
                        assert_eq!(s.is_primitive(&h), lp.is_zero());
                    }
                }
            }
        }
    }
}
