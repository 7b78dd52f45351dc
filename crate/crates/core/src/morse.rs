//! Pure integer arithmetic over cohomology tables and Morse count vectors:
//! the Morse-type bounds on dim H^k_{d+dΛ} / dim H^k_{ddΛ}, the
//! critical-point-count bound, its strengthening in the non-hard-Lefschetz
//! borderline case, the torsion-aware variant for simply-connected
//! manifolds, and the fibered 4-manifold family with parameters (q, p).
//!
//! Negative cohomological indices contribute zero to every sum. The Euler
//! characteristic consistency between a Morse vector and a table is a
//! warning rather than an error, so hypothetical m-vectors can be explored.

use serde::Serialize;
use thiserror::Error;

use crate::hodge::CohomologyTable;
use crate::report::Check;

#[derive(Debug, Error)]
pub enum MorseError {
    #[error("morse vector has length {got}, expected {expected} (= dim + 1)")]
    LengthMismatch { expected: usize, got: usize },
    #[error("family parameters must satisfy q >= p >= 0, got q={q}, p={p}")]
    BadParameters { q: i64, p: i64 },
}

/// Critical-point counts by index.
#[derive(Clone, Debug, Serialize)]
pub struct MorseData {
    pub m: Vec<u64>,
}

impl MorseData {
    pub fn new(m: Vec<u64>) -> Self {
        MorseData { m }
    }

    pub fn total(&self) -> u64 {
        self.m.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        self.m
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// Torsion-generator counts of integral homology by degree.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionData {
    pub tau: Vec<u64>,
}

/// Per-degree verdicts for the two Morse-type bounds.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Verdict {
    pub k: usize,
    pub h_plus: usize,
    pub bound_plus: u64,
    pub pass_plus: bool,
    pub h_times: usize,
    pub bound_times: u64,
    pub pass_times: bool,
}

fn m_at(m: &[u64], idx: i64) -> u64 {
    if idx < 0 || idx as usize >= m.len() {
        0
    } else {
        m[idx as usize]
    }
}

/// dim H^k_{d+dΛ} ≤ Σ_i m_{k-2i} and dim H^k_{ddΛ} ≤ Σ_i m_{2n-k+2i},
/// for k ≤ n.
pub fn theorem1_check(
    table: &CohomologyTable,
    morse: &MorseData,
) -> Result<Vec<Theorem1Verdict>, MorseError> {
    let dim = 2 * table.n;
    if morse.m.len() != dim + 1 {
        return Err(MorseError::LengthMismatch {
            expected: dim + 1,
            got: morse.m.len(),
        });
    }
    let mut out = Vec::new();
    for k in 0..=table.n {
        let bound_plus: u64 = (0..).map_while(|i| {
            let idx = k as i64 - 2 * i;
            if idx < 0 {
                None
            } else {
                Some(m_at(&morse.m, idx))
            }
        })
        .sum();
        let bound_times: u64 = (0..)
            .map_while(|i| {
                let idx = (dim - k) as i64 + 2 * i;
                if idx > dim as i64 {
                    None
                } else {
                    Some(m_at(&morse.m, idx))
                }
            })
            .sum();
        out.push(Theorem1Verdict {
            k,
            h_plus: table.h_plus[k],
            bound_plus,
            pass_plus: table.h_plus[k] as u64 <= bound_plus,
            h_times: table.h_times[k],
            bound_times,
            pass_times: table.h_times[k] as u64 <= bound_times,
        });
    }
    Ok(out)
}

/// Warns when Σ(-1)^i m_i differs from the Euler characteristic of the
/// table (a genuine Morse vector must match it).
pub fn euler_consistency(table: &CohomologyTable, morse: &MorseData) -> Check {
    let chi: i64 = table
        .b
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    let morse_chi = morse.euler();
    if chi == morse_chi {
        Check::bool(format!("Σ(-1)^i m_i = χ = {chi}"), true)
    } else {
        Check::warn(
            "Euler characteristic consistency",
            format!("Σ(-1)^i m_i = {morse_chi} but χ = {chi}; no actual Morse function has these counts"),
        )
    }
}

fn h_at(h: &[usize], idx: i64) -> u64 {
    if idx < 0 || idx as usize >= h.len() {
        0
    } else {
        h[idx as usize] as u64
    }
}

/// h^{n-2} + 2h^{n-1} + h^n, a lower bound for the total number of critical
/// points; negative indices contribute zero.
pub fn corollary1_bound(table: &CohomologyTable) -> u64 {
    corollary1_from_h(&table.h_plus, table.n)
}

pub fn corollary1_from_h(h_plus: &[usize], n: usize) -> u64 {
    let n = n as i64;
    h_at(h_plus, n - 2) + 2 * h_at(h_plus, n - 1) + h_at(h_plus, n)
}

/// In the borderline situation where the critical-point bound equals
/// 1 + Σb_i, parity (the strong Morse inequalities) pushes it to 2 + Σb_i.
/// Returns `None` when not applicable.
pub fn example1_strengthened(table: &CohomologyTable) -> Option<u64> {
    let sum_b: u64 = table.b.iter().map(|&b| b as u64).sum();
    if corollary1_bound(table) == 1 + sum_b {
        Some(2 + sum_b)
    } else {
        None
    }
}

/// Torsion-aware bounds for simply-connected manifolds of dimension ≥ 6:
/// (Σ b_{k-2i} + 2τ_{k-2i}, Σ b_{2n-k+2i} + 2τ_{2n-k+2i}).
pub fn corollary2_bound(
    betti: &[usize],
    torsion: &TorsionData,
    n: usize,
    k: usize,
) -> (u64, u64) {
    let dim = 2 * n;
    let t_at = |idx: i64| -> u64 {
        if idx < 0 || idx as usize >= torsion.tau.len() {
            0
        } else {
            torsion.tau[idx as usize]
        }
    };
    let mut plus = 0u64;
    let mut i = 0i64;
    loop {
        let idx = k as i64 - 2 * i;
        if idx < 0 {
            break;
        }
        plus += h_at(betti, idx) + 2 * t_at(idx);
        i += 1;
    }
    let mut times = 0u64;
    let mut i = 0i64;
    loop {
        let idx = (dim - k) as i64 + 2 * i;
        if idx > dim as i64 {
            break;
        }
        times += h_at(betti, idx) + 2 * t_at(idx);
        i += 1;
    }
    (plus, times)
}

/// The published dimension formulas of the fibered 4-manifold family with
/// parameters q ≥ p ≥ 0, with internal consistency assertions.
#[derive(Clone, Debug, Serialize)]
pub struct Example2Record {
    pub q: i64,
    pub p: i64,
    pub b: [u64; 5],
    pub h: [u64; 5],
    pub sum_b: u64,
    /// h² − b² = q − p
    pub h2_minus_b2: i64,
    /// the Morse-bound deficit q − p − 1 + Σ b_i
    pub deficit: i64,
}

pub fn example2_bound(q: i64, p: i64) -> Result<Example2Record, MorseError> {
    if !(q >= p && p >= 0) {
        return Err(MorseError::BadParameters { q, p });
    }
    let side = (q + p + 2) as u64;
    let b = [1, side, (2 * q + 2 * p + 2) as u64, side, 1];
    let h = [1, side, (3 * q + p + 2) as u64, side, 1];
    let sum_b: u64 = b.iter().sum();
    let record = Example2Record {
        q,
        p,
        b,
        h,
        sum_b,
        h2_minus_b2: h[2] as i64 - b[2] as i64,
        deficit: q - p - 1 + sum_b as i64,
    };
    debug_assert_eq!(record.h2_minus_b2, q - p);
    // the deficit equals the critical-point bound recomputed from the h's
    let h_usize: Vec<usize> = h.iter().map(|&x| x as usize).collect();
    debug_assert_eq!(record.deficit, corollary1_from_h(&h_usize, 2) as i64);
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::SymplecticComplex;
    use crate::nilmanifold::{example1_spec, torus_spec};
    use crate::report::Status;

    fn table(h_plus: Vec<usize>, b: Vec<usize>, n: usize) -> CohomologyTable {
        CohomologyTable {
            name: "test".into(),
            n,
            b,
            h_times: h_plus.clone(),
            primitive_h: vec![0; h_plus.len()],
            h_plus,
            hard_lefschetz: false,
            caveat: None,
        }
    }

    #[test]
    fn torus2_height_function_saturates() {
        let t = table(vec![1, 2, 1], vec![1, 2, 1], 1);
        let m = MorseData::new(vec![1, 2, 1]);
        let verdicts = theorem1_check(&t, &m).unwrap();
        assert!(verdicts.iter().all(|v| v.pass_plus && v.pass_times));
        assert_eq!(verdicts[1].bound_plus, 2);
        assert_eq!(verdicts[0].bound_plus, 1);
    }

    #[test]
    fn example1_verdicts_flip_with_m() {
        let sc = SymplecticComplex::new(example1_spec()).unwrap();
        let t = sc.table().unwrap();
        let fail = theorem1_check(&t, &MorseData::new(vec![1, 2, 2, 2, 1])).unwrap();
        assert!(!fail[2].pass_plus);
        assert_eq!(fail[2].bound_plus, 3); // m2 + m0
        let pass = theorem1_check(&t, &MorseData::new(vec![1, 2, 4, 2, 1])).unwrap();
        assert!(pass.iter().all(|v| v.pass_plus && v.pass_times));
        assert_eq!(pass[2].bound_plus, 5);
    }

    #[test]
    fn length_mismatch_rejected() {
        let t = table(vec![1, 2, 1], vec![1, 2, 1], 1);
        assert!(theorem1_check(&t, &MorseData::new(vec![1, 2])).is_err());
    }

    #[test]
    fn corollary1_values() {
        let sc = SymplecticComplex::new(example1_spec()).unwrap();
        let t = sc.table().unwrap();
        assert_eq!(corollary1_bound(&t), 9); // 1 + 2·2 + 4 = 1 + Σb_i
        assert_eq!(example1_strengthened(&t), Some(10));

        let sc = SymplecticComplex::new(torus_spec(2)).unwrap();
        let t = sc.table().unwrap();
        assert_eq!(corollary1_bound(&t), 15); // 1 + 2·4 + 6
        assert_eq!(example1_strengthened(&t), None);

        let t1 = table(vec![1, 2, 1], vec![1, 2, 1], 1);
        assert_eq!(corollary1_bound(&t1), 4); // h^{-1} = 0, 2h⁰ + h¹
    }

    #[test]
    fn corollary1_at_least_betti_combination() {
        for spec in [example1_spec(), torus_spec(1), torus_spec(2)] {
            let sc = SymplecticComplex::new(spec).unwrap();
            let t = sc.table().unwrap();
            let n = t.n as i64;
            let from_b = h_at(&t.b, n - 2) + 2 * h_at(&t.b, n - 1) + h_at(&t.b, n);
            assert!(corollary1_bound(&t) >= from_b);
        }
    }

    #[test]
    fn weak_morse_implies_theorem1_on_hard_lefschetz_tables() {
        // any m with m_k ≥ b_k passes when h = b
        let sc = SymplecticComplex::new(torus_spec(2)).unwrap();
        let t = sc.table().unwrap();
        let m = MorseData::new(vec![2, 5, 7, 4, 3]);
        assert!(t.b.iter().zip(&m.m).all(|(&b, &mm)| mm >= b as u64));
        let verdicts = theorem1_check(&t, &m).unwrap();
        assert!(verdicts.iter().all(|v| v.pass_plus && v.pass_times));
    }

    #[test]
    fn euler_warning_fires() {
        let sc = SymplecticComplex::new(example1_spec()).unwrap();
        let t = sc.table().unwrap();
        let c = euler_consistency(&t, &MorseData::new(vec![1, 2, 4, 2, 1]));
        assert_eq!(c.status, Status::Warn);
        let c = euler_consistency(&t, &MorseData::new(vec![1, 2, 2, 2, 1]));
        assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn corollary2_examples() {
        // torsion-free: reduces to Σ b_{k-2i}
        let torsion = TorsionData { tau: vec![0; 7] };
        let betti = [1usize, 0, 3, 4, 3, 0, 1];
        let (plus, _) = corollary2_bound(&betti, &torsion, 3, 2);
        assert_eq!(plus, 3 + 1);
        // τ₂ = 1, k = 2: b₂ + 2τ₂ + b₀ = 3 + 2 + 1 = 6
        let torsion = TorsionData {
            tau: vec![0, 0, 1, 0, 0, 0, 0],
        };
        let (plus, _) = corollary2_bound(&betti, &torsion, 3, 2);
        assert_eq!(plus, 6);
        // k = 0
        let (plus, _) = corollary2_bound(&betti, &torsion, 3, 0);
        assert_eq!(plus, 1);
    }

    #[test]
    fn example2_formulas() {
        let r = example2_bound(2, 0).unwrap();
        assert_eq!(r.b[2], 6);
        assert_eq!(r.h[2], 8);
        assert_eq!(r.b[1], 4);
        assert_eq!(r.sum_b, 16);
        assert_eq!(r.deficit, 17);
        assert_eq!(r.h2_minus_b2, 2);

        // q = p: deficit = Σb_i − 1
        let r = example2_bound(3, 3).unwrap();
        assert_eq!(r.h2_minus_b2, 0);
        assert_eq!(r.deficit, r.sum_b as i64 - 1);

        assert!(example2_bound(1, 2).is_err());
        assert!(example2_bound(-1, -1).is_err());
    }
}
