//! Section counts of the cokernel sheaf of a general `φ`, read off its
//! Buchsbaum-Rim resolution, and the resulting count `h⁰(F)` which gives an
//! independent route to the family dimension.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{ConditionFailure, DegreeData};
use crate::formula::binomial_dim;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("degree data fails the expected-codimension condition: {0}")]
    NotStandard(ConditionFailure),
    #[error("codimension 1: the cokernel has no Buchsbaum-Rim tail to evaluate")]
    Hypersurface,
    #[error("resolution term s={s} out of range 0..={max}")]
    TermOutOfRange { s: i64, max: usize },
    #[error("section count of F needs dim X >= 2 (got {0})")]
    DimensionTooSmall(i64),
}

/// The `s`-th tail term `Λ^{b+s+1}A ⊗ S^s B* (Σβ)` of the resolution,
/// split into line bundles `O(offset - n)`, so that its twist by `t` has
/// `C(offset + t, n)` sections per summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTerm {
    pub s: usize,
    /// Number of line-bundle summands.
    pub rank: u64,
    /// `n - ℓ + (a-b-s-1 distinct α's) + (s weakly increasing β's)`.
    pub degree_offsets: Vec<i64>,
}

fn check(d: &DegreeData) -> Result<(), SheafError> {
    d.check_standard().map_err(SheafError::NotStandard)?;
    if d.codim() < 2 {
        return Err(SheafError::Hypersurface);
    }
    Ok(())
}

pub fn resolution_term(d: &DegreeData, s: i64) -> Result<ResolutionTerm, SheafError> {
    check(d)?;
    let max = d.codim() - 2;
    if s < 0 || s as usize > max {
        return Err(SheafError::TermOutOfRange { s, max });
    }
    let s = s as usize;
    let (a, b, n) = (d.a(), d.b(), d.n());
    let (al, be) = (d.alphas(), d.betas());
    let alpha_count = a - b - s - 1;
    let base = n - d.ell();
    let mut offsets = Vec::new();
    for alpha_idx in (0..a).combinations(alpha_count) {
        let alpha_part: i64 = alpha_idx.iter().map(|&j| al[j]).sum();
        for beta_idx in (0..b).combinations_with_replacement(s) {
            let beta_part: i64 = beta_idx.iter().map(|&j| be[j]).sum();
            offsets.push(base + alpha_part + beta_part);
        }
    }
    let multisets = binomial((b + s - 1) as u64, s as u64);
    let rank = binomial(a as u64, alpha_count as u64) * multisets;
    Ok(ResolutionTerm {
        s,
        rank,
        degree_offsets: offsets,
    })
}

pub fn resolution_terms(d: &DegreeData) -> Result<Vec<ResolutionTerm>, SheafError> {
    check(d)?;
    (0..=(d.codim() as i64 - 2))
        .map(|s| resolution_term(d, s))
        .collect()
}

/// `h⁰(E_s(t))`.
pub fn h0_term(d: &DegreeData, s: i64, t: i64) -> Result<BigInt, SheafError> {
    let term = resolution_term(d, s)?;
    let n = d.n();
    Ok(term
        .degree_offsets
        .iter()
        .map(|&o| BigInt::from(binomial_dim(o + t, n)))
        .sum())
}

/// `f(t) = h⁰(C(t))` for general `φ`: the alternating sum over the resolution
/// `0 → E_{c-2} → … → E_0 → A → B → C → 0`.
pub fn cokernel_f(d: &DegreeData, t: i64) -> Result<BigInt, SheafError> {
    let terms = resolution_terms(d)?;
    Ok(eval_f(d, &terms, t))
}

fn eval_f(d: &DegreeData, terms: &[ResolutionTerm], t: i64) -> BigInt {
    let n = d.n();
    let sections = |top: i64| BigInt::from(binomial_dim(top, n));
    let mut f = BigInt::zero();
    for &beta in d.betas() {
        f += sections(n - beta + t);
    }
    for &alpha in d.alphas() {
        f -= sections(n - alpha + t);
    }
    for term in terms {
        let h: BigInt = term.degree_offsets.iter().map(|&o| sections(o + t)).sum();
        if term.s % 2 == 0 {
            f += h;
        } else {
            f -= h;
        }
    }
    f
}

/// `h⁰(F) = Σ_j f(α_j) - Σ_i f(β_i) + 1`.
pub fn h0_f(d: &DegreeData) -> Result<BigInt, SheafError> {
    let terms = resolution_terms(d)?;
    if d.dim_x() < 2 {
        return Err(SheafError::DimensionTooSmall(d.dim_x()));
    }
    let mut total = BigInt::from(1);
    for &alpha in d.alphas() {
        total += eval_f(d, &terms, alpha);
    }
    for &beta in d.betas() {
        total -= eval_f(d, &terms, beta);
    }
    Ok(total)
}

/// Smallest `t` at which any binomial in `f(t)` can be non-zero; every
/// summand vanishes below it.
pub fn vanishing_threshold(d: &DegreeData) -> Result<i64, SheafError> {
    let terms = resolution_terms(d)?;
    let n = d.n();
    let offsets = d
        .betas()
        .iter()
        .map(|b| n - b)
        .chain(d.alphas().iter().map(|a| n - a))
        .chain(terms.iter().flat_map(|t| t.degree_offsets.iter().copied()));
    Ok(offsets.map(|o| n - o).min().expect("at least one summand"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(n: i64, a: &[i64], b: &[i64]) -> DegreeData {
        DegreeData::new(n, a.to_vec(), b.to_vec()).unwrap()
    }

    fn e1() -> DegreeData {
        dd(4, &[1, 1, 1], &[0, 0])
    }

    #[test]
    fn h0_term_examples() {
        assert_eq!(h0_term(&e1(), 0, 1).unwrap(), BigInt::zero());
        assert_eq!(h0_term(&e1(), 0, 3).unwrap(), BigInt::from(1));
        assert_eq!(h0_term(&e1(), 0, -50).unwrap(), BigInt::zero());
        let d = dd(6, &[1, 1, 1, 2], &[0, 0]);
        assert_eq!(h0_term(&d, 1, -50).unwrap(), BigInt::zero());
    }

    #[test]
    fn h0_term_range() {
        assert_eq!(
            h0_term(&e1(), 1, 0),
            Err(SheafError::TermOutOfRange { s: 1, max: 0 })
        );
        assert_eq!(
            h0_term(&e1(), -1, 0),
            Err(SheafError::TermOutOfRange { s: -1, max: 0 })
        );
    }

    #[test]
    fn cokernel_f_cubic_scroll() {
        let vals: Vec<_> = (-1..=2).map(|t| cokernel_f(&e1(), t).unwrap()).collect();
        // f(2) = 2·C(6,4) - 3·C(5,4) + C(3,4) = 30 - 15 + 0
        assert_eq!(vals, [0, 2, 7, 15].map(BigInt::from));
    }

    #[test]
    fn h0_f_examples() {
        assert_eq!(h0_f(&e1()).unwrap(), BigInt::from(18));
        assert_eq!(
            h0_f(&dd(4, &[1, 1, 1, 1], &[0, 0, 0])).unwrap(),
            BigInt::from(36)
        );
        assert_eq!(
            h0_f(&dd(5, &[1, 1, 1, 1], &[0, 0])).unwrap(),
            BigInt::from(29)
        );
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            cokernel_f(&dd(3, &[1, 2], &[0, 0]), 0),
            Err(SheafError::Hypersurface)
        );
        assert_eq!(
            h0_f(&dd(3, &[1, 1, 1], &[0, 0])),
            Err(SheafError::DimensionTooSmall(1))
        );
    }

    #[test]
    fn term_ranks() {
        let d = dd(6, &[1, 1, 1, 1, 2], &[0, 0]);
        for term in resolution_terms(&d).unwrap() {
            assert_eq!(term.degree_offsets.len() as u64, term.rank);
        }
        let ranks: Vec<u64> = resolution_terms(&d)
            .unwrap()
            .iter()
            .map(|t| t.rank)
            .collect();
        // C(5,2)·1, C(5,1)·2, C(5,0)·3
        assert_eq!(ranks, vec![10, 10, 3]);
    }

    #[test]
    fn threshold_is_min_beta() {
        assert_eq!(vanishing_threshold(&e1()).unwrap(), 0);
        let d = dd(5, &[1, 2, 3], &[-1, 1]);
        assert_eq!(vanishing_threshold(&d).unwrap(), -1);
    }
}
