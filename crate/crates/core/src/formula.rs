//! Closed-form dimension of the family of determinantal subvarieties with
//! given degree data: the orbit-space count `λ_c`, the correction terms
//! `K_3, …, K_c`, the homogeneous closed form, and the canonical class.
//!
//! Every binomial here counts forms of a fixed degree in `n + 1` variables,
//! so `C(top, n)` is zero whenever `top < n`, negative tops included.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{ConditionFailure, DegreeData};
use crate::exact::ExactInt;

/// `C(top, n)` under the dimension convention: zero when `top < n`.
///
/// Panics if `n < 0`.
pub fn binomial_dim(top: i64, n: i64) -> BigUint {
    assert!(n >= 0, "binomial_dim: negative lower index {n}");
    if top < n {
        return BigUint::zero();
    }
    // C(top, n) = C(top, top - n); iterate over the smaller side.
    let k = n.min(top - n) as u64;
    let top = top as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= top - i;
        acc /= i + 1;
    }
    acc
}

fn bdim(top: i64, n: i64) -> BigInt {
    BigInt::from(binomial_dim(top, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("degree data fails the expected-codimension condition: {0}")]
    NotStandard(ConditionFailure),
    #[error("homogeneous closed form needs a >= b + 1 (a={a}, b={b})")]
    CorollaryShape { a: i64, b: i64 },
    #[error("homogeneous closed form needs d >= 1 (d={0})")]
    CorollaryDegree(i64),
    #[error("homogeneous closed form needs dim X = n + b - a - 1 >= 2 (got {0})")]
    CorollaryDimension(i64),
}

fn require_standard(d: &DegreeData) -> Result<(), FormulaError> {
    d.check_standard().map_err(FormulaError::NotStandard)
}

/// `dim Hom(A, B) + dim Hom(B, A) - dim End(A) - dim End(B) + 1`.
pub fn lambda_c(d: &DegreeData) -> Result<BigInt, FormulaError> {
    require_standard(d)?;
    let n = d.n();
    let (al, be) = (d.alphas(), d.betas());
    let mut total = BigInt::one();
    for (&x, &y) in al.iter().cartesian_product(be) {
        total += bdim(x - y + n, n) + bdim(y - x + n, n);
    }
    for (&x, &y) in al.iter().cartesian_product(al) {
        total -= bdim(x - y + n, n);
    }
    for (&x, &y) in be.iter().cartesian_product(be) {
        total -= bdim(x - y + n, n);
    }
    Ok(total)
}

/// Pairs `(ℓ_i, h_{i-3})` for `i = 3..=c`, read literally off the sorted
/// sequences:
/// `ℓ_i = α_1 + … + α_{b+i-1} - Σβ` and `h_{i-3} = 2α_{b+i-1} - ℓ_i + n`.
pub fn ell_h_sequences(d: &DegreeData) -> Result<Vec<(i64, i64)>, FormulaError> {
    require_standard(d)?;
    let (al, b, n) = (d.alphas(), d.b(), d.n());
    let beta_sum: i64 = d.betas().iter().sum();
    Ok((3..=d.codim())
        .map(|i| {
            let top = b + i - 1;
            let ell_i = al[..top].iter().sum::<i64>() - beta_sum;
            let h = 2 * al[top - 1] - ell_i + n;
            (ell_i, h)
        })
        .collect())
}

/// `K_3, …, K_c`. For `K_{i+3}` the α-indices run over strictly increasing
/// tuples in `1..=b+i+1` and the β-indices over weakly increasing tuples in
/// `1..=b`, with `r + s = i` and sign `(-1)^(i-r)`.
pub fn k_terms(d: &DegreeData) -> Result<Vec<BigInt>, FormulaError> {
    let hs = ell_h_sequences(d)?;
    let (al, be, b, n) = (d.alphas(), d.betas(), d.b(), d.n());
    let mut out = Vec::with_capacity(hs.len());
    for (i, &(_, h)) in hs.iter().enumerate() {
        let mut k = BigInt::zero();
        for r in 0..=i {
            let s = i - r;
            let sign_negative = (i - r) % 2 == 1;
            for alpha_idx in (0..b + i + 1).combinations(r) {
                let alpha_part: i64 = alpha_idx.iter().map(|&j| al[j]).sum();
                for beta_idx in (0..b).combinations_with_replacement(s) {
                    let beta_part: i64 = beta_idx.iter().map(|&j| be[j]).sum();
                    let term = bdim(h + alpha_part + beta_part, n);
                    if sign_negative {
                        k -= term;
                    } else {
                        k += term;
                    }
                }
            }
        }
        out.push(k);
    }
    Ok(out)
}

/// `a·b·C(n+d, n) - a² - b² + 1`, the dimension for `α_j = d`, `β_i = 0`.
pub fn corollary_homogeneous(n: i64, a: i64, b: i64, d: i64) -> Result<BigInt, FormulaError> {
    if b < 1 || a < b + 1 {
        return Err(FormulaError::CorollaryShape { a, b });
    }
    if d < 1 {
        return Err(FormulaError::CorollaryDegree(d));
    }
    let dim_x = n + b - a - 1;
    if dim_x < 2 {
        return Err(FormulaError::CorollaryDimension(dim_x));
    }
    Ok(BigInt::from(a * b) * bdim(n + d, n) - a * a - b * b + 1)
}

/// Coefficients of the canonical class `h·H + p·P` of the projective bundle
/// resolving the degeneracy locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClass {
    pub h: i64,
    pub p: i64,
}

pub fn canonical_class(d: &DegreeData) -> CanonicalClass {
    CanonicalClass {
        h: d.ell() - d.n() - 1,
        p: d.a() as i64 - d.b() as i64,
    }
}

/// Which parts of the dimension theorem apply to this data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRegime {
    pub standard: bool,
    pub numerical: bool,
    /// Parametrization is generically finite (`dim X ≥ 1`).
    pub generically_finite: bool,
    /// Dominant onto a generically smooth component (`dim X ≥ 2`).
    pub component: bool,
    /// Birational (`β_b < α_1` as well).
    pub birational: bool,
}

impl TheoremRegime {
    pub fn of(d: &DegreeData) -> Self {
        let numerical = d.validate_main() && d.a() > d.b();
        let generically_finite = numerical && d.dim_x() >= 1;
        let component = numerical && d.dim_x() >= 2;
        let birational = component && d.betas()[d.b() - 1] < d.alphas()[0];
        Self {
            standard: d.validate_standard(),
            numerical,
            generically_finite,
            component,
            birational,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub data: DegreeData,
    pub c: usize,
    pub dim_x: i64,
    pub ell: i64,
    pub lambda_c: ExactInt,
    /// `K_3, …, K_c`; empty when `c ≤ 2`.
    pub k_terms: Vec<ExactInt>,
    pub dim_y: ExactInt,
    #[serde(default)]
    pub corollary_value: Option<ExactInt>,
    pub canonical: CanonicalClass,
    pub regime: TheoremRegime,
}

pub fn dim_y(d: &DegreeData) -> Result<DimensionReport, FormulaError> {
    let lambda = lambda_c(d)?;
    let ks = k_terms(d)?;
    let total = ks.iter().fold(lambda.clone(), |acc, k| acc + k);
    let corollary_value = d
        .homogeneous_degree()
        .and_then(|deg| corollary_homogeneous(d.n(), d.a() as i64, d.b() as i64, deg).ok())
        .map(ExactInt);
    let inv = d.derive();
    Ok(DimensionReport {
        data: d.clone(),
        c: inv.c,
        dim_x: inv.dim_x,
        ell: inv.ell,
        lambda_c: ExactInt(lambda),
        k_terms: ks.into_iter().map(ExactInt).collect(),
        dim_y: ExactInt(total),
        corollary_value,
        canonical: canonical_class(d),
        regime: TheoremRegime::of(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(n: i64, a: &[i64], b: &[i64]) -> DegreeData {
        DegreeData::new(n, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_dim(5, 4), BigUint::from(5u32));
        assert_eq!(binomial_dim(3, 4), BigUint::zero());
        assert_eq!(binomial_dim(-1, 4), BigUint::zero());
        assert_eq!(binomial_dim(4, 4), BigUint::one());
        assert_eq!(binomial_dim(0, 0), BigUint::one());
        assert_eq!(
            binomial_dim(60, 30),
            "118264581564861424".parse::<BigUint>().unwrap()
        );
    }

    #[test]
    #[should_panic]
    fn binomial_negative_bottom() {
        binomial_dim(3, -1);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(
            lambda_c(&dd(4, &[1, 1, 1], &[0, 0])).unwrap(),
            BigInt::from(18)
        );
        assert_eq!(
            lambda_c(&dd(5, &[1, 1, 1, 1], &[0, 0])).unwrap(),
            BigInt::from(29)
        );
        assert_eq!(
            lambda_c(&dd(4, &[1, 1, 1, 1], &[0, 0, 0])).unwrap(),
            BigInt::from(36)
        );
    }

    #[test]
    fn ell_h_examples() {
        assert_eq!(
            ell_h_sequences(&dd(5, &[1, 1, 1, 1], &[0, 0])).unwrap(),
            vec![(4, 3)]
        );
        assert!(ell_h_sequences(&dd(4, &[1, 1, 1], &[0, 0]))
            .unwrap()
            .is_empty());
        // frozen from a literal independent evaluation
        assert_eq!(
            ell_h_sequences(&dd(6, &[1, 1, 1, 1, 2], &[0, 0])).unwrap(),
            vec![(4, 4), (6, 4)]
        );
    }

    #[test]
    fn k_examples() {
        assert_eq!(
            k_terms(&dd(5, &[1, 1, 1, 1], &[0, 0])).unwrap(),
            vec![BigInt::zero()]
        );
        assert!(k_terms(&dd(4, &[1, 1, 1], &[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn dim_y_examples() {
        let r = dim_y(&dd(4, &[1, 1, 1], &[0, 0])).unwrap();
        assert_eq!(r.dim_y, 18);
        assert_eq!(r.canonical, CanonicalClass { h: -2, p: 1 });
        assert_eq!(r.corollary_value, Some(ExactInt::from(18)));

        let r = dim_y(&dd(4, &[1, 1, 1, 1], &[0, 0, 0])).unwrap();
        assert_eq!(r.dim_y, 36);
        assert_eq!(r.corollary_value, Some(ExactInt::from(36)));

        let r = dim_y(&dd(5, &[1, 1, 1, 1], &[0, 0])).unwrap();
        assert_eq!(r.dim_y, 29);
        assert_eq!(r.k_terms.len(), 1);
    }

    #[test]
    fn hypersurface_still_evaluates() {
        let r = dim_y(&dd(3, &[1, 2], &[0, 0])).unwrap();
        assert_eq!(r.c, 1);
        assert!(r.k_terms.is_empty());
        assert!(!r.regime.generically_finite);
        assert!(!r.regime.component);
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_homogeneous(4, 4, 3, 1).unwrap(), BigInt::from(36));
        assert_eq!(corollary_homogeneous(4, 3, 2, 1).unwrap(), BigInt::from(18));
        assert_eq!(
            corollary_homogeneous(6, 4, 3, 2).unwrap(),
            BigInt::from(312)
        );
        assert_eq!(
            corollary_homogeneous(3, 3, 2, 1),
            Err(FormulaError::CorollaryDimension(1))
        );
        assert_eq!(
            corollary_homogeneous(4, 2, 2, 1),
            Err(FormulaError::CorollaryShape { a: 2, b: 2 })
        );
        assert_eq!(
            corollary_homogeneous(4, 3, 2, 0),
            Err(FormulaError::CorollaryDegree(0))
        );
    }

    #[test]
    fn rejects_non_standard() {
        assert!(matches!(
            dim_y(&dd(3, &[0, 0, 0], &[0, 0])),
            Err(FormulaError::NotStandard(
                ConditionFailure::NoStrictInequality
            ))
        ));
    }
}
