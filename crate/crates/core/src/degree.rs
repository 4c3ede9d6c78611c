//! Degree data `(n, α, β)` describing a morphism
//! `⊕ O(-α_j) → ⊕ O(-β_i)` on projective `n`-space, and its derived invariants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Structural problems with degree data. These are distinct from the
/// numerical hypotheses checked by [`DegreeData::validate_standard`] and
/// [`DegreeData::validate_main`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("projective dimension n={0} must be at least 2")]
    AmbientTooSmall(i64),
    #[error("the target bundle needs at least one summand (b = 0)")]
    EmptyTarget,
    #[error("a={a} < b={b}: the source bundle must have at least as many summands as the target")]
    TooFewColumns { a: usize, b: usize },
    #[error("codimension c={c} exceeds n={n}; the degeneracy locus would be empty")]
    CodimensionTooLarge { c: usize, n: i64 },
    #[error("{which} sequence is not non-decreasing (input order {given:?})")]
    Unsorted {
        which: &'static str,
        given: Vec<i64>,
    },
    #[error("cannot parse degree data: {0}")]
    Parse(String),
}

/// Which clause of a numerical hypothesis fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionFailure {
    /// `α_i ≥ β_i` fails at the given (1-based) index.
    WeakInequality(usize),
    /// `α_i ≥ β_{i+1}` fails at the given (1-based) index.
    ShiftedInequality(usize),
    /// No index with `α_i > β_i`.
    NoStrictInequality,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionFailure::WeakInequality(i) => {
                write!(f, "α_i ≥ β_i fails at i={i}")
            }
            ConditionFailure::ShiftedInequality(i) => {
                write!(f, "α_i ≥ β_(i+1) fails at i={i}")
            }
            ConditionFailure::NoStrictInequality => write!(f, "α_i > β_i for some i fails"),
        }
    }
}

/// Degree data of a determinantal presentation. Sequences are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeData {
    n: i64,
    alphas: Vec<i64>,
    betas: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedInvariants {
    /// Expected codimension `a - b + 1`.
    pub c: usize,
    /// Expected dimension `n - c`.
    pub dim_x: i64,
    /// `Σα_j - Σβ_i`.
    pub ell: i64,
}

impl DegreeData {
    /// Builds degree data, sorting both sequences.
    pub fn new(n: i64, mut alphas: Vec<i64>, mut betas: Vec<i64>) -> Result<Self, DegreeError> {
        alphas.sort_unstable();
        betas.sort_unstable();
        Self::check_shape(n, &alphas, &betas)?;
        Ok(Self { n, alphas, betas })
    }

    /// Builds degree data, rejecting sequences that are not already sorted.
    pub fn new_sorted(n: i64, alphas: Vec<i64>, betas: Vec<i64>) -> Result<Self, DegreeError> {
        for (which, seq) in [("alpha", &alphas), ("beta", &betas)] {
            if seq.windows(2).any(|w| w[0] > w[1]) {
                return Err(DegreeError::Unsorted {
                    which,
                    given: seq.clone(),
                });
            }
        }
        Self::check_shape(n, &alphas, &betas)?;
        Ok(Self { n, alphas, betas })
    }

    fn check_shape(n: i64, alphas: &[i64], betas: &[i64]) -> Result<(), DegreeError> {
        if n < 2 {
            return Err(DegreeError::AmbientTooSmall(n));
        }
        let (a, b) = (alphas.len(), betas.len());
        if b == 0 {
            return Err(DegreeError::EmptyTarget);
        }
        if a < b {
            return Err(DegreeError::TooFewColumns { a, b });
        }
        let c = a - b + 1;
        if c as i64 > n {
            return Err(DegreeError::CodimensionTooLarge { c, n });
        }
        Ok(())
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn alphas(&self) -> &[i64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[i64] {
        &self.betas
    }

    pub fn a(&self) -> usize {
        self.alphas.len()
    }

    pub fn b(&self) -> usize {
        self.betas.len()
    }

    pub fn codim(&self) -> usize {
        self.a() - self.b() + 1
    }

    pub fn dim_x(&self) -> i64 {
        self.n - self.codim() as i64
    }

    pub fn ell(&self) -> i64 {
        self.alphas.iter().sum::<i64>() - self.betas.iter().sum::<i64>()
    }

    /// Number of variables of the homogeneous coordinate ring.
    pub fn n_vars(&self) -> usize {
        self.n as usize + 1
    }

    /// Degree of the `(i, j)` matrix entry, `α_j - β_i` (may be negative).
    pub fn entry_degree(&self, row: usize, col: usize) -> i64 {
        self.alphas[col] - self.betas[row]
    }

    pub fn derive(&self) -> DerivedInvariants {
        DerivedInvariants {
            c: self.codim(),
            dim_x: self.dim_x(),
            ell: self.ell(),
        }
    }

    /// Condition guaranteeing the expected codimension for general φ:
    /// `α_i ≥ β_i` for all `i ≤ b`, strictly for some `i`.
    pub fn check_standard(&self) -> Result<(), ConditionFailure> {
        let pairs = self.alphas.iter().zip(&self.betas);
        for (i, (al, be)) in pairs.clone().enumerate() {
            if al < be {
                return Err(ConditionFailure::WeakInequality(i + 1));
            }
        }
        if pairs.clone().any(|(al, be)| al > be) {
            Ok(())
        } else {
            Err(ConditionFailure::NoStrictInequality)
        }
    }

    /// Hypothesis of the main dimension theorem:
    /// `α_i ≥ β_{i+1}` for `i < b`, and `α_i > β_i` for some `i ≤ b`.
    pub fn check_main(&self) -> Result<(), ConditionFailure> {
        for i in 0..self.b().saturating_sub(1) {
            if self.alphas[i] < self.betas[i + 1] {
                return Err(ConditionFailure::ShiftedInequality(i + 1));
            }
        }
        if self.alphas.iter().zip(&self.betas).any(|(al, be)| al > be) {
            Ok(())
        } else {
            Err(ConditionFailure::NoStrictInequality)
        }
    }

    pub fn validate_standard(&self) -> bool {
        self.check_standard().is_ok()
    }

    pub fn validate_main(&self) -> bool {
        self.check_main().is_ok()
    }

    /// All `α_j` equal to some `d ≥ 1` and all `β_i = 0`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.alphas[0];
        let homogeneous =
            d >= 1 && self.alphas.iter().all(|&x| x == d) && self.betas.iter().all(|&x| x == 0);
        homogeneous.then_some(d)
    }

    /// Shift every α and β by `t`.
    pub fn twisted(&self, t: i64) -> Self {
        Self {
            n: self.n,
            alphas: self.alphas.iter().map(|x| x + t).collect(),
            betas: self.betas.iter().map(|x| x + t).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("degree data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DegreeError> {
        #[derive(Deserialize)]
        struct Raw {
            n: i64,
            alphas: Vec<i64>,
            betas: Vec<i64>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| DegreeError::Parse(e.to_string()))?;
        Self::new(raw.n, raw.alphas, raw.betas)
    }
}

impl<'de> Deserialize<'de> for DegreeData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: i64,
            alphas: Vec<i64>,
            betas: Vec<i64>,
        }
        let raw = Raw::deserialize(de)?;
        DegreeData::new(raw.n, raw.alphas, raw.betas).map_err(serde::de::Error::custom)
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Canonical text form, e.g. `n=4 a=1,1,1 b=0,0`.
impl fmt::Display for DegreeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} a={} b={}",
            self.n,
            join(&self.alphas),
            join(&self.betas)
        )
    }
}

impl FromStr for DegreeData {
    type Err = DegreeError;

    /// Accepts the canonical text form or the JSON object form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return Self::from_json(s);
        }
        let (mut n, mut alphas, mut betas) = (None, None, None);
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| DegreeError::Parse(format!("expected key=value, got {tok:?}")))?;
            let list = |v: &str| -> Result<Vec<i64>, DegreeError> {
                if v.is_empty() {
                    return Ok(Vec::new());
                }
                v.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|e| DegreeError::Parse(format!("{x:?}: {e}")))
                    })
                    .collect()
            };
            match key {
                "n" => {
                    n = Some(
                        val.parse::<i64>()
                            .map_err(|e| DegreeError::Parse(format!("n: {e}")))?,
                    )
                }
                "a" | "alpha" | "alphas" => alphas = Some(list(val)?),
                "b" | "beta" | "betas" => betas = Some(list(val)?),
                other => return Err(DegreeError::Parse(format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| DegreeError::Parse(format!("missing {k}="));
        Self::new(
            n.ok_or_else(|| missing("n"))?,
            alphas.ok_or_else(|| missing("a"))?,
            betas.ok_or_else(|| missing("b"))?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(n: i64, a: &[i64], b: &[i64]) -> DegreeData {
        DegreeData::new(n, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn standard_examples() {
        assert!(dd(3, &[1, 2], &[0, 0]).validate_standard());
        assert_eq!(
            dd(3, &[0, 0, 0], &[0, 0]).check_standard(),
            Err(ConditionFailure::NoStrictInequality)
        );
        assert_eq!(
            dd(4, &[1, 1, 1], &[0, 2]).check_standard(),
            Err(ConditionFailure::WeakInequality(2))
        );
    }

    #[test]
    fn main_examples() {
        assert!(dd(4, &[1, 1, 1], &[0, 0]).validate_main());
        assert_eq!(
            dd(5, &[2, 2, 3], &[0, 3]).check_main(),
            Err(ConditionFailure::ShiftedInequality(1))
        );
        assert!(dd(4, &[1, 2, 2, 2], &[1, 1, 1]).validate_main());
        // b = 1: only the strict clause
        assert!(dd(3, &[1, 1], &[0]).validate_main());
        assert!(!dd(3, &[0, 1], &[0]).validate_main());
    }

    #[test]
    fn derive_examples() {
        let e = dd(4, &[1, 1, 1], &[0, 0]).derive();
        assert_eq!((e.c, e.dim_x, e.ell), (2, 2, 3));
        let e = dd(5, &[1, 1, 1, 1], &[0, 0]).derive();
        assert_eq!((e.c, e.dim_x, e.ell), (3, 2, 4));
        let e = dd(3, &[1, 2], &[0, 0]).derive();
        assert_eq!((e.c, e.dim_x, e.ell), (1, 2, 3));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            DegreeData::new(4, vec![1, 1], vec![]),
            Err(DegreeError::EmptyTarget)
        );
        assert_eq!(
            DegreeData::new(4, vec![1], vec![0, 0]),
            Err(DegreeError::TooFewColumns { a: 1, b: 2 })
        );
        assert_eq!(
            DegreeData::new(1, vec![1, 1], vec![0]),
            Err(DegreeError::AmbientTooSmall(1))
        );
        assert!(matches!(
            DegreeData::new(2, vec![1, 1, 1, 1], vec![0]),
            Err(DegreeError::CodimensionTooLarge { c: 4, n: 2 })
        ));
        assert!(matches!(
            DegreeData::new_sorted(4, vec![2, 1, 1], vec![0, 0]),
            Err(DegreeError::Unsorted { which: "alpha", .. })
        ));
    }

    #[test]
    fn constructor_sorts() {
        let d = dd(4, &[2, 1, 1], &[1, 0]);
        assert_eq!(d.alphas(), &[1, 1, 2]);
        assert_eq!(d.betas(), &[0, 1]);
    }

    #[test]
    fn text_and_json_forms() {
        let d: DegreeData = "n=4 a=1,1,1 b=0,0".parse().unwrap();
        assert_eq!(d, dd(4, &[1, 1, 1], &[0, 0]));
        assert_eq!(d.to_string(), "n=4 a=1,1,1 b=0,0");
        let j: DegreeData = r#"{"n":4,"alphas":[1,1,1],"betas":[0,0]}"#.parse().unwrap();
        assert_eq!(j, d);
        assert_eq!(d.to_json(), r#"{"n":4,"alphas":[1,1,1],"betas":[0,0]}"#);
        assert!("n=4 a=1,x b=0".parse::<DegreeData>().is_err());
        assert!("n=4 a=1,1".parse::<DegreeData>().is_err());
    }

    #[test]
    fn homogeneous_detection() {
        assert_eq!(dd(4, &[1, 1, 1], &[0, 0]).homogeneous_degree(), Some(1));
        assert_eq!(dd(5, &[1, 1, 2], &[0, 0]).homogeneous_degree(), None);
        assert_eq!(dd(5, &[2, 2, 2], &[0, 1]).homogeneous_degree(), None);
    }
}
