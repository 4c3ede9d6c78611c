//! One verification run: sample a random `φ`, take its maximal minors and
//! compare every oracle with the closed-form dimension.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{ConditionFailure, DegreeData};
use crate::exact::ExactInt;
use crate::field::PrimeField;
use crate::formula::{dim_y, FormulaError};
use crate::matrix::{MatrixError, PolyMatrix};
use crate::oracle::{
    default_syzygy_bound, default_window_start, fit_hilbert_polynomial, orbit_space_dim,
    stabilizer_lie_dim, tangent_space_dim, FitError, HilbertFit, TangentError,
};

/// Samples tried before giving up, including the first.
pub const MAX_ATTEMPTS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub prime: PrimeField,
    pub seed: u64,
    /// Largest syzygy degree; `None` for [`default_syzygy_bound`].
    pub bound: Option<u32>,
    /// First degree of the Hilbert-function window; `None` for
    /// [`default_window_start`].
    pub window: Option<u32>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            prime: PrimeField::default(),
            seed: 1,
            bound: None,
            window: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("degree data fails the expected-codimension condition: {0}")]
    NotStandard(ConditionFailure),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{attempts} samples were degenerate (last: {last_reason})")]
    ResamplingExhausted { attempts: u32, last_reason: String },
    #[error("seed {seed_used}: {source}")]
    Window { seed_used: u64, source: FitError },
    #[error("seed {seed_used}: {source}")]
    Unstable {
        seed_used: u64,
        source: TangentError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsUsed {
    pub syzygy_bound: u32,
    pub tangent_at_next_bound: u64,
    /// `(degree, count)` of syzygies contributing new conditions.
    pub syzygy_leads: Vec<(u32, usize)>,
    pub window_start: u32,
    pub window_end: u32,
}

/// How the tangent-space dimension is compared with the formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentAssertion {
    /// `c ≥ 2` and `dim X ≥ 2`: the component is generically smooth.
    Equal,
    /// `dim X = 1`: only an upper bound on the family is known.
    AtLeast,
    /// Hypersurfaces and points: recorded only.
    None,
}

impl TangentAssertion {
    pub fn of(d: &DegreeData) -> Self {
        match (d.codim(), d.dim_x()) {
            (c, x) if c >= 2 && x >= 2 => TangentAssertion::Equal,
            (c, 1) if c >= 2 => TangentAssertion::AtLeast,
            _ => TangentAssertion::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matches {
    pub orbit_eq_formula: bool,
    pub tangent_eq_formula: bool,
    pub tangent_ge_formula: bool,
    pub fitted_dim_eq_dim_x: bool,
    pub tangent_assertion: TangentAssertion,
    /// Every asserted comparison holds.
    pub all_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RecordWire", try_from = "RecordWire")]
pub struct VerificationRecord {
    pub data: DegreeData,
    pub prime: PrimeField,
    pub seed: u64,
    pub seed_used: u64,
    pub resamples: u32,
    pub hf_table: Vec<(u32, u64)>,
    /// Coefficients in increasing powers of `t`.
    pub hilbert_polynomial: Vec<String>,
    pub fitted_dim: i64,
    pub fitted_degree: i64,
    pub tangent_dim: u64,
    pub stab_dim: u64,
    pub orbit_space_dim: i64,
    pub formula_dim: ExactInt,
    pub bounds_used: BoundsUsed,
}

impl VerificationRecord {
    pub fn matches(&self) -> Matches {
        let formula = &self.formula_dim.0;
        let orbit_eq_formula = *formula == self.orbit_space_dim.into();
        let tangent_eq_formula = *formula == self.tangent_dim.into();
        let tangent_ge_formula = *formula <= self.tangent_dim.into();
        let fitted_dim_eq_dim_x = self.fitted_dim == self.data.dim_x();
        let tangent_assertion = TangentAssertion::of(&self.data);
        let tangent_ok = match tangent_assertion {
            TangentAssertion::Equal => tangent_eq_formula,
            TangentAssertion::AtLeast => tangent_ge_formula,
            TangentAssertion::None => true,
        };
        Matches {
            orbit_eq_formula,
            tangent_eq_formula,
            tangent_ge_formula,
            fitted_dim_eq_dim_x,
            tangent_assertion,
            all_asserted: orbit_eq_formula && fitted_dim_eq_dim_x && tangent_ok,
        }
    }

    /// Names of the asserted comparisons that fail.
    pub fn failures(&self) -> Vec<&'static str> {
        let m = self.matches();
        let mut out = Vec::new();
        if !m.orbit_eq_formula {
            out.push("orbit_space_dim == formula");
        }
        if !m.fitted_dim_eq_dim_x {
            out.push("fitted_dim == dim_x");
        }
        match m.tangent_assertion {
            TangentAssertion::Equal if !m.tangent_eq_formula => out.push("tangent_dim == formula"),
            TangentAssertion::AtLeast if !m.tangent_ge_formula => {
                out.push("tangent_dim >= formula")
            }
            _ => {}
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    data: DegreeData,
    prime: PrimeField,
    seed: u64,
    seed_used: u64,
    resamples: u32,
    hf_table: Vec<(u32, u64)>,
    hilbert_polynomial: Vec<String>,
    fitted_dim: i64,
    fitted_degree: i64,
    tangent_dim: u64,
    stab_dim: u64,
    orbit_space_dim: i64,
    formula_dim: ExactInt,
    bounds_used: BoundsUsed,
    matches: Matches,
}

impl From<VerificationRecord> for RecordWire {
    fn from(r: VerificationRecord) -> Self {
        let matches = r.matches();
        RecordWire {
            data: r.data,
            prime: r.prime,
            seed: r.seed,
            seed_used: r.seed_used,
            resamples: r.resamples,
            hf_table: r.hf_table,
            hilbert_polynomial: r.hilbert_polynomial,
            fitted_dim: r.fitted_dim,
            fitted_degree: r.fitted_degree,
            tangent_dim: r.tangent_dim,
            stab_dim: r.stab_dim,
            orbit_space_dim: r.orbit_space_dim,
            formula_dim: r.formula_dim,
            bounds_used: r.bounds_used,
            matches,
        }
    }
}

impl TryFrom<RecordWire> for VerificationRecord {
    type Error = String;

    fn try_from(w: RecordWire) -> Result<Self, String> {
        let r = VerificationRecord {
            data: w.data,
            prime: w.prime,
            seed: w.seed,
            seed_used: w.seed_used,
            resamples: w.resamples,
            hf_table: w.hf_table,
            hilbert_polynomial: w.hilbert_polynomial,
            fitted_dim: w.fitted_dim,
            fitted_degree: w.fitted_degree,
            tangent_dim: w.tangent_dim,
            stab_dim: w.stab_dim,
            orbit_space_dim: w.orbit_space_dim,
            formula_dim: w.formula_dim,
            bounds_used: w.bounds_used,
        };
        if r.matches() != w.matches {
            return Err("match flags disagree with the stored numbers".into());
        }
        Ok(r)
    }
}

enum Sample {
    Good(Box<(PolyMatrix, crate::matrix::GradedIdeal, HilbertFit)>),
    Degenerate(String),
}

fn sample(
    d: &DegreeData,
    field: PrimeField,
    seed: u64,
    window: u32,
) -> Result<Sample, VerifyError> {
    let m = PolyMatrix::random(d, field, seed)?;
    let ideal = m.maximal_minors();
    if ideal.all_zero() {
        return Ok(Sample::Degenerate("all maximal minors vanish".into()));
    }
    match fit_hilbert_polynomial(&ideal, d.dim_x(), window) {
        Ok(fit) if fit.fitted_dim == d.dim_x() => Ok(Sample::Good(Box::new((m, ideal, fit)))),
        Ok(fit) => Ok(Sample::Degenerate(format!(
            "Hilbert polynomial has degree {}",
            fit.fitted_dim
        ))),
        Err(source) => {
            // a locus of too large dimension also fails a low-degree fit
            match fit_hilbert_polynomial(&ideal, d.n(), window) {
                Ok(fit) if fit.fitted_dim > d.dim_x() => Ok(Sample::Degenerate(format!(
                    "Hilbert polynomial has degree {}",
                    fit.fitted_dim
                ))),
                _ => Err(VerifyError::Window {
                    seed_used: seed,
                    source,
                }),
            }
        }
    }
}

/// Runs every oracle on a random `φ` for `d` and records the comparison
/// with [`dim_y`]. Degenerate samples are replaced by seeds
/// `seed + 1, seed + 2, …` up to [`MAX_ATTEMPTS`] in total.
pub fn verify(d: &DegreeData, cfg: &VerifyConfig) -> Result<VerificationRecord, VerifyError> {
    d.check_standard().map_err(VerifyError::NotStandard)?;
    let report = dim_y(d)?;
    let window = cfg.window.unwrap_or_else(|| default_window_start(d));

    let mut last_reason = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let seed_used = cfg.seed.wrapping_add(attempt as u64);
        let (m, ideal, fit) = match sample(d, cfg.prime, seed_used, window)? {
            Sample::Good(good) => *good,
            Sample::Degenerate(reason) => {
                last_reason = reason;
                continue;
            }
        };
        let max_alpha = *d.alphas().last().expect("a >= 1");
        let bound = cfg
            .bound
            .unwrap_or_else(|| default_syzygy_bound(&ideal, max_alpha));
        let tangent = tangent_space_dim(&ideal, bound)
            .map_err(|source| VerifyError::Unstable { seed_used, source })?;
        let stab = stabilizer_lie_dim(&m);
        let orbit = orbit_space_dim(&m);
        let window_end = fit.table.last().map_or(window, |&(t, _)| t);
        return Ok(VerificationRecord {
            data: d.clone(),
            prime: cfg.prime,
            seed: cfg.seed,
            seed_used,
            resamples: attempt,
            hf_table: fit.table,
            hilbert_polynomial: fit.coefficients,
            fitted_dim: fit.fitted_dim,
            fitted_degree: fit.fitted_degree,
            tangent_dim: tangent.dim as u64,
            stab_dim: stab as u64,
            orbit_space_dim: orbit,
            formula_dim: report.dim_y,
            bounds_used: BoundsUsed {
                syzygy_bound: tangent.bound,
                tangent_at_next_bound: tangent.dim_at_next_bound as u64,
                syzygy_leads: tangent.syzygy_leads,
                window_start: window,
                window_end,
            },
        });
    }
    Err(VerifyError::ResamplingExhausted {
        attempts: MAX_ATTEMPTS,
        last_reason,
    })
}
