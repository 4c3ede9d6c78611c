//! Batch runner: formula-identity and oracle suites over explicit or
//! randomly generated degree data, one record per instance.
//!
//! Instance `i` (0-based) of a run with master seed `s` uses the seed
//! `splitmix64(s + (i + 1)·0x9E3779B97F4A7C15)`, both to draw random degree
//! data and as the verification seed, so any instance can be re-run alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::DegreeData;
use crate::exact::ExactInt;
use crate::field::PrimeField;
use crate::formula::{dim_y, DimensionReport};
use crate::poly::MAX_VARS;
use crate::sheaf::h0_f;
use crate::verify::{verify, VerificationRecord, VerifyConfig, VerifyError};

pub const DEFAULT_SUITE_SIZE: usize = 200;
pub const DEFAULT_MAX_N: i64 = 8;
pub const DEFAULT_MAX_A: usize = 7;
pub const DEFAULT_MAX_SPREAD: i64 = 4;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn instance_seed(master: u64, index: usize) -> u64 {
    splitmix64(master.wrapping_add((index as u64 + 1).wrapping_mul(GOLDEN)))
}

/// The instances whose oracle values are compared with the formula in the
/// acceptance suite, with their expected dimensions.
pub fn oracle_fixtures() -> Vec<(DegreeData, i64)> {
    [
        (4, vec![1, 1, 1], vec![0, 0], 18),
        (4, vec![1, 1, 1, 1], vec![0, 0, 0], 36),
        (5, vec![1, 1, 1, 1], vec![0, 0], 29),
        (5, vec![1, 1, 2], vec![0, 0], 46),
        (6, vec![1, 1, 1, 2], vec![0, 0], 64),
    ]
    .into_iter()
    .map(|(n, a, b, e)| (DegreeData::new(n, a, b).expect("valid fixture"), e))
    .collect()
}

/// Curves (`dim X = 1`): twisted cubic and a sextic.
pub fn curve_fixtures() -> Vec<(DegreeData, i64)> {
    [
        (3, vec![1, 1, 1], vec![0, 0], 12),
        (3, vec![1, 1, 1, 1], vec![0, 0, 0], 24),
    ]
    .into_iter()
    .map(|(n, a, b, e)| (DegreeData::new(n, a, b).expect("valid fixture"), e))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Closed form against the section count of the cokernel sheaf.
    Formula,
    /// Closed form against the finite-field oracles.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    Explicit(Vec<DegreeData>),
    Random { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: PrimeField,
    /// Re-run each oracle instance over this prime and compare match flags.
    pub second_prime: Option<PrimeField>,
    pub seed: u64,
    pub bound: Option<u32>,
    pub window: Option<u32>,
    pub suite: Suite,
    pub source: InstanceSource,
    pub max_n: i64,
    pub max_a: usize,
    pub max_spread: i64,
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: PrimeField::default(),
            second_prime: None,
            seed: 1,
            bound: None,
            window: None,
            suite: Suite::Formula,
            source: InstanceSource::Random {
                count: DEFAULT_SUITE_SIZE,
            },
            max_n: DEFAULT_MAX_N,
            max_a: DEFAULT_MAX_A,
            max_spread: DEFAULT_MAX_SPREAD,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error(
        "--max-n must be at least 4 for random instances with c >= 2 and dim X >= 2 (got {0})"
    )]
    MaxN(i64),
    #[error("--max-n {0} exceeds the {MAX_VARS}-variable limit of the oracles")]
    MaxNOracle(i64),
    #[error("--max-a must be at least 2 (got {0})")]
    MaxA(usize),
    #[error("--max-spread must be at least 1 (got {0})")]
    MaxSpread(i64),
    #[error("--bound must be positive")]
    Bound,
    #[error("DETSCHEME_THREADS must be a positive integer")]
    Threads,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.bound == Some(0) {
            return Err(ConfigError::Bound);
        }
        if self.threads == Some(0) {
            return Err(ConfigError::Threads);
        }
        if let InstanceSource::Random { .. } = self.source {
            if self.max_n < 4 {
                return Err(ConfigError::MaxN(self.max_n));
            }
            if self.suite == Suite::Oracle && self.max_n as usize + 1 > MAX_VARS {
                return Err(ConfigError::MaxNOracle(self.max_n));
            }
            if self.max_a < 2 {
                return Err(ConfigError::MaxA(self.max_a));
            }
            if self.max_spread < 1 {
                return Err(ConfigError::MaxSpread(self.max_spread));
            }
        }
        Ok(())
    }

    pub fn verify_config(&self, seed: u64, prime: PrimeField) -> VerifyConfig {
        VerifyConfig {
            prime,
            seed,
            bound: self.bound,
            window: self.window,
        }
    }
}

/// Random degree data with `c ≥ 2`, `dim X ≥ 2` satisfying (standard), all
/// degrees in `[0, max_spread]`, drawn by rejection.
pub fn random_instance(
    rng: &mut impl Rng,
    max_n: i64,
    max_a: usize,
    max_spread: i64,
) -> DegreeData {
    loop {
        let n = rng.gen_range(4..=max_n);
        let a = rng.gen_range(2..=max_a);
        let b = rng.gen_range(1..a);
        let c = (a - b + 1) as i64;
        if n - c < 2 {
            continue;
        }
        let alphas = (0..a).map(|_| rng.gen_range(0..=max_spread)).collect();
        let betas = (0..b).map(|_| rng.gen_range(0..=max_spread)).collect();
        let d = DegreeData::new(n, alphas, betas).expect("shape checked above");
        if d.validate_standard() {
            return d;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    NotStandard,
    Structural,
    ResamplingExhausted,
    Stabilization,
}

impl ErrorKind {
    fn of(e: &VerifyError) -> Self {
        match e {
            VerifyError::NotStandard(_) | VerifyError::Formula(_) => ErrorKind::NotStandard,
            VerifyError::Matrix(_) => ErrorKind::Structural,
            VerifyError::ResamplingExhausted { .. } => ErrorKind::ResamplingExhausted,
            VerifyError::Window { .. } | VerifyError::Unstable { .. } => ErrorKind::Stabilization,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Formula {
        report: Box<DimensionReport>,
        h0_f: ExactInt,
        identity_holds: bool,
    },
    Oracle {
        record: Box<VerificationRecord>,
        #[serde(default)]
        second: Option<Box<VerificationRecord>>,
        /// Both primes give the same match flags.
        #[serde(default)]
        flags_agree: Option<bool>,
    },
    Error {
        error: ErrorKind,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLine {
    pub index: usize,
    pub seed: u64,
    pub data: DegreeData,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl CorpusLine {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            Outcome::Formula { identity_holds, .. } => *identity_holds,
            Outcome::Oracle {
                record,
                second,
                flags_agree,
            } => {
                record.matches().all_asserted
                    && second.as_ref().is_none_or(|s| s.matches().all_asserted)
                    && *flags_agree != Some(false)
            }
            Outcome::Error { .. } => false,
        }
    }

    /// `(formula, tangent, orbit)` for the summary table.
    pub fn summary_values(&self) -> (String, String, String) {
        let dash = || "-".to_string();
        match &self.outcome {
            Outcome::Formula { report, h0_f, .. } => {
                (report.dim_y.to_string(), format!("h0_F={h0_f}"), dash())
            }
            Outcome::Oracle { record, .. } => (
                record.formula_dim.to_string(),
                record.tangent_dim.to_string(),
                record.orbit_space_dim.to_string(),
            ),
            Outcome::Error { .. } => (dash(), dash(), dash()),
        }
    }
}

fn formula_outcome(d: &DegreeData) -> Outcome {
    let report = match dim_y(d) {
        Ok(r) => r,
        Err(e) => {
            return Outcome::Error {
                error: ErrorKind::NotStandard,
                message: e.to_string(),
            }
        }
    };
    match h0_f(d) {
        Ok(h) => Outcome::Formula {
            identity_holds: h == report.dim_y.0,
            h0_f: ExactInt(h),
            report: Box::new(report),
        },
        Err(e) => Outcome::Error {
            error: ErrorKind::Structural,
            message: e.to_string(),
        },
    }
}

fn oracle_outcome(cfg: &RunConfig, d: &DegreeData, seed: u64) -> Outcome {
    let run = |p| verify(d, &cfg.verify_config(seed, p));
    let record = match run(cfg.prime) {
        Ok(r) => r,
        Err(e) => {
            return Outcome::Error {
                error: ErrorKind::of(&e),
                message: e.to_string(),
            }
        }
    };
    let (second, flags_agree) = match cfg.second_prime {
        None => (None, None),
        Some(p) => match run(p) {
            Ok(s) => {
                let agree = s.matches() == record.matches();
                (Some(Box::new(s)), Some(agree))
            }
            Err(e) => {
                return Outcome::Error {
                    error: ErrorKind::of(&e),
                    message: e.to_string(),
                }
            }
        },
    };
    Outcome::Oracle {
        record: Box::new(record),
        second,
        flags_agree,
    }
}

/// The instances of a run, with their seeds, in index order.
pub fn instances(cfg: &RunConfig) -> Vec<(u64, DegreeData)> {
    match &cfg.source {
        InstanceSource::Explicit(list) => list
            .iter()
            .enumerate()
            .map(|(i, d)| (instance_seed(cfg.seed, i), d.clone()))
            .collect(),
        InstanceSource::Random { count } => (0..*count)
            .map(|i| {
                let s = instance_seed(cfg.seed, i);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                (
                    s,
                    random_instance(&mut rng, cfg.max_n, cfg.max_a, cfg.max_spread),
                )
            })
            .collect(),
    }
}

fn run_one(cfg: &RunConfig, index: usize, seed: u64, data: DegreeData) -> CorpusLine {
    let outcome = match cfg.suite {
        Suite::Formula => formula_outcome(&data),
        Suite::Oracle => oracle_outcome(cfg, &data, seed),
    };
    CorpusLine {
        index,
        seed,
        data,
        outcome,
    }
}

/// Runs the suite; lines are in instance order whatever the worker count.
pub fn run(cfg: &RunConfig) -> Result<Vec<CorpusLine>, ConfigError> {
    cfg.validate()?;
    let work = instances(cfg);
    let go = || {
        work.into_par_iter()
            .enumerate()
            .map(|(i, (s, d))| run_one(cfg, i, s, d))
            .collect::<Vec<_>>()
    };
    Ok(match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|_| ConfigError::Threads)?
            .install(go),
        None => go(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Lines that did not produce a comparison at all.
    pub errors: usize,
}

pub fn summarize(lines: &[CorpusLine]) -> Summary {
    let mut s = Summary {
        total: lines.len(),
        ..Summary::default()
    };
    for l in lines {
        if l.passed() {
            s.passed += 1;
        } else {
            s.failed += 1;
            if matches!(l.outcome, Outcome::Error { .. }) {
                s.errors += 1;
            }
        }
    }
    s
}
