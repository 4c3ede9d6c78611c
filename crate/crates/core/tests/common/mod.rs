//! Strategies and property checks shared by `properties` and `acceptance`.
#![allow(dead_code)]

use detscheme_core::corpus::random_instance;
use detscheme_core::formula::binomial_dim;
use detscheme_core::linalg::{determinant, DenseMatrix};
use detscheme_core::oracle::hilbert_function;
use detscheme_core::poly::MonomialBasis;
use detscheme_core::{DegreeData, GradedIdeal, HomogeneousPoly, PolyMatrix, PrimeField};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u32; 2] = [32003, 65537];

/// Valid data satisfying (standard), small enough for polynomial work.
pub fn small_standard() -> impl Strategy<Value = DegreeData> {
    (2i64..=4, 1usize..=3, 0usize..=2)
        .prop_flat_map(|(n, b, extra)| {
            let a = b + extra;
            (
                Just(n),
                prop::collection::vec(0i64..=2, a),
                prop::collection::vec(0i64..=2, b),
            )
        })
        .prop_filter_map("needs c <= n and (standard)", |(n, al, be)| {
            DegreeData::new(n, al, be)
                .ok()
                .filter(|d| d.validate_standard())
        })
}

/// Data as in the randomized formula suite: `c ≥ 2`, `dim X ≥ 2`.
pub fn suite_data() -> impl Strategy<Value = DegreeData> {
    any::<u64>().prop_map(|s| random_instance(&mut ChaCha8Rng::seed_from_u64(s), 8, 7, 4))
}

/// Structurally valid data, not necessarily satisfying any condition.
pub fn any_data() -> impl Strategy<Value = DegreeData> {
    (2i64..=8, 1usize..=5, 0usize..=3)
        .prop_flat_map(|(n, b, extra)| {
            (
                Just(n),
                prop::collection::vec(-3i64..=6, b + extra),
                prop::collection::vec(-3i64..=6, b),
            )
        })
        .prop_filter_map("structural", |(n, al, be)| DegreeData::new(n, al, be).ok())
}

pub fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| PrimeField::new(p).unwrap())
}

pub fn random_poly(field: PrimeField, n_vars: usize, degree: u32, seed: u64) -> HomogeneousPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = MonomialBasis::get(n_vars, degree).len();
    let coeffs = (0..len).map(|_| rng.gen_range(0..field.p())).collect();
    HomogeneousPoly::from_coeffs(field, n_vars, degree, coeffs)
}

fn binom_naive(top: i64, n: i64) -> BigUint {
    if top < n {
        return BigUint::zero();
    }
    (0..n).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from((top - i) as u64) / BigUint::from((i + 1) as u64)
    })
}

pub fn binomial_laws(top: i64, n: i64) -> Result<(), TestCaseError> {
    let c = binomial_dim(top, n);
    if top < n {
        prop_assert!(c.is_zero());
    }
    prop_assert_eq!(binomial_dim(n, n), BigUint::one());
    prop_assert_eq!(&c, &binom_naive(top, n));
    if n >= 1 {
        // Pascal holds for every top under the dimension convention
        prop_assert_eq!(
            &c,
            &(binomial_dim(top - 1, n) + binomial_dim(top - 1, n - 1))
        );
    }
    if top >= n && top - n <= 40 {
        prop_assert_eq!(&c, &binomial_dim(top, top - n));
    }
    Ok(())
}

/// Laplace expansion along the first row and along the last column agree
/// with the memoized maximal minors.
pub fn laplace(d: &DegreeData, field: PrimeField, seed: u64) -> Result<(), TestCaseError> {
    let m = PolyMatrix::random(d, field, seed).unwrap();
    let ideal = m.maximal_minors();
    let rows: Vec<usize> = (0..m.rows()).collect();
    for (g, cols) in ideal.generators().iter().zip(ideal.column_sets().unwrap()) {
        let by_row = m.cofactor_det(&rows, cols, true).unwrap();
        let by_col = m.cofactor_det(&rows, cols, false).unwrap();
        prop_assert_eq!(&by_row, &by_col);
        prop_assert_eq!(&by_row, g);
    }
    Ok(())
}

pub fn multilinear(
    d: &DegreeData,
    field: PrimeField,
    seed: u64,
    col: usize,
    s: u32,
) -> Result<(), TestCaseError> {
    let m = PolyMatrix::random(d, field, seed).unwrap();
    let col = col % m.cols();
    let s = s % field.p();
    let before = m.maximal_minors();
    let after = m.scale_column(col, s).maximal_minors();
    for ((g, h), cols) in before
        .generators()
        .iter()
        .zip(after.generators())
        .zip(before.column_sets().unwrap())
    {
        if cols.contains(&col) {
            prop_assert_eq!(&g.scale(s), h);
        } else {
            prop_assert_eq!(g, h);
        }
    }
    Ok(())
}

pub fn random_point(field: PrimeField, n_vars: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_vars).map(|_| rng.gen_range(0..field.p())).collect()
}

/// Minors evaluated at `points` random points equal determinants of the
/// evaluated matrix.
pub fn eval_commutes(
    d: &DegreeData,
    field: PrimeField,
    seed: u64,
    points: usize,
) -> Result<(), TestCaseError> {
    let m = PolyMatrix::random(d, field, seed).unwrap();
    let ideal = m.maximal_minors();
    for k in 0..points {
        let pt = random_point(
            field,
            m.n_vars(),
            seed ^ (k as u64 + 1).wrapping_mul(0x9E37_79B9),
        );
        let num = m.eval(&pt).unwrap();
        for (g, cols) in ideal.generators().iter().zip(ideal.column_sets().unwrap()) {
            let rows: Vec<Vec<u32>> = (0..m.rows())
                .map(|i| cols.iter().map(|&j| num.get(i, j)).collect())
                .collect();
            let sub = DenseMatrix::from_rows(cols.len(), &rows);
            prop_assert_eq!(g.eval(&pt).unwrap(), determinant(field, &sub));
        }
    }
    Ok(())
}

/// Adding a generator never raises the Hilbert function, and lowers it by
/// at most the number of its multiples.
pub fn hf_monotone(d: &DegreeData, seed: u64, deg: u32, t: u32) -> Result<(), TestCaseError> {
    let field = PrimeField::default();
    let ideal: GradedIdeal = PolyMatrix::random(d, field, seed).unwrap().maximal_minors();
    let g = random_poly(field, d.n_vars(), deg, seed.wrapping_add(17));
    let bigger = ideal.with_generator(g);
    let (h0, h1) = (hilbert_function(&ideal, t), hilbert_function(&bigger, t));
    prop_assert!(h1 <= h0);
    let multiples = t
        .checked_sub(deg)
        .map_or(0, |r| MonomialBasis::get(d.n_vars(), r).len());
    prop_assert!(h0 - h1 <= multiples);
    Ok(())
}
