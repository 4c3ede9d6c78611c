//! Matrices of homogeneous forms realizing `φ: ⊕O(-α_j) → ⊕O(-β_i)`, and
//! the ideal of their maximal minors.

use std::collections::HashMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{ConditionFailure, DegreeData};
use crate::field::PrimeField;
use crate::linalg::DenseMatrix;
use crate::poly::{HomogeneousPoly, PolyError, PolyJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("degree data fails the expected-codimension condition: {0}")]
    NotStandard(ConditionFailure),
    #[error("entry ({row}, {col}) has degree {got:?}, expected {expected:?}")]
    EntryDegree {
        row: usize,
        col: usize,
        got: Option<u32>,
        expected: Option<u32>,
    },
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// A `b × a` matrix whose `(i, j)` entry is a form of degree `α_j - β_i`,
/// or structurally zero when `α_j < β_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    data: DegreeData,
    field: PrimeField,
    entries: Vec<Option<HomogeneousPoly>>,
}

fn expected_degree(d: &DegreeData, i: usize, j: usize) -> Option<u32> {
    u32::try_from(d.entry_degree(i, j)).ok()
}

impl PolyMatrix {
    pub fn from_entries(
        data: DegreeData,
        field: PrimeField,
        entries: Vec<Option<HomogeneousPoly>>,
    ) -> Result<Self, MatrixError> {
        data.check_standard().map_err(MatrixError::NotStandard)?;
        let (a, b) = (data.a(), data.b());
        if entries.len() != a * b {
            return Err(MatrixError::Shape {
                expected: a * b,
                got: entries.len(),
            });
        }
        for (k, e) in entries.iter().enumerate() {
            let (row, col) = (k / a, k % a);
            let expected = expected_degree(&data, row, col);
            let got = e.as_ref().map(|p| p.degree());
            let vars_ok = e
                .as_ref()
                .is_none_or(|p| p.n_vars() == data.n_vars() && p.field() == field);
            if got != expected || !vars_ok {
                return Err(MatrixError::EntryDegree {
                    row,
                    col,
                    got,
                    expected,
                });
            }
        }
        Ok(PolyMatrix {
            data,
            field,
            entries,
        })
    }

    /// Uniformly random coefficients for every entry, deterministic in `seed`.
    pub fn random(data: &DegreeData, field: PrimeField, seed: u64) -> Result<Self, MatrixError> {
        data.check_standard().map_err(MatrixError::NotStandard)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nv = data.n_vars();
        let mut entries = Vec::with_capacity(data.a() * data.b());
        for i in 0..data.b() {
            for j in 0..data.a() {
                entries.push(expected_degree(data, i, j).map(|deg| {
                    let len = crate::poly::MonomialBasis::get(nv, deg).len();
                    let coeffs = (0..len).map(|_| rng.gen_range(0..field.p())).collect();
                    HomogeneousPoly::from_coeffs(field, nv, deg, coeffs)
                }));
            }
        }
        Ok(PolyMatrix {
            data: data.clone(),
            field,
            entries,
        })
    }

    pub fn data(&self) -> &DegreeData {
        &self.data
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.data.b()
    }

    pub fn cols(&self) -> usize {
        self.data.a()
    }

    pub fn n_vars(&self) -> usize {
        self.data.n_vars()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&HomogeneousPoly> {
        self.entries[row * self.cols() + col].as_ref()
    }

    pub fn entries(&self) -> &[Option<HomogeneousPoly>] {
        &self.entries
    }

    /// Multiply column `col` by the scalar `s`.
    pub fn scale_column(&self, col: usize, s: u32) -> Self {
        let mut out = self.clone();
        for row in 0..self.rows() {
            let k = row * self.cols() + col;
            out.entries[k] = out.entries[k].as_ref().map(|p| p.scale(s));
        }
        out
    }

    /// Numeric matrix at a point of `F_p^{n+1}`.
    pub fn eval(&self, point: &[u32]) -> Result<DenseMatrix, PolyError> {
        let mut m = DenseMatrix::zeros(self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if let Some(p) = self.entry(i, j) {
                    m.set(i, j, p.eval(point)?);
                }
            }
        }
        Ok(m)
    }

    fn square_degree(&self, rows: &[usize], cols: &[usize]) -> Option<u32> {
        let al: i64 = cols.iter().map(|&j| self.data.alphas()[j]).sum();
        let be: i64 = rows.iter().map(|&i| self.data.betas()[i]).sum();
        u32::try_from(al - be).ok()
    }

    /// Determinant of the square submatrix on `rows × cols` by cofactor
    /// expansion. `along_row = true` expands along the first listed row,
    /// otherwise along the last listed column. `None` means structurally
    /// zero (negative degree).
    pub fn cofactor_det(
        &self,
        rows: &[usize],
        cols: &[usize],
        along_row: bool,
    ) -> Option<HomogeneousPoly> {
        assert_eq!(rows.len(), cols.len());
        let deg = self.square_degree(rows, cols)?;
        let nv = self.n_vars();
        if rows.is_empty() {
            return Some(HomogeneousPoly::constant(self.field, nv, 1));
        }
        let mut acc = HomogeneousPoly::zero(self.field, nv, deg);
        let k = rows.len();
        for t in 0..k {
            let (i, j, sign_pos) = if along_row {
                (rows[0], cols[t], t)
            } else {
                (rows[t], cols[k - 1], t + k - 1)
            };
            let Some(e) = self.entry(i, j) else { continue };
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&r| r != i).collect();
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let Some(minor) = self.cofactor_det(&sub_rows, &sub_cols, along_row) else {
                continue;
            };
            let s = if sign_pos % 2 == 0 {
                1
            } else {
                self.field.p() - 1
            };
            e.mul_add_into(&minor, s, acc_coeffs(&mut acc));
        }
        Some(acc)
    }

    /// All `C(a, b)` maximal minors, column sets in lex order, by cofactor
    /// expansion along rows with shared subminors.
    pub fn maximal_minors(&self) -> GradedIdeal {
        let (a, b) = (self.cols(), self.rows());
        let mut memo: HashMap<(usize, u64), Option<HomogeneousPoly>> = HashMap::new();
        let mut generators = Vec::new();
        let mut column_sets = Vec::new();
        for cols in (0..a).combinations(b) {
            let mask = cols.iter().fold(0u64, |m, &c| m | (1 << c));
            let minor = self
                .minor_memo(0, mask, &mut memo)
                .expect("maximal minors of standard data have non-negative degree");
            generators.push(minor);
            column_sets.push(cols);
        }
        GradedIdeal::new(self.field, self.n_vars(), generators).with_column_sets(column_sets)
    }

    fn minor_memo(
        &self,
        row: usize,
        mask: u64,
        memo: &mut HashMap<(usize, u64), Option<HomogeneousPoly>>,
    ) -> Option<HomogeneousPoly> {
        if let Some(hit) = memo.get(&(row, mask)) {
            return hit.clone();
        }
        let cols: Vec<usize> = (0..self.cols()).filter(|&c| mask & (1 << c) != 0).collect();
        let rows: Vec<usize> = (row..self.rows()).collect();
        let result = self.square_degree(&rows, &cols).map(|deg| {
            if rows.is_empty() {
                return HomogeneousPoly::constant(self.field, self.n_vars(), 1);
            }
            let mut acc = HomogeneousPoly::zero(self.field, self.n_vars(), deg);
            for (t, &c) in cols.iter().enumerate() {
                let Some(e) = self.entry(row, c) else {
                    continue;
                };
                let Some(sub) = self.minor_memo(row + 1, mask & !(1 << c), memo) else {
                    continue;
                };
                let s = if t % 2 == 0 { 1 } else { self.field.p() - 1 };
                e.mul_add_into(&sub, s, acc_coeffs(&mut acc));
            }
            acc
        });
        memo.insert((row, mask), result.clone());
        result
    }
}

fn acc_coeffs(p: &mut HomogeneousPoly) -> &mut [u32] {
    p.coeffs_mut()
}

/// Homogeneous generators of an ideal together with their degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    field: PrimeField,
    n_vars: usize,
    generators: Vec<HomogeneousPoly>,
    degrees: Vec<u32>,
    column_sets: Option<Vec<Vec<usize>>>,
}

impl GradedIdeal {
    pub fn new(field: PrimeField, n_vars: usize, generators: Vec<HomogeneousPoly>) -> Self {
        for g in &generators {
            assert_eq!(g.n_vars(), n_vars, "generator in the wrong ring");
            assert_eq!(g.field(), field, "generator over the wrong field");
        }
        let degrees = generators.iter().map(|g| g.degree()).collect();
        GradedIdeal {
            field,
            n_vars,
            generators,
            degrees,
            column_sets: None,
        }
    }

    fn with_column_sets(mut self, sets: Vec<Vec<usize>>) -> Self {
        self.column_sets = Some(sets);
        self
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn generators(&self) -> &[HomogeneousPoly] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Column subsets the generators were taken from, for minor ideals.
    pub fn column_sets(&self) -> Option<&[Vec<usize>]> {
        self.column_sets.as_deref()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn all_zero(&self) -> bool {
        self.generators.iter().all(HomogeneousPoly::is_zero)
    }

    pub fn with_generator(&self, g: HomogeneousPoly) -> Self {
        let mut gens = self.generators.clone();
        gens.push(g);
        GradedIdeal::new(self.field, self.n_vars, gens)
    }

    /// One generator per line over variables `x0..xn`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&g.to_text());
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            prime: self.field.p(),
            n_vars: self.n_vars,
            degrees: self.degrees.clone(),
            column_sets: self.column_sets.clone(),
            generators: self
                .generators
                .iter()
                .map(HomogeneousPoly::to_json)
                .collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self, MatrixError> {
        let field = PrimeField::new(j.prime)?;
        let gens = j
            .generators
            .iter()
            .map(|g| HomogeneousPoly::from_json(field, j.n_vars, g))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ideal = GradedIdeal::new(field, j.n_vars, gens);
        ideal.column_sets = j.column_sets.clone();
        Ok(ideal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub prime: u32,
    pub n_vars: usize,
    pub degrees: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column_sets: Option<Vec<Vec<usize>>>,
    pub generators: Vec<PolyJson>,
}
