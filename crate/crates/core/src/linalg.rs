//! Dense Gaussian elimination over `F_p`.
//!
//! Entries are held as `f64` during elimination. With `p < 2^24` every
//! update `x += g·y` with `g, y < p` stays an exact integer below `2^53`
//! for many updates in a row, so rows are only reduced mod `p` when their
//! update counter reaches the overflow limit or an entry is read.

use crate::field::PrimeField;

/// A dense row-major matrix with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        DenseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }
}

/// Row echelon form. When built with `reduced = true` it is the reduced
/// row echelon form: every pivot is 1 and pivot columns are zero in all
/// other rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub cols: usize,
    pub reduced: bool,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Non-zero rows, `rank × cols`.
    pub rows: DenseMatrix,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free
    /// column `f`, with `x_f = 1` and zeros on the other free columns.
    /// Entries of each vector are non-zero only at `f` and at pivot
    /// columns left of `f`.
    pub fn kernel_basis(&self, field: PrimeField) -> Vec<(usize, Vec<u32>)> {
        assert!(self.reduced, "kernel needs the reduced echelon form");
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (k, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = field.neg(self.rows.get(k, f));
                }
                (f, v)
            })
            .collect()
    }

    /// The kernel vector of free column `f` (same normalization as
    /// [`Echelon::kernel_basis`]), by back substitution; works on either form.
    pub fn kernel_vector(&self, field: PrimeField, f: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.cols];
        v[f] = 1;
        for (k, &pc) in self.pivots.iter().enumerate().rev() {
            if pc > f {
                continue;
            }
            let row = self.rows.row(k);
            let mut s = 0u64;
            for c in pc + 1..=f {
                if v[c] != 0 && row[c] != 0 {
                    s = (s + row[c] as u64 * v[c] as u64) % field.p() as u64;
                }
            }
            v[pc] = field.neg(s as u32);
        }
        v
    }
}

#[inline]
fn reduce(x: f64, p: f64) -> f64 {
    let q = (x / p).floor();
    let r = x - q * p;
    if r < 0.0 {
        r + p
    } else if r >= p {
        r - p
    } else {
        r
    }
}

/// Number of `x += g·y` updates (with `g, y ≤ p - 1`) a reduced entry can
/// absorb while staying below `2^53`.
fn update_limit(p: u32) -> u32 {
    let p = p as f64;
    let room = (9007199254740992.0 - p) / ((p - 1.0) * (p - 1.0));
    (room.floor() as u32).max(1)
}

pub fn echelon(field: PrimeField, m: &DenseMatrix, reduced: bool) -> Echelon {
    let (nrows, ncols) = (m.rows, m.cols);
    let pu = field.p();
    let p = pu as f64;
    let limit = update_limit(pu);
    let mut data: Vec<f64> = m.data.iter().map(|&x| x as f64).collect();
    let mut counters = vec![0u32; nrows];
    let mut pivots = Vec::new();
    let mut pivot_row = vec![0f64; ncols];
    let mut r = 0;

    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let mut found = None;
        for i in r..nrows {
            let v = reduce(data[i * ncols + col], p);
            data[i * ncols + col] = v;
            if v != 0.0 {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        if i != r {
            for c in col..ncols {
                data.swap(i * ncols + c, r * ncols + c);
            }
            // columns before `col` are zero in both rows
            counters.swap(i, r);
        }
        let lead = data[r * ncols + col] as u32;
        let inv = field.inv(lead) as f64;
        for c in col..ncols {
            let x = reduce(data[r * ncols + c], p);
            let v = if c == col { 1.0 } else { reduce(x * inv, p) };
            data[r * ncols + c] = v;
            pivot_row[c] = v;
        }
        counters[r] = 0;

        let lo = if reduced { 0 } else { r + 1 };
        for i in lo..nrows {
            if i == r {
                continue;
            }
            let off = i * ncols;
            let v = reduce(data[off + col], p);
            if v == 0.0 {
                data[off + col] = 0.0;
                continue;
            }
            let g = p - v;
            let row = &mut data[off + col..off + ncols];
            for (x, &y) in row.iter_mut().zip(&pivot_row[col..]) {
                *x += g * y;
            }
            counters[i] += 1;
            if counters[i] >= limit {
                for x in row.iter_mut() {
                    *x = reduce(*x, p);
                }
                counters[i] = 0;
            }
        }
        pivots.push(col);
        r += 1;
    }

    let rank = r;
    let mut rows = DenseMatrix::zeros(rank, ncols);
    for i in 0..rank {
        for c in 0..ncols {
            rows.data[i * ncols + c] = reduce(data[i * ncols + c], p) as u32;
        }
    }
    Echelon {
        cols: ncols,
        reduced,
        pivots,
        rows,
    }
}

pub fn rank(field: PrimeField, m: &DenseMatrix) -> usize {
    echelon(field, m, false).rank()
}

/// Determinant of a square matrix by elimination.
pub fn determinant(field: PrimeField, m: &DenseMatrix) -> u32 {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = 1u32;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| a.get(i, col) != 0) else {
            return 0;
        };
        if piv != col {
            for c in 0..n {
                a.data.swap(piv * n + c, col * n + c);
            }
            det = field.neg(det);
        }
        let lead = a.get(col, col);
        det = field.mul(det, lead);
        let inv = field.inv(lead);
        for i in col + 1..n {
            let f = field.mul(a.get(i, col), inv);
            if f == 0 {
                continue;
            }
            for c in col..n {
                let v = field.sub(a.get(i, c), field.mul(f, a.get(col, c)));
                a.set(i, c, v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> DenseMatrix {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        DenseMatrix { rows, cols, data }
    }

    /// Schoolbook elimination with `u64` arithmetic.
    fn naive_rank(field: PrimeField, m: &DenseMatrix) -> usize {
        let mut a: Vec<Vec<u32>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = field.inv(a[rank][col]);
            for i in rank + 1..a.len() {
                let f = field.mul(a[i][col], inv);
                for c in 0..m.cols {
                    a[i][c] = field.sub(a[i][c], field.mul(f, a[rank][c]));
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_naive() {
        let field = PrimeField::new(65537).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (r, c) = (rng.gen_range(1..30), rng.gen_range(1..30));
            let k = rng.gen_range(1..10);
            // low-rank product
            let a = random_matrix(&mut rng, 65537, r, k);
            let b = random_matrix(&mut rng, 65537, k, c);
            let mut m = DenseMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    let mut s = 0;
                    for t in 0..k {
                        s = field.add(s, field.mul(a.get(i, t), b.get(t, j)));
                    }
                    m.set(i, j, s);
                }
            }
            assert_eq!(rank(field, &m), naive_rank(field, &m));
        }
    }

    #[test]
    fn large_prime_needs_periodic_reduction() {
        // limit is small here, so the periodic reduction path is exercised
        let field = PrimeField::new(16777213).unwrap();
        assert!(update_limit(field.p()) < 64);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(&mut rng, field.p(), 90, 80);
        assert_eq!(rank(field, &m), naive_rank(field, &m));
        let e = echelon(field, &m, true);
        assert_eq!(e.rank(), 80);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let field = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_matrix(&mut rng, field.p(), 6, 11);
        let e = echelon(field, &m, true);
        let ker = e.kernel_basis(field);
        assert_eq!(ker.len(), 11 - e.rank());
        for (f, v) in ker {
            assert_eq!(v[f], 1);
            assert!(v[f + 1..].iter().all(|&x| x == 0));
            for r in 0..m.rows {
                let s = (0..m.cols).fold(0, |acc, c| field.add(acc, field.mul(m.get(r, c), v[c])));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn back_substitution_matches_reduced_kernel() {
        let field = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_matrix(&mut rng, field.p(), 9, 4);
        let b = random_matrix(&mut rng, field.p(), 4, 14);
        let mut m = DenseMatrix::zeros(9, 14);
        for i in 0..9 {
            for j in 0..14 {
                let s = (0..4).fold(0, |acc, t| {
                    field.add(acc, field.mul(a.get(i, t), b.get(t, j)))
                });
                m.set(i, j, s);
            }
        }
        let plain = echelon(field, &m, false);
        for (f, v) in echelon(field, &m, true).kernel_basis(field) {
            assert_eq!(plain.kernel_vector(field, f), v);
        }
    }

    #[test]
    fn determinant_small() {
        let field = PrimeField::default();
        let m = DenseMatrix::from_rows(2, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(determinant(field, &m), field.from_i64(-2));
    }
}
