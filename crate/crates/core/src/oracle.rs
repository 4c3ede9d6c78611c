//! Brute-force linear algebra over `F_p` on graded pieces of `S/I`:
//! Hilbert function values, the degree-0 part of `Hom(I, S/I)` (the
//! Hilbert-scheme tangent space at a saturated ideal), and the stabilizer
//! of `φ` under graded automorphisms of source and target.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::PrimeField;
use crate::linalg::{echelon, DenseMatrix, Echelon};
use crate::matrix::{GradedIdeal, PolyMatrix};
use crate::poly::{HomogeneousPoly, MonomialBasis};

/// Degree-`D` monomials `m` together with the generator index `k`, for
/// every `k` with `d_k ≤ D`; ordered by `k`, then by monomial index.
/// This position-over-term order is compatible with multiplication by a
/// variable.
struct ColumnLayout {
    offsets: Vec<Option<usize>>,
    bases: Vec<Option<Arc<MonomialBasis>>>,
    total: usize,
}

impl ColumnLayout {
    fn new(ideal: &GradedIdeal, degree: u32) -> Self {
        let mut offsets = Vec::with_capacity(ideal.len());
        let mut bases = Vec::with_capacity(ideal.len());
        let mut total = 0;
        for &dk in ideal.degrees() {
            if dk <= degree {
                let b = MonomialBasis::get(ideal.n_vars(), degree - dk);
                offsets.push(Some(total));
                total += b.len();
                bases.push(Some(b));
            } else {
                offsets.push(None);
                bases.push(None);
            }
        }
        ColumnLayout {
            offsets,
            bases,
            total,
        }
    }

    /// `(k, monomial index)` of a flat column.
    fn locate(&self, col: usize) -> (usize, usize) {
        for (k, off) in self.offsets.iter().enumerate().rev() {
            if let Some(off) = *off {
                if col >= off {
                    return (k, col - off);
                }
            }
        }
        unreachable!("column {col} outside layout")
    }
}

/// Macaulay matrix in degree `D`: one row per product `m·g_k`, expressed in
/// the monomial basis of `S_D`.
fn macaulay(ideal: &GradedIdeal, degree: u32) -> (DenseMatrix, ColumnLayout) {
    let layout = ColumnLayout::new(ideal, degree);
    let target = MonomialBasis::get(ideal.n_vars(), degree);
    let mut m = DenseMatrix::zeros(layout.total, target.len());
    for (k, g) in ideal.generators().iter().enumerate() {
        let (Some(off), Some(mb)) = (layout.offsets[k], &layout.bases[k]) else {
            continue;
        };
        let terms: Vec<(u64, u32)> = g.terms().map(|(i, c)| (g.basis().key(i), c)).collect();
        for j in 0..mb.len() {
            let row = m.row_mut(off + j);
            let mk = mb.key(j);
            for &(gk, c) in &terms {
                row[target.index_of_key(gk + mk)] = c;
            }
        }
    }
    (m, layout)
}

/// `HF(S/I, t) = dim S_t - dim I_t`.
pub fn hilbert_function(ideal: &GradedIdeal, t: u32) -> usize {
    let (m, _) = macaulay(ideal, t);
    m.cols - echelon(ideal.field(), &m, false).rank()
}

/// The degree-`D` piece of `I` in reduced echelon form, with the normal
/// form map `S_D → (S/I)_D` onto the standard (non-pivot) monomials.
pub struct IdealPiece {
    pub degree: u32,
    basis: Arc<MonomialBasis>,
    field: PrimeField,
    /// Per monomial of `S_D`: position among standard monomials, or the
    /// echelon row whose pivot it is.
    slot: Vec<Slot>,
    /// `-(pivot row)` restricted to standard monomials.
    reducers: DenseMatrix,
    standard: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Slot {
    Standard(usize),
    Pivot(usize),
}

impl IdealPiece {
    pub fn new(ideal: &GradedIdeal, degree: u32) -> Self {
        let field = ideal.field();
        let (m, _) = macaulay(ideal, degree);
        let ech = echelon(field, &m, true);
        Self::from_echelon(field, MonomialBasis::get(ideal.n_vars(), degree), &ech)
    }

    fn from_echelon(field: PrimeField, basis: Arc<MonomialBasis>, ech: &Echelon) -> Self {
        let standard = ech.free_columns();
        let mut slot = vec![Slot::Standard(0); basis.len()];
        for (pos, &c) in standard.iter().enumerate() {
            slot[c] = Slot::Standard(pos);
        }
        let mut reducers = DenseMatrix::zeros(ech.rank(), standard.len());
        for (r, &pc) in ech.pivots.iter().enumerate() {
            slot[pc] = Slot::Pivot(r);
            for (pos, &c) in standard.iter().enumerate() {
                reducers.set(r, pos, field.neg(ech.rows.get(r, c)));
            }
        }
        IdealPiece {
            degree: basis.degree,
            basis,
            field,
            slot,
            reducers,
            standard,
        }
    }

    /// `dim (S/I)_D`.
    pub fn hilbert_value(&self) -> usize {
        self.standard.len()
    }

    /// Indices in `S_D` of the standard monomials, a basis of `(S/I)_D`.
    pub fn standard_monomials(&self) -> &[usize] {
        &self.standard
    }

    /// `out += c · NF(monomial)`.
    fn add_monomial(&self, mono: usize, c: u32, out: &mut [u32]) {
        let f = self.field;
        match self.slot[mono] {
            Slot::Standard(pos) => out[pos] = f.add(out[pos], c),
            Slot::Pivot(r) => {
                for (o, &x) in out.iter_mut().zip(self.reducers.row(r)) {
                    *o = f.add(*o, f.mul(c, x));
                }
            }
        }
    }

    /// Coordinates of the normal form of `p` on the standard monomials.
    pub fn normal_form(&self, p: &HomogeneousPoly) -> Vec<u32> {
        assert_eq!(p.degree(), self.degree);
        let mut out = vec![0; self.standard.len()];
        for (i, c) in p.terms() {
            self.add_monomial(i, c, &mut out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error(
        "Hilbert function values {table:?} do not lie on a polynomial of degree <= {expected_dim} \
         from t={window_start}; the window starts too early"
    )]
    NotStabilized {
        expected_dim: i64,
        window_start: u32,
        table: Vec<(u32, u64)>,
    },
    #[error("expected dimension {0} is negative")]
    NegativeDimension(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFit {
    /// Coefficients of `p(t)` in increasing powers of `t`, as `num/den`.
    pub coefficients: Vec<String>,
    /// Degree of `p`, or -1 for the zero polynomial.
    pub fitted_dim: i64,
    /// Leading coefficient times `fitted_dim!`.
    pub fitted_degree: i64,
    pub table: Vec<(u32, u64)>,
}

/// `C(x - shift, j)` as a polynomial in `x`, increasing powers.
fn shifted_binomial_poly(shift: i64, j: usize) -> Vec<BigRational> {
    let mut poly = vec![BigRational::one()];
    for i in 0..j {
        // multiply by (x - shift - i) / (i + 1)
        let c = BigRational::from_integer(BigInt::from(-(shift + i as i64)));
        let den = BigRational::from_integer(BigInt::from(i as i64 + 1));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (d, a) in poly.iter().enumerate() {
            next[d + 1] += a / &den;
            next[d] += a * &c / &den;
        }
        poly = next;
    }
    poly
}

/// Interpolates the Hilbert function at `expected_dim + 1` consecutive
/// degrees from `window_start` and checks two further values against the
/// interpolant.
pub fn fit_hilbert_polynomial(
    ideal: &GradedIdeal,
    expected_dim: i64,
    window_start: u32,
) -> Result<HilbertFit, FitError> {
    if expected_dim < 0 {
        return Err(FitError::NegativeDimension(expected_dim));
    }
    let npts = expected_dim as usize + 1;
    let table: Vec<(u32, u64)> = (0..npts as u32 + 2)
        .map(|k| {
            let t = window_start + k;
            (t, hilbert_function(ideal, t) as u64)
        })
        .collect();

    // forward differences Δ^j HF(window_start)
    let mut diffs = Vec::with_capacity(npts);
    let mut row: Vec<BigInt> = table[..npts]
        .iter()
        .map(|&(_, v)| BigInt::from(v))
        .collect();
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let newton = |k: i64| -> BigRational {
        diffs
            .iter()
            .enumerate()
            .map(|(j, dj)| {
                let mut binom = BigRational::one();
                for i in 0..j as i64 {
                    binom = binom * BigRational::from_integer(BigInt::from(k - i))
                        / BigRational::from_integer(BigInt::from(i + 1));
                }
                binom * BigRational::from_integer(dj.clone())
            })
            .sum()
    };
    for &(t, v) in &table[npts..] {
        let k = (t - window_start) as i64;
        if newton(k) != BigRational::from_integer(BigInt::from(v)) {
            return Err(FitError::NotStabilized {
                expected_dim,
                window_start,
                table,
            });
        }
    }

    let mut coeffs = vec![BigRational::zero(); npts];
    for (j, dj) in diffs.iter().enumerate() {
        let dj = BigRational::from_integer(dj.clone());
        for (d, c) in shifted_binomial_poly(window_start as i64, j)
            .into_iter()
            .enumerate()
        {
            coeffs[d] += &dj * c;
        }
    }
    let fitted_dim = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map_or(-1, |d| d as i64);
    let fitted_degree = if fitted_dim < 0 {
        0
    } else {
        let fact: BigInt = (1..=fitted_dim).map(BigInt::from).product();
        let lead = &coeffs[fitted_dim as usize] * BigRational::from_integer(fact);
        debug_assert!(lead.is_integer());
        lead.to_integer().to_i64().expect("degree fits in i64")
    };
    Ok(HilbertFit {
        coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
        fitted_dim,
        fitted_degree,
        table,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangentError {
    #[error("ideal has no generators")]
    NoGenerators,
    #[error(
        "tangent dimension not stable: {at_bound} with syzygies up to degree {bound}, \
         {at_next} up to degree {}", bound + 1
    )]
    Unstable {
        bound: u32,
        at_bound: usize,
        at_next: usize,
        syzygy_leads: Vec<(u32, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub dim: usize,
    /// Largest syzygy degree used.
    pub bound: u32,
    /// Same computation with syzygies up to `bound + 1`.
    pub dim_at_next_bound: usize,
    /// Number of unknowns `Σ_k dim (S/I)_{d_k}`.
    pub unknowns: usize,
    /// `(degree, count)` of syzygies with a new leading term.
    pub syzygy_leads: Vec<(u32, usize)>,
}

/// Default syzygy bound: largest generator degree plus largest `α` plus two.
/// Generic maximal-minor ideals have their syzygies in low degree; the
/// result is re-checked at `bound + 1` by [`tangent_space_dim`].
pub fn default_syzygy_bound(ideal: &GradedIdeal, max_alpha: i64) -> u32 {
    let dmax = ideal.degrees().iter().copied().max().unwrap_or(0) as i64;
    (dmax + max_alpha.max(0) + 2) as u32
}

/// Default start of the Hilbert-function window, `max(0, ℓ - n)`. For a
/// hypersurface of degree `ℓ` this is exactly where the Hilbert function
/// becomes polynomial; in general the fit re-checks two further values.
pub fn default_window_start(d: &crate::degree::DegreeData) -> u32 {
    (d.ell() - d.n()).max(0) as u32
}

/// Dimension of `Hom(I, S/I)_0`: tuples `(h_k)` with `h_k ∈ (S/I)_{d_k}` and
/// `Σ c_k h_k ∈ I` for every syzygy `(c_k)` of degree at most `bound`.
///
/// Syzygies are enumerated degree by degree as kernels of
/// `⊕ S_{D-d_k} → S_D`. Kernel bases come out of an echelon form
/// with a leading (rightmost) term in a multiplication-compatible order, so
/// only kernel vectors whose leading term is not a variable multiple of an
/// earlier leading term contribute new conditions.
pub fn tangent_space_dim(ideal: &GradedIdeal, bound: u32) -> Result<TangentReport, TangentError> {
    if ideal.is_empty() {
        return Err(TangentError::NoGenerators);
    }
    let field = ideal.field();
    let nv = ideal.n_vars();
    let dmin = *ideal.degrees().iter().min().unwrap();

    let mut pieces: HashMap<u32, IdealPiece> = HashMap::new();
    for &dk in ideal.degrees() {
        pieces
            .entry(dk)
            .or_insert_with(|| IdealPiece::new(ideal, dk));
    }
    // unknowns: (generator k, standard monomial index in S_{d_k})
    let unknowns: Vec<(usize, usize)> = ideal
        .degrees()
        .iter()
        .enumerate()
        .flat_map(|(k, dk)| pieces[dk].standard_monomials().iter().map(move |&m| (k, m)))
        .collect();
    let nu = unknowns.len();

    // constraint columns for each unknown, grouped by syzygy degree
    let mut constraints: Vec<Vec<u32>> = vec![Vec::new(); nu];
    let mut width_upto: Vec<(u32, usize)> = Vec::new();
    let mut leads_by_degree = Vec::new();
    let mut prev_leads: HashSet<(usize, u64)> = HashSet::new();

    for degree in dmin..=bound + 1 {
        let (mac, layout) = macaulay(ideal, degree);
        let a = mac.transpose();
        let ech = echelon(field, &a, false);

        let mut leads = HashSet::new();
        let mut fresh = Vec::new();
        for f in ech.free_columns() {
            let (k, mi) = layout.locate(f);
            let mb = layout.bases[k].as_ref().unwrap();
            let key = mb.key(mi);
            let divisible = mb.exponents(mi).iter().enumerate().any(|(var, &e)| {
                e > 0 && prev_leads.contains(&(k, key - MonomialBasis::var_key(var)))
            });
            leads.insert((k, key));
            if !divisible {
                fresh.push(ech.kernel_vector(field, f));
            }
        }
        prev_leads = leads;
        leads_by_degree.push((degree, fresh.len()));

        if !fresh.is_empty() {
            let piece = IdealPiece::from_echelon(field, MonomialBasis::get(nv, degree), &{
                echelon(field, &mac, true)
            });
            let hf = piece.hilbert_value();
            for v in &fresh {
                // components c_k of the syzygy
                let comps: Vec<Option<Vec<(u64, u32)>>> = (0..ideal.len())
                    .map(|k| {
                        let off = layout.offsets[k]?;
                        let mb = layout.bases[k].as_ref()?;
                        let terms: Vec<(u64, u32)> = (0..mb.len())
                            .filter(|&j| v[off + j] != 0)
                            .map(|j| (mb.key(j), v[off + j]))
                            .collect();
                        Some(terms)
                    })
                    .collect();
                for (u, &(k, m)) in unknowns.iter().enumerate() {
                    let mut out = vec![0u32; hf];
                    if let Some(terms) = &comps[k] {
                        let mkey = pieces[&ideal.degrees()[k]].basis.key(m);
                        for &(ck, c) in terms {
                            piece.add_monomial(piece.basis.index_of_key(ck + mkey), c, &mut out);
                        }
                    }
                    constraints[u].extend_from_slice(&out);
                }
            }
        }
        width_upto.push((degree, constraints.first().map_or(0, Vec::len)));
    }

    let rank_upto = |max_degree: u32| -> usize {
        let width = width_upto
            .iter()
            .filter(|(d, _)| *d <= max_degree)
            .map(|&(_, w)| w)
            .next_back()
            .unwrap_or(0);
        if width == 0 || nu == 0 {
            return 0;
        }
        let mut m = DenseMatrix::zeros(nu, width);
        for (u, row) in constraints.iter().enumerate() {
            m.row_mut(u).copy_from_slice(&row[..width]);
        }
        echelon(field, &m, false).rank()
    };
    let at_bound = nu - rank_upto(bound);
    let at_next = nu - rank_upto(bound + 1);
    let syzygy_leads: Vec<(u32, usize)> = leads_by_degree
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .collect();
    if at_bound != at_next {
        return Err(TangentError::Unstable {
            bound,
            at_bound,
            at_next,
            syzygy_leads,
        });
    }
    Ok(TangentReport {
        dim: at_bound,
        bound,
        dim_at_next_bound: at_next,
        unknowns: nu,
        syzygy_leads,
    })
}

/// Dimension of `{(u, v) ∈ End(A) × End(B) : φ∘u = v∘φ}`, where `u` and `v`
/// range over degree-preserving endomorphisms of the split bundles.
pub fn stabilizer_lie_dim(m: &PolyMatrix) -> usize {
    let field = m.field();
    let d = m.data();
    let (a, b, nv) = (m.cols(), m.rows(), m.n_vars());
    let (al, be) = (d.alphas(), d.betas());

    // equation blocks: entry (i, k) of φu - vφ, of degree α_k - β_i
    let mut eq_offset = vec![None; b * a];
    let mut neq = 0;
    for i in 0..b {
        for k in 0..a {
            if let Ok(deg) = u32::try_from(al[k] - be[i]) {
                eq_offset[i * a + k] = Some(neq);
                neq += MonomialBasis::get(nv, deg).len();
            }
        }
    }

    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut push_column = |contribs: Vec<(usize, HomogeneousPoly)>| {
        let mut col = vec![0u32; neq];
        for (block, p) in contribs {
            let off = eq_offset[block].expect("contribution to a live block");
            for (idx, c) in p.terms() {
                col[off + idx] = field.add(col[off + idx], c);
            }
        }
        columns.push(col);
    };

    // u_{jk}: O(-α_k) → O(-α_j), degree α_k - α_j; enters (φu)_{ik} via φ_{ij}
    for j in 0..a {
        for k in 0..a {
            let Ok(deg) = u32::try_from(al[k] - al[j]) else {
                continue;
            };
            let mb = MonomialBasis::get(nv, deg);
            for t in 0..mb.len() {
                let contribs = (0..b)
                    .filter_map(|i| {
                        let phi = m.entry(i, j)?;
                        Some((i * a + k, phi.mul_monomial(mb.key(t), deg)))
                    })
                    .collect();
                push_column(contribs);
            }
        }
    }
    // v_{il}: O(-β_l) → O(-β_i), degree β_l - β_i; enters -(vφ)_{ik} via φ_{lk}
    for i in 0..b {
        for l in 0..b {
            let Ok(deg) = u32::try_from(be[l] - be[i]) else {
                continue;
            };
            let mb = MonomialBasis::get(nv, deg);
            for t in 0..mb.len() {
                let contribs = (0..a)
                    .filter_map(|k| {
                        let phi = m.entry(l, k)?;
                        Some((i * a + k, phi.mul_monomial(mb.key(t), deg).neg()))
                    })
                    .collect();
                push_column(contribs);
            }
        }
    }

    let nunk = columns.len();
    if neq == 0 {
        return nunk;
    }
    let mat = DenseMatrix::from_rows(neq, &columns);
    nunk - echelon(field, &mat, false).rank()
}

/// Graded-piece dimensions of the parameter space and the automorphism
/// groups, counted by enumerating monomial bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCounts {
    pub hom_ab: usize,
    pub hom_ba: usize,
    pub end_a: usize,
    pub end_b: usize,
}

fn piece_dim(nv: usize, deg: i64) -> usize {
    u32::try_from(deg).map_or(0, |d| MonomialBasis::get(nv, d).len())
}

pub fn group_counts(d: &crate::degree::DegreeData) -> GroupCounts {
    let nv = d.n_vars();
    let (al, be) = (d.alphas(), d.betas());
    let sum = |xs: &[i64], ys: &[i64]| -> usize {
        xs.iter()
            .flat_map(|&x| ys.iter().map(move |&y| piece_dim(nv, x - y)))
            .sum()
    };
    GroupCounts {
        hom_ab: sum(al, be),
        hom_ba: sum(be, al),
        end_a: sum(al, al),
        end_b: sum(be, be),
    }
}

/// `dim W - dim End(A) - dim End(B) + dim Stab(φ)`.
pub fn orbit_space_dim(m: &PolyMatrix) -> i64 {
    let g = group_counts(m.data());
    g.hom_ab as i64 - g.end_a as i64 - g.end_b as i64 + stabilizer_lie_dim(m) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::DegreeData;

    fn dd(n: i64, a: &[i64], b: &[i64]) -> DegreeData {
        DegreeData::new(n, a.to_vec(), b.to_vec()).unwrap()
    }

    fn minors(d: &DegreeData, seed: u64) -> (PolyMatrix, GradedIdeal) {
        let m = PolyMatrix::random(d, PrimeField::default(), seed).unwrap();
        let i = m.maximal_minors();
        (m, i)
    }

    #[test]
    fn hf_of_scroll() {
        let (_, i) = minors(&dd(4, &[1, 1, 1], &[0, 0]), 1);
        assert_eq!(hilbert_function(&i, 0), 1);
        assert_eq!(hilbert_function(&i, 1), 5);
        assert_eq!(hilbert_function(&i, 2), 12);
    }

    #[test]
    fn hf_of_a_line() {
        let f = PrimeField::default();
        let x0 = HomogeneousPoly::monomial(f, &[1, 0, 0], 1);
        let i = GradedIdeal::new(f, 3, vec![x0]);
        assert_eq!(hilbert_function(&i, 1), 2);
        assert_eq!(hilbert_function(&i, 4), 5);
    }

    #[test]
    fn fits() {
        let (_, i) = minors(&dd(4, &[1, 1, 1], &[0, 0]), 1);
        let fit = fit_hilbert_polynomial(&i, 2, 0).unwrap();
        assert_eq!((fit.fitted_dim, fit.fitted_degree), (2, 3));
        assert_eq!(fit.coefficients, vec!["1", "5/2", "3/2"]);

        let (_, i) = minors(&dd(3, &[1, 2], &[0, 0]), 1);
        let fit = fit_hilbert_polynomial(&i, 2, 3).unwrap();
        assert_eq!((fit.fitted_dim, fit.fitted_degree), (2, 3));
    }

    #[test]
    fn fit_detects_early_window() {
        // a sextic curve cut out by quartics: HF(t) = C(t+3,3) for t < 4
        let (_, i) = minors(&dd(3, &[2, 2, 2], &[0, 0]), 1);
        assert!(matches!(
            fit_hilbert_polynomial(&i, 1, 0),
            Err(FitError::NotStabilized { .. })
        ));
        let fit = fit_hilbert_polynomial(&i, 1, 4).unwrap();
        assert_eq!((fit.fitted_dim, fit.fitted_degree), (1, 12));
    }

    #[test]
    fn stabilizer_of_scroll_is_scalars() {
        let (m, _) = minors(&dd(4, &[1, 1, 1], &[0, 0]), 1);
        assert_eq!(stabilizer_lie_dim(&m), 1);
        assert_eq!(orbit_space_dim(&m), 18);
    }

    #[test]
    fn tangent_of_scroll() {
        let (_, i) = minors(&dd(4, &[1, 1, 1], &[0, 0]), 1);
        let r = tangent_space_dim(&i, default_syzygy_bound(&i, 1)).unwrap();
        assert_eq!(r.dim, 18);
        assert_eq!(r.unknowns, 36);
    }

    #[test]
    fn tangent_of_twisted_cubic() {
        let (_, i) = minors(&dd(3, &[1, 1, 1], &[0, 0]), 2);
        let r = tangent_space_dim(&i, default_syzygy_bound(&i, 1)).unwrap();
        assert_eq!(r.dim, 12);
    }

    #[test]
    fn group_counts_scroll() {
        let g = group_counts(&dd(4, &[1, 1, 1], &[0, 0]));
        assert_eq!(
            g,
            GroupCounts {
                hom_ab: 30,
                hom_ba: 0,
                end_a: 9,
                end_b: 4
            }
        );
    }
}
