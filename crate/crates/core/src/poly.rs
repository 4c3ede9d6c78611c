//! Homogeneous polynomials over `F_p` stored densely by graded piece.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::PrimeField;

/// Exponents are packed into a `u64`, 7 bits per variable.
const BITS: u32 = 7;
pub const MAX_VARS: usize = 9;
pub const MAX_DEGREE: u32 = (1 << BITS) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    Vars(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    Degree(u32, u32),
    #[error("field mismatch: p={0} vs p={1}")]
    Field(u32, u32),
    #[error("point has {got} coordinates, expected {expected}")]
    Point { got: usize, expected: usize },
}

/// All monomials of a fixed degree in a fixed number of variables, in
/// lex order (`x0^d` first). Index order is compatible with
/// multiplication: if `m` precedes `m'` then `x·m` precedes `x·m'`.
#[derive(Debug)]
pub struct MonomialBasis {
    pub n_vars: usize,
    pub degree: u32,
    exponents: Vec<Vec<u32>>,
    keys: Vec<u64>,
    index: HashMap<u64, u32>,
}

fn pack(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| acc | ((e as u64) << (BITS * i as u32)))
}

fn lex_monomials(n_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; n_vars], &mut out);
    out
}

impl MonomialBasis {
    fn build(n_vars: usize, degree: u32) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&n_vars),
            "unsupported variable count {n_vars}"
        );
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        let exponents = lex_monomials(n_vars, degree);
        let keys: Vec<u64> = exponents.iter().map(|e| pack(e)).collect();
        let index = keys
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();
        MonomialBasis {
            n_vars,
            degree,
            exponents,
            keys,
            index,
        }
    }

    /// Shared, cached basis.
    pub fn get(n_vars: usize, degree: u32) -> Arc<MonomialBasis> {
        type Cache = Mutex<HashMap<(usize, u32), Arc<MonomialBasis>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().unwrap().get(&(n_vars, degree)) {
            return b.clone();
        }
        let built = Arc::new(Self::build(n_vars, degree));
        cache
            .lock()
            .unwrap()
            .entry((n_vars, degree))
            .or_insert(built)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    #[inline]
    pub fn key(&self, i: usize) -> u64 {
        self.keys[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(&pack(exps)).map(|&i| i as usize)
    }

    #[inline]
    pub fn index_of_key(&self, key: u64) -> usize {
        self.index[&key] as usize
    }

    /// Packed key of the single variable `x_i`.
    pub fn var_key(i: usize) -> u64 {
        1u64 << (BITS * i as u32)
    }
}

/// A homogeneous form of fixed degree, coefficients indexed by the lex
/// monomial basis of that degree.
#[derive(Debug, Clone)]
pub struct HomogeneousPoly {
    field: PrimeField,
    basis: Arc<MonomialBasis>,
    coeffs: Vec<u32>,
}

impl PartialEq for HomogeneousPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.basis.n_vars == other.basis.n_vars
            && self.basis.degree == other.basis.degree
            && self.coeffs == other.coeffs
    }
}

impl Eq for HomogeneousPoly {}

impl HomogeneousPoly {
    pub fn zero(field: PrimeField, n_vars: usize, degree: u32) -> Self {
        let basis = MonomialBasis::get(n_vars, degree);
        let coeffs = vec![0; basis.len()];
        HomogeneousPoly {
            field,
            basis,
            coeffs,
        }
    }

    pub fn constant(field: PrimeField, n_vars: usize, c: u32) -> Self {
        let mut p = Self::zero(field, n_vars, 0);
        p.coeffs[0] = c % field.p();
        p
    }

    pub fn monomial(field: PrimeField, exps: &[u32], c: u32) -> Self {
        let degree = exps.iter().sum();
        let mut p = Self::zero(field, exps.len(), degree);
        let i = p.basis.index_of(exps).expect("monomial in its own basis");
        p.coeffs[i] = c % field.p();
        p
    }

    /// Coefficients are reduced mod `p`.
    pub fn from_coeffs(field: PrimeField, n_vars: usize, degree: u32, coeffs: Vec<u32>) -> Self {
        let basis = MonomialBasis::get(n_vars, degree);
        assert_eq!(coeffs.len(), basis.len(), "coefficient vector length");
        let coeffs = coeffs.into_iter().map(|c| c % field.p()).collect();
        HomogeneousPoly {
            field,
            basis,
            coeffs,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.basis.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [u32] {
        &mut self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Non-zero `(index, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::Field(self.field.p(), other.field.p()));
        }
        if self.n_vars() != other.n_vars() {
            return Err(PolyError::Vars(self.n_vars(), other.n_vars()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        if self.degree() != other.degree() {
            return Err(PolyError::Degree(self.degree(), other.degree()));
        }
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(HomogeneousPoly {
            field: f,
            basis: self.basis.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        HomogeneousPoly {
            field: f,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        HomogeneousPoly {
            field: f,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.mul(c, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.field, self.n_vars(), self.degree() + other.degree());
        self.mul_add_into(other, 1, &mut out.coeffs);
        Ok(out)
    }

    /// `acc += s · self · other`, where `acc` is indexed by the basis of
    /// degree `deg self + deg other`.
    pub fn mul_add_into(&self, other: &Self, s: u32, acc: &mut [u32]) {
        let f = self.field;
        let target = MonomialBasis::get(self.n_vars(), self.degree() + other.degree());
        debug_assert_eq!(acc.len(), target.len());
        let rhs: Vec<(u64, u32)> = other
            .terms()
            .map(|(j, c)| (other.basis.key(j), f.mul(c, s)))
            .collect();
        for (i, a) in self.terms() {
            let ka = self.basis.key(i);
            for &(kb, b) in &rhs {
                let idx = target.index_of_key(ka + kb);
                acc[idx] = f.add(acc[idx], f.mul(a, b));
            }
        }
    }

    /// Multiply by the monomial with packed key `key` of degree `deg`.
    pub fn mul_monomial(&self, key: u64, deg: u32) -> Self {
        let mut out = Self::zero(self.field, self.n_vars(), self.degree() + deg);
        for (i, c) in self.terms() {
            let idx = out.basis.index_of_key(self.basis.key(i) + key);
            out.coeffs[idx] = c;
        }
        out
    }

    pub fn eval(&self, point: &[u32]) -> Result<u32, PolyError> {
        if point.len() != self.n_vars() {
            return Err(PolyError::Point {
                got: point.len(),
                expected: self.n_vars(),
            });
        }
        let f = self.field;
        let mut total = 0;
        for (i, c) in self.terms() {
            let mut term = c;
            for (&x, &e) in point.iter().zip(self.basis.exponents(i)) {
                term = f.mul(term, f.pow(x, e as u64));
            }
            total = f.add(total, term);
        }
        Ok(total)
    }

    /// Plain-text form over variables `x0..xn`, e.g. `3*x0^2*x1 + x2^3`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.terms() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in self.basis.exponents(i).iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{v}")),
                    _ => factors.push(format!("x{v}^{e}")),
                }
            }
            if factors.is_empty() {
                let _ = write!(out, "{c}");
            } else if c == 1 {
                out.push_str(&factors.join("*"));
            } else {
                let _ = write!(out, "{c}*{}", factors.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            degree: self.degree(),
            terms: self
                .terms()
                .map(|(i, c)| TermJson {
                    exp: self.basis.exponents(i).to_vec(),
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn from_json(field: PrimeField, n_vars: usize, j: &PolyJson) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, n_vars, j.degree);
        for t in &j.terms {
            if t.exp.len() != n_vars {
                return Err(PolyError::Vars(t.exp.len(), n_vars));
            }
            let deg: u32 = t.exp.iter().sum();
            if deg != j.degree {
                return Err(PolyError::Degree(deg, j.degree));
            }
            let i = p
                .basis
                .index_of(&t.exp)
                .expect("exponent of matching degree");
            p.coeffs[i] = field.add(p.coeffs[i], t.coeff % field.p());
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, f: PrimeField, nv: usize, d: u32) -> HomogeneousPoly {
        let len = MonomialBasis::get(nv, d).len();
        HomogeneousPoly::from_coeffs(
            f,
            nv,
            d,
            (0..len).map(|_| rng.gen_range(0..f.p())).collect(),
        )
    }

    #[test]
    fn basis_sizes_and_order() {
        for nv in 1..=6 {
            for d in 0..6u32 {
                let b = MonomialBasis::get(nv, d);
                assert_eq!(b.len(), binomial(nv + d as usize - 1, d as usize));
            }
        }
        let b = MonomialBasis::get(3, 2);
        assert_eq!(b.exponents(0), &[2, 0, 0]);
        assert_eq!(b.exponents(b.len() - 1), &[0, 0, 2]);
    }

    #[test]
    fn identities() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_poly(&mut rng, f, 4, 3);
        let one = HomogeneousPoly::constant(f, 4, 1);
        assert_eq!(p.mul(&one).unwrap(), p);
        let x0x1 = HomogeneousPoly::monomial(f, &[1, 1, 0, 0], 1);
        assert_eq!(x0x1.nnz(), 1);
        assert_eq!(x0x1.degree(), 2);
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = random_poly(&mut rng, f, 4, 2);
        let q = random_poly(&mut rng, f, 4, 2);
        let r = random_poly(&mut rng, f, 4, 1);
        let sum = p.add(&q).unwrap();
        let prod = p.mul(&r).unwrap();
        for _ in 0..10 {
            let pt: Vec<u32> = (0..4).map(|_| rng.gen_range(0..f.p())).collect();
            let (pv, qv, rv) = (
                p.eval(&pt).unwrap(),
                q.eval(&pt).unwrap(),
                r.eval(&pt).unwrap(),
            );
            assert_eq!(sum.eval(&pt).unwrap(), f.add(pv, qv));
            assert_eq!(prod.eval(&pt).unwrap(), f.mul(pv, rv));
        }
    }

    #[test]
    fn mismatches() {
        let f = PrimeField::default();
        let a = HomogeneousPoly::zero(f, 3, 2);
        let b = HomogeneousPoly::zero(f, 3, 1);
        let c = HomogeneousPoly::zero(f, 4, 2);
        assert_eq!(a.add(&b), Err(PolyError::Degree(2, 1)));
        assert_eq!(a.add(&c), Err(PolyError::Vars(3, 4)));
        assert!(a.eval(&[1, 2]).is_err());
    }

    #[test]
    fn text_form() {
        let f = PrimeField::default();
        let p = HomogeneousPoly::monomial(f, &[2, 1, 0], 3)
            .add(&HomogeneousPoly::monomial(f, &[0, 0, 3], 1))
            .unwrap();
        assert_eq!(p.to_text(), "3*x0^2*x1 + x2^3");
        let back = HomogeneousPoly::from_json(f, 3, &p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
