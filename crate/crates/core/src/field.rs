use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_PRIME: u32 = 32003;
pub const SECOND_PRIME: u32 = 65537;

/// Primes below this keep `(p-1)²` far enough under `2^53` for the lazy
/// floating-point accumulation in [`crate::linalg`].
pub const MAX_PRIME: u32 = 1 << 24;
pub const MIN_PRIME: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} outside the supported range ({MIN_PRIME}, {MAX_PRIME})")]
    OutOfRange(u32),
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    (2..)
        .take_while(|d| d * d <= p)
        .all(|d| !p.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if p <= MIN_PRIME || p >= MAX_PRIME {
            return Err(FieldError::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Canonical representative of a signed integer.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = FieldError;

    fn try_from(p: u32) -> Result<Self, FieldError> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guards() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(65537).is_ok());
        assert_eq!(PrimeField::new(2), Err(FieldError::OutOfRange(2)));
        assert_eq!(PrimeField::new(32001), Err(FieldError::NotPrime(32001)));
    }

    #[test]
    fn inverse() {
        let f = PrimeField::default();
        for a in [1u32, 2, 3, 12345, 32002] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), 32002);
    }
}
