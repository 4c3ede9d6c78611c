//! Arbitrary-precision integers with a JSON form that stays readable:
//! values that fit in `i64` are written as plain numbers, larger ones as
//! decimal strings.

use std::fmt;
use std::ops::{Add, Deref};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactInt(pub BigInt);

impl ExactInt {
    pub fn zero() -> Self {
        ExactInt(BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

impl Deref for ExactInt {
    type Target = BigInt;

    fn deref(&self) -> &BigInt {
        &self.0
    }
}

impl From<BigInt> for ExactInt {
    fn from(v: BigInt) -> Self {
        ExactInt(v)
    }
}

impl From<i64> for ExactInt {
    fn from(v: i64) -> Self {
        ExactInt(BigInt::from(v))
    }
}

impl PartialEq<i64> for ExactInt {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigInt::from(*other)
    }
}

impl Add for ExactInt {
    type Output = ExactInt;

    fn add(self, rhs: ExactInt) -> ExactInt {
        ExactInt(self.0 + rhs.0)
    }
}

impl std::iter::Sum for ExactInt {
    fn sum<I: Iterator<Item = ExactInt>>(iter: I) -> Self {
        ExactInt(iter.map(|x| x.0).sum())
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExactInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactInt, E> {
                Ok(ExactInt::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactInt, E> {
                Ok(ExactInt(BigInt::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactInt, E> {
                v.parse::<BigInt>().map(ExactInt).map_err(E::custom)
            }
        }
        de.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_small_and_large() {
        let small = ExactInt::from(-42);
        assert_eq!(serde_json::to_string(&small).unwrap(), "-42");
        let big = ExactInt("123456789012345678901234567890".parse().unwrap());
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<ExactInt>(&s).unwrap(), big);
        assert_eq!(serde_json::from_str::<ExactInt>("18").unwrap(), 18);
    }
}
