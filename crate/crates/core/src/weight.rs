//! Nonnegative integers extended with infinity.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Raised when a finite sum does not fit into 64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("weight overflow: {lhs} + {rhs} exceeds the 64-bit range")]
pub struct Overflow {
    pub lhs: u64,
    pub rhs: u64,
}

/// A value in ℕ ∪ {∞}.
///
/// Finite values are strictly below `u64::MAX`, which is reserved for ∞, so
/// the derived ordering is the natural one with every finite value below ∞.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtWeight(u64);

impl ExtWeight {
    pub const ZERO: ExtWeight = ExtWeight(0);
    pub const INFINITY: ExtWeight = ExtWeight(u64::MAX);
    /// Largest representable finite value.
    pub const MAX_FINITE: u64 = u64::MAX - 1;

    /// Panics if `n` is `u64::MAX`, which is not a finite value here.
    pub fn finite(n: u64) -> Self {
        assert!(n <= Self::MAX_FINITE, "u64::MAX is reserved for infinity");
        ExtWeight(n)
    }

    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    pub fn is_infinite(self) -> bool {
        self.0 == u64::MAX
    }

    pub fn as_finite(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    /// Adds an edge weight. `∞ + w = ∞`; finite overflow is an error.
    pub fn checked_add(self, w: u64) -> Result<ExtWeight, Overflow> {
        if self.is_infinite() {
            return Ok(self);
        }
        match self.0.checked_add(w) {
            Some(sum) if sum <= Self::MAX_FINITE => Ok(ExtWeight(sum)),
            _ => Err(Overflow { lhs: self.0, rhs: w }),
        }
    }

    /// Adds two extended values.
    pub fn checked_sum(self, other: ExtWeight) -> Result<ExtWeight, Overflow> {
        match other.as_finite() {
            Some(w) => self.checked_add(w),
            None => Ok(ExtWeight::INFINITY),
        }
    }
}

impl From<u64> for ExtWeight {
    fn from(n: u64) -> Self {
        ExtWeight::finite(n)
    }
}

impl fmt::Display for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_finite() {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid extended weight {0:?}: expected a nonnegative integer or `inf`")]
pub struct ParseExtWeightError(String);

impl FromStr for ExtWeight {
    type Err = ParseExtWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ExtWeight::INFINITY);
        }
        match s.parse::<u64>() {
            Ok(n) if n <= ExtWeight::MAX_FINITE => Ok(ExtWeight(n)),
            _ => Err(ParseExtWeightError(s.to_string())),
        }
    }
}

// Serialized as an integer, or as the float `inf` (a bare `inf` token in TOML).
impl Serialize for ExtWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_finite() {
            Some(n) => serializer.serialize_u64(n),
            None => serializer.serialize_f64(f64::INFINITY),
        }
    }
}

impl<'de> Deserialize<'de> for ExtWeight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtWeight;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or inf")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtWeight, E> {
                if v > ExtWeight::MAX_FINITE {
                    return Err(E::custom("value out of range"));
                }
                Ok(ExtWeight(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtWeight, E> {
                if v < 0 {
                    return Err(E::custom("negative weight"));
                }
                Ok(ExtWeight(v as u64))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtWeight, E> {
                if v == f64::INFINITY {
                    Ok(ExtWeight::INFINITY)
                } else {
                    Err(E::custom("only `inf` is accepted as a float"))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtWeight, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
