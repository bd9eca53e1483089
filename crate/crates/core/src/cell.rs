//! Cell values: finite integers extended with a negative-infinity sentinel.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A grid value or a partial sum of grid values.
///
/// `NegInfinity` marks cells no path may profitably enter. It absorbs
/// addition and is smaller than every finite value, so `max` and `+` are
/// total over the type. Variant order matters: the derived `Ord` relies on
/// `NegInfinity` being declared first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellValue {
    NegInfinity,
    Finite(i64),
}

pub use CellValue::{Finite, NegInfinity};

impl CellValue {
    pub const ZERO: CellValue = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Finite(v) => Some(v),
            NegInfinity => None,
        }
    }

    /// Finite value, panicking on the sentinel. For callers that have
    /// already established finiteness.
    pub fn unwrap_finite(self) -> i64 {
        self.finite().expect("expected a finite cell value")
    }
}

impl Default for CellValue {
    fn default() -> Self {
        CellValue::ZERO
    }
}

impl From<i64> for CellValue {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

impl Add for CellValue {
    type Output = CellValue;

    #[inline]
    fn add(self, rhs: CellValue) -> CellValue {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => NegInfinity,
        }
    }
}

impl Add<i64> for CellValue {
    type Output = CellValue;

    #[inline]
    fn add(self, rhs: i64) -> CellValue {
        match self {
            Finite(a) => Finite(a + rhs),
            NegInfinity => NegInfinity,
        }
    }
}

/// Subtraction of a finite amount. Subtracting `NegInfinity` is not
/// meaningful and yields `NegInfinity` so the result stays conservative.
impl Sub for CellValue {
    type Output = CellValue;

    #[inline]
    fn sub(self, rhs: CellValue) -> CellValue {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a - b),
            _ => NegInfinity,
        }
    }
}

impl Sum for CellValue {
    fn sum<I: Iterator<Item = CellValue>>(iter: I) -> CellValue {
        iter.fold(CellValue::ZERO, |acc, v| acc + v)
    }
}

impl PartialEq<i64> for CellValue {
    fn eq(&self, other: &i64) -> bool {
        *self == Finite(*other)
    }
}

impl PartialOrd<i64> for CellValue {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Finite(*other)))
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            NegInfinity => f.write_str("-inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid cell token {0:?}")]
pub struct ParseCellError(pub String);

impl FromStr for CellValue {
    type Err = ParseCellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-inf" {
            return Ok(NegInfinity);
        }
        s.parse::<i64>()
            .map(Finite)
            .map_err(|_| ParseCellError(s.to_string()))
    }
}

// Serialized as a JSON integer, or the string "-inf" for the sentinel.
impl Serialize for CellValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(v) => serializer.serialize_i64(*v),
            NegInfinity => serializer.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for CellValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Finite(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
