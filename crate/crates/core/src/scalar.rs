//! Scalars and the extended reals `R ∪ {-∞}` under max-plus arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_rational::Ratio;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A finite real value usable as a weight or a cost.
///
/// Everything downstream is order-based plus one addition per region, so any
/// ordered additive type works. Integer and rational types keep results exact;
/// `f64` values are compared exactly (no tolerance). NaN is rejected wherever
/// values enter the library, which makes `partial_cmp` total in practice.
pub trait Scalar:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;

    fn is_finite(&self) -> bool;

    /// Total comparison. Panics on NaN, which constructors never admit.
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("NaN scalar")
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_finite(&self) -> bool {
        true
    }
}

impl Scalar for Ratio<i64> {
    fn zero() -> Self {
        Ratio::from_integer(0)
    }
    fn is_finite(&self) -> bool {
        true
    }
}

/// An element of the max-plus carrier: a finite value or `NegInf`.
///
/// The derived ordering puts `NegInf` below every finite value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtendedReal<T> {
    NegInf,
    Finite(T),
}

pub use ExtendedReal::{Finite, NegInf};

impl<T: Scalar> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Finite(v) => Some(v),
            NegInf => None,
        }
    }

    /// Tropical addition: `max`.
    pub fn oplus(self, other: Self) -> Self {
        match (self, other) {
            (NegInf, x) | (x, NegInf) => x,
            (Finite(a), Finite(b)) => Finite(a.max_of(b)),
        }
    }

    /// Tropical multiplication: ordinary `+`, with `NegInf` absorbing.
    pub fn otimes(self, other: Self) -> Self {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => NegInf,
        }
    }

    pub fn cmp_total(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, Finite(_)) => Ordering::Less,
            (Finite(_), NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp_total(b),
        }
    }
}

impl<T> From<T> for ExtendedReal<T> {
    fn from(v: T) -> Self {
        Finite(v)
    }
}

impl<T: fmt::Display> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            Finite(v) => v.fmt(f),
        }
    }
}

// JSON form: finite values are plain numbers, NegInf is the string "-inf".
impl<T: Serialize> Serialize for ExtendedReal<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            NegInf => serializer.serialize_str("-inf"),
            Finite(v) => v.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal<f64> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtendedReal<f64>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                if v.is_finite() {
                    Ok(Finite(v))
                } else {
                    Err(E::custom("non-finite number"))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                match v {
                    "-inf" => Ok(NegInf),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
