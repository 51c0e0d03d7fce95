//! Values extended by a point at infinity: orders, contact orders, distances.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// `T ∪ {∞}` with `∞` above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

pub type ExtendedNat = Extended<u64>;
pub type ExtendedRat = Extended<BigRational>;

impl<T> Extended<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Extended<U> {
        match self {
            Extended::Finite(v) => Extended::Finite(f(v)),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl<T: Ord> PartialOrd for Extended<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Extended<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl<T> From<T> for Extended<T> {
    fn from(v: T) -> Self {
        Extended::Finite(v)
    }
}

impl ExtendedNat {
    pub fn to_rat(&self) -> ExtendedRat {
        match self {
            Extended::Finite(v) => Extended::Finite(BigRational::from_integer((*v).into())),
            Extended::Infinite => Extended::Infinite,
        }
    }

    /// `self / k` with `∞ / k = ∞`.
    pub fn div_nat(&self, k: u64) -> ExtendedRat {
        assert!(k > 0, "division by zero order");
        match self {
            Extended::Finite(v) => Extended::Finite(BigRational::new((*v).into(), k.into())),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl ExtendedRat {
    pub fn from_int(v: i64) -> Self {
        Extended::Finite(BigRational::from_integer(v.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
            Extended::Infinite => f64::INFINITY,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Extended::Finite(v) if v.is_zero())
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

// JSON: naturals as numbers, rationals as "p/q" strings, infinity as "inf".
impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_u64(*v),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl Serialize for ExtendedRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_top() {
        let a: ExtendedNat = 5.into();
        assert!(a < ExtendedNat::Infinite);
        assert_eq!(std::cmp::min(a.clone(), ExtendedNat::Infinite), a);
    }

    #[test]
    fn division_keeps_infinity() {
        assert_eq!(ExtendedNat::Infinite.div_nat(3), ExtendedRat::Infinite);
        assert_eq!(ExtendedNat::Finite(14).div_nat(2), ExtendedRat::from_int(7));
        assert_eq!(ExtendedNat::Finite(7).div_nat(2).to_string(), "7/2");
    }
}
