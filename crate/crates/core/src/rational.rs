//! Arbitrary-precision rationals with an exact `p/q` text form.
//!
//! Values are always kept canonical (reduced, positive denominator) and all
//! arithmetic is exact; nothing in this crate ever rounds through floats.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer/denom` in canonical form. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `self / 2`; midpoints are taken often enough to deserve a name.
    pub fn half(&self) -> Self {
        Rational(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |reason| Error::ParseRational {
            input: s.to_owned(),
            reason,
        };
        let trimmed = s.trim();
        let (numer_text, denom_text) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        let numer: BigInt = numer_text.parse().map_err(|_| bad("bad numerator"))?;
        let denom: BigInt = match denom_text {
            Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rational::new(numer, denom))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn construction_is_canonical() {
        assert_eq!(Rational::new(6, 9), Rational::new(2, 3));
        assert_eq!(Rational::new(1, -2), Rational::new(-1, 2));
        assert_eq!(Rational::new(-4, -8), Rational::new(1, 2));
        assert_eq!(Rational::new(0, 7), Rational::zero());
    }

    #[test]
    fn display_is_always_numerator_slash_denominator() {
        assert_eq!(Rational::new(2, 3).to_string(), "2/3");
        assert_eq!(Rational::new(-1, 2).to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0/1");
        assert_eq!(Rational::one().to_string(), "1/1");
    }

    #[test]
    fn parsing_accepts_fractions_and_integers() {
        assert_eq!(rat("3/4"), Rational::new(3, 4));
        assert_eq!(rat(" -2/8 "), Rational::new(-1, 4));
        assert_eq!(rat("5"), Rational::from_integer(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_arithmetic() {
        let third = rat("1/3");
        let sixth = rat("1/6");
        assert_eq!(&third + &sixth, rat("1/2"));
        assert_eq!(&third - &sixth, sixth);
        assert_eq!(&third * &sixth, rat("1/18"));
        assert_eq!(&third / &sixth, Rational::from_integer(2));
        assert_eq!(-&third, rat("-1/3"));
        assert_eq!(rat("1/2").half(), rat("1/4"));
    }

    #[test]
    fn powers() {
        assert_eq!(rat("2/3").pow(3), rat("8/27"));
        assert_eq!(rat("3/1").pow(-2), rat("1/9"));
        assert_eq!(rat("2/3").pow(0), Rational::one());
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(rat("1/3") < rat("1/2"));
        assert!(rat("-1/2") < rat("0/1"));
        assert!(rat("7/5") > rat("4/3"));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(rat("7/3").floor_int(), BigInt::from(2));
        assert_eq!(rat("7/3").ceil_int(), BigInt::from(3));
        assert_eq!(rat("-1/3").floor_int(), BigInt::from(-1));
        assert_eq!(rat("2/1").floor_int(), BigInt::from(2));
    }

    #[test]
    fn serde_round_trips_as_exact_strings() {
        let x = rat("22/7");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"22/7\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
