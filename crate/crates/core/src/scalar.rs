//! Exact rational scalars.
//!
//! Every matrix entry in the crate is a [`Scalar`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Identity checks
//! therefore reduce to comparing against an exact zero.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    /// Builds `numer / denom`, failing on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer.into(), denom.into())))
    }

    /// `numer / denom` for literals known to be valid. Panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator")
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse; zero has none.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Exact quotient, failing when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with optional sign on either integer.
    fn from_str(text: &str) -> Result<Self> {
        let malformed = || Error::Parse(text.to_string());
        let trimmed = text.trim();
        let (num, den) = match trimmed.split_once('/') {
            Some((p, q)) => (p.trim(), Some(q.trim())),
            None => (trimmed, None),
        };
        let numer: BigInt = num.parse().map_err(|_| malformed())?;
        let denom: BigInt = match den {
            Some(q) => q.parse().map_err(|_| malformed())?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `checked_div` when
// the divisor is data-dependent.
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, s| acc + s)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, s| acc * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(s("3/6"), Scalar::ratio(1, 2));
        assert_eq!(s("3/6").to_string(), "1/2");
        assert_eq!(s("-4/2").to_string(), "-2");
        assert_eq!(s("4/-6").to_string(), "-2/3");
        assert_eq!(s(" 7 ").to_string(), "7");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!("5/0".parse::<Scalar>(), Err(Error::ZeroDenominator)));
        assert!(matches!("".parse::<Scalar>(), Err(Error::Parse(_))));
        assert!(matches!("1/2/3".parse::<Scalar>(), Err(Error::Parse(_))));
        assert!(matches!("x".parse::<Scalar>(), Err(Error::Parse(_))));
        assert!(matches!("0.5".parse::<Scalar>(), Err(Error::Parse(_))));
    }

    #[test]
    fn inverse() {
        assert_eq!(s("2/3").inverse().unwrap(), s("3/2"));
        assert_eq!(s("-5").inverse().unwrap(), s("-1/5"));
        assert!(matches!(Scalar::zero().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn serde_uses_canonical_strings() {
        let json = serde_json::to_string(&s("10/4")).unwrap();
        assert_eq!(json, "\"5/2\"");
        let back: Scalar = serde_json::from_str("\"-6/3\"").unwrap();
        assert_eq!(back, Scalar::from_int(-2));
        assert!(serde_json::from_str::<Scalar>("\"1/0\"").is_err());
    }

    #[test]
    fn big_values_survive() {
        let big = s("123456789012345678901234567890/7");
        let back = &big * &big.inverse().unwrap();
        assert!(back.is_one());
    }
}
