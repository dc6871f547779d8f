//! Gaussian rationals `a + b*i` with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact complex number with rational real and imaginary parts.
///
/// `BigRational` keeps both parts gcd-reduced with a positive denominator,
/// so derived equality is exact structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactComplex::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactComplex::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// `num/den` as a real number. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactComplex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        ExactComplex::ratio(re_num, re_den)
            + ExactComplex::ratio(im_num, im_den) * ExactComplex::i()
    }

    pub fn from_rational(re: BigRational) -> Self {
        ExactComplex::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        let n = self.norm_sqr();
        Ok(ExactComplex::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiply by an integer.
    pub fn scale_int(&self, k: u64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        ExactComplex::new(&self.re * &k, &self.im * &k)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactComplex::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether the value is a nonzero real or purely imaginary number whose
    /// nonzero part is negative. The printer pulls such signs out of a term.
    pub(crate) fn is_negative_axis(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

/// Parse an exact rational literal `p`, `-p`, `p/q`.
///
/// Decimal literals are rejected; the error carries the exact `p/q`
/// rewrite of what was typed.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.contains(['.', 'e', 'E']) && t.chars().any(|c| c.is_ascii_digit()) {
        return Err(Error::FloatLiteral {
            column: 1,
            literal: t.to_string(),
            suggestion: decimal_to_fraction(t).unwrap_or_else(|| "1/2".to_string()),
        });
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let bad = || Error::Invalid(format!("'{s}' is not an exact rational literal p/q"));
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Invalid(format!("'{s}' has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// Exact fraction for a plain decimal literal such as `0.25` or `-1.5`.
pub(crate) fn decimal_to_fraction(lit: &str) -> Option<String> {
    let (neg, body) = match lit.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, lit),
    };
    let (int, frac) = body.split_once('.')?;
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let mut r = BigRational::new(num, den);
    if neg {
        r = -r;
    }
    Some(r.to_string())
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if *im == -BigRational::one() {
                "-i".to_string()
            } else {
                format!("{im}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}", self.re, imag(&-self.im.clone()))
                } else {
                    write!(f, "{} + {}", self.re, imag(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::text::parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactComplex {
    fn from(n: i64) -> Self {
        ExactComplex::from_int(n)
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactComplex::from_rational(&self.re * &rhs.re);
        }
        ExactComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: ExactComplex) -> ExactComplex {
        &self + &rhs
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: ExactComplex) -> ExactComplex {
        &self - &rhs
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        &self * &rhs
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = ExactComplex::i();
        assert_eq!(&i * &i, ExactComplex::from_int(-1));
        assert_eq!(&i * &(-&i), ExactComplex::one());
    }

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(ExactComplex::ratio(2, -4), ExactComplex::ratio(-1, 2));
        assert_eq!(
            ExactComplex::ratio(1, 2) + ExactComplex::ratio(1, 3),
            ExactComplex::ratio(5, 6)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let z = ExactComplex::gaussian(3, 2, -5, 7);
        assert_eq!(&z * &z.inv().unwrap(), ExactComplex::one());
        assert_eq!(ExactComplex::zero().inv(), Err(Error::Singular));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactComplex::zero().to_string(), "0");
        assert_eq!(ExactComplex::i().to_string(), "i");
        assert_eq!((-ExactComplex::i()).to_string(), "-i");
        assert_eq!(ExactComplex::gaussian(0, 1, 1, 2).to_string(), "1/2*i");
        assert_eq!(ExactComplex::gaussian(1, 1, -1, 1).to_string(), "1 - i");
        assert_eq!(
            ExactComplex::gaussian(-3, 4, 2, 1).to_string(),
            "-3/4 + 2*i"
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        match parse_rational("0.25") {
            Err(Error::FloatLiteral { suggestion, .. }) => assert_eq!(suggestion, "1/4"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn powers() {
        assert_eq!(ExactComplex::i().pow(4), ExactComplex::one());
        assert_eq!(ExactComplex::ratio(1, 2).pow(3), ExactComplex::ratio(1, 8));
    }
}
