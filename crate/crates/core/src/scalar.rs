//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.
//!
//! Both parts are kept as reduced [`BigRational`]s with a positive
//! denominator, so structural equality is value equality.
//!
//! The textual form accepted by [`parse_scalar`] is
//!
//! ```text
//! scalar   := complex | real
//! real     := SIGN? rat
//! complex  := real SIGN rat? "i" | SIGN? rat? "i"
//! rat      := INT ("/" POSINT)?
//! ```
//!
//! A missing coefficient before `i` means 1, so `"i"`, `"-i"` and `"2-i"` are
//! accepted alongside `"1i"`, `"-1i"` and `"2-1i"`. [`format_scalar`] always
//! writes a unit imaginary coefficient bare (`"-i"`, `"1/2+i"`).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den + 0i`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::from_ratio(re.0, re.1) + Self::from_ratio(im.0, im.1) * Self::i()
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn powi(&self, exp: i64) -> Option<Self> {
        let p = self.pow(exp.unsigned_abs() as u32);
        if exp >= 0 {
            Some(p)
        } else {
            p.inv()
        }
    }

    /// Height of the value: the largest absolute numerator or denominator.
    /// Used to keep sampled inputs small.
    pub fn height(&self) -> BigInt {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .into_iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(n: BigInt) -> Self {
        Self::real(BigRational::from_integer(n))
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self::Output {
        Self { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self::Output {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

fn add_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im }
}

fn sub_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im }
}

fn mul_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussianRational::real(&a.re * &b.re);
    }
    GaussianRational {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

fn div_ref(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    a.checked_div(b).expect("division by zero Gaussian rational")
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $f:ident, $AssignTrait:ident, $assign:ident) => {
        impl $Trait<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $f(self, rhs)
            }
        }
        impl $Trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $f(&self, &rhs)
            }
        }
        impl $Trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $f(&self, rhs)
            }
        }
        impl $Trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $f(self, &rhs)
            }
        }
        impl $AssignTrait<&GaussianRational> for GaussianRational {
            fn $assign(&mut self, rhs: &GaussianRational) {
                *self = $f(self, rhs);
            }
        }
        impl $AssignTrait<GaussianRational> for GaussianRational {
            fn $assign(&mut self, rhs: GaussianRational) {
                *self = $f(self, &rhs);
            }
        }
    };
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a GaussianRational> for GaussianRational {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

// ---------------------------------------------------------------------------
// Text form

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_imag(c: &BigRational) -> String {
    if c.is_one() {
        "i".to_string()
    } else if (-c).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", format_rational(c))
    }
}

/// Canonical text of a Gaussian rational: no `+0i`, reduced fractions and a
/// bare `i` for unit imaginary coefficients.
pub fn format_scalar(x: &GaussianRational) -> String {
    match (x.re.is_zero(), x.im.is_zero()) {
        (_, true) => format_rational(&x.re),
        (true, false) => format_imag(&x.im),
        (false, false) => {
            let sign = if x.im.is_negative() { '-' } else { '+' };
            format!("{}{}{}", format_rational(&x.re), sign, format_imag(&x.im.abs()))
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn done(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.text))
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    /// `rat? "i"?`, with at least one of the two present. Returns the value
    /// and whether it was imaginary.
    fn term(&mut self) -> Result<(BigRational, bool)> {
        let value = match self.digits() {
            Some(num) => {
                let num: BigInt = num.parse().map_err(|_| self.err("bad integer"))?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
                    let den: BigInt = den.parse().map_err(|_| self.err("bad integer"))?;
                    if den.is_zero() {
                        return Err(Error::ZeroDenominator(format!("`{}`", self.text)));
                    }
                    Some(BigRational::new(num, den))
                } else {
                    Some(BigRational::from_integer(num))
                }
            }
            None => None,
        };
        let imag = self.peek() == Some(b'i');
        if imag {
            self.pos += 1;
        }
        match (value, imag) {
            (Some(v), imag) => Ok((v, imag)),
            (None, true) => Ok((BigRational::one(), true)),
            (None, false) => Err(self.err("expected a number")),
        }
    }
}

/// Parse the scalar grammar documented at module level.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut cur = Cursor::new(trimmed);
    let negate = |neg: bool, v: BigRational| if neg { -v } else { v };

    let neg = cur.sign().unwrap_or(false);
    let (first, first_imag) = cur.term()?;
    let first = negate(neg, first);
    if cur.done() {
        return Ok(if first_imag {
            GaussianRational::new(BigRational::zero(), first)
        } else {
            GaussianRational::real(first)
        });
    }
    if first_imag {
        return Err(cur.err("imaginary part must come last"));
    }
    let neg = cur.sign().ok_or_else(|| cur.err("expected `+` or `-`"))?;
    let (second, second_imag) = cur.term()?;
    if !second_imag {
        return Err(cur.err("second term must be imaginary"));
    }
    if !cur.done() {
        return Err(cur.err("trailing characters"));
    }
    Ok(GaussianRational::new(first, negate(neg, second)))
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(self))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_scalar(self))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_scalar(self))
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse_scalar("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_scalar("-3+2i").unwrap(), GaussianRational::complex((-3, 1), (2, 1)));
        assert_eq!(parse_scalar("0").unwrap(), GaussianRational::zero());
        assert_eq!(parse_scalar("-7/3").unwrap(), q(-7, 3));
        assert_eq!(parse_scalar("1/2+3i").unwrap(), GaussianRational::complex((1, 2), (3, 1)));
        assert_eq!(parse_scalar(" 6/4 ").unwrap(), q(3, 2));
    }

    #[test]
    fn bare_and_explicit_unit_imaginary() {
        let minus_i = -GaussianRational::i();
        assert_eq!(parse_scalar("-i").unwrap(), minus_i);
        assert_eq!(parse_scalar("-1i").unwrap(), minus_i);
        assert_eq!(parse_scalar("i").unwrap(), GaussianRational::i());
        assert_eq!(parse_scalar("2-i").unwrap(), GaussianRational::complex((2, 1), (-1, 1)));
        assert_eq!(parse_scalar("-2/3i").unwrap(), GaussianRational::complex((0, 1), (-2, 3)));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "+", "1/", "/2", "1/2/3", "i1", "2i+3", "1+2", "3 + 4i", "1.5", "abc", "1++2i"] {
            assert!(matches!(parse_scalar(bad), Err(Error::Parse(_))), "{bad:?}");
        }
        assert!(matches!(parse_scalar("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(parse_scalar("1+2/0i"), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_scalar(&q(1, 2)), "1/2");
        assert_eq!(format_scalar(&-GaussianRational::i()), "-i");
        assert_eq!(format_scalar(&q(5, 1)), "5");
        assert_eq!(format_scalar(&q(-4, 6)), "-2/3");
        assert_eq!(format_scalar(&GaussianRational::complex((1, 2), (-3, 4))), "1/2-3/4i");
        assert_eq!(format_scalar(&GaussianRational::complex((0, 1), (2, 1))), "2i");
        assert_eq!(format_scalar(&GaussianRational::complex((7, 1), (1, 1))), "7+i");
        assert_eq!(format_scalar(&GaussianRational::zero()), "0");
    }

    #[test]
    fn inverse_and_division() {
        let z = GaussianRational::complex((1, 1), (1, 1));
        assert_eq!(z.inv().unwrap(), GaussianRational::complex((1, 2), (-1, 2)));
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(q(3, 1).powi(-2).unwrap(), q(1, 9));
        assert_eq!(GaussianRational::i().pow(2), q(-1, 1));
    }
}
