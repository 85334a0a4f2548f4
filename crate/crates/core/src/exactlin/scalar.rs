//! Exact complex-rational scalars.
//!
//! A [`Scalar`] is a complex number whose real and imaginary parts are
//! arbitrary-precision rationals kept in lowest terms with positive
//! denominators, so every value has a unique representation and equality
//! is decidable. All arithmetic is exact; there is no floating point
//! anywhere in this crate.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinError;

/// An exact complex rational: `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    /// Real rational `p/q`. Panics if `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    pub fn integer(n: i64) -> Self {
        Scalar::rational(n, 1)
    }

    /// Complex value from integer pairs: `(rp/rq) + (ip/iq)·i`.
    pub fn complex(rp: i64, rq: i64, ip: i64, iq: i64) -> Self {
        assert!(rq != 0 && iq != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(rp), BigInt::from(rq)),
            BigRational::new(BigInt::from(ip), BigInt::from(iq)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
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
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²` as a rational; zero iff `z == 0`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -&self.im / &n))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Exact division. Panics on a zero divisor; callers divide only by
    /// values already known nonzero.
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `p/q` for real values, `p/q+r/s i` or `p/q-r/s i`
/// otherwise; integers print without the `/1`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{} i",
            fmt_rational(&self.re),
            sign,
            fmt_rational(&self.im.abs())
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, LinError> {
    let bad = || LinError::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(LinError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = LinError;

    fn from_str(s: &str) -> Result<Self, LinError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LinError::Parse("empty scalar".into()));
        }
        let Some(body) = compact.strip_suffix('i') else {
            return Ok(Scalar::new(parse_rational(&compact)?, BigRational::zero()));
        };
        // Split the imaginary form at the last interior sign: "p/q+r/s i".
        let split = body
            .char_indices()
            .skip(1)
            .rev()
            .find(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with('/'))
            .map(|(k, _)| k);
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im_str = &body[k..];
                let im = match im_str {
                    "+" | "-" => return Err(LinError::Parse(format!("invalid scalar {s:?}"))),
                    _ => parse_rational(im_str)?,
                };
                Ok(Scalar::new(re, im))
            }
            None => {
                // Pure imaginary shorthands: "i", "-i", "3i", "2/5i".
                let im = match body {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    _ => parse_rational(body)?,
                };
                Ok(Scalar::new(BigRational::zero(), im))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "3", "3/1", "-7/2", "0", "1/2+3/4 i", "1/2-3/4 i", "-2+1/3 i", "0+1 i", "i", "-i",
            "5i",
        ] {
            let v = s(text);
            let again = s(&v.to_string());
            assert_eq!(v, again, "round trip through {text:?}");
        }
        assert_eq!(s("3"), s("3/1"));
        assert_eq!(s("6/4"), s("3/2"));
        assert_eq!(s("1/2+3/4 i").to_string(), "1/2+3/4 i");
        assert_eq!(s("1/2-3/4i").to_string(), "1/2-3/4 i");
        assert_eq!(s("4/2").to_string(), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "1/0", "x", "1+2", "+i", "1//2", "2+ i+"] {
            assert!(text.parse::<Scalar>().is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let a = Scalar::complex(1, 2, 3, 4);
        let b = Scalar::complex(-2, 1, 1, 3);
        // (a·b)/b == a, a + (−a) == 0, distributivity spot check.
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a + &(-&a), Scalar::zero());
        let c = Scalar::i();
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        assert_eq!(&c * &c, Scalar::integer(-1));
    }

    #[test]
    fn conjugation_and_norm() {
        let a = Scalar::complex(2, 1, -3, 5);
        assert_eq!(&a * &a.conj(), Scalar::new(a.norm_sqr(), BigRational::zero()));
        assert_eq!(a.conj().conj(), a);
        let inv = a.inverse().unwrap();
        assert!( (&a * &inv).is_one());
        assert!(Scalar::zero().inverse().is_none());
    }
}
