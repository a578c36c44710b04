//! Exact reduced fractions.
//!
//! [`Rational`] wraps an arbitrary-precision [`BigRational`], which keeps every
//! value in lowest terms with a positive denominator. LP pivots and rotation
//! numbers can outgrow 64-bit integers, so no fixed-width fast path is offered.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Infallible constructor for call sites where `den != 0` is structural.
    pub(crate) fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational::new(num, den).expect("nonzero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// The representative of `self` modulo 1, in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        self - &Rational::integer(self.floor())
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// `(numerator, denominator)` as machine integers, if they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }

    /// Denominator as `u64`; errors when it does not fit.
    pub fn denom_u64(&self) -> Result<u64> {
        self.denom().to_u64().ok_or_else(|| Error::OutOfRange(self.to_string()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"p/q"` or a bare integer, with an optional leading sign on `p`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::MalformedRational(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Rational::new(parse_int(n)?, d)
            }
            None => Ok(Rational::integer(parse_int(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as with the primitive types; use `recip` to get an error.
forward_binop!(Div, div);

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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// All reduced fractions in `[0, 1)` with denominator at most `max_den`, in
/// increasing order.
///
/// Walks the Farey sequence with the next-term recurrence, so each step is
/// O(1) and the output is sorted by construction.
pub fn farey(max_den: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    if max_den == 0 {
        return out;
    }
    let n = max_den as i128;
    let (mut a, mut b, mut c, mut d) = (0i128, 1i128, 1i128, n);
    out.push(Rational::zero());
    while c < d {
        out.push(Rational::frac(c, d));
        let k = (n + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    out
}

/// `gcd` on machine integers; `gcd(0, 0) = 0`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Rational::new(14, 6).unwrap().to_string(), "7/3");
        assert_eq!(Rational::new(0, 5).unwrap().to_string(), "0/1");
        assert_eq!(Rational::new(3, -6).unwrap().to_string(), "-1/2");
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(r("7/3"), Rational::new(7, 3).unwrap());
        assert_eq!(r("-1/2"), Rational::new(-1, 2).unwrap());
        assert_eq!(r("4"), Rational::integer(4));
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator));
        for bad in ["", "/", "1/", "a/2", "1/2/3", "1.5", "--1"] {
            assert!(
                matches!(bad.parse::<Rational>(), Err(Error::MalformedRational(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn arithmetic_and_order() {
        assert_eq!(r("1/2") + r("1/3"), r("5/6"));
        assert_eq!(r("1/2") - r("1/3"), r("1/6"));
        assert_eq!(r("2/3") * r("3/4"), r("1/2"));
        assert_eq!(r("2/3") / r("4/3"), r("1/2"));
        assert!(r("1/3") < r("1/2"));
        assert_eq!(r("-3/2").floor(), BigInt::from(-2));
        assert_eq!(r("-3/2").fract(), r("1/2"));
        assert_eq!(r("7/3").fract(), r("1/3"));
        assert_eq!(r("0").recip(), Err(Error::ZeroDenominator));
    }

    #[test]
    fn farey_examples() {
        let f3: Vec<String> = farey(3).iter().map(ToString::to_string).collect();
        assert_eq!(f3, ["0/1", "1/3", "1/2", "2/3"]);
        assert_eq!(farey(1), vec![Rational::zero()]);
        let f5 = farey(5);
        assert_eq!(f5.len(), 10);
        assert_eq!(f5.last().unwrap(), &r("4/5"));
        assert!(farey(0).is_empty());
    }

    #[test]
    fn farey_matches_brute_force() {
        for q in 1..=25u64 {
            let mut brute: Vec<Rational> = (1..=q)
                .flat_map(|d| {
                    (0..d)
                        .filter(move |&n| gcd(n, d) == 1)
                        .map(move |n| Rational::frac(n, d))
                })
                .collect();
            brute.sort();
            assert_eq!(farey(q), brute, "Q = {q}");
        }
    }

    #[test]
    fn farey_neighbours_are_unimodular() {
        for w in farey(40).windows(2) {
            let det = w[1].numer() * w[0].denom() - w[0].numer() * w[1].denom();
            assert_eq!(det, BigInt::one());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Rational> {
            (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::frac(n, d))
        }

        proptest! {
            #[test]
            fn add_sub_roundtrip(a in rational(), b in rational()) {
                prop_assert_eq!(&(&a + &b) - &b, a);
            }

            #[test]
            fn always_reduced(a in rational(), b in rational()) {
                let c = &a * &b;
                prop_assert!(c.numer().gcd(c.denom()).is_one());
                prop_assert!(c.denom().is_positive());
                let text = c.to_string();
                prop_assert_eq!(text.parse::<Rational>().unwrap(), c);
            }
        }
    }
}
