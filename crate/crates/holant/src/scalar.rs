//! Dual-backend arithmetic: exact rationals for verdict-grade computation,
//! `f64` for spectral work. Mixed operands promote to float.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};
use std::str::FromStr;

/// Which arithmetic backend a value (or a whole computation) lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    Exact,
    Float,
}

/// A real number carried either exactly (arbitrary-precision rational) or as `f64`.
///
/// The exact backend is closed under `+`, `-`, `*` (and `/` by nonzero);
/// any operation with a float operand promotes the result to float.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    /// Force onto the float backend.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Exact equality on the exact backend, `|a - b| <= tol` otherwise.
    pub fn eq_within(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    /// Square root; exact perfect squares stay exact, everything else floats.
    pub fn sqrt(&self) -> Scalar {
        if let Scalar::Exact(r) = self {
            assert!(!r.is_negative(), "sqrt of negative scalar");
            let (ns, nr) = (r.numer().sqrt(), r.denom().sqrt());
            if &(&ns * &ns) == r.numer() && &(&nr * &nr) == r.denom() {
                return Scalar::Exact(BigRational::new(ns, nr));
            }
        }
        Scalar::Float(self.to_f64().sqrt())
    }

    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Exact(r.recip())
            }
            Scalar::Float(x) => Scalar::Float(1.0 / x),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range numerator/denominator: fall back to a scaled quotient.
        let digits = (r.numer().bits() as i64 - r.denom().bits() as i64).max(0);
        let scaled = r / BigRational::from_integer(BigInt::from(2).pow(digits as u32));
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(digits as i32)
    })
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            _ => Scalar::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

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

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", r),
            Scalar::Float(x) => write!(f, "{}", x),
        }
    }
}

/// Parse "p/q" or "p" as an exact rational.
impl FromStr for Scalar {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Scalar::Exact(BigRational::new(n, d)))
    }
}

// Rationals serialize as strings ("p/q", or "p" for integers) so JSON floats
// never corrupt them; floats serialize as JSON numbers. On input, JSON
// integers are taken as exact, non-integral numbers as float.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    ser.serialize_str(&r.numer().to_string())
                } else {
                    ser.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
                }
            }
            Scalar::Float(x) => ser.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a rational string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
                Ok(Scalar::Float(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(de::Error::custom)
            }
        }
        de.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_closed_under_ring_ops() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from_ratio(1, 6);
        assert_eq!(&a + &b, Scalar::from_ratio(1, 2));
        assert_eq!(&a * &b, Scalar::from_ratio(1, 18));
        assert!((&a - &b).is_exact());
    }

    #[test]
    fn mixed_promotes_to_float() {
        let a = Scalar::from_ratio(1, 2);
        let b = Scalar::from_f64(0.25);
        let c = &a + &b;
        assert_eq!(c.backend(), Backend::Float);
        assert_eq!(c.to_f64(), 0.75);
    }

    #[test]
    fn parse_and_roundtrip() {
        let s: Scalar = "-7/3".parse().unwrap();
        assert_eq!(s, Scalar::from_ratio(-7, 3));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"-7/3\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let f: Scalar = serde_json::from_str("2.5").unwrap();
        assert_eq!(f.backend(), Backend::Float);
        let i: Scalar = serde_json::from_str("3").unwrap();
        assert!(i.is_exact());
    }

    #[test]
    fn sqrt_of_perfect_square_stays_exact() {
        assert_eq!(Scalar::from_ratio(9, 4).sqrt(), Scalar::from_ratio(3, 2));
        assert!(!Scalar::from_int(2).sqrt().is_exact());
    }
}
