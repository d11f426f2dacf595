//! Coefficient types shared by the polynomial and system layers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// A coefficient field usable by [`crate::poly::Polynomial`].
///
/// Implemented for exact rationals, `f64` and `Complex64`. Every scalar can
/// be embedded from a rational and projected to a complex double, which is
/// all the numeric layers need.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug + Send + Sync + 'static {
    fn from_rational(q: &BigRational) -> Self;

    fn to_complex(&self) -> Complex64;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    /// Sign and magnitude text used by the canonical printer. Scalars without
    /// an ordering report `false` and print their full value.
    fn display_parts(&self) -> (bool, String);
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn display_parts(&self) -> (bool, String) {
        let mag = self.abs();
        let text = if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        (self.is_negative(), text)
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn display_parts(&self) -> (bool, String) {
        (*self < 0.0, format!("{}", self.abs()))
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn display_parts(&self) -> (bool, String) {
        if self.im == 0.0 {
            (self.re < 0.0, format!("{}", self.re.abs()))
        } else {
            let sign = if self.im < 0.0 { '-' } else { '+' };
            (false, format!("({}{}{}i)", self.re, sign, self.im.abs()))
        }
    }
}

/// Nearest double to a rational, robust to numerators and denominators that
/// overflow `f64` on their own.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
    let k = 60 - shift;
    let n = q.numer().abs();
    let quotient = if k >= 0 {
        (n << (k as usize)) / q.denom()
    } else {
        n / (q.denom() << ((-k) as usize))
    };
    let mag = quotient.to_f64().unwrap_or(0.0) * 2f64.powi((-k).clamp(-1000, 1000) as i32);
    if q.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Exact rational from a finite double.
pub fn f64_to_rational(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
