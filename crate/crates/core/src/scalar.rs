//! Scalar fields for numeric evaluation: exact rationals, `f64`, or a
//! 128-bit binary float for sums with heavy cancellation.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_bigint::BigInt;
use num_rational::BigRational;

pub trait Scalar:
    Clone
    + Send
    + Sync
    + Debug
    + Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn powu(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn powu(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }
}

/// Binary float carrying [`WIDE_BITS`] significant bits once any operand
/// has been built with [`wide`]; integer constants stay exact.
pub type Wide = FBig<HalfEven, 2>;

pub const WIDE_BITS: usize = 128;

/// Exact conversion of a finite `f64`.
pub fn wide(x: f64) -> Wide {
    Wide::try_from(x)
        .expect("finite f64")
        .with_precision(WIDE_BITS)
        .value()
}

/// Nearest `f64`.
pub fn narrow(x: &Wide) -> f64 {
    x.to_f64().value()
}

impl Scalar for Wide {
    fn zero() -> Self {
        Wide::ZERO
    }

    fn one() -> Self {
        Wide::ONE
    }

    fn from_i64(v: i64) -> Self {
        Wide::from(v)
    }

    fn is_zero(&self) -> bool {
        *self == Wide::ZERO
    }
}

/// `num/den` as a [`BigRational`].
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
