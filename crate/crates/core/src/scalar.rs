//! Scalar abstraction shared by plain `f64` evaluation and forward-mode
//! dual numbers, so every density in the crate is written once and
//! differentiated exactly.

use core::ops::{Add, Div, Mul, Neg, Sub};

/// A field-like scalar supporting the operations the densities need.
pub trait Scalar:
    Copy
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    /// The underlying real value (strips all derivative parts).
    /// Used for domain checks such as G > 0.
    fn value(self) -> f64;

    /// Power with a constant real exponent.
    fn powf(self, e: f64) -> Self;

    /// Small non-negative integer power by repeated multiplication.
    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    fn sqrt(self) -> Self {
        self.powf(0.5)
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn value(self) -> f64 {
        self
    }

    fn powf(self, e: f64) -> Self {
        libm::pow(self, e)
    }
}
