//! Forward-mode dual numbers, nestable for exact second derivatives.
//!
//! `Dual<f64>` carries one first derivative; `Dual<Dual<f64>>` carries a
//! value, two first derivatives and one mixed second derivative. All
//! densities in the crate are generic over [`Scalar`], so lifting the
//! inputs to (nested) duals differentiates them exactly.

use crate::scalar::Scalar;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T: Scalar> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    /// A constant (zero derivative part).
    pub fn constant(re: T) -> Self {
        Dual {
            re,
            eps: T::zero(),
        }
    }

    /// A variable seeded with unit derivative.
    pub fn variable(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual::new(
            self.re * rhs.re,
            self.re * rhs.eps + self.eps * rhs.re,
        )
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = T::one() / rhs.re;
        Dual::new(
            self.re * inv,
            (self.eps * rhs.re - self.re * rhs.eps) * inv * inv,
        )
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }

    fn value(self) -> f64 {
        self.re.value()
    }

    fn powf(self, e: f64) -> Self {
        // d(x^e) = e x^{e-1} dx
        Dual::new(
            self.re.powf(e),
            T::from_f64(e) * self.re.powf(e - 1.0) * self.eps,
        )
    }
}

/// Value and first partial of `f` at `x` with respect to coordinate `i`.
pub fn first_partial<E>(
    f: impl Fn(&[Dual<f64>]) -> Result<Dual<f64>, E>,
    x: &[f64],
    i: usize,
) -> Result<(f64, f64), E> {
    let lifted: Vec<Dual<f64>> = x
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            if k == i {
                Dual::variable(v)
            } else {
                Dual::constant(v)
            }
        })
        .collect();
    let out = f(&lifted)?;
    Ok((out.re, out.eps))
}

/// Value, both first partials and the mixed second partial of `f` at `x`
/// with respect to coordinates `i` and `j` (nested duals, exact).
pub fn second_partial<E>(
    f: impl Fn(&[Dual<Dual<f64>>]) -> Result<Dual<Dual<f64>>, E>,
    x: &[f64],
    i: usize,
    j: usize,
) -> Result<SecondPartial, E> {
    let lifted: Vec<Dual<Dual<f64>>> = x
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let inner = if k == i {
                Dual::variable(v)
            } else {
                Dual::constant(v)
            };
            let outer_eps = if k == j {
                Dual::constant(1.0)
            } else {
                Dual::constant(0.0)
            };
            Dual::new(inner, outer_eps)
        })
        .collect();
    let out = f(&lifted)?;
    Ok(SecondPartial {
        value: out.re.re,
        d_i: out.re.eps,
        d_j: out.eps.re,
        d_ij: out.eps.eps,
    })
}

/// Result of one nested-dual evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SecondPartial {
    pub value: f64,
    pub d_i: f64,
    pub d_j: f64,
    pub d_ij: f64,
}
