//! Multivariate polynomials with `f64` coefficients: the concrete
//! representation of all coefficient functions in the crate. Closed under
//! exact partial differentiation and evaluable over any [`Scalar`], so the
//! same object feeds plain evaluation and (nested) dual-number paths.

use crate::scalar::Scalar;
use alloc::vec;
use alloc::vec::Vec;

/// `Σ c · Π (q^λ)^{e_λ}` in `dimension` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialScalarField {
    dimension: usize,
    /// (coefficient, exponent vector); exponent vectors are unique and
    /// sorted, zero coefficients are dropped.
    terms: Vec<(f64, Vec<u32>)>,
}

impl PolynomialScalarField {
    pub fn new(dimension: usize, terms: Vec<(f64, Vec<u32>)>) -> Self {
        let mut merged: Vec<(f64, Vec<u32>)> = Vec::new();
        for (c, e) in terms {
            assert_eq!(e.len(), dimension, "exponent vector length");
            match merged.iter_mut().find(|(_, me)| *me == e) {
                Some((mc, _)) => *mc += c,
                None => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| *c != 0.0);
        merged.sort_by(|a, b| a.1.cmp(&b.1));
        PolynomialScalarField {
            dimension,
            terms: merged,
        }
    }

    pub fn zero(dimension: usize) -> Self {
        PolynomialScalarField {
            dimension,
            terms: Vec::new(),
        }
    }

    pub fn constant(dimension: usize, c: f64) -> Self {
        Self::new(dimension, vec![(c, vec![0; dimension])])
    }

    /// The monomial `c * q^var`.
    pub fn linear(dimension: usize, var: usize, c: f64) -> Self {
        let mut e = vec![0; dimension];
        e[var] = 1;
        Self::new(dimension, vec![(c, e)])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval<T: Scalar>(&self, q: &[T]) -> T {
        debug_assert_eq!(q.len(), self.dimension);
        let mut acc = T::zero();
        for (c, exps) in &self.terms {
            let mut term = T::from_f64(*c);
            for (var, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term * q[var].powi(e);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| e[var] > 0)
            .map(|(c, e)| {
                let mut de = e.clone();
                de[var] -= 1;
                (c * e[var] as f64, de)
            })
            .collect();
        Self::new(self.dimension, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dimension, other.dimension);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.dimension, terms)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(
            self.dimension,
            self.terms.iter().map(|(c, e)| (c * s, e.clone())).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }
}
