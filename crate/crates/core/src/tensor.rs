//! Symmetric tensor fields of even degree 2N with polynomial coefficients,
//! one-form fields, and the field strength derived from a one-form.
//!
//! Only sorted index tuples are stored; full symmetry is structural.
//! Evaluation sums over stored tuples weighted by their multiplicity.

use crate::linalg::Mat;
use crate::poly::PolynomialScalarField;
use crate::scalar::Scalar;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Fully symmetric degree-2N tensor `G_{α1…α2N}(q)` on an m-dimensional
/// configuration space.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensorField {
    dimension: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, PolynomialScalarField>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Number of distinct permutations of a sorted index tuple.
fn multiplicity(sorted: &[usize]) -> f64 {
    let mut mult = factorial(sorted.len());
    let mut run = 1usize;
    for w in 1..=sorted.len() {
        if w < sorted.len() && sorted[w] == sorted[w - 1] {
            run += 1;
        } else {
            mult /= factorial(run);
            run = 1;
        }
    }
    mult
}

/// Odometer over all index tuples of length `len` with entries in `0..m`.
pub(crate) fn for_each_tuple(m: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; len];
    loop {
        f(&tuple);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < m {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

impl SymmetricTensorField {
    /// An empty (zero) tensor of even degree `degree` ≥ 2.
    pub fn new(dimension: usize, degree: usize) -> Self {
        assert!(degree >= 2 && degree % 2 == 0, "degree must be even and >= 2");
        SymmetricTensorField {
            dimension,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn half_degree(&self) -> usize {
        self.degree / 2
    }

    /// Set the component for an index tuple (sorted internally). Adds to
    /// any existing component for the same tuple.
    pub fn add_component(&mut self, indices: &[usize], poly: PolynomialScalarField) {
        assert_eq!(indices.len(), self.degree);
        assert_eq!(poly.dimension(), self.dimension);
        assert!(indices.iter().all(|&i| i < self.dimension));
        let mut key: Vec<usize> = indices.to_vec();
        key.sort_unstable();
        match self.coeffs.get_mut(&key) {
            Some(existing) => *existing = existing.add(&poly),
            None => {
                self.coeffs.insert(key, poly);
            }
        }
    }

    pub fn set_constant_component(&mut self, indices: &[usize], value: f64) {
        self.add_component(
            indices,
            PolynomialScalarField::constant(self.dimension, value),
        );
    }

    /// Component for an arbitrary index tuple (looked up by its sorted form).
    pub fn component(&self, indices: &[usize]) -> PolynomialScalarField {
        let mut key: Vec<usize> = indices.to_vec();
        key.sort_unstable();
        self.coeffs
            .get(&key)
            .cloned()
            .unwrap_or_else(|| PolynomialScalarField::zero(self.dimension))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &PolynomialScalarField)> {
        self.coeffs.iter()
    }

    /// Full 2N-fold contraction `G_{α1…α2N}(q) v^{α1}…v^{α2N}`.
    pub fn eval<T: Scalar>(&self, q: &[T], v: &[T]) -> T {
        debug_assert_eq!(q.len(), self.dimension);
        debug_assert_eq!(v.len(), self.dimension);
        let mut acc = T::zero();
        for (key, poly) in &self.coeffs {
            let mut term = poly.eval(q) * T::from_f64(multiplicity(key));
            for &idx in key {
                term = term * v[idx];
            }
            acc = acc + term;
        }
        acc
    }

    /// Covector `C_β = G_{β α2…α2N}(q) v^{α2}…v^{α2N}`.
    pub fn contract_one_free(&self, q: &[f64], v: &[f64]) -> Vec<f64> {
        let m = self.dimension;
        let mut out = vec![0.0; m];
        let mut full = vec![0usize; self.degree];
        for_each_tuple(m, self.degree - 1, |rest| {
            let vprod: f64 = rest.iter().map(|&i| v[i]).product();
            if vprod == 0.0 {
                return;
            }
            for beta in 0..m {
                full[0] = beta;
                full[1..].copy_from_slice(rest);
                let c = self.component(&full).eval(q);
                if c != 0.0 {
                    out[beta] += c * vprod;
                }
            }
        });
        out
    }

    /// Matrix `W_{βμ} = G_{βμ α3…α2N}(q) v^{α3}…v^{α2N}`.
    pub fn contract_two_free(&self, q: &[f64], v: &[f64]) -> Mat {
        let m = self.dimension;
        let mut out = Mat::zeros(m, m);
        let mut full = vec![0usize; self.degree];
        for_each_tuple(m, self.degree - 2, |rest| {
            let vprod: f64 = rest.iter().map(|&i| v[i]).product();
            if vprod == 0.0 {
                return;
            }
            for beta in 0..m {
                for mu in 0..m {
                    full[0] = beta;
                    full[1] = mu;
                    full[2..].copy_from_slice(rest);
                    let c = self.component(&full).eval(q);
                    if c != 0.0 {
                        out.set(beta, mu, out.get(beta, mu) + c * vprod);
                    }
                }
            }
        });
        out
    }

    /// Coefficient gradient of the full contraction:
    /// `∂_λ G_{α1…α2N}(q) v^{α1}…v^{α2N}` for each λ.
    pub fn coefficient_gradient(&self, q: &[f64], v: &[f64]) -> Vec<f64> {
        let m = self.dimension;
        let mut out = vec![0.0; m];
        for (key, poly) in &self.coeffs {
            let vprod: f64 = key.iter().map(|&i| v[i]).product::<f64>() * multiplicity(key);
            if vprod == 0.0 {
                continue;
            }
            for lam in 0..m {
                let d = poly.partial(lam).eval(q);
                if d != 0.0 {
                    out[lam] += d * vprod;
                }
            }
        }
        out
    }

    /// `D_β = ∂_μ G_{β α2…α2N}(q) v^μ v^{α2}…v^{α2N}` (derivative index
    /// contracted with a velocity, one tensor index free).
    pub fn contract_derivative(&self, q: &[f64], v: &[f64]) -> Vec<f64> {
        let m = self.dimension;
        let mut out = vec![0.0; m];
        let mut full = vec![0usize; self.degree];
        for_each_tuple(m, self.degree - 1, |rest| {
            let vprod: f64 = rest.iter().map(|&i| v[i]).product();
            if vprod == 0.0 {
                return;
            }
            for beta in 0..m {
                full[0] = beta;
                full[1..].copy_from_slice(rest);
                let poly = self.component(&full);
                if poly.is_zero() {
                    continue;
                }
                for mu in 0..m {
                    if v[mu] == 0.0 {
                        continue;
                    }
                    let d = poly.partial(mu).eval(q);
                    if d != 0.0 {
                        out[beta] += d * v[mu] * vprod;
                    }
                }
            }
        });
        out
    }
}

/// Covector field `A_μ(q)` with polynomial components.
#[derive(Debug, Clone, PartialEq)]
pub struct OneFormField {
    dimension: usize,
    components: Vec<PolynomialScalarField>,
}

impl OneFormField {
    pub fn new(components: Vec<PolynomialScalarField>) -> Self {
        let dimension = components.len();
        assert!(components.iter().all(|p| p.dimension() == dimension));
        OneFormField {
            dimension,
            components,
        }
    }

    pub fn zero(dimension: usize) -> Self {
        OneFormField {
            dimension,
            components: (0..dimension)
                .map(|_| PolynomialScalarField::zero(dimension))
                .collect(),
        }
    }

    pub fn constant(values: &[f64]) -> Self {
        let dimension = values.len();
        OneFormField {
            dimension,
            components: values
                .iter()
                .map(|&v| PolynomialScalarField::constant(dimension, v))
                .collect(),
        }
    }

    /// Linear components `A_μ = Σ_ν M_{μν} q^ν` (constant field strength).
    pub fn linear(matrix: &Mat) -> Self {
        assert_eq!(matrix.rows(), matrix.cols());
        let dimension = matrix.rows();
        let components = (0..dimension)
            .map(|mu| {
                let mut p = PolynomialScalarField::zero(dimension);
                for nu in 0..dimension {
                    p = p.add(&PolynomialScalarField::linear(
                        dimension,
                        nu,
                        matrix.get(mu, nu),
                    ));
                }
                p
            })
            .collect();
        OneFormField {
            dimension,
            components,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn component(&self, mu: usize) -> &PolynomialScalarField {
        &self.components[mu]
    }

    /// `q^μ_τ A_μ(q)`, generic over the scalar type.
    pub fn contract<T: Scalar>(&self, q: &[T], v: &[T]) -> T {
        let mut acc = T::zero();
        for (mu, poly) in self.components.iter().enumerate() {
            acc = acc + v[mu] * poly.eval(q);
        }
        acc
    }

    /// Field strength `F_{λμ} = ∂_λ A_μ − ∂_μ A_λ`.
    pub fn field_strength(&self) -> FieldStrength {
        let m = self.dimension;
        let mut comps = Vec::with_capacity(m * m);
        for lam in 0..m {
            for mu in 0..m {
                comps.push(
                    self.components[mu]
                        .partial(lam)
                        .sub(&self.components[lam].partial(mu)),
                );
            }
        }
        FieldStrength {
            dimension: m,
            comps,
        }
    }
}

/// Antisymmetric matrix-valued function `F_{λμ}(q)`; antisymmetry holds by
/// construction from a one-form.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldStrength {
    dimension: usize,
    comps: Vec<PolynomialScalarField>,
}

impl FieldStrength {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn component(&self, lam: usize, mu: usize) -> &PolynomialScalarField {
        &self.comps[lam * self.dimension + mu]
    }

    pub fn eval(&self, q: &[f64]) -> Mat {
        Mat::from_fn(self.dimension, self.dimension, |l, m| {
            self.component(l, m).eval(q)
        })
    }

    /// `(F·v)_λ = F_{λμ}(q) v^μ`.
    pub fn apply(&self, q: &[f64], v: &[f64]) -> Vec<f64> {
        self.eval(q).mul_vec(v)
    }
}

/// Minkowski metric diag(+, −, …, −) as a degree-2 tensor.
pub fn minkowski(dimension: usize) -> SymmetricTensorField {
    let mut g = SymmetricTensorField::new(dimension, 2);
    g.set_constant_component(&[0, 0], 1.0);
    for i in 1..dimension {
        g.set_constant_component(&[i, i], -1.0);
    }
    g
}

/// Euclidean metric diag(+, …, +) as a degree-2 tensor.
pub fn euclidean(dimension: usize) -> SymmetricTensorField {
    let mut g = SymmetricTensorField::new(dimension, 2);
    for i in 0..dimension {
        g.set_constant_component(&[i, i], 1.0);
    }
    g
}

/// The symmetrization of η⊗η for Minkowski η, a quartic tensor with
/// `G(v) = (η(v, v))²`:
/// `G_{αβγδ} = (η_{αβ}η_{γδ} + η_{αγ}η_{βδ} + η_{αδ}η_{βγ}) / 3`.
pub fn quartic_eta2(dimension: usize) -> SymmetricTensorField {
    let eta: Vec<f64> = (0..dimension)
        .map(|i| if i == 0 { 1.0 } else { -1.0 })
        .collect();
    let mut g = SymmetricTensorField::new(dimension, 4);
    // η is diagonal, so only tuples pairing up equal indices contribute.
    for a in 0..dimension {
        for b in a..dimension {
            if a == b {
                g.set_constant_component(&[a, a, a, a], eta[a] * eta[a]);
            } else {
                // At (a,a,b,b) only the (αβ)(γδ) pairing survives for
                // diagonal η, so the symmetrized component is η_a η_b / 3.
                g.set_constant_component(&[a, a, b, b], eta[a] * eta[b] / 3.0);
            }
        }
    }
    g
}
