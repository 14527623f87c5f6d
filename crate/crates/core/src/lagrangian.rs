//! The generic relativistic Lagrangian `L = G^{1/2N} + q^μ_τ A_μ`, its
//! variational derivatives (nested forward-mode duals, exact for the
//! polynomial coefficient functions), the relativistic equation components
//! `E_β`, the Noether identity defect and the finite (action-level) form of
//! the reparametrization gauge symmetry.

use crate::dual::{second_partial, Dual};
use crate::error::Error;
use crate::quad::simpson;
use crate::scalar::Scalar;
use crate::tensor::{OneFormField, SymmetricTensorField};
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// A state on the jet bundle of ℝ×Q → ℝ: evolution parameter, coordinates
/// and four-velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryState {
    pub tau: f64,
    pub q: Vec<f64>,
    pub q_tau: Vec<f64>,
}

impl TrajectoryState {
    pub fn new(tau: f64, q: Vec<f64>, q_tau: Vec<f64>) -> Self {
        assert_eq!(q.len(), q_tau.len());
        TrajectoryState { tau, q, q_tau }
    }

    pub fn dimension(&self) -> usize {
        self.q.len()
    }
}

/// `L = G^{1/2N} + q^μ_τ A_μ` for a positive symmetric tensor G of degree
/// 2N and a one-form A.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativisticLagrangian {
    g: SymmetricTensorField,
    a: OneFormField,
}

impl RelativisticLagrangian {
    pub fn new(g: SymmetricTensorField, a: OneFormField) -> Result<Self> {
        if g.dimension() != a.dimension() {
            return Err(Error::DimensionMismatch);
        }
        Ok(RelativisticLagrangian { g, a })
    }

    pub fn dimension(&self) -> usize {
        self.g.dimension()
    }

    /// N, the half-degree of G.
    pub fn half_degree(&self) -> usize {
        self.g.half_degree()
    }

    pub fn metric(&self) -> &SymmetricTensorField {
        &self.g
    }

    pub fn potential(&self) -> &OneFormField {
        &self.a
    }

    /// The full 2N-fold contraction G(q, v); negative values are returned
    /// as is (positivity is enforced only where a fractional power is
    /// taken).
    pub fn eval_g(&self, q: &[f64], v: &[f64]) -> f64 {
        self.g.eval(q, v)
    }

    /// The Lagrangian density, generic over the scalar type so the same
    /// code path is differentiated by (nested) duals.
    pub fn density<T: Scalar>(&self, q: &[T], v: &[T]) -> Result<T> {
        let g = self.g.eval(q, v);
        if g.value() <= 0.0 {
            return Err(Error::NonPositiveG { value: g.value() });
        }
        let exponent = 1.0 / self.g.degree() as f64;
        Ok(g.powf(exponent) + self.a.contract(q, v))
    }

    pub fn eval_lagrangian(&self, s: &TrajectoryState) -> Result<f64> {
        self.density(&s.q, &s.q_tau)
    }

    /// Density as a function of the concatenated vector (q, v), lifted to
    /// nested duals.
    fn density_dd(&self, x: &[Dual<Dual<f64>>]) -> Result<Dual<Dual<f64>>> {
        let m = self.dimension();
        self.density(&x[..m], &x[m..])
    }

    /// The Euler-Lagrange covector
    /// `Ε_λ = ∂_λ L − ∂_μ(∂^τ_λ L) q^μ_τ − ∂^τ_μ(∂^τ_λ L) q^μ_ττ`,
    /// with every partial obtained from nested forward-mode duals.
    pub fn variational_derivative(
        &self,
        s: &TrajectoryState,
        q_tautau: &[f64],
    ) -> Result<Vec<f64>> {
        let m = self.dimension();
        if s.q.len() != m || q_tautau.len() != m {
            return Err(Error::DimensionMismatch);
        }
        let mut x = Vec::with_capacity(2 * m);
        x.extend_from_slice(&s.q);
        x.extend_from_slice(&s.q_tau);

        let mut out = vec![0.0; m];
        for lam in 0..m {
            // ∂_λ L from any second-partial evaluation; pair with (q_λ, v_λ).
            let p = second_partial(|y| self.density_dd(y), &x, lam, m + lam)?;
            let mut total = p.d_i; // ∂_λ L
            for mu in 0..m {
                let h = second_partial(|y| self.density_dd(y), &x, mu, m + lam)?;
                total -= h.d_ij * s.q_tau[mu]; // ∂_μ ∂^τ_λ L q^μ_τ
                let h = second_partial(|y| self.density_dd(y), &x, m + mu, m + lam)?;
                total -= h.d_ij * q_tautau[mu]; // ∂^τ_μ ∂^τ_λ L q^μ_ττ
            }
            out[lam] = total;
        }
        Ok(out)
    }

    /// The relativistic-equation components
    /// `E_β = (∂_β G_{μ…}/2N − ∂_μ G_{β…}) q^μ_τ … − (2N−1) G_{βμ…} q^μ_ττ …
    ///        + G^{1−1/2N} F_{βμ} q^μ_τ`,
    /// assembled from coefficient-level contractions of G.
    pub fn eval_e(&self, s: &TrajectoryState, q_tautau: &[f64]) -> Result<Vec<f64>> {
        let m = self.dimension();
        if s.q.len() != m || q_tautau.len() != m {
            return Err(Error::DimensionMismatch);
        }
        let g_value = self.g.eval(&s.q, &s.q_tau);
        if g_value <= 0.0 {
            return Err(Error::NonPositiveG { value: g_value });
        }
        let two_n = self.g.degree() as f64;
        let grad = self.g.coefficient_gradient(&s.q, &s.q_tau);
        let deriv = self.g.contract_derivative(&s.q, &s.q_tau);
        let mass = self.mass_matrix_raw(&s.q, &s.q_tau);
        let f_term = self.a.field_strength().apply(&s.q, &s.q_tau);
        let g_factor = g_value.powf(1.0 - 1.0 / two_n);
        let out = (0..m)
            .map(|beta| {
                grad[beta] / two_n - deriv[beta] - mass.mul_vec(q_tautau)[beta]
                    + g_factor * f_term[beta]
            })
            .collect();
        Ok(out)
    }

    /// `W_{βμ} = (2N−1) G_{βμα3…α2N} q^{α3}_τ…q^{α2N}_τ`, the coefficient of
    /// the acceleration in −E_β.
    pub(crate) fn mass_matrix_raw(&self, q: &[f64], v: &[f64]) -> crate::linalg::Mat {
        let factor = (self.g.degree() - 1) as f64;
        let mut w = self.g.contract_two_free(q, v);
        for b in 0..w.rows() {
            for c in 0..w.cols() {
                w.set(b, c, factor * w.get(b, c));
            }
        }
        w
    }

    /// The Noether identity defect `q^λ_τ Ε_λ`; vanishes identically for
    /// any Lagrangian of this family.
    pub fn noether_defect(&self, s: &TrajectoryState, q_tautau: &[f64]) -> Result<f64> {
        let e = self.variational_derivative(s, q_tautau)?;
        Ok(e.iter().zip(&s.q_tau).map(|(e, v)| e * v).sum())
    }

    /// Action integral `∫ L dτ` of a parametrized path over `[a, b]` by
    /// composite Simpson quadrature; the path yields `(q, q_τ)` at each τ.
    pub fn action<P>(&self, path: P, a: f64, b: f64, panels: usize) -> Result<f64>
    where
        P: Fn(f64) -> (Vec<f64>, Vec<f64>),
    {
        simpson(
            |tau| {
                let (q, v) = path(tau);
                self.density(&q, &v)
            },
            a,
            b,
            panels,
        )
    }

    /// Finite form of the reparametrization gauge symmetry: the action of
    /// the path over `[a, b]` and of the reparametrized path `s ∘ φ` over
    /// `[a2, b2]`, where `φ` maps `[a2, b2]` monotonically onto `[a, b]`
    /// with derivative `phi_prime > 0`. The two agree up to quadrature
    /// error.
    #[allow(clippy::too_many_arguments)]
    pub fn gauge_action_invariance<P, F, Fp>(
        &self,
        path: P,
        (a, b): (f64, f64),
        phi: F,
        phi_prime: Fp,
        (a2, b2): (f64, f64),
        panels: usize,
    ) -> Result<(f64, f64)>
    where
        P: Fn(f64) -> (Vec<f64>, Vec<f64>),
        F: Fn(f64) -> f64,
        Fp: Fn(f64) -> f64,
    {
        let before = self.action(&path, a, b, panels)?;
        let after = simpson(
            |t| {
                let (q, v) = path(phi(t));
                let dphi = phi_prime(t);
                let v_scaled: Vec<f64> = v.iter().map(|x| x * dphi).collect();
                self.density(&q, &v_scaled)
            },
            a2,
            b2,
            panels,
        )?;
        Ok((before, after))
    }
}

/// Free-particle Lagrangian on m-dimensional Minkowski space (G = η, A = 0).
pub fn free_particle(dimension: usize) -> RelativisticLagrangian {
    RelativisticLagrangian::new(
        crate::tensor::minkowski(dimension),
        OneFormField::zero(dimension),
    )
    .unwrap()
}

/// Unit massive charge in a constant magnetic field `F_{12} = strength` on
/// 4-dimensional Minkowski space (A_2 = strength · q^1).
pub fn charged_particle(strength: f64) -> RelativisticLagrangian {
    let mut comps: Vec<crate::poly::PolynomialScalarField> = (0..4)
        .map(|_| crate::poly::PolynomialScalarField::zero(4))
        .collect();
    comps[2] = crate::poly::PolynomialScalarField::linear(4, 1, strength);
    RelativisticLagrangian::new(crate::tensor::minkowski(4), OneFormField::new(comps)).unwrap()
}
