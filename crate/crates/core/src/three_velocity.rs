//! The reduced (three-velocity) picture on a coordinate chart: the function
//! Ḡ, the chart Lagrangian `L̄ = Ḡ^{1/2N} + q^i_0 A_i + A_0`, its Lagrange
//! equations, lifting to four-velocities on the constraint surface and
//! τ-reconstruction by quadrature.
//!
//! The constraint in reduced form reads `(q⁰_τ)^{2N} Ḡ = 1`, so the lift
//! uses `q⁰_τ = ±Ḡ^{−1/2N}` and the reconstructed parameter is
//! `τ(q⁰) = ±∫ Ḡ^{1/2N} dq⁰`.

use crate::dual::{second_partial, Dual};
use crate::error::Error;
use crate::lagrangian::{RelativisticLagrangian, TrajectoryState};
use crate::linalg::Mat;
use crate::quad::cumulative_integral;
use crate::scalar::Scalar;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Chart-time coordinate, fiber coordinates and three-velocities
/// (dimensionless slopes dq^i/dq⁰).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub q0: f64,
    pub qi: Vec<f64>,
    pub vi: Vec<f64>,
}

impl ReducedState {
    pub fn new(q0: f64, qi: Vec<f64>, vi: Vec<f64>) -> Self {
        assert_eq!(qi.len(), vi.len());
        ReducedState { q0, qi, vi }
    }

    /// All m coordinates (q⁰, q^i).
    pub fn coords(&self) -> Vec<f64> {
        let mut q = Vec::with_capacity(self.qi.len() + 1);
        q.push(self.q0);
        q.extend_from_slice(&self.qi);
        q
    }
}

/// `Ḡ(q, q^i_0) = G(q, (1, q^i_0))`; by degree-2N homogeneity this equals
/// `(q⁰_τ)^{−2N} G` for any representative with `q⁰_τ ≠ 0`.
pub fn reduce_g(l: &RelativisticLagrangian, s: &ReducedState) -> f64 {
    let q = s.coords();
    let mut v = Vec::with_capacity(q.len());
    v.push(1.0);
    v.extend_from_slice(&s.vi);
    l.eval_g(&q, &v)
}

/// The chart Lagrangian density, generic over the scalar type; `x` is the
/// concatenation of the m coordinates and the m−1 three-velocities.
fn reduced_density<T: Scalar>(l: &RelativisticLagrangian, x: &[T]) -> Result<T> {
    let m = l.dimension();
    let q = &x[..m];
    let w = &x[m..];
    let mut v = Vec::with_capacity(m);
    v.push(T::one());
    v.extend_from_slice(w);
    let gbar = l.metric().eval(q, &v);
    if gbar.value() <= 0.0 {
        return Err(Error::NonPositiveReducedG { value: gbar.value() });
    }
    let mut density = gbar.powf(1.0 / l.metric().degree() as f64);
    density = density + l.potential().component(0).eval(q);
    for (i, &wi) in w.iter().enumerate() {
        density = density + wi * l.potential().component(i + 1).eval(q);
    }
    Ok(density)
}

/// `L̄ = Ḡ^{1/2N} + q^i_0 A_i + A_0`.
pub fn reduced_lagrangian(l: &RelativisticLagrangian, s: &ReducedState) -> Result<f64> {
    let mut x = s.coords();
    x.extend_from_slice(&s.vi);
    reduced_density(l, &x)
}

/// All first and second partials of the chart density needed by the
/// reduced Lagrange equations.
struct ReducedPartials {
    /// ∂L̄/∂q_λ for λ = 0..m
    grad_q: Vec<f64>,
    /// p_i = ∂L̄/∂w_i
    momenta: Vec<f64>,
    /// ∂²L̄/∂q_λ∂w_i, indexed [λ][i]
    mixed: Vec<Vec<f64>>,
    /// H_{ij} = ∂²L̄/∂w_i∂w_j
    hessian: Mat,
    value: f64,
}

fn reduced_partials(l: &RelativisticLagrangian, s: &ReducedState) -> Result<ReducedPartials> {
    let m = l.dimension();
    let k = m - 1;
    let mut x = s.coords();
    x.extend_from_slice(&s.vi);
    let f = |y: &[Dual<Dual<f64>>]| reduced_density(l, y);

    let mut grad_q = vec![0.0; m];
    let mut momenta = vec![0.0; k];
    let mut mixed = vec![vec![0.0; k]; m];
    let mut hessian = Mat::zeros(k, k);
    let mut value = 0.0;
    for i in 0..k {
        for lam in 0..m {
            let p = second_partial(f, &x, lam, m + i)?;
            grad_q[lam] = p.d_i;
            momenta[i] = p.d_j;
            mixed[lam][i] = p.d_ij;
            value = p.value;
        }
        for j in i..k {
            let p = second_partial(f, &x, m + j, m + i)?;
            hessian.set(i, j, p.d_ij);
            hessian.set(j, i, p.d_ij);
        }
    }
    Ok(ReducedPartials {
        grad_q,
        momenta,
        mixed,
        hessian,
        value,
    })
}

/// The reduced Euler-Lagrange covector Ε̄_i at a state and candidate
/// acceleration, together with the dependent component
/// Ε̄_0 = ∂_0 L̄ + d_0(q^i_0 p_i − L̄), which must equal −q^i_0 Ε̄_i.
pub fn reduced_euler_lagrange(
    l: &RelativisticLagrangian,
    s: &ReducedState,
    accel: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let m = l.dimension();
    let k = m - 1;
    if accel.len() != k {
        return Err(Error::DimensionMismatch);
    }
    let p = reduced_partials(l, s)?;
    // u_λ = dq_λ/dq⁰ along the prolonged section
    let mut u = Vec::with_capacity(m);
    u.push(1.0);
    u.extend_from_slice(&s.vi);

    let mut eps = vec![0.0; k];
    for i in 0..k {
        let mut total = p.grad_q[i + 1];
        for lam in 0..m {
            total -= p.mixed[lam][i] * u[lam];
        }
        for j in 0..k {
            total -= p.hessian.get(i, j) * accel[j];
        }
        eps[i] = total;
    }

    // Ε̄_0 from the energy current h = q^i_0 p_i − L̄.
    let mut eps0 = p.grad_q[0];
    for lam in 0..m {
        let mut dh = -p.grad_q[lam];
        for i in 0..k {
            dh += s.vi[i] * p.mixed[lam][i];
        }
        eps0 += dh * u[lam];
    }
    for j in 0..k {
        let mut dh = 0.0;
        for i in 0..k {
            dh += s.vi[i] * p.hessian.get(i, j);
        }
        eps0 += dh * accel[j];
    }
    let _ = p.value;
    let _ = p.momenta;
    Ok((eps, eps0))
}

/// Solve the reduced Lagrange equations for the accelerations
/// d²q^i/d(q⁰)².
pub fn reduced_acceleration(l: &RelativisticLagrangian, s: &ReducedState) -> Result<Vec<f64>> {
    let m = l.dimension();
    let k = m - 1;
    let p = reduced_partials(l, s)?;
    if p.hessian.cond_inf().unwrap_or(f64::INFINITY) > 1e12 {
        return Err(Error::SingularReducedHessian);
    }
    let mut u = Vec::with_capacity(m);
    u.push(1.0);
    u.extend_from_slice(&s.vi);
    let rhs: Vec<f64> = (0..k)
        .map(|i| {
            let mut r = p.grad_q[i + 1];
            for lam in 0..m {
                r -= p.mixed[lam][i] * u[lam];
            }
            r
        })
        .collect();
    p.hessian.solve(&rhs).ok_or(Error::SingularReducedHessian)
}

/// Lift a reduced state to a four-velocity state on the constraint
/// surface: `q⁰_τ = sign·Ḡ^{−1/2N}`, `q^i_τ = q⁰_τ q^i_0` (so G = 1).
pub fn lift_state(
    l: &RelativisticLagrangian,
    s: &ReducedState,
    sign: f64,
    tau: f64,
) -> Result<TrajectoryState> {
    let gbar = reduce_g(l, s);
    if gbar <= 0.0 {
        return Err(Error::NonPositiveReducedG { value: gbar });
    }
    let q0_tau = libm::copysign(1.0, sign) * libm::pow(gbar, -1.0 / l.metric().degree() as f64);
    let mut v = Vec::with_capacity(l.dimension());
    v.push(q0_tau);
    v.extend(s.vi.iter().map(|w| q0_tau * w));
    Ok(TrajectoryState::new(tau, s.coords(), v))
}

/// Cumulative quadrature of `±Ḡ^{1/2N}` over a uniformly sampled reduced
/// solution; together with the lift this reconstructs the
/// τ-parametrization of the constrained system.
pub fn reconstruct_tau(
    l: &RelativisticLagrangian,
    path: &[ReducedState],
    sign: f64,
) -> Result<Vec<f64>> {
    if path.len() < 2 {
        return Ok(vec![0.0; path.len()]);
    }
    let h = path[1].q0 - path[0].q0;
    let expo = 1.0 / l.metric().degree() as f64;
    let mut integrand = Vec::with_capacity(path.len());
    for s in path {
        let gbar = reduce_g(l, s);
        if gbar <= 0.0 {
            return Err(Error::NonPositiveReducedG { value: gbar });
        }
        integrand.push(libm::copysign(1.0, sign) * libm::pow(gbar, expo));
    }
    Ok(cumulative_integral(&integrand, h))
}

/// Fixed-step RK4 flow of the reduced Lagrange equations in the chart time
/// q⁰ over a span of `q0_span`, starting from `initial`.
pub fn integrate_reduced(
    l: &RelativisticLagrangian,
    initial: &ReducedState,
    step: f64,
    q0_span: f64,
) -> Result<Vec<ReducedState>> {
    if step == 0.0 || q0_span <= 0.0 {
        return Err(Error::DomainError);
    }
    let steps = libm::floor(q0_span / step.abs()) as usize;
    let k = initial.vi.len();
    let mut out = Vec::with_capacity(steps + 1);
    let mut s = initial.clone();
    out.push(s.clone());
    for _ in 0..steps {
        let deriv = |q0: f64, qi: &[f64], vi: &[f64]| -> Result<(Vec<f64>, Vec<f64>)> {
            let st = ReducedState::new(q0, qi.to_vec(), vi.to_vec());
            let a = reduced_acceleration(l, &st)?;
            Ok((vi.to_vec(), a))
        };
        let shift = |base: &[f64], d: &[f64], f: f64| -> Vec<f64> {
            base.iter().zip(d).map(|(b, d)| b + f * d).collect()
        };
        let h = step;
        let (k1q, k1v) = deriv(s.q0, &s.qi, &s.vi)?;
        let (k2q, k2v) = deriv(
            s.q0 + h / 2.0,
            &shift(&s.qi, &k1q, h / 2.0),
            &shift(&s.vi, &k1v, h / 2.0),
        )?;
        let (k3q, k3v) = deriv(
            s.q0 + h / 2.0,
            &shift(&s.qi, &k2q, h / 2.0),
            &shift(&s.vi, &k2v, h / 2.0),
        )?;
        let (k4q, k4v) = deriv(s.q0 + h, &shift(&s.qi, &k3q, h), &shift(&s.vi, &k3v, h))?;
        let mut qi = Vec::with_capacity(k);
        let mut vi = Vec::with_capacity(k);
        for i in 0..k {
            qi.push(s.qi[i] + h / 6.0 * (k1q[i] + 2.0 * k2q[i] + 2.0 * k3q[i] + k4q[i]));
            vi.push(s.vi[i] + h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]));
        }
        s = ReducedState::new(s.q0 + h, qi, vi);
        out.push(s.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::{charged_particle, free_particle};

    #[test]
    fn reduced_g_values() {
        let l = free_particle(4);
        let s = ReducedState::new(0.0, vec![0.0; 3], vec![0.6, 0.0, 0.0]);
        assert!((reduce_g(&l, &s) - 0.64).abs() < 1e-15);
        let rest = ReducedState::new(0.0, vec![0.0; 3], vec![0.0; 3]);
        assert!((reduce_g(&l, &rest) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reduced_g_homogeneity() {
        let l = free_particle(4);
        let s = ReducedState::new(0.3, vec![0.1, -0.2, 0.4], vec![0.5, -0.3, 0.2]);
        let gbar = reduce_g(&l, &s);
        for &q0_tau in &[0.7, -1.3, 2.4] {
            let q = s.coords();
            let v: Vec<f64> = core::iter::once(q0_tau)
                .chain(s.vi.iter().map(|w| q0_tau * w))
                .collect();
            let g = l.eval_g(&q, &v);
            assert!((q0_tau.powi(2) * gbar - g).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_lagrangian_values() {
        let l = free_particle(4);
        let rest = ReducedState::new(0.0, vec![0.0; 3], vec![0.0; 3]);
        assert!((reduced_lagrangian(&l, &rest).unwrap() - 1.0).abs() < 1e-15);
        let s = ReducedState::new(0.0, vec![0.0; 3], vec![0.6, 0.0, 0.0]);
        assert!((reduced_lagrangian(&l, &s).unwrap() - 0.8).abs() < 1e-15);
        let fast = ReducedState::new(0.0, vec![0.0; 3], vec![1.0, 0.0, 0.0]);
        assert!(matches!(
            reduced_lagrangian(&l, &fast),
            Err(Error::NonPositiveReducedG { .. })
        ));
    }

    #[test]
    fn free_particle_reduced_acceleration_zero() {
        let l = free_particle(4);
        let s = ReducedState::new(0.2, vec![0.3, -0.1, 0.5], vec![0.4, 0.1, -0.2]);
        let a = reduced_acceleration(&l, &s).unwrap();
        for x in &a {
            assert!(x.abs() < 1e-12, "{a:?}");
        }
    }

    #[test]
    fn dependent_component_identity() {
        let l = charged_particle(0.7);
        let s = ReducedState::new(0.4, vec![0.2, -0.3, 0.1], vec![0.25, -0.4, 0.3]);
        let accel = [0.7, -0.2, 0.5];
        let (eps, eps0) = reduced_euler_lagrange(&l, &s, &accel).unwrap();
        let contraction: f64 = eps.iter().zip(&s.vi).map(|(e, w)| e * w).sum();
        let scale = 1.0 + eps.iter().map(|e| e.abs()).sum::<f64>();
        assert!(
            (eps0 + contraction).abs() < 1e-10 * scale,
            "{eps0} vs {}",
            -contraction
        );
    }

    #[test]
    fn tau_reconstruction_constant_velocity() {
        let l = free_particle(4);
        let n = 100;
        let h = 0.01;
        let path: Vec<ReducedState> = (0..=n)
            .map(|k| {
                let q0 = k as f64 * h;
                ReducedState::new(q0, vec![0.6 * q0, 0.0, 0.0], vec![0.6, 0.0, 0.0])
            })
            .collect();
        // time dilation: dτ = dq⁰/γ with γ = 1.25
        let tau = reconstruct_tau(&l, &path, 1.0).unwrap();
        for (k, t) in tau.iter().enumerate() {
            let q0 = k as f64 * h;
            assert!((t - 0.8 * q0).abs() < 1e-10, "node {k}: {t}");
        }
        let tau_neg = reconstruct_tau(&l, &path, -1.0).unwrap();
        for (a, b) in tau.iter().zip(&tau_neg) {
            assert!((a + b).abs() < 1e-15);
        }

        let rest: Vec<ReducedState> = (0..=n)
            .map(|k| ReducedState::new(k as f64 * h, vec![0.0; 3], vec![0.0; 3]))
            .collect();
        let tau = reconstruct_tau(&l, &rest, 1.0).unwrap();
        for (k, t) in tau.iter().enumerate() {
            assert!((t - k as f64 * h).abs() < 1e-14);
        }
    }

    #[test]
    fn lift_satisfies_constraint() {
        let l = charged_particle(1.0);
        let s = ReducedState::new(0.1, vec![0.2, 0.3, -0.1], vec![0.6, 0.1, -0.2]);
        let lifted = lift_state(&l, &s, 1.0, 0.0).unwrap();
        assert!((l.eval_g(&lifted.q, &lifted.q_tau) - 1.0).abs() < 1e-12);
        // three-velocity of the lift reproduces the slopes
        for i in 0..3 {
            assert!((lifted.q_tau[i + 1] / lifted.q_tau[0] - s.vi[i]).abs() < 1e-14);
        }
    }
}
