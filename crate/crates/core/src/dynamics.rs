//! Fixed-step RK4 integration of the relativistic equation `E_β = 0` on
//! the constraint surface G = 1, with four-velocity normalization and
//! constraint-drift monitoring. The continuous flow preserves G = 1
//! exactly, so the recorded drift is a pure integrator diagnostic.

use crate::error::Error;
use crate::lagrangian::{RelativisticLagrangian, TrajectoryState};
use crate::linalg::Mat;
use crate::Result;
use alloc::vec::Vec;

/// Condition bound above which the mass matrix counts as singular.
pub const MAX_MASS_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorConfig {
    /// Step Δτ. Sign sets the direction of integration.
    pub step: f64,
    /// Total integration span |τ_end − τ_0| (> 0).
    pub t_end: f64,
    /// Rescale q_τ by G^{−1/2N} after each step.
    pub projection: bool,
    /// Abort threshold on |G − 1|.
    pub drift_abort: f64,
}

impl IntegratorConfig {
    pub fn new(step: f64, t_end: f64) -> Self {
        IntegratorConfig {
            step,
            t_end,
            projection: false,
            drift_abort: 1e-6,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.step == 0.0 || self.t_end <= 0.0 || self.drift_abort <= 0.0 {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }
}

/// An integrated solution: state samples plus the per-sample constraint
/// value G.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectoryState>,
    pub constraint: Vec<f64>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryState {
        self.samples.last().expect("trajectory is never empty")
    }

    pub fn max_drift(&self) -> f64 {
        self.constraint
            .iter()
            .map(|g| (g - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `W_{βμ} = (2N−1) G_{βμα3…α2N} q^{α3}_τ…q^{α2N}_τ`, the coefficient of
/// `q^μ_ττ` in `−E_β`; for N = 1 this is G_{βμ}(q) itself.
pub fn mass_matrix(l: &RelativisticLagrangian, s: &TrajectoryState) -> Mat {
    l.mass_matrix_raw(&s.q, &s.q_tau)
}

/// The unique acceleration solving `E_β = 0`:
/// `W·q_ττ = (antisymmetrized ∂G term) + G^{1−1/2N} F·q_τ`.
pub fn acceleration(l: &RelativisticLagrangian, s: &TrajectoryState) -> Result<Vec<f64>> {
    let w = mass_matrix(l, s);
    if w.cond_inf().unwrap_or(f64::INFINITY) > MAX_MASS_CONDITION {
        return Err(Error::SingularMassMatrix);
    }
    let g_value = l.eval_g(&s.q, &s.q_tau);
    if g_value <= 0.0 {
        return Err(Error::NonPositiveG { value: g_value });
    }
    let two_n = l.metric().degree() as f64;
    let grad = l.metric().coefficient_gradient(&s.q, &s.q_tau);
    let deriv = l.metric().contract_derivative(&s.q, &s.q_tau);
    let f_term = l.potential().field_strength().apply(&s.q, &s.q_tau);
    let g_factor = libm::pow(g_value, 1.0 - 1.0 / two_n);
    let rhs: Vec<f64> = (0..l.dimension())
        .map(|b| grad[b] / two_n - deriv[b] + g_factor * f_term[b])
        .collect();
    w.solve(&rhs).ok_or(Error::SingularMassMatrix)
}

/// Rescale `v` to the constraint surface: `sign · v / G^{1/2N}` (the two
/// signs realize the unique pair of four-velocities over a
/// three-velocity).
pub fn normalize_velocity(
    l: &RelativisticLagrangian,
    q: &[f64],
    v: &[f64],
    sign: f64,
) -> Result<Vec<f64>> {
    let g_value = l.eval_g(q, v);
    if g_value <= 0.0 {
        return Err(Error::NonPositiveG { value: g_value });
    }
    let scale = libm::pow(g_value, -1.0 / l.metric().degree() as f64);
    Ok(v.iter().map(|x| libm::copysign(1.0, sign) * x * scale).collect())
}

fn rk4_step(
    l: &RelativisticLagrangian,
    tau: f64,
    q: &[f64],
    v: &[f64],
    h: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = q.len();
    let deriv = |q: &[f64], v: &[f64]| -> Result<(Vec<f64>, Vec<f64>)> {
        let s = TrajectoryState::new(tau, q.to_vec(), v.to_vec());
        let a = acceleration(l, &s)?;
        Ok((v.to_vec(), a))
    };
    let (k1q, k1v) = deriv(q, v)?;
    let shift = |base: &[f64], k: &[f64], f: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, k)| b + f * k).collect()
    };
    let (k2q, k2v) = deriv(&shift(q, &k1q, h / 2.0), &shift(v, &k1v, h / 2.0))?;
    let (k3q, k3v) = deriv(&shift(q, &k2q, h / 2.0), &shift(v, &k2v, h / 2.0))?;
    let (k4q, k4v) = deriv(&shift(q, &k3q, h), &shift(v, &k3v, h))?;
    let mut qn = Vec::with_capacity(m);
    let mut vn = Vec::with_capacity(m);
    for i in 0..m {
        qn.push(q[i] + h / 6.0 * (k1q[i] + 2.0 * k2q[i] + 2.0 * k3q[i] + k4q[i]));
        vn.push(v[i] + h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]));
    }
    Ok((qn, vn))
}

/// RK4 flow of the relativistic equation from an initial state on the
/// constraint surface (|G − 1| ≤ `drift_abort`; normalize first). Records
/// G each step and aborts once |G − 1| exceeds `drift_abort`.
pub fn integrate(
    l: &RelativisticLagrangian,
    initial: &TrajectoryState,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    let g0 = l.eval_g(&initial.q, &initial.q_tau);
    if (g0 - 1.0).abs() > cfg.drift_abort {
        return Err(Error::DriftExceeded {
            tau: initial.tau,
            drift: (g0 - 1.0).abs(),
        });
    }
    let steps = libm::floor(cfg.t_end / cfg.step.abs()) as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut constraint = Vec::with_capacity(steps + 1);
    let mut tau = initial.tau;
    let mut q = initial.q.clone();
    let mut v = initial.q_tau.clone();
    samples.push(TrajectoryState::new(tau, q.clone(), v.clone()));
    constraint.push(g0);
    for _ in 0..steps {
        let (qn, vn) = rk4_step(l, tau, &q, &v, cfg.step).map_err(|e| e.at_tau(tau))?;
        q = qn;
        v = vn;
        tau += cfg.step;
        if cfg.projection {
            v = normalize_velocity(l, &q, &v, 1.0).map_err(|e| e.at_tau(tau))?;
        }
        let g = l.eval_g(&q, &v);
        if (g - 1.0).abs() > cfg.drift_abort {
            return Err(Error::DriftExceeded {
                tau,
                drift: (g - 1.0).abs(),
            });
        }
        samples.push(TrajectoryState::new(tau, q.clone(), v.clone()));
        constraint.push(g);
    }
    Ok(Trajectory {
        samples,
        constraint,
    })
}
