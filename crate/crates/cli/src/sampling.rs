//! Deterministic sampling for the check workflows: seed + index addressing
//! so any sample can be regenerated in isolation, with rejection away from
//! the degenerate cone (G > 0.1).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relmech_core::lagrangian::{RelativisticLagrangian, TrajectoryState};
use relmech_core::nambu_goto::{FlatTargetMetric, WorldsheetJet};
use relmech_core::poly::PolynomialScalarField;
use relmech_core::tensor::{euclidean, OneFormField, SymmetricTensorField};

/// Independent stream for sample `index` under a run seed.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Euclidean-type quartic base: G(v) = (Σ (v^a)²)².
pub fn quartic_delta(m: usize) -> SymmetricTensorField {
    let mut g = SymmetricTensorField::new(m, 4);
    for a in 0..m {
        for b in a..m {
            if a == b {
                g.set_constant_component(&[a, a, a, a], 1.0);
            } else {
                g.set_constant_component(&[a, a, b, b], 1.0 / 3.0);
            }
        }
    }
    g
}

fn random_poly(r: &mut ChaCha8Rng, m: usize, scale: f64) -> PolynomialScalarField {
    let mut terms: Vec<(f64, Vec<u32>)> = vec![(r.random_range(-scale..scale), vec![0; m])];
    for _ in 0..2 {
        let mut exps = vec![0u32; m];
        for _ in 0..r.random_range(1..=2usize) {
            exps[r.random_range(0..m)] += 1;
        }
        terms.push((r.random_range(-scale..scale), exps));
    }
    PolynomialScalarField::new(m, terms)
}

/// Random polynomial Lagrangian: Euclidean-type base metric of degree 2N
/// with small polynomial perturbations, plus a random polynomial one-form.
pub fn random_lagrangian(r: &mut ChaCha8Rng, m: usize, half_degree: usize) -> RelativisticLagrangian {
    let mut g = match half_degree {
        1 => euclidean(m),
        _ => quartic_delta(m),
    };
    for _ in 0..3 {
        let mut idx: Vec<usize> = (0..2 * half_degree).map(|_| r.random_range(0..m)).collect();
        idx.sort_unstable();
        g.add_component(&idx, random_poly(r, m, 0.05));
    }
    let a = OneFormField::new((0..m).map(|_| random_poly(r, m, 0.3)).collect());
    RelativisticLagrangian::new(g, a).expect("dimensions match by construction")
}

/// A state drawn from fixed boxes, rejected until G > 0.1.
pub fn random_state(r: &mut ChaCha8Rng, l: &RelativisticLagrangian) -> TrajectoryState {
    let m = l.dimension();
    loop {
        let q: Vec<f64> = (0..m).map(|_| r.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..m).map(|_| r.random_range(-1.5..1.5)).collect();
        if l.eval_g(&q, &v) > 0.1 {
            return TrajectoryState::new(0.0, q, v);
        }
    }
}

pub fn random_accel(r: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| r.random_range(-2.0..2.0)).collect()
}

/// A worldsheet jet with a non-degenerate induced metric for the target.
pub fn random_worldsheet_jet(r: &mut ChaCha8Rng, eta: &FlatTargetMetric) -> WorldsheetJet {
    let m = eta.dimension();
    loop {
        let z1: Vec<[f64; 2]> = (0..m)
            .map(|_| [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)])
            .collect();
        let h = eta.induced_metric(&z1);
        let det = h.get(0, 0) * h.get(1, 1) - h.get(0, 1) * h.get(1, 0);
        if eta.signature_factor() * det < 1e-3 {
            continue;
        }
        let z: Vec<f64> = (0..m).map(|_| r.random_range(-1.0..1.0)).collect();
        let z2: Vec<[f64; 3]> = (0..m)
            .map(|_| {
                [
                    r.random_range(-1.0..1.0),
                    r.random_range(-1.0..1.0),
                    r.random_range(-1.0..1.0),
                ]
            })
            .collect();
        return WorldsheetJet::new(z, z1, z2);
    }
}
