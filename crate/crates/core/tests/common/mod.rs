//! Shared seeded generators for the property suites.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relmech_core::lagrangian::{RelativisticLagrangian, TrajectoryState};
use relmech_core::poly::PolynomialScalarField;
use relmech_core::tensor::{euclidean, OneFormField, SymmetricTensorField};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Euclidean analogue of the quartic catalog entry: G(v) = (Σ (v^a)²)².
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

/// A small random polynomial: constant plus a couple of monomials of total
/// degree at most 2, all coefficients bounded by `scale`.
pub fn random_poly(r: &mut ChaCha8Rng, m: usize, scale: f64) -> PolynomialScalarField {
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

/// A positive-definite-leaning random metric: Euclidean-type base of degree
/// 2N plus small polynomial perturbations of a few components. Positivity
/// at the sampled states is enforced by rejection in `random_state`.
pub fn random_metric(r: &mut ChaCha8Rng, m: usize, half_degree: usize) -> SymmetricTensorField {
    let mut g = match half_degree {
        1 => euclidean(m),
        2 => quartic_delta(m),
        _ => panic!("only N in {{1, 2}} is exercised"),
    };
    for _ in 0..3 {
        let mut idx: Vec<usize> = (0..2 * half_degree).map(|_| r.random_range(0..m)).collect();
        idx.sort_unstable();
        g.add_component(&idx, random_poly(r, m, 0.05));
    }
    g
}

pub fn random_potential(r: &mut ChaCha8Rng, m: usize) -> OneFormField {
    OneFormField::new((0..m).map(|_| random_poly(r, m, 0.3)).collect())
}

pub fn random_lagrangian(r: &mut ChaCha8Rng, m: usize, half_degree: usize) -> RelativisticLagrangian {
    RelativisticLagrangian::new(random_metric(r, m, half_degree), random_potential(r, m)).unwrap()
}

/// A state with G(q, v) > 0.1, drawn by rejection from fixed boxes.
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

pub fn random_vec(r: &mut ChaCha8Rng, len: usize, bound: f64) -> Vec<f64> {
    (0..len).map(|_| r.random_range(-bound..bound)).collect()
}
