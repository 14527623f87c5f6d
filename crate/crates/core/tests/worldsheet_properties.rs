//! Seeded property suite for the worldsheet example: the two Noether
//! contractions on 1000 random jets, GL(2) covariance of the density, and
//! agreement of the dual-number Hessian with finite differences in the
//! variational derivative.

mod common;

use common::rng;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use relmech_core::nambu_goto::{FlatTargetMetric, WorldsheetJet};

const M: usize = 4;

fn random_jet(r: &mut ChaCha8Rng, eta: &FlatTargetMetric) -> WorldsheetJet {
    loop {
        let z1: Vec<[f64; 2]> = (0..M)
            .map(|_| [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)])
            .collect();
        let h = eta.induced_metric(&z1);
        let det = h.get(0, 0) * h.get(1, 1) - h.get(0, 1) * h.get(1, 0);
        if eta.signature_factor() * det < 1e-3 {
            continue;
        }
        let z: Vec<f64> = (0..M).map(|_| r.random_range(-1.0..1.0)).collect();
        let z2: Vec<[f64; 3]> = (0..M)
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

#[test]
fn noether_contractions_vanish_on_random_jets() {
    let eta = FlatTargetMetric::euclidean(M);
    let mut r = rng(401);
    let mut max_rel = 0.0f64;
    for _ in 0..1000 {
        let jet = random_jet(&mut r, &eta);
        let e = eta.ng_variational_derivative(&jet).unwrap();
        let scale = 1.0 + e.iter().map(|x| x.abs()).sum::<f64>();
        let d = eta.noether_defects(&jet).unwrap();
        max_rel = max_rel.max(d[0].abs() / scale).max(d[1].abs() / scale);
    }
    assert!(max_rel <= 1e-9, "max relative defect {max_rel:e}");
}

#[test]
fn gl2_covariance_random() {
    let eta = FlatTargetMetric::euclidean(M);
    let mut r = rng(402);
    for _ in 0..500 {
        let jet = random_jet(&mut r, &eta);
        let m: [[f64; 2]; 2] = [
            [r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)],
            [r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)],
        ];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() < 0.1 {
            continue;
        }
        let mapped: Vec<[f64; 2]> = jet
            .z1
            .iter()
            .map(|row| {
                [
                    row[0] * m[0][0] + row[1] * m[1][0],
                    row[0] * m[0][1] + row[1] * m[1][1],
                ]
            })
            .collect();
        let base = eta.ng_density(&jet.z1).unwrap();
        let v = eta.ng_density(&mapped).unwrap();
        assert!((v - det.abs() * base).abs() <= 1e-11 * (1.0 + v.abs()));
    }
}

#[test]
fn variational_derivative_matches_finite_differences() {
    // Assemble E_A from a central-difference Hessian of the density and
    // compare with the dual-number result.
    let eta = FlatTargetMetric::euclidean(M);
    let mut r = rng(403);
    let h = 1e-5;
    for _ in 0..50 {
        let jet = random_jet(&mut r, &eta);
        let exact = eta.ng_variational_derivative(&jet).unwrap();
        let density_at = |delta: &[(usize, usize, f64)]| -> f64 {
            let mut z1 = jet.z1.clone();
            for &(a, mu, d) in delta {
                z1[a][mu] += d;
            }
            eta.ng_density(&z1).unwrap()
        };
        for a in 0..M {
            let mut fd = 0.0;
            for mu in 0..2 {
                for b in 0..M {
                    for nu in 0..2 {
                        let z2 = jet.second(b, nu, mu);
                        if z2 == 0.0 {
                            continue;
                        }
                        let hess = if (a, mu) == (b, nu) {
                            (density_at(&[(a, mu, h)]) - 2.0 * density_at(&[])
                                + density_at(&[(a, mu, -h)]))
                                / (h * h)
                        } else {
                            (density_at(&[(a, mu, h), (b, nu, h)])
                                - density_at(&[(a, mu, h), (b, nu, -h)])
                                - density_at(&[(a, mu, -h), (b, nu, h)])
                                + density_at(&[(a, mu, -h), (b, nu, -h)]))
                                / (4.0 * h * h)
                        };
                        fd -= hess * z2;
                    }
                }
            }
            assert!(
                (fd - exact[a]).abs() <= 1e-4 * (1.0 + exact[a].abs()),
                "component {a}: fd {fd} vs ad {}",
                exact[a]
            );
        }
    }
}
