//! The acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Tolerances and runtime budgets are pinned here.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relmech_core::dual::{second_partial, Dual};
use relmech_core::dynamics::{integrate, IntegratorConfig};
use relmech_core::jet_charts::{transform_jet, ChartPartition, ChartTransition, SubmanifoldJet};
use relmech_core::lagrangian::{
    charged_particle, free_particle, RelativisticLagrangian, TrajectoryState,
};
use relmech_core::linalg::Mat;
use relmech_core::nambu_goto::{FlatTargetMetric, WorldsheetJet};
use relmech_core::poly::PolynomialScalarField;
use relmech_core::tensor::{euclidean, OneFormField, SymmetricTensorField};
use relmech_core::three_velocity::{integrate_reduced, reconstruct_tau, ReducedState};
use std::time::{Duration, Instant};

fn conclude(number: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {number} ({name}): {} — {detail}",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} ({name}) failed: {detail}");
}

fn within(budget: Duration, started: Instant, number: usize, name: &str) {
    let took = started.elapsed();
    assert!(
        took <= budget,
        "criterion {number} ({name}) exceeded its runtime budget: {took:?} > {budget:?}"
    );
}

// ----- deterministic sampling (seed + index addressing) -----

fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn quartic_delta(m: usize) -> SymmetricTensorField {
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

fn random_lagrangian(r: &mut ChaCha8Rng, m: usize, half_degree: usize) -> RelativisticLagrangian {
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
    RelativisticLagrangian::new(g, a).unwrap()
}

fn random_state(r: &mut ChaCha8Rng, l: &RelativisticLagrangian) -> TrajectoryState {
    let m = l.dimension();
    loop {
        let q: Vec<f64> = (0..m).map(|_| r.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..m).map(|_| r.random_range(-1.5..1.5)).collect();
        if l.eval_g(&q, &v) > 0.1 {
            return TrajectoryState::new(0.0, q, v);
        }
    }
}

fn random_worldsheet_jet(r: &mut ChaCha8Rng, eta: &FlatTargetMetric) -> WorldsheetJet {
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

/// The analytic gyration for F_12 = 1 starting from rest at the origin with
/// normalized velocity (1.25, 0.75, 0, 0).
fn helix(tau: f64) -> ([f64; 4], [f64; 4]) {
    (
        [1.25 * tau, 0.75 * tau.sin(), 0.75 * (1.0 - tau.cos()), 0.0],
        [1.25, 0.75 * tau.cos(), 0.75 * tau.sin(), 0.0],
    )
}

// ----- criteria -----

#[test]
fn criterion_1_noether_identity_particles() {
    const TOL: f64 = 1e-9;
    const SAMPLES: usize = 1000;
    let started = Instant::now();

    // six (G, A) pairs spanning both degrees
    let mut pool = Vec::new();
    for p in 0..6u64 {
        let mut r = rng(11, u64::MAX - p);
        pool.push(random_lagrangian(&mut r, 4, 1 + (p % 2) as usize));
    }

    let mut max_rel = 0.0f64;
    for i in 0..SAMPLES {
        let l = &pool[i % pool.len()];
        let mut r = rng(11, i as u64);
        let s = random_state(&mut r, l);
        let accel: Vec<f64> = (0..4).map(|_| r.random_range(-2.0..2.0)).collect();
        let e = l.variational_derivative(&s, &accel).unwrap();
        let defect: f64 = e.iter().zip(&s.q_tau).map(|(e, v)| e * v).sum();
        let scale = 1.0 + e.iter().map(|x| x.abs()).sum::<f64>();
        max_rel = max_rel.max(defect.abs() / scale);
    }
    within(Duration::from_secs(5), started, 1, "noether particles");
    conclude(
        1,
        "noether particles",
        max_rel <= TOL,
        &format!("max relative defect {max_rel:e} over {SAMPLES} samples"),
    );
}

#[test]
fn criterion_2_noether_identity_worldsheets() {
    const TOL: f64 = 1e-9;
    const SAMPLES: usize = 1000;
    let started = Instant::now();

    let targets = [FlatTargetMetric::euclidean(4), FlatTargetMetric::minkowski(4)];
    let mut max_rel = 0.0f64;
    for i in 0..SAMPLES {
        let eta = &targets[i % 2];
        let mut r = rng(12, i as u64);
        let jet = random_worldsheet_jet(&mut r, eta);
        let e = eta.ng_variational_derivative(&jet).unwrap();
        let scale = 1.0 + e.iter().map(|x| x.abs()).sum::<f64>();
        let d = eta.noether_defects(&jet).unwrap();
        max_rel = max_rel.max(d[0].abs() / scale).max(d[1].abs() / scale);
    }
    within(Duration::from_secs(5), started, 2, "noether worldsheets");
    conclude(
        2,
        "noether worldsheets",
        max_rel <= TOL,
        &format!("max relative defect {max_rel:e} over {SAMPLES} jets"),
    );
}

#[test]
fn criterion_3_charged_gyration() {
    const POS_TOL: f64 = 1e-6;
    const DRIFT_TOL: f64 = 1e-10;
    let started = Instant::now();

    let l = charged_particle(1.0);
    let (q0, v0) = helix(0.0);
    let initial = TrajectoryState::new(0.0, q0.to_vec(), v0.to_vec());
    let cfg = IntegratorConfig::new(1e-3, 2.0 * std::f64::consts::PI);
    let tr = integrate(&l, &initial, &cfg).unwrap();

    let last = tr.last();
    let (exact_q, _) = helix(last.tau);
    let pos_err = last
        .q
        .iter()
        .zip(&exact_q)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let drift = tr.max_drift();
    within(Duration::from_secs(2), started, 3, "charged gyration");
    conclude(
        3,
        "charged gyration",
        pos_err <= POS_TOL && drift <= DRIFT_TOL,
        &format!("position error {pos_err:e} after one period, constraint drift {drift:e}"),
    );
}

#[test]
fn criterion_4_picture_equivalence() {
    const TOL: f64 = 1e-6;
    let started = Instant::now();

    let l = charged_particle(1.0);
    let span = 2.0 * std::f64::consts::PI;
    let (q0, v0) = helix(0.0);

    // full picture at step h in τ
    let h = 1e-3;
    let initial = TrajectoryState::new(0.0, q0.to_vec(), v0.to_vec());
    let cfg = IntegratorConfig::new(h, span);
    let full = integrate(&l, &initial, &cfg).unwrap();

    // reduced picture: q⁰_τ = 1.25 throughout, so step 1.25h in q⁰ lands on
    // the same worldline points sample by sample
    let reduced0 = ReducedState::new(0.0, vec![0.0, 0.0, 0.0], vec![0.6, 0.0, 0.0]);
    let reduced = integrate_reduced(&l, &reduced0, 1.25 * h, 1.25 * span).unwrap();
    let tau = reconstruct_tau(&l, &reduced, 1.0).unwrap();

    assert_eq!(full.samples.len(), reduced.len());
    let mut max_err = 0.0f64;
    for (k, (f, r)) in full.samples.iter().zip(&reduced).enumerate() {
        max_err = max_err.max((f.q[0] - r.q0).abs());
        for i in 0..3 {
            max_err = max_err.max((f.q[i + 1] - r.qi[i]).abs());
            // three-velocity of the full sample
            max_err = max_err.max((f.q_tau[i + 1] / f.q_tau[0] - r.vi[i]).abs());
        }
        max_err = max_err.max((f.tau - tau[k]).abs());
    }
    within(Duration::from_secs(5), started, 4, "picture equivalence");
    conclude(
        4,
        "picture equivalence",
        max_err <= TOL,
        &format!(
            "max deviation {max_err:e} across {} aligned samples (positions, three-velocities, reconstructed τ)",
            full.samples.len()
        ),
    );
}

#[test]
fn criterion_5_transition_cocycle() {
    const COMPOSE_TOL: f64 = 1e-10;
    const ROUND_TRIP_TOL: f64 = 1e-12;
    const SAMPLES: usize = 1000;
    let started = Instant::now();

    let m = 4;
    let partition = ChartPartition::new(m, vec![0]).unwrap();
    let mut max_compose = 0.0f64;
    let mut max_round = 0.0f64;
    let mut checked = 0usize;

    let random_transition = |r: &mut ChaCha8Rng, partition: &ChartPartition| -> ChartTransition {
        if r.random_range(0..4u32) == 0 {
            let rapidity: f64 = r.random_range(-1.0..1.0);
            return ChartTransition::lorentz_boost(
                partition.clone(),
                rapidity.cosh(),
                rapidity.sinh(),
            )
            .unwrap();
        }
        loop {
            let mat = Mat::from_fn(m, m, |i, j| {
                (if i == j { 1.0 } else { 0.0 }) + r.random_range(-0.4..0.4)
            });
            if mat.cond_inf().map_or(false, |c| c < 50.0) {
                return ChartTransition::linear(partition.clone(), partition.clone(), mat, "random")
                    .unwrap();
            }
        }
    };

    for i in 0..SAMPLES {
        let mut r = rng(13, i as u64);
        let point: Vec<f64> = (0..m).map(|_| r.random_range(-1.0..1.0)).collect();
        let slopes = Mat::from_fn(m - 1, 1, |_, _| r.random_range(-1.0..1.0));
        let jet = SubmanifoldJet::new(partition.clone(), point, slopes).unwrap();

        let t1 = random_transition(&mut r, &partition);
        let t2 = random_transition(&mut r, &partition);

        let step = match transform_jet(&jet, &t1).and_then(|j| transform_jet(&j, &t2)) {
            Ok(j) => j,
            Err(_) => continue,
        };
        let composed = t1.compose(&t2).expect("affine transitions always compose");
        let direct = match transform_jet(&jet, &composed) {
            Ok(j) => j,
            Err(_) => continue,
        };
        // near-singular samples blow the slopes up; the criterion is about
        // well-conditioned transitions
        if step.slopes.max_abs() > 50.0 || direct.slopes.max_abs() > 50.0 {
            continue;
        }
        for i in 0..m - 1 {
            max_compose = max_compose.max((step.slopes.get(i, 0) - direct.slopes.get(i, 0)).abs());
        }
        for a in 0..m {
            max_compose = max_compose.max((step.point[a] - direct.point[a]).abs());
        }

        let inv = t1.inverse().expect("well-conditioned transitions invert");
        if let Ok(back) = transform_jet(&jet, &t1).and_then(|j| transform_jet(&j, &inv)) {
            for i in 0..m - 1 {
                max_round = max_round.max((back.slopes.get(i, 0) - jet.slopes.get(i, 0)).abs());
            }
            for a in 0..m {
                max_round = max_round.max((back.point[a] - jet.point[a]).abs());
            }
        }
        checked += 1;
    }

    // the closed-form composition of slope 0.5 with the (1.25, 0.75) boost
    let boost = ChartTransition::lorentz_boost(partition.clone(), 1.25, 0.75).unwrap();
    let jet = SubmanifoldJet::new(
        partition.clone(),
        vec![0.0; 4],
        Mat::from_fn(3, 1, |i, _| if i == 0 { 0.5 } else { 0.0 }),
    )
    .unwrap();
    let boosted = transform_jet(&jet, &boost).unwrap();
    let boost_err = (boosted.slopes.get(0, 0) + 1.0 / 7.0).abs();

    within(Duration::from_secs(5), started, 5, "transition cocycle");
    conclude(
        5,
        "transition cocycle",
        checked >= 900
            && max_compose <= COMPOSE_TOL
            && max_round <= ROUND_TRIP_TOL
            && boost_err <= 1e-12,
        &format!(
            "composition defect {max_compose:e}, round-trip defect {max_round:e} over {checked} jets, boost slope error {boost_err:e}"
        ),
    );
}

#[test]
fn criterion_6_gauge_invariance_of_actions() {
    const TOL: f64 = 1e-6;
    let started = Instant::now();

    // particle: a curved path under both Lagrangian families, reparametrized
    // by a monotone quadratic fixing the endpoints of [0, 1]
    let phi = |t: f64| 0.5 * (t * t + t);
    let phi_prime = |t: f64| t + 0.5;
    let path = |tau: f64| -> (Vec<f64>, Vec<f64>) {
        (
            vec![1.5 * tau, 0.3 * tau.sin(), 0.2 * tau * tau, 0.1 * tau],
            vec![1.5, 0.3 * tau.cos(), 0.4 * tau, 0.1],
        )
    };
    let mut max_rel = 0.0f64;
    for l in [free_particle(4), charged_particle(0.8)] {
        let (before, after) = l
            .gauge_action_invariance(path, (0.0, 1.0), phi, phi_prime, (0.0, 1.0), 512)
            .unwrap();
        max_rel = max_rel.max((before - after).abs() / (1.0 + before.abs()));
    }

    // worldsheet: a flat patch under the diffeomorphism (u, v) -> (u², v),
    // integrated at 256×256 panels; the primed rectangle starts just off
    // u = 0 where the pullback degenerates
    let eta = FlatTargetMetric::euclidean(4);
    let mut z1 = vec![[0.0f64; 2]; 4];
    z1[0][0] = 1.0;
    z1[1][1] = 1.0;
    let (before, after) = eta
        .ng_action_invariance(
            move |_, _| z1.clone(),
            (0.0, 1.0),
            (0.0, 1.0),
            |u, v| (u * u, v),
            |u, _| [[2.0 * u, 0.0], [0.0, 1.0]],
            (1e-8, 1.0),
            (0.0, 1.0),
            256,
        )
        .unwrap();
    let sheet_rel = (before - after).abs() / (1.0 + before.abs());

    within(Duration::from_secs(5), started, 6, "gauge invariance");
    conclude(
        6,
        "gauge invariance",
        max_rel <= TOL && sheet_rel <= TOL,
        &format!("particle action defect {max_rel:e}, sheet action defect {sheet_rel:e}"),
    );
}

#[test]
fn criterion_7_ad_against_finite_differences() {
    const H: f64 = 1e-5;
    const TOL: f64 = 1e-6;
    const POINTS: usize = 200;
    let started = Instant::now();

    let mut pool = Vec::new();
    for p in 0..4u64 {
        let mut r = rng(14, u64::MAX - p);
        pool.push(random_lagrangian(&mut r, 4, 1 + (p % 2) as usize));
    }

    let mut worst = 0.0f64;
    for k in 0..POINTS {
        let l = &pool[k % pool.len()];
        let m = l.dimension();
        let mut r = rng(14, k as u64);
        let s = random_state(&mut r, l);
        let mut x: Vec<f64> = s.q.clone();
        x.extend_from_slice(&s.q_tau);
        let i = r.random_range(0..2 * m);
        let j = r.random_range(0..2 * m);

        let f = |y: &[Dual<Dual<f64>>]| l.density(&y[..m], &y[m..]);
        let p = second_partial(f, &x, i, j).unwrap();

        let eval = |x: &[f64]| l.density(&x[..m], &x[m..]).unwrap();
        let shifted = |di: f64, dj: f64| {
            let mut y = x.clone();
            y[i] += di;
            y[j] += dj;
            eval(&y)
        };
        let fd_i = (shifted(H, 0.0) - shifted(-H, 0.0)) / (2.0 * H);
        let fd_j = (shifted(0.0, H) - shifted(0.0, -H)) / (2.0 * H);
        let fd_ij = if i == j {
            (shifted(H, 0.0) - 2.0 * p.value + shifted(-H, 0.0)) / (H * H)
        } else {
            (shifted(H, H) - shifted(H, -H) - shifted(-H, H) + shifted(-H, -H)) / (4.0 * H * H)
        };

        // the mixed stencil amplifies rounding noise by roughly ε|L| / h²,
        // so the second-derivative comparison scale must carry the function
        // magnitude with a few-ulp safety factor
        worst = worst.max((p.d_i - fd_i).abs() / (TOL * (1.0 + p.d_i.abs())));
        worst = worst.max((p.d_j - fd_j).abs() / (TOL * (1.0 + p.d_j.abs())));
        worst = worst
            .max((p.d_ij - fd_ij).abs() / (TOL * (1.0 + 4.0 * p.value.abs() + p.d_ij.abs())));
    }
    within(Duration::from_secs(5), started, 7, "automatic differentiation");
    conclude(
        7,
        "automatic differentiation",
        worst <= 1.0,
        &format!("worst defect {worst:.3} in units of the 1e-6 relative budget over {POINTS} points"),
    );
}

#[test]
fn criterion_8_rk4_convergence() {
    const RATIO_MIN: f64 = 14.0;
    const FLOOR: f64 = 1e-12;
    let started = Instant::now();

    let span = 10.0;
    let run = |l: &RelativisticLagrangian, exact: &dyn Fn(f64) -> [f64; 4], step: f64, v0: [f64; 4]| {
        let initial = TrajectoryState::new(0.0, exact(0.0).to_vec(), v0.to_vec());
        let tr = integrate(l, &initial, &IntegratorConfig::new(step, span)).unwrap();
        let last = tr.last();
        let want = exact(last.tau);
        last.q
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };

    // the gyrating charged particle has nonvanishing fifth derivatives, so
    // halving the step must shrink the error by about 2⁴
    let l = charged_particle(1.0);
    let exact = |tau: f64| helix(tau).0;
    let coarse = run(&l, &exact, 0.1, helix(0.0).1);
    let fine = run(&l, &exact, 0.05, helix(0.0).1);
    let charged_ok = if coarse <= FLOOR {
        true
    } else {
        coarse / fine >= RATIO_MIN
    };

    // the free particle is integrated exactly; its error sits at the
    // rounding floor for every step, which the floor branch accepts
    let lf = free_particle(4);
    let free_exact = |tau: f64| [1.25 * tau, 0.75 * tau, 0.0, 0.0];
    let free_coarse = run(&lf, &free_exact, 0.1, [1.25, 0.75, 0.0, 0.0]);
    let free_fine = run(&lf, &free_exact, 0.05, [1.25, 0.75, 0.0, 0.0]);
    let free_ok = if free_coarse <= FLOOR {
        true
    } else {
        free_coarse / free_fine >= RATIO_MIN
    };

    within(Duration::from_secs(5), started, 8, "rk4 convergence");
    conclude(
        8,
        "rk4 convergence",
        charged_ok && free_ok,
        &format!(
            "charged errors {coarse:e} → {fine:e} (ratio {:.1}), free errors {free_coarse:e} → {free_fine:e}",
            coarse / fine
        ),
    );
}
