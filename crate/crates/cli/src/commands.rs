//! The six workflows behind the CLI subcommands.

use crate::error::{runtime, AppError};
use crate::report::Report;
use crate::sampling;
use crate::scenario::{Kind, MetricSpec, Scenario};
use relmech_core::dynamics::{integrate, normalize_velocity, IntegratorConfig};
use relmech_core::jet_charts::transform_jet;
use relmech_core::nambu_goto::FlatTargetMetric;
use relmech_core::three_velocity::{
    integrate_reduced, reconstruct_tau, reduce_g, ReducedState,
};
use std::io::Write;
use std::path::Path;
use std::time::Instant;

/// Full-round-trip decimal formatting (17 significant digits).
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, content: &str) -> Result<(), AppError> {
    std::fs::write(path, content)
        .map_err(|e| AppError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn report(kind: Kind, pass: bool, max_defect: f64, samples: usize, started: Instant, seed: u64) -> Report {
    Report {
        kind: kind.as_str().to_string(),
        pass,
        max_defect,
        samples,
        runtime_ms: started.elapsed().as_millis() as u64,
        seed,
    }
}

pub fn simulate(sc: &Scenario, out: &Path) -> Result<Report, AppError> {
    let started = Instant::now();
    let l = sc.build_lagrangian()?;
    let (step, t_end, projection, drift_abort) = sc.integrator()?;
    let init = sc.initial()?;
    let v = normalize_velocity(&l, &init.q, &init.v, init.sign)
        .map_err(|e| runtime("initial.v", e))?;
    let state = relmech_core::lagrangian::TrajectoryState::new(0.0, init.q.clone(), v);
    let mut cfg = IntegratorConfig::new(step, t_end);
    cfg.projection = projection;
    cfg.drift_abort = drift_abort;
    let tr = integrate(&l, &state, &cfg).map_err(|e| runtime("integrator", e))?;

    let m = l.dimension();
    let mut csv = String::new();
    csv.push_str("tau");
    for i in 0..m {
        csv.push_str(&format!(",q{i}"));
    }
    for i in 0..m {
        csv.push_str(&format!(",v{i}"));
    }
    csv.push_str(",G\n");
    for (s, g) in tr.samples.iter().zip(&tr.constraint) {
        csv.push_str(&num(s.tau));
        for x in &s.q {
            csv.push(',');
            csv.push_str(&num(*x));
        }
        for x in &s.q_tau {
            csv.push(',');
            csv.push_str(&num(*x));
        }
        csv.push(',');
        csv.push_str(&num(*g));
        csv.push('\n');
    }
    write_file(out, &csv)?;
    Ok(report(
        Kind::Simulate,
        true,
        tr.max_drift(),
        tr.samples.len(),
        started,
        sc.seed(),
    ))
}

pub fn check_noether(sc: &Scenario) -> Result<Report, AppError> {
    let started = Instant::now();
    let m = sc.dimension()?;
    let half = sc.half_degree()?;
    let seed = sc.seed();
    let samples = sc.samples();
    let tol = sc.tolerance(1e-9);

    // either the configured Lagrangian throughout, or 5 random polynomial
    // (G, A) pairs drawn from the seed
    let fixed = if sc.metric_is_random() {
        None
    } else {
        Some(sc.build_lagrangian()?)
    };
    let pairs = 5usize;
    let random_pool: Vec<_> = if fixed.is_none() {
        (0..pairs)
            .map(|p| {
                let mut r = sampling::sample_rng(seed, u64::MAX - p as u64);
                sampling::random_lagrangian(&mut r, m, half)
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut max_defect = 0.0f64;
    for i in 0..samples {
        let l = match &fixed {
            Some(l) => l,
            None => &random_pool[i % pairs],
        };
        let mut r = sampling::sample_rng(seed, i as u64);
        let s = sampling::random_state(&mut r, l);
        let accel = sampling::random_accel(&mut r, m);
        let e = l
            .variational_derivative(&s, &accel)
            .map_err(|e| runtime(&format!("sample {i}"), e))?;
        let defect: f64 = e.iter().zip(&s.q_tau).map(|(e, v)| e * v).sum();
        let scale = 1.0 + e.iter().map(|x| x.abs()).sum::<f64>();
        max_defect = max_defect.max(defect.abs() / scale);
    }
    Ok(report(
        Kind::CheckNoether,
        max_defect <= tol,
        max_defect,
        samples,
        started,
        seed,
    ))
}

pub fn check_gauge(sc: &Scenario) -> Result<Report, AppError> {
    let started = Instant::now();
    let l = sc.build_lagrangian()?;
    let init = sc.initial()?;
    let tol = sc.tolerance(1e-6);
    let span = sc
        .integrator
        .as_ref()
        .and_then(|i| i.t_end)
        .unwrap_or(1.0);
    let panels = sc.panels().max(256);

    // affine path from the initial state, reparametrized by the monotone
    // quadratic φ(t) = (t²/T + t)/2 mapping [0, T] onto itself
    let q0 = init.q.clone();
    let v0 = init.v.clone();
    let path = move |tau: f64| -> (Vec<f64>, Vec<f64>) {
        (
            q0.iter().zip(&v0).map(|(q, v)| q + v * tau).collect(),
            v0.clone(),
        )
    };
    let t_span = span;
    let phi = move |t: f64| 0.5 * (t * t / t_span + t);
    let phi_prime = move |t: f64| 0.5 * (2.0 * t / t_span + 1.0);
    let (before, after) = l
        .gauge_action_invariance(path, (0.0, span), phi, phi_prime, (0.0, span), panels)
        .map_err(|e| runtime("initial (path leaves the Lagrangian domain)", e))?;
    let defect = (before - after).abs() / (1.0 + before.abs());
    Ok(report(
        Kind::CheckGauge,
        defect <= tol,
        defect,
        panels,
        started,
        sc.seed(),
    ))
}

pub fn transform(sc: &Scenario, out: Option<&Path>, quiet: bool) -> Result<Report, AppError> {
    let started = Instant::now();
    let jet = sc.build_jet()?;
    let t = sc.build_transition()?;
    let result = transform_jet(&jet, &t).map_err(|e| runtime("transition", e))?;
    let slopes: Vec<Vec<f64>> = (0..result.slopes.rows())
        .map(|i| (0..result.slopes.cols()).map(|a| result.slopes.get(i, a)).collect())
        .collect();
    let doc = serde_json::json!({
        "point": result.point,
        "slopes": slopes,
    });
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    match out {
        Some(path) => write_file(path, &text)?,
        None => {
            if !quiet {
                println!("{text}");
            }
        }
    }
    Ok(report(Kind::Transform, true, 0.0, 1, started, sc.seed()))
}

pub fn reduce(sc: &Scenario, out: &Path) -> Result<Report, AppError> {
    let started = Instant::now();
    let l = sc.build_lagrangian()?;
    let (step, span, _, _) = sc.integrator()?;
    let init = sc.reduced_initial()?;
    let state = ReducedState::new(init.q0, init.qi.clone(), init.vi.clone());
    let path = integrate_reduced(&l, &state, step, span).map_err(|e| runtime("integrator", e))?;
    let tau = reconstruct_tau(&l, &path, init.sign).map_err(|e| runtime("integrator", e))?;

    let m = l.dimension();
    let mut csv = String::new();
    csv.push_str("q0");
    for i in 1..m {
        csv.push_str(&format!(",q{i}"));
    }
    for i in 1..m {
        csv.push_str(&format!(",v{i}"));
    }
    csv.push_str(",Gbar,tau_reconstructed\n");
    for (s, t) in path.iter().zip(&tau) {
        csv.push_str(&num(s.q0));
        for x in &s.qi {
            csv.push(',');
            csv.push_str(&num(*x));
        }
        for x in &s.vi {
            csv.push(',');
            csv.push_str(&num(*x));
        }
        csv.push(',');
        csv.push_str(&num(reduce_g(&l, s)));
        csv.push(',');
        csv.push_str(&num(*t));
        csv.push('\n');
    }
    write_file(out, &csv)?;
    Ok(report(Kind::Reduce, true, 0.0, path.len(), started, sc.seed()))
}

pub fn string_check(sc: &Scenario) -> Result<Report, AppError> {
    let started = Instant::now();
    let m = sc.dimension()?;
    let seed = sc.seed();
    let samples = sc.samples();
    let tol = sc.tolerance(1e-9);

    let mut eta = match sc.metric.as_ref() {
        None | Some(MetricSpec::Catalog(_)) => {
            let name = match sc.metric.as_ref() {
                Some(MetricSpec::Catalog(n)) => n.as_str(),
                _ => "euclidean",
            };
            match name {
                "euclidean" => FlatTargetMetric::euclidean(m),
                "minkowski" => FlatTargetMetric::minkowski(m),
                other => {
                    return Err(AppError::Config(format!(
                        "metric: unknown target \"{other}\" (expected euclidean or minkowski)"
                    )))
                }
            }
        }
        Some(MetricSpec::Explicit { .. }) => {
            return Err(AppError::Config(
                "metric: string-check targets come from the catalog".to_string(),
            ))
        }
    };
    if sc.signature_factor.is_some() {
        eta = eta.with_signature_factor(sc.signature_factor()?);
    }

    // Noether contractions over seeded random jets
    let mut max_defect = 0.0f64;
    for i in 0..samples {
        let mut r = sampling::sample_rng(seed, i as u64);
        let jet = sampling::random_worldsheet_jet(&mut r, &eta);
        let e = eta
            .ng_variational_derivative(&jet)
            .map_err(|e| runtime(&format!("sample {i}"), e))?;
        let scale = 1.0 + e.iter().map(|x| x.abs()).sum::<f64>();
        let d = eta
            .noether_defects(&jet)
            .map_err(|e| runtime(&format!("sample {i}"), e))?;
        max_defect = max_defect.max(d[0].abs() / scale).max(d[1].abs() / scale);
    }
    let noether_pass = max_defect <= tol;

    // diffeomorphism invariance of the flat patch action; the left edge of
    // the primed rectangle is shifted off u = 0 where the (u², v) pullback
    // degenerates
    let mut z1 = vec![[0.0f64; 2]; m];
    z1[0][0] = 1.0;
    z1[1][1] = 1.0;
    let tangents = move |_: f64, _: f64| z1.clone();
    let panels = sc.panels();
    let (before, after) = eta
        .ng_action_invariance(
            tangents,
            (0.0, 1.0),
            (0.0, 1.0),
            |u, v| (u * u, v),
            |u, _| [[2.0 * u, 0.0], [0.0, 1.0]],
            (1e-8, 1.0),
            (0.0, 1.0),
            panels,
        )
        .map_err(|e| runtime("panels (sheet action)", e))?;
    let action_defect = (before - after).abs() / (1.0 + before.abs());
    let action_pass = action_defect <= 1e-6;

    Ok(report(
        Kind::StringCheck,
        noether_pass && action_pass,
        max_defect.max(action_defect),
        samples,
        started,
        seed,
    ))
}

/// Ensure the document's own kind matches the invoked subcommand.
pub fn expect_kind(sc: &Scenario, expected: Kind) -> Result<(), AppError> {
    let kind = sc.kind()?;
    if kind != expected {
        return Err(AppError::Config(format!(
            "kind: scenario is \"{}\" but the subcommand expects \"{}\"",
            kind.as_str(),
            expected.as_str()
        )));
    }
    Ok(())
}

/// Shared stdout/report plumbing for every subcommand.
pub fn emit(report: &Report, quiet: bool) {
    if !quiet {
        eprintln!("{}", report.summary());
    }
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", report.to_json());
}
