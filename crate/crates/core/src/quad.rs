//! Composite Simpson quadrature, one- and two-dimensional, plus a
//! fourth-order cumulative integral on a uniform grid.

use alloc::vec::Vec;

/// Composite Simpson rule over `[a, b]` with `panels` panels (forced even).
pub fn simpson<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    panels: usize,
) -> Result<f64, E> {
    let n = if panels % 2 == 0 { panels } else { panels + 1 }.max(2);
    let h = (b - a) / n as f64;
    let mut acc = f(a)? + f(b)?;
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// Tensor-product Simpson rule over a rectangle.
pub fn simpson_2d<E>(
    mut f: impl FnMut(f64, f64) -> Result<f64, E>,
    (a1, b1): (f64, f64),
    (a2, b2): (f64, f64),
    panels1: usize,
    panels2: usize,
) -> Result<f64, E> {
    let n1 = if panels1 % 2 == 0 { panels1 } else { panels1 + 1 }.max(2);
    let n2 = if panels2 % 2 == 0 { panels2 } else { panels2 + 1 }.max(2);
    let h1 = (b1 - a1) / n1 as f64;
    let h2 = (b2 - a2) / n2 as f64;
    let w = |k: usize, n: usize| -> f64 {
        if k == 0 || k == n {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut acc = 0.0;
    for i in 0..=n1 {
        let u = a1 + i as f64 * h1;
        for j in 0..=n2 {
            let v = a2 + j as f64 * h2;
            acc += w(i, n1) * w(j, n2) * f(u, v)?;
        }
    }
    Ok(acc * h1 * h2 / 9.0)
}

/// Cumulative integral of uniformly spaced samples, fourth order: each
/// interval is integrated with the cubic through four neighbouring nodes
/// (exact for cubic integrands at every grid point).
pub fn cumulative_integral(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(0.0);
    if n < 4 {
        for k in 0..n - 1 {
            out.push(out[k] + h / 2.0 * (values[k] + values[k + 1]));
        }
        return out;
    }
    for k in 0..n - 1 {
        let inc = if k == 0 {
            h / 24.0
                * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
        } else if k == n - 2 {
            h / 24.0
                * (values[n - 4] - 5.0 * values[n - 3] + 19.0 * values[n - 2]
                    + 9.0 * values[n - 1])
        } else {
            h / 24.0
                * (-values[k - 1] + 13.0 * values[k] + 13.0 * values[k + 1]
                    - values[k + 2])
        };
        out.push(out[k] + inc);
    }
    out
}
