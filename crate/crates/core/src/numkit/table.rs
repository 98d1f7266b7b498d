//! Uniform-grid table operations: finite-difference derivatives, local
//! polynomial interpolation and interpolatory cumulative quadrature.
//!
//! Closed curves are handled by periodic index wrapping; tables of closed
//! curves are expected to carry the duplicated seam sample (first == last).

use super::vecd::VecD;

/// Finite-difference weights for the m-th derivative at evaluation offset
/// `z`, given node offsets `x` (Fornberg's recurrence). Offsets are in units
/// of the grid spacing.
pub fn fd_weights(z: f64, x: &[f64], m: usize) -> Vec<f64> {
    let n = x.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Derivative of order `m` of a scalar table on a uniform grid with spacing
/// `h`. Interior samples use a centered window of `window` points; endpoint
/// samples of non-periodic tables fall back to shifted one-sided windows.
///
/// Periodic tables must carry the duplicated seam sample.
pub fn fd_derive(values: &[f64], h: f64, m: usize, window: usize, periodic: bool) -> Vec<f64> {
    let n = values.len();
    assert!(window % 2 == 1 && window > m, "window must be odd and exceed order");
    let half = window / 2;
    let mut out = vec![0.0; n];
    let scale = h.powi(m as i32).recip();
    if periodic && n > window {
        let period = n - 1; // seam sample duplicated
        let offsets: Vec<f64> = (0..window).map(|j| j as f64 - half as f64).collect();
        let w = fd_weights(0.0, &offsets, m);
        for i in 0..period {
            let mut acc = 0.0;
            for (j, wj) in w.iter().enumerate() {
                let idx = (i + period + j - half) % period;
                acc += wj * values[idx];
            }
            out[i] = acc * scale;
        }
        out[period] = out[0];
        return out;
    }
    for i in 0..n {
        let start = i.saturating_sub(half).min(n - window.min(n));
        let z = (i - start) as f64;
        let offsets: Vec<f64> = (0..window.min(n)).map(|j| j as f64).collect();
        let w = fd_weights(z, &offsets, m);
        let mut acc = 0.0;
        for (j, wj) in w.iter().enumerate() {
            acc += wj * values[start + j];
        }
        out[i] = acc * scale;
    }
    out
}

/// Componentwise [`fd_derive`] for tables of vectors.
pub fn fd_derive_vec(values: &[VecD], h: f64, m: usize, window: usize, periodic: bool) -> Vec<VecD> {
    let dim = values[0].dim();
    let mut comps: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for c in 0..dim {
        let col: Vec<f64> = values.iter().map(|v| v[c]).collect();
        comps.push(fd_derive(&col, h, m, window, periodic));
    }
    (0..values.len())
        .map(|i| VecD::new(comps.iter().map(|col| col[i]).collect()))
        .collect()
}

/// Local Lagrange interpolation of a scalar table at parameter `t`.
/// Uses a window of `window` nodes around the bracketing interval.
pub fn interp(grid: &[f64], values: &[f64], t: f64, window: usize) -> f64 {
    let n = grid.len();
    let i = bracket(grid, t);
    let start = i.saturating_sub(window / 2).min(n.saturating_sub(window));
    let end = (start + window).min(n);
    lagrange(&grid[start..end], &values[start..end], t)
}

/// Local Lagrange interpolation of a vector table.
pub fn interp_vec(grid: &[f64], values: &[VecD], t: f64, window: usize) -> VecD {
    let dim = values[0].dim();
    let n = grid.len();
    let i = bracket(grid, t);
    let start = i.saturating_sub(window / 2).min(n.saturating_sub(window));
    let end = (start + window).min(n);
    let mut out = VecD::zeros(dim);
    for c in 0..dim {
        let col: Vec<f64> = values[start..end].iter().map(|v| v[c]).collect();
        out[c] = lagrange(&grid[start..end], &col, t);
    }
    out
}

fn bracket(grid: &[f64], t: f64) -> usize {
    match grid.binary_search_by(|g| g.partial_cmp(&t).unwrap()) {
        Ok(i) => i,
        Err(i) => i.saturating_sub(1).min(grid.len() - 2),
    }
}

fn lagrange(xs: &[f64], ys: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for (j, yj) in ys.iter().enumerate() {
        let mut lj = 1.0;
        for (k, xk) in xs.iter().enumerate() {
            if k != j {
                lj *= (t - xk) / (xs[j] - xk);
            }
        }
        acc += yj * lj;
    }
    acc
}

/// Cumulative integral of a scalar table on a uniform grid with spacing `h`,
/// anchored at zero on the first sample. Each interval integrates the local
/// cubic interpolant, so the result is fourth-order accurate.
pub fn cumulative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + 0.5 * h * (values[i - 1] + values[i]);
        }
        return out;
    }
    let c = h / 24.0;
    for i in 0..n - 1 {
        let seg = if i == 0 {
            c * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
        } else if i == n - 2 {
            c * (9.0 * values[n - 1] + 19.0 * values[n - 2] - 5.0 * values[n - 3] + values[n - 4])
        } else {
            c * (-values[i - 1] + 13.0 * values[i] + 13.0 * values[i + 1] - values[i + 2])
        };
        out[i + 1] = out[i] + seg;
    }
    out
}

/// Largest absolute entry of a table.
pub fn sup_norm(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Largest absolute deviation from the mean.
pub fn spread(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().fold(0.0_f64, |m, v| m.max((v - mean).abs()))
}

/// Uniform grid with `n` samples covering [a, b] inclusively.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + h * i as f64).collect()
}
