use crate::{Error, Result};

const DIVERGENCE_BOUND: f64 = 1e12;

/// Classical fourth-order one-step integration of y' = rhs(u, y) on the
/// given grid. Global error O(h^4) on uniform grids.
pub fn integrate_scalar_ode(
    rhs: impl Fn(f64, f64) -> f64,
    y0: f64,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(grid.len());
    let mut y = y0;
    out.push(y);
    for w in grid.windows(2) {
        let (u, h) = (w[0], w[1] - w[0]);
        let k1 = rhs(u, y);
        let k2 = rhs(u + 0.5 * h, y + 0.5 * h * k1);
        let k3 = rhs(u + 0.5 * h, y + 0.5 * h * k2);
        let k4 = rhs(u + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !y.is_finite() || y.abs() > DIVERGENCE_BOUND {
            return Err(Error::DivergentOde { u: w[1] });
        }
        out.push(y);
    }
    Ok(out)
}

/// Same scheme for a vector-valued state, used by the curve reconstruction
/// systems.
pub fn integrate_system(
    rhs: impl Fn(f64, &[f64]) -> Vec<f64>,
    y0: &[f64],
    grid: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let dim = y0.len();
    let mut out = Vec::with_capacity(grid.len());
    let mut y = y0.to_vec();
    out.push(y.clone());
    let step = |y: &[f64], k: &[f64], c: f64| -> Vec<f64> {
        y.iter().zip(k).map(|(a, b)| a + c * b).collect()
    };
    for w in grid.windows(2) {
        let (u, h) = (w[0], w[1] - w[0]);
        let k1 = rhs(u, &y);
        let k2 = rhs(u + 0.5 * h, &step(&y, &k1, 0.5 * h));
        let k3 = rhs(u + 0.5 * h, &step(&y, &k2, 0.5 * h));
        let k4 = rhs(u + h, &step(&y, &k3, h));
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if !y[i].is_finite() || y[i].abs() > DIVERGENCE_BOUND {
                return Err(Error::DivergentOde { u: w[1] });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::table::uniform_grid;

    #[test]
    fn zero_rhs_is_constant() {
        let grid = uniform_grid(0.0, 5.0, 64);
        let y = integrate_scalar_ode(|_, _| 0.0, 1.0, &grid).unwrap();
        assert!(y.iter().all(|v| *v == 1.0));
    }

    #[test]
    fn exponential_growth_matches_closed_form() {
        let grid = uniform_grid(0.0, 1.0, 1001); // h = 1e-3
        let y = integrate_scalar_ode(|_, y| y, 1.0, &grid).unwrap();
        assert!((y.last().unwrap() - 1.0_f64.exp()).abs() < 1e-8);
    }

    #[test]
    fn antiderivative_of_minus_sine() {
        let grid = uniform_grid(0.0, 3.0, 3001);
        let y = integrate_scalar_ode(|u, _| -u.sin(), 0.0, &grid).unwrap();
        for (i, u) in grid.iter().enumerate() {
            assert!((y[i] - (u.cos() - 1.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn halving_step_improves_exponential_error() {
        let run = |n: usize| -> f64 {
            let grid = uniform_grid(0.0, 1.0, n);
            let y = integrate_scalar_ode(|_, y| y, 1.0, &grid).unwrap();
            (y.last().unwrap() - 1.0_f64.exp()).abs()
        };
        let coarse = run(51);
        let fine = run(101);
        assert!(coarse / fine >= 12.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn divergence_detected() {
        let grid = uniform_grid(0.0, 40.0, 200);
        assert!(matches!(
            integrate_scalar_ode(|_, y| y * y, 1.0, &grid),
            Err(Error::DivergentOde { .. })
        ));
    }
}
