use super::config::ToleranceConfig;
use super::table;

/// A localized zero of a sampled scalar function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroHit {
    pub u: f64,
    /// Set when the table dips below the zero threshold without changing
    /// sign: a possible even-multiplicity (tangential) zero.
    pub tangential: bool,
}

/// Locates zeros of a scalar table: one refined root per sign change, plus
/// flagged candidates where |value| < tol_zero but no sign change occurs.
///
/// Sign-change roots are refined by bisection on a local cubic interpolant
/// to `cfg.refine_depth` halvings.
pub fn locate_zeros(grid: &[f64], values: &[f64], cfg: &ToleranceConfig) -> Vec<ZeroHit> {
    let n = grid.len();
    if n < 3 {
        return Vec::new();
    }
    let mut hits = Vec::new();
    // samples consumed by a sign-change root; excluded from the tangential scan
    let mut used = vec![false; n];

    for i in 0..n - 1 {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 {
            let prev = if i > 0 { values[i - 1] } else { 0.0 };
            if prev * b < 0.0 {
                hits.push(ZeroHit { u: grid[i], tangential: false });
                used[i] = true;
            }
            continue;
        }
        if a * b < 0.0 {
            let u = bisect(grid, values, grid[i], grid[i + 1], cfg.refine_depth);
            hits.push(ZeroHit { u, tangential: false });
            used[i] = true;
            used[i + 1] = true;
        }
    }

    // tangential candidates: runs below the zero threshold without a crossing
    let mut i = 0;
    while i < n {
        if values[i].abs() < cfg.tol_zero && !used[i] {
            let start = i;
            while i < n && values[i].abs() < cfg.tol_zero && !used[i] {
                i += 1;
            }
            let run = &values[start..i];
            let (arg, _) = run
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |(bi, bv), (j, v)| {
                    if v.abs() < bv { (j, v.abs()) } else { (bi, bv) }
                });
            hits.push(ZeroHit { u: grid[start + arg], tangential: true });
        } else {
            i += 1;
        }
    }
    hits.sort_by(|a, b| a.u.partial_cmp(&b.u).unwrap());
    hits
}

fn bisect(grid: &[f64], values: &[f64], mut lo: f64, mut hi: f64, depth: u32) -> f64 {
    let eval = |t: f64| table::interp(grid, values, t, 4);
    let mut flo = eval(lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..depth {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval exhausted at f64 resolution
        }
        let fm = eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// True when the table is identically zero at the threshold of the config.
pub fn identically_zero(values: &[f64], cfg: &ToleranceConfig) -> bool {
    table::sup_norm(values) < cfg.tol_zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::table::uniform_grid;

    #[test]
    fn sine_root_near_pi() {
        let grid = uniform_grid(0.1, 6.2, 2048);
        let vals: Vec<f64> = grid.iter().map(|u| u.sin()).collect();
        let cfg = ToleranceConfig::default();
        let hits = locate_zeros(&grid, &vals, &cfg);
        assert_eq!(hits.len(), 1);
        assert!(!hits[0].tangential);
        assert!((hits[0].u - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn constant_table_has_no_zeros() {
        let grid = uniform_grid(0.0, 1.0, 64);
        let vals = vec![1.0; 64];
        let hits = locate_zeros(&grid, &vals, &ToleranceConfig::default());
        assert!(hits.is_empty());
    }

    #[test]
    fn even_zero_flagged_tangential() {
        let grid = uniform_grid(-1.0, 1.0, 2001);
        let vals: Vec<f64> = grid.iter().map(|u| u * u).collect();
        let hits = locate_zeros(&grid, &vals, &ToleranceConfig::default());
        assert_eq!(hits.len(), 1);
        assert!(hits[0].tangential);
        assert!(hits[0].u.abs() < 1e-3);
    }

    #[test]
    fn exact_node_zero_counted_once() {
        let grid = uniform_grid(-1.0, 1.0, 21); // node exactly at 0
        let vals: Vec<f64> = grid.iter().map(|u| *u).collect();
        let hits = locate_zeros(&grid, &vals, &ToleranceConfig::default());
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].u, 0.0);
        assert!(!hits[0].tangential);
    }
}
