//! The envelope of tangent spaces ET_N = {p + t xi(p)}: ruled samples with
//! markers where it meets the bifurcation locus, at t = 1/sigma for nonzero
//! eigenvalues sigma of S1.

use crate::numkit::{ToleranceConfig, VecD};

pub struct EnvelopeSamples {
    /// Sampled ruling points p + t xi(p).
    pub points: Vec<VecD>,
    /// Intersections with the bifurcation locus: t = 1/sigma per eigenvalue.
    pub marks: Vec<VecD>,
}

/// Sweeps the rulings over `t_range`. `sigma` carries the S1 eigenvalues per
/// sample (any number; for curves just sigma(u)).
pub fn envelope_tangent_spaces(
    positions: &[VecD],
    xi: &[VecD],
    sigma: &[Vec<f64>],
    t_range: (f64, f64),
    t_samples: usize,
    cfg: &ToleranceConfig,
) -> EnvelopeSamples {
    let mut points = Vec::with_capacity(positions.len() * t_samples);
    let mut marks = Vec::new();
    for (k, p) in positions.iter().enumerate() {
        for j in 0..t_samples {
            let t = t_range.0 + (t_range.1 - t_range.0) * j as f64 / (t_samples - 1) as f64;
            points.push(p.axpy(t, &xi[k]));
        }
        for s in &sigma[k] {
            if s.abs() > cfg.tol_zero {
                marks.push(p.axpy(1.0 / s, &xi[k]));
            }
        }
    }
    EnvelopeSamples { points, marks }
}
