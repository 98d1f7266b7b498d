//! Planar curves in affine arc-length: the parameter u with [G', G''] = 1,
//! the affine curvature rho defined by G''' = -rho G', evolutes, support
//! functions, vertex counts and the reconstruction ODE.

use crate::numkit::{
    self, cumulative, fd_derive, integrate_system, interp, locate_zeros, uniform_grid, vol2,
    CurveSource, JetCurve, ToleranceConfig, VecD, ZeroHit,
};
use crate::{Error, Result};

/// Endpoint jets must match this closely for a curve to count as closed.
pub const CLOSURE_TOL: f64 = 1e-8;

/// A planar curve resampled to affine arc-length, with its affine curvature.
#[derive(Debug, Clone)]
pub struct PlanarAffineCurve {
    jets: JetCurve,
    rho: Vec<f64>,
    rho_prime: Vec<f64>,
    closed: bool,
    reflected: bool,
    /// sup |[G', G''] - 1| over the samples.
    pub det_error: f64,
    /// sup norm of G''' + rho G' over the samples.
    pub residual: f64,
}

impl PlanarAffineCurve {
    pub fn grid(&self) -> &[f64] {
        self.jets.grid()
    }

    pub fn jets(&self) -> &JetCurve {
        &self.jets
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn rho_prime(&self) -> &[f64] {
        &self.rho_prime
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn was_reflected(&self) -> bool {
        self.reflected
    }

    pub fn len(&self) -> usize {
        self.jets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        *self.jets.grid().last().unwrap()
    }

    pub fn position(&self, i: usize) -> &VecD {
        self.jets.position(i)
    }
}

/// Reparametrizes a planar curve by affine arc-length, du = [G_t, G_tt]^{1/3} dt.
///
/// Negatively oriented inputs are reflected across the x-axis first (the
/// reflection is recorded on the output). `convex_check` additionally demands
/// a closed output curve, certifying a convex oval.
pub fn reparam_affine_planar(
    raw: &CurveSource,
    t_range: (f64, f64),
    samples: usize,
    convex_check: bool,
    cfg: &ToleranceConfig,
) -> Result<PlanarAffineCurve> {
    if raw.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: raw.dim() });
    }
    if samples < 16 {
        return Err(Error::GridTooCoarse { needed: 16, got: samples });
    }
    let probe_n = (2 * samples).max(2049);
    let probe = uniform_grid(t_range.0, t_range.1, probe_n);
    let h_t = probe[1] - probe[0];

    // orientation pass
    let mut w_tab = Vec::with_capacity(probe_n);
    for &t in &probe {
        let j = raw.jets_at(t, 2);
        w_tab.push(vol2(&j[1], &j[2]));
    }
    let reflected = w_tab.iter().sum::<f64>() < 0.0;
    let orient = if reflected { -1.0 } else { 1.0 };
    for (i, w) in w_tab.iter_mut().enumerate() {
        *w *= orient;
        if *w < cfg.tol_zero {
            return Err(Error::InflectionPoint { t: probe[i] });
        }
    }

    // cumulative affine arc-length over the probe grid
    let speed: Vec<f64> = w_tab.iter().map(|w| w.powf(1.0 / 3.0)).collect();
    let u_tab = cumulative(&speed, h_t);
    let total = *u_tab.last().unwrap();

    let grid = uniform_grid(0.0, total, samples);
    let jets_at = |t: f64| -> Vec<VecD> {
        let mut j = raw.jets_at(t, 4);
        if reflected {
            for v in &mut j {
                v[1] = -v[1];
            }
        }
        j
    };

    let mut pos = Vec::with_capacity(samples);
    let mut d1 = Vec::with_capacity(samples);
    let mut d2 = Vec::with_capacity(samples);
    let mut d3 = Vec::with_capacity(samples);
    let mut rho = Vec::with_capacity(samples);
    let mut det_error = 0.0_f64;
    let mut residual = 0.0_f64;

    for &u in &grid {
        let t = invert_monotone(&probe, &u_tab, &speed, u);
        let j = jets_at(t);
        let (g1, g2, g3) = transport_jets3(&j);
        let r = vol2(&g2, &g3);
        det_error = det_error.max((vol2(&g1, &g2) - 1.0).abs());
        residual = residual.max(g3.axpy(r, &g1).norm());
        pos.push(j[0].clone());
        d1.push(g1);
        d2.push(g2);
        d3.push(g3);
        rho.push(r);
    }

    let h_u = grid[1] - grid[0];
    let closed_probe = JetCurve::new(
        grid.clone(),
        vec![pos.clone(), d1.clone(), d2.clone(), d3.clone()],
    )?;
    let closed = closed_probe.is_closed(CLOSURE_TOL);
    if convex_check && !closed {
        let last = pos.len() - 1;
        return Err(Error::NotClosed { residual: pos[0].dist(&pos[last]) });
    }

    let rho_prime = fd_derive(&rho, h_u, 1, 7, closed);
    // fourth jet from the structure equation G'''' = -rho' G' - rho G''
    let d4: Vec<VecD> = (0..samples)
        .map(|i| (&d1[i] * (-rho_prime[i])).axpy(-rho[i], &d2[i]))
        .collect();

    let jets = JetCurve::new(grid, vec![pos, d1, d2, d3, d4])?;
    Ok(PlanarAffineCurve {
        jets,
        rho,
        rho_prime,
        closed,
        reflected,
        det_error,
        residual,
    })
}

/// Chain rule for the first three derivatives under du = w^{1/3} dt.
/// Input jets must reach order 4 (w'' needs G_tttt).
fn transport_jets3(j: &[VecD]) -> (VecD, VecD, VecD) {
    let w = vol2(&j[1], &j[2]);
    let wp = vol2(&j[1], &j[3]);
    let wpp = vol2(&j[2], &j[3]) + vol2(&j[1], &j[4]);
    let s = w.powf(1.0 / 3.0);
    let sp = wp / (3.0 * w.powf(2.0 / 3.0));
    let spp = wpp / (3.0 * w.powf(2.0 / 3.0)) - 2.0 * wp * wp / (9.0 * w.powf(5.0 / 3.0));
    let tu = 1.0 / s;
    let tuu = -sp / (s * s * s);
    let tuuu = (-spp * s + 3.0 * sp * sp) / s.powi(5);
    let g1 = &j[1] * tu;
    let g2 = (&j[2] * (tu * tu)).axpy(tuu, &j[1]);
    let g3 = (&j[3] * (tu * tu * tu))
        .axpy(3.0 * tu * tuu, &j[2])
        .axpy(tuuu, &j[1]);
    (g1, g2, g3)
}

/// Inverts the monotone cumulative table u(t) at a target value.
pub(crate) fn invert_monotone(probe: &[f64], u_tab: &[f64], speed: &[f64], target: f64) -> f64 {
    let n = probe.len();
    if target <= u_tab[0] {
        return probe[0];
    }
    if target >= u_tab[n - 1] {
        return probe[n - 1];
    }
    let idx = u_tab.partition_point(|v| *v < target).max(1) - 1;
    let mut t = probe[idx]
        + (probe[idx + 1] - probe[idx]) * (target - u_tab[idx]) / (u_tab[idx + 1] - u_tab[idx]);
    // Newton refinement on the interpolated cumulative table
    for _ in 0..6 {
        let f = interp(probe, u_tab, t, 6) - target;
        let df = interp(probe, speed, t, 6);
        let step = f / df;
        t -= step;
        t = t.clamp(probe[0], probe[n - 1]);
        if step.abs() < 1e-15 * (1.0 + t.abs()) {
            break;
        }
    }
    t
}

/// Affine evolute E = G + G''/rho. Samples where |rho| < tol_zero are
/// omitted and reported separately.
#[derive(Debug, Clone)]
pub struct Evolute {
    pub points: Vec<(f64, VecD)>,
    pub omitted: Vec<f64>,
}

pub fn affine_evolute(c: &PlanarAffineCurve, cfg: &ToleranceConfig) -> Evolute {
    let mut points = Vec::new();
    let mut omitted = Vec::new();
    for i in 0..c.len() {
        let u = c.grid()[i];
        let rho = c.rho[i];
        if rho.abs() < cfg.tol_zero {
            omitted.push(u);
        } else {
            points.push((u, c.jets.position(i).axpy(1.0 / rho, c.jets.jet_at(2, i))));
        }
    }
    Evolute { points, omitted }
}

/// Support function z(u) = [G - O, G'] together with the residual of the
/// identity z'' = 1 - rho z.
#[derive(Debug, Clone)]
pub struct SupportFunction {
    pub z: Vec<f64>,
    pub z_prime: Vec<f64>,
    /// sup |z'' - (1 - rho z)| via z'' = 1 + [G - O, G'''].
    pub identity_residual: f64,
}

pub fn support_function(c: &PlanarAffineCurve, origin: &VecD) -> SupportFunction {
    let mut z = Vec::with_capacity(c.len());
    let mut z_prime = Vec::with_capacity(c.len());
    let mut worst = 0.0_f64;
    for i in 0..c.len() {
        let rel = c.jets.position(i) - origin;
        let zi = vol2(&rel, c.jets.jet_at(1, i));
        z.push(zi);
        z_prime.push(vol2(&rel, c.jets.jet_at(2, i)));
        let zpp = 1.0 + vol2(&rel, c.jets.jet_at(3, i));
        worst = worst.max((zpp - (1.0 - c.rho[i] * zi)).abs());
    }
    SupportFunction { z, z_prime, identity_residual: worst }
}

/// Vertex census of a planar curve: zeros of rho'.
#[derive(Debug, Clone)]
pub struct VertexCount {
    /// rho' vanishes identically (conics); no finite count applies.
    pub degenerate: bool,
    /// Number of sign-change zeros over one period (or the open arc).
    pub count: usize,
    pub zeros: Vec<ZeroHit>,
}

/// Counts the vertices (zeros of rho') of the curve. With `closed` the grid
/// is treated as one full period and the census is cyclic; the curve must
/// then close up to [`CLOSURE_TOL`].
pub fn count_vertices(
    c: &PlanarAffineCurve,
    closed: bool,
    cfg: &ToleranceConfig,
) -> Result<VertexCount> {
    if closed && !c.closed {
        let last = c.len() - 1;
        return Err(Error::NotClosed {
            residual: c.jets.position(0).dist(c.jets.position(last)),
        });
    }
    if numkit::identically_zero(&c.rho_prime, cfg) {
        return Ok(VertexCount { degenerate: true, count: 0, zeros: Vec::new() });
    }
    let zeros = if closed {
        cyclic_zeros(c.grid(), &c.rho_prime, cfg)
    } else {
        locate_zeros(c.grid(), &c.rho_prime, cfg)
    };
    let count = zeros.iter().filter(|z| !z.tangential).count();
    Ok(VertexCount { degenerate: false, count, zeros })
}

/// Zero census on a periodic table (seam sample duplicated): the table is
/// extended past the seam so crossings there are caught exactly once.
pub fn cyclic_zeros(grid: &[f64], values: &[f64], cfg: &ToleranceConfig) -> Vec<ZeroHit> {
    let k = grid.len() - 1; // number of intervals in one period
    let period = grid[k] - grid[0];
    let margin = 4.min(k);
    let mut ext_grid: Vec<f64> = grid[..k].to_vec();
    let mut ext_vals: Vec<f64> = values[..k].to_vec();
    for j in 0..=margin {
        ext_grid.push(grid[j] + period);
        ext_vals.push(values[j]);
    }
    let hits = locate_zeros(&ext_grid, &ext_vals, cfg);
    let mut mapped: Vec<ZeroHit> = hits
        .into_iter()
        .map(|mut h| {
            if h.u >= grid[0] + period {
                h.u -= period;
            }
            h
        })
        .collect();
    mapped.sort_by(|a, b| a.u.partial_cmp(&b.u).unwrap());
    // cyclic dedup
    let tol = period * 1e-9 + 1e-12;
    let mut out: Vec<ZeroHit> = Vec::new();
    for h in mapped {
        if out.iter().any(|o| {
            let d = (o.u - h.u).abs();
            d < tol || (period - d).abs() < tol
        }) {
            continue;
        }
        out.push(h);
    }
    out
}

/// Initial data for the reconstruction system.
#[derive(Debug, Clone)]
pub struct ReconstructionSeed {
    pub gamma0: VecD,
    pub dgamma0: VecD,
    pub z0: f64,
    pub dz0: f64,
}

/// Integrates gamma'' = -rho gamma, z'' = -rho z + 1 on the given grid.
/// By the planar classification, the solution is (G', support of G) for some
/// curve G in affine arc-length and some origin.
pub fn reconstruct_from_curvature(
    grid: &[f64],
    rho: &[f64],
    seed: &ReconstructionSeed,
) -> Result<(Vec<VecD>, Vec<f64>)> {
    let rho_at = |u: f64| interp(grid, rho, u, 4);
    let y0 = vec![
        seed.gamma0[0],
        seed.gamma0[1],
        seed.dgamma0[0],
        seed.dgamma0[1],
        seed.z0,
        seed.dz0,
    ];
    let states = integrate_system(
        |u, y| {
            let r = rho_at(u);
            vec![y[2], y[3], -r * y[0], -r * y[1], y[5], -r * y[4] + 1.0]
        },
        &y0,
        grid,
    )?;
    let gamma = states
        .iter()
        .map(|y| VecD::new(vec![y[0], y[1]]))
        .collect();
    let z = states.iter().map(|y| y[4]).collect();
    Ok((gamma, z))
}

/// Signed area integral Z(u) = int_{u0}^{u} [G - O, G'] dv.
pub fn area_function(c: &PlanarAffineCurve, origin: &VecD, u0: f64) -> Vec<f64> {
    let support = support_function(c, origin);
    let h = c.grid()[1] - c.grid()[0];
    let cum = cumulative(&support.z, h);
    let at_u0 = interp(c.grid(), &cum, u0, 6);
    cum.into_iter().map(|v| v - at_u0).collect()
}
