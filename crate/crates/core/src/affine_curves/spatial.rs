//! Spatial curves in affine arc-length: [F', F'', F'''] = 1, the invariants
//! rho, tau of F'''' = -rho F'' + tau F', the cylindricity test and the
//! projective length density.

use super::planar::{invert_monotone, PlanarAffineCurve};
use crate::numkit::{
    cumulative, fd_derive, interp, locate_zeros, sup_norm, uniform_grid, vol2, vol3, CurveSource,
    JetCurve, ToleranceConfig, VecD, ZeroHit,
};
use crate::{Error, Result};

/// A spatial curve resampled to affine arc-length with its invariants.
#[derive(Debug, Clone)]
pub struct SpatialAffineCurve {
    jets: JetCurve,
    rho: Vec<f64>,
    tau: Vec<f64>,
    rho_prime: Vec<f64>,
    reflected: bool,
    /// sup |[F', F'', F'''] - 1|.
    pub det_error: f64,
    /// sup norm of F'''' + rho F'' - tau F'.
    pub residual: f64,
}

impl SpatialAffineCurve {
    pub fn grid(&self) -> &[f64] {
        self.jets.grid()
    }

    pub fn jets(&self) -> &JetCurve {
        &self.jets
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn rho_prime(&self) -> &[f64] {
        &self.rho_prime
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
}

/// Reparametrizes a spatial curve by affine arc-length,
/// du = [F_t, F_tt, F_ttt]^{1/6} dt, and extracts rho and tau.
///
/// The two highest speed derivatives are taken from a finite-difference pass
/// over the probe grid; everything else is exact chain rule.
pub fn spatial_invariants(
    raw: &CurveSource,
    t_range: (f64, f64),
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<SpatialAffineCurve> {
    if raw.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: raw.dim() });
    }
    if samples < 16 {
        return Err(Error::GridTooCoarse { needed: 16, got: samples });
    }
    let probe_n = (2 * samples).max(2049);
    let probe = uniform_grid(t_range.0, t_range.1, probe_n);
    let h_t = probe[1] - probe[0];

    let mut w_tab = Vec::with_capacity(probe_n);
    let mut wp_tab = Vec::with_capacity(probe_n);
    for &t in &probe {
        let j = raw.jets_at(t, 4);
        w_tab.push(vol3(&j[1], &j[2], &j[3]));
        wp_tab.push(vol3(&j[1], &j[2], &j[4]));
    }
    let reflected = w_tab.iter().sum::<f64>() < 0.0;
    let orient = if reflected { -1.0 } else { 1.0 };
    for (i, w) in w_tab.iter_mut().enumerate() {
        *w *= orient;
        wp_tab[i] *= orient;
        if *w < cfg.tol_zero {
            return Err(Error::DegenerateTorsion { t: probe[i] });
        }
    }

    let speed: Vec<f64> = w_tab.iter().map(|w| w.powf(1.0 / 6.0)).collect();
    let sp_tab: Vec<f64> = w_tab
        .iter()
        .zip(&wp_tab)
        .map(|(w, wp)| wp / (6.0 * w.powf(5.0 / 6.0)))
        .collect();
    let spp_tab = fd_derive(&sp_tab, h_t, 1, 7, false);
    let sppp_tab = fd_derive(&sp_tab, h_t, 2, 7, false);
    let u_tab = cumulative(&speed, h_t);
    let total = *u_tab.last().unwrap();

    let grid = uniform_grid(0.0, total, samples);
    let mut jets: Vec<Vec<VecD>> = vec![Vec::with_capacity(samples); 5];
    let mut rho = Vec::with_capacity(samples);
    let mut tau = Vec::with_capacity(samples);
    let mut det_error = 0.0_f64;
    let mut residual = 0.0_f64;

    for &u in &grid {
        let t = invert_monotone(&probe, &u_tab, &speed, u);
        let mut j = raw.jets_at(t, 4);
        if reflected {
            for v in &mut j {
                v[2] = -v[2];
            }
        }
        let w = vol3(&j[1], &j[2], &j[3]);
        let wp = vol3(&j[1], &j[2], &j[4]);
        let s = w.powf(1.0 / 6.0);
        let sp = wp / (6.0 * w.powf(5.0 / 6.0));
        let spp = interp(&probe, &spp_tab, t, 6);
        let sppp = interp(&probe, &sppp_tab, t, 6);

        let tu = 1.0 / s;
        let tuu = -sp / (s * s * s);
        let tuuu = (-spp * s + 3.0 * sp * sp) / s.powi(5);
        let tuuuu = -sppp / s.powi(5) + 10.0 * sp * spp / s.powi(6) - 15.0 * sp.powi(3) / s.powi(7);

        let f1 = &j[1] * tu;
        let f2 = (&j[2] * (tu * tu)).axpy(tuu, &j[1]);
        let f3 = (&j[3] * (tu * tu * tu))
            .axpy(3.0 * tu * tuu, &j[2])
            .axpy(tuuu, &j[1]);
        let f4 = (&j[4] * (tu * tu * tu * tu))
            .axpy(6.0 * tu * tu * tuu, &j[3])
            .axpy(3.0 * tuu * tuu + 4.0 * tu * tuuu, &j[2])
            .axpy(tuuuu, &j[1]);

        det_error = det_error.max((vol3(&f1, &f2, &f3) - 1.0).abs());
        let r = -vol3(&f1, &f4, &f3);
        let ta = vol3(&f4, &f2, &f3);
        residual = residual.max(f4.axpy(r, &f2).axpy(-ta, &f1).norm());
        rho.push(r);
        tau.push(ta);
        jets[0].push(j[0].clone());
        jets[1].push(f1);
        jets[2].push(f2);
        jets[3].push(f3);
        jets[4].push(f4);
    }

    let h_u = grid[1] - grid[0];
    let jets = JetCurve::new(grid, jets)?;
    let closed = jets.is_closed(super::planar::CLOSURE_TOL);
    let rho_prime = fd_derive(&rho, h_u, 1, 7, closed);
    Ok(SpatialAffineCurve {
        jets,
        rho,
        tau,
        rho_prime,
        reflected,
        det_error,
        residual,
    })
}

/// Wraps a jet table that is already in affine arc-length (det error checked)
/// and reads the invariants off the stored jets.
pub fn spatial_invariants_from_jets(jets: JetCurve, cfg: &ToleranceConfig) -> Result<SpatialAffineCurve> {
    if jets.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: jets.dim() });
    }
    if jets.order() < 4 {
        return Err(Error::InsufficientJets { needed: 4, got: jets.order() });
    }
    let n = jets.len();
    let mut rho = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    let mut det_error = 0.0_f64;
    let mut residual = 0.0_f64;
    for i in 0..n {
        let (f1, f2, f3, f4) = (
            jets.jet_at(1, i),
            jets.jet_at(2, i),
            jets.jet_at(3, i),
            jets.jet_at(4, i),
        );
        let det = vol3(f1, f2, f3);
        det_error = det_error.max((det - 1.0).abs());
        if det.abs() < cfg.tol_zero {
            return Err(Error::DegenerateTorsion { t: jets.grid()[i] });
        }
        let r = -vol3(f1, f4, f3) / det;
        let ta = vol3(f4, f2, f3) / det;
        residual = residual.max(f4.axpy(r, f2).axpy(-ta, f1).norm());
        rho.push(r);
        tau.push(ta);
    }
    let closed = jets.is_closed(super::planar::CLOSURE_TOL);
    let rho_prime = fd_derive(&rho, jets.spacing(), 1, 7, closed);
    Ok(SpatialAffineCurve {
        jets,
        rho,
        tau,
        rho_prime,
        reflected: false,
        det_error,
        residual,
    })
}

/// Cylindricity of the intrinsic affine binormal developable: holds exactly
/// when rho' + tau = 0.
pub fn cylindricity_test(c: &SpatialAffineCurve, cfg: &ToleranceConfig) -> (bool, Vec<f64>) {
    let residual: Vec<f64> = c
        .rho_prime
        .iter()
        .zip(&c.tau)
        .map(|(rp, t)| rp + t)
        .collect();
    (sup_norm(&residual) < cfg.tol_residual, residual)
}

/// Projective length density (rho' + 2 tau)^{1/3} with its zero census.
pub fn projective_density(
    c: &SpatialAffineCurve,
    cfg: &ToleranceConfig,
) -> (Vec<f64>, Vec<ZeroHit>) {
    let combo: Vec<f64> = c
        .rho_prime
        .iter()
        .zip(&c.tau)
        .map(|(rp, t)| rp + 2.0 * t)
        .collect();
    let density = combo.iter().map(|v| v.signum() * v.abs().cbrt()).collect();
    let zeros = if crate::numkit::identically_zero(&combo, cfg) {
        Vec::new()
    } else if c.jets.is_closed(super::planar::CLOSURE_TOL) {
        super::planar::cyclic_zeros(c.grid(), &combo, cfg)
    } else {
        locate_zeros(c.grid(), &combo, cfg)
    };
    (density, zeros)
}

/// Lift of a planar affine arc-length curve to the spatial curve (G(u), Z(u)),
/// Z the signed area integral with respect to `origin`. The lift is again in
/// affine arc-length, with rho unchanged and tau = -rho'.
pub fn lift_with_area(c: &PlanarAffineCurve, origin: &VecD, u0: f64) -> Result<JetCurve> {
    let area = super::planar::area_function(c, origin, u0);
    let n = c.len();
    let mut jets: Vec<Vec<VecD>> = vec![Vec::with_capacity(n); 5];
    for i in 0..n {
        let g = c.jets();
        let rel = g.position(i) - origin;
        let z = vol2(&rel, g.jet_at(1, i));
        let zp = vol2(&rel, g.jet_at(2, i));
        let zpp = 1.0 + vol2(&rel, g.jet_at(3, i));
        let zppp = vol2(g.jet_at(1, i), g.jet_at(3, i)) + vol2(&rel, g.jet_at(4, i));
        let lift = |v: &VecD, last: f64| VecD::new(vec![v[0], v[1], last]);
        jets[0].push(lift(g.position(i), area[i]));
        jets[1].push(lift(g.jet_at(1, i), z));
        jets[2].push(lift(g.jet_at(2, i), zp));
        jets[3].push(lift(g.jet_at(3, i), zpp));
        jets[4].push(lift(g.jet_at(4, i), zppp));
    }
    JetCurve::new(c.grid().to_vec(), jets)
}

/// Graph-style spatial embedding (A(u), u) with A' = G: already in affine
/// arc-length with tau = 0 and rho the planar affine curvature of G.
pub fn planar_embed(c: &PlanarAffineCurve) -> Result<JetCurve> {
    let g = c.jets();
    let h = c.grid()[1] - c.grid()[0];
    let ax = cumulative(&g.jet(0).iter().map(|p| p[0]).collect::<Vec<_>>(), h);
    let ay = cumulative(&g.jet(0).iter().map(|p| p[1]).collect::<Vec<_>>(), h);
    let n = c.len();
    let mut jets: Vec<Vec<VecD>> = vec![Vec::with_capacity(n); 5];
    for i in 0..n {
        let lift = |v: &VecD, last: f64| VecD::new(vec![v[0], v[1], last]);
        jets[0].push(VecD::new(vec![ax[i], ay[i], c.grid()[i]]));
        jets[1].push(lift(g.position(i), 1.0));
        jets[2].push(lift(g.jet_at(1, i), 0.0));
        jets[3].push(lift(g.jet_at(2, i), 0.0));
        jets[4].push(lift(g.jet_at(3, i), 0.0));
    }
    JetCurve::new(c.grid().to_vec(), jets)
}
