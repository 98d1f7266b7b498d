//! The Darboux frame of a curve contained in a surface of 3-space: the
//! reparametrization making phi''' tangent to the surface, the tangent field
//! xi with [T, phi'', xi] = 1 and xi' parallel to T, the invariants
//! sigma, rho, tau, and the completed frame eta = phi'' + lambda xi with
//! lambda' = -tau and mu = rho + lambda sigma.

use super::surface::SurfaceR3;
use crate::affine_curves::CLOSURE_TOL;
use crate::numkit::{
    cumulative, fd_derive, integrate_scalar_ode, interp, locate_zeros, spread, uniform_grid,
    vol3, CurveSource, JetCurve, ToleranceConfig, VecD, ZeroHit,
};
use crate::{Error, Result};

/// A curve together with the surface that carries it.
pub struct CurveOnSurface {
    pub curve: CurveSource,
    pub surface: SurfaceR3,
    pub t_range: (f64, f64),
}

impl CurveOnSurface {
    pub fn new(curve: CurveSource, surface: SurfaceR3, t_range: (f64, f64)) -> Self {
        CurveOnSurface { curve, surface, t_range }
    }

    /// Largest containment residual over a probe grid.
    pub fn containment_residual(&self, probes: usize) -> f64 {
        let grid = uniform_grid(self.t_range.0, self.t_range.1, probes);
        grid.iter()
            .map(|&t| {
                let p = &self.curve.jets_at(t, 0)[0];
                self.surface.containment_residual(p)
            })
            .fold(0.0, f64::max)
    }

    fn is_closed(&self) -> bool {
        let a = self.curve.jets_at(self.t_range.0, 3);
        let b = self.curve.jets_at(self.t_range.1, 3);
        a.iter().zip(&b).all(|(x, y)| x.dist(y) < CLOSURE_TOL)
    }
}

/// Result of the non-degeneracy probe: min |phi'' . n_hat| over the grid.
#[derive(Debug, Clone)]
pub struct NondegeneracyReport {
    pub min_value: f64,
    pub at_t: f64,
}

/// Checks that the osculating plane never degenerates to the tangent plane:
/// phi'' must have a component along the unit normal everywhere.
pub fn check_nondegenerate(
    c: &CurveOnSurface,
    probes: usize,
    cfg: &ToleranceConfig,
) -> Result<NondegeneracyReport> {
    let grid = uniform_grid(c.t_range.0, c.t_range.1, probes.max(16));
    let mut min_value = f64::INFINITY;
    let mut at_t = grid[0];
    for &t in &grid {
        let j = c.curve.jets_at(t, 2);
        let n = c.surface.normal(&j[0], &j[1]).normalized();
        let v = j[2].dot(&n).abs();
        if v < min_value {
            min_value = v;
            at_t = t;
        }
    }
    if min_value < cfg.tol_zero {
        return Err(Error::DegeneratePoint {
            u: at_t,
            what: "osculating plane coincides with the tangent plane".into(),
        });
    }
    Ok(NondegeneracyReport { min_value, at_t })
}

/// A curve resampled in the Darboux parameter (phi''' tangent to M), with
/// jets to order 4 and the surface normal along it.
pub struct DarbouxCurve {
    pub jets: JetCurve,
    pub surface: SurfaceR3,
    pub normal: Vec<VecD>,
    pub normal_prime: Vec<VecD>,
    pub periodic: bool,
    /// sup |phi''' . n_hat| after reparametrization.
    pub gauge_residual: f64,
    /// parameter of the original curve at each output sample
    pub t_of_u: Vec<f64>,
}

/// Reparametrizes so that the third derivative is tangent to the surface:
/// integrates (d/dt) log t_u = -(phi_ttt . n) / (3 phi_tt . n), normalized by
/// t_u = `gauge` at the first sample.
pub fn reparam_darboux(
    c: CurveOnSurface,
    samples: usize,
    gauge: f64,
    cfg: &ToleranceConfig,
) -> Result<DarbouxCurve> {
    let probe_n = (2 * samples).max(2049);
    let probe = uniform_grid(c.t_range.0, c.t_range.1, probe_n);
    let h_t = probe[1] - probe[0];
    let closed = c.is_closed();

    // gauge function g = -(phi_ttt . n)/(3 phi_tt . n) with its analytic
    // derivative; g'' comes from a finite-difference pass
    let mut g_tab = Vec::with_capacity(probe_n);
    let mut gp_tab = Vec::with_capacity(probe_n);
    for &t in &probe {
        let j = c.curve.jets_at(t, 4);
        let (g, gp) = gauge_fn(&c.surface, &j, t)?;
        g_tab.push(g);
        gp_tab.push(gp);
    }
    let gpp_tab = fd_derive(&gp_tab, h_t, 1, 7, closed);

    // u'(t) = exp(-L)/gauge, L = int g dt
    let l_tab = cumulative(&g_tab, h_t);
    let du_tab: Vec<f64> = l_tab.iter().map(|l| (-l).exp() / gauge).collect();
    let u_tab = cumulative(&du_tab, h_t);
    let total = *u_tab.last().unwrap();

    let grid = uniform_grid(0.0, total, samples);
    let mut jets: Vec<Vec<VecD>> = vec![Vec::with_capacity(samples); 5];
    let mut normal = Vec::with_capacity(samples);
    let mut normal_prime = Vec::with_capacity(samples);
    let mut t_of_u = Vec::with_capacity(samples);
    let mut gauge_residual = 0.0_f64;

    for &u in &grid {
        let t = crate::affine_curves::invert_monotone(&probe, &u_tab, &du_tab, u);
        let j = c.curve.jets_at(t, 4);
        let (g, gp) = gauge_fn(&c.surface, &j, t)?;
        let gpp = interp(&probe, &gpp_tab, t, 6);
        let l = interp(&probe, &l_tab, t, 6);
        let s = (-l).exp() / gauge;
        // derivatives of the speed u'(t) = s: s' = -g s, etc.
        let sp = -g * s;
        let spp = (g * g - gp) * s;
        let sppp = (-gpp + 3.0 * g * gp - g * g * g) * s;

        let tu = 1.0 / s;
        let tuu = -sp / (s * s * s);
        let tuuu = (-spp * s + 3.0 * sp * sp) / s.powi(5);
        let tuuuu =
            -sppp / s.powi(5) + 10.0 * sp * spp / s.powi(6) - 15.0 * sp.powi(3) / s.powi(7);

        let f1 = &j[1] * tu;
        let f2 = (&j[2] * (tu * tu)).axpy(tuu, &j[1]);
        let f3 = (&j[3] * (tu * tu * tu))
            .axpy(3.0 * tu * tuu, &j[2])
            .axpy(tuuu, &j[1]);
        let f4 = (&j[4] * (tu * tu * tu * tu))
            .axpy(6.0 * tu * tu * tuu, &j[3])
            .axpy(3.0 * tuu * tuu + 4.0 * tu * tuuu, &j[2])
            .axpy(tuuuu, &j[1]);

        let n = c.surface.normal(&j[0], &j[1]);
        let dn_dt = c.surface.normal_derivative(&j[0], &j[1], &j[2]);
        gauge_residual = gauge_residual.max(f3.dot(&n.normalized()).abs());
        normal.push(n);
        normal_prime.push(dn_dt.scale(tu));
        t_of_u.push(t);
        jets[0].push(j[0].clone());
        jets[1].push(f1);
        jets[2].push(f2);
        jets[3].push(f3);
        jets[4].push(f4);
    }

    let jets = JetCurve::new(grid, jets)?;
    let periodic = jets.is_closed(CLOSURE_TOL);
    if gauge_residual > cfg.tol_residual {
        return Err(Error::DegeneratePoint {
            u: 0.0,
            what: format!("gauge residual {gauge_residual:.3e} above tolerance"),
        });
    }
    Ok(DarbouxCurve {
        jets,
        surface: c.surface,
        normal,
        normal_prime,
        periodic,
        gauge_residual,
        t_of_u,
    })
}

/// g = -(phi_ttt . n)/(3 phi_tt . n) and its t-derivative.
fn gauge_fn(surface: &SurfaceR3, j: &[VecD], t: f64) -> Result<(f64, f64)> {
    let n = surface.normal(&j[0], &j[1]);
    let dn = surface.normal_derivative(&j[0], &j[1], &j[2]);
    let n2 = j[2].dot(&n);
    if n2.abs() < 1e-14 {
        return Err(Error::DegeneratePoint {
            u: t,
            what: "phi'' tangent to the surface".into(),
        });
    }
    let n3 = j[3].dot(&n);
    let n2p = j[3].dot(&n) + j[2].dot(&dn);
    let n3p = j[4].dot(&n) + j[3].dot(&dn);
    let g = -n3 / (3.0 * n2);
    let gp = -(n3p * n2 - n3 * n2p) / (3.0 * n2 * n2);
    Ok((g, gp))
}

/// The Darboux field and the first invariants along a reparametrized curve.
pub struct DarbouxField {
    pub curve: DarbouxCurve,
    pub xi: Vec<VecD>,
    pub xi_prime: Vec<VecD>,
    pub sigma: Vec<f64>,
    pub rho: Vec<f64>,
    pub tau: Vec<f64>,
    /// sup of the phi'' and xi components of xi' (parallelism defect).
    pub parallelism_residual: f64,
}

/// Constructs the normalized Darboux field xi: starting from w = n x T,
/// xi0 = w / [T, phi'', w], then xi = xi0 + c T with c chosen so xi' stays
/// tangent to the surface. Extracts sigma, rho, tau.
pub fn darboux_field(curve: DarbouxCurve, cfg: &ToleranceConfig) -> Result<DarbouxField> {
    let n_samples = curve.jets.len();
    let h = curve.jets.spacing();
    let mut xi0 = Vec::with_capacity(n_samples);
    let mut xi0_prime = Vec::with_capacity(n_samples);
    let mut c_tab = Vec::with_capacity(n_samples);

    for i in 0..n_samples {
        let t = curve.jets.jet_at(1, i);
        let f2 = curve.jets.jet_at(2, i);
        let f3 = curve.jets.jet_at(3, i);
        let n = &curve.normal[i];
        let np = &curve.normal_prime[i];
        let w = n.cross3(t);
        let d = vol3(t, f2, &w);
        if d.abs() < cfg.tol_zero {
            return Err(Error::DegeneratePoint {
                u: curve.jets.grid()[i],
                what: "transversal direction lies in the osculating plane".into(),
            });
        }
        let wp = &np.cross3(t) + &n.cross3(f2);
        let dp = vol3(t, f3, &w) + vol3(t, f2, &wp);
        let x0 = w.scale(1.0 / d);
        let x0p = wp.scale(1.0 / d).axpy(-dp / (d * d), &w);
        let c = -x0p.dot(n) / f2.dot(n);
        xi0.push(x0);
        xi0_prime.push(x0p);
        c_tab.push(c);
    }

    let c_prime = fd_derive(&c_tab, h, 1, 7, curve.periodic);
    let mut xi = Vec::with_capacity(n_samples);
    let mut xi_prime = Vec::with_capacity(n_samples);
    let mut sigma = Vec::with_capacity(n_samples);
    let mut rho = Vec::with_capacity(n_samples);
    let mut tau = Vec::with_capacity(n_samples);
    let mut parallelism_residual = 0.0_f64;

    for i in 0..n_samples {
        let t = curve.jets.jet_at(1, i);
        let f2 = curve.jets.jet_at(2, i);
        let f3 = curve.jets.jet_at(3, i);
        let x = xi0[i].axpy(c_tab[i], t);
        let xp = xi0_prime[i].axpy(c_prime[i], t).axpy(c_tab[i], f2);
        // decomposition of xi' in the frame (T, phi'', xi)
        let comp_f2 = vol3(t, &xp, &x);
        let comp_xi = vol3(t, f2, &xp);
        parallelism_residual = parallelism_residual.max(comp_f2.abs()).max(comp_xi.abs());
        sigma.push(-vol3(&xp, f2, &x));
        tau.push(vol3(t, f2, f3));
        rho.push(-vol3(f3, f2, &x));
        xi.push(x);
        xi_prime.push(xp);
    }

    Ok(DarbouxField {
        curve,
        xi,
        xi_prime,
        sigma,
        rho,
        tau,
        parallelism_residual,
    })
}

/// The full frame with eta = phi'' + lambda xi, lambda' = -tau, and
/// mu = rho + lambda sigma.
pub struct DarbouxFrame {
    pub field: DarbouxField,
    pub lambda: Vec<f64>,
    pub eta: Vec<VecD>,
    pub mu: Vec<f64>,
    pub lambda0: f64,
    /// sup-norm residuals of the structure equations, in order
    /// (xi' + sigma T, eta' + mu T, T' - eta + lambda xi).
    pub structure_residuals: [f64; 3],
    /// sup |[T, phi'', xi] - 1| and |[T, eta, xi] - 1|.
    pub normalization_residuals: [f64; 2],
}

impl DarbouxFrame {
    pub fn grid(&self) -> &[f64] {
        self.field.curve.jets.grid()
    }

    pub fn len(&self) -> usize {
        self.field.curve.jets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_periodic(&self) -> bool {
        self.field.curve.periodic
    }

    pub fn phi(&self, i: usize) -> &VecD {
        self.field.curve.jets.position(i)
    }

    pub fn tangent(&self, i: usize) -> &VecD {
        self.field.curve.jets.jet_at(1, i)
    }

    pub fn sigma(&self) -> &[f64] {
        &self.field.sigma
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn tau(&self) -> &[f64] {
        &self.field.tau
    }

    pub fn rho(&self) -> &[f64] {
        &self.field.rho
    }
}

pub fn complete_frame(field: DarbouxField, lambda0: f64) -> Result<DarbouxFrame> {
    let grid = field.curve.jets.grid().to_vec();
    let tau = field.tau.clone();
    let g = grid.clone();
    let lambda = integrate_scalar_ode(
        move |u, _| -interp(&g, &tau, u, 4),
        lambda0,
        &grid,
    )?;
    let n = grid.len();
    let mut eta = Vec::with_capacity(n);
    let mut mu = Vec::with_capacity(n);
    let mut res_xi = 0.0_f64;
    let mut res_eta = 0.0_f64;
    let mut res_t = 0.0_f64;
    let mut norm1 = 0.0_f64;
    let mut norm2 = 0.0_f64;
    for i in 0..n {
        let t = field.curve.jets.jet_at(1, i);
        let f2 = field.curve.jets.jet_at(2, i);
        let f3 = field.curve.jets.jet_at(3, i);
        let e = f2.axpy(lambda[i], &field.xi[i]);
        let m = field.rho[i] + lambda[i] * field.sigma[i];
        // structure residuals
        res_xi = res_xi.max(field.xi_prime[i].axpy(field.sigma[i], t).norm());
        let eta_prime = f3
            .axpy(-field.tau[i], &field.xi[i])
            .axpy(lambda[i], &field.xi_prime[i]);
        res_eta = res_eta.max(eta_prime.axpy(m, t).norm());
        res_t = res_t.max((f2 - &e).axpy(lambda[i], &field.xi[i]).norm());
        norm1 = norm1.max((vol3(t, f2, &field.xi[i]) - 1.0).abs());
        norm2 = norm2.max((vol3(t, &e, &field.xi[i]) - 1.0).abs());
        eta.push(e);
        mu.push(m);
    }
    Ok(DarbouxFrame {
        field,
        lambda,
        eta,
        mu,
        lambda0,
        structure_residuals: [res_xi, res_eta, res_t],
        normalization_residuals: [norm1, norm2],
    })
}

/// End-to-end pipeline: non-degeneracy check, Darboux reparametrization,
/// field extraction and frame completion.
pub fn darboux_pipeline(
    c: CurveOnSurface,
    samples: usize,
    gauge: f64,
    lambda0: f64,
    cfg: &ToleranceConfig,
) -> Result<DarbouxFrame> {
    let containment = c.containment_residual(samples.max(256));
    if containment > cfg.tol_residual {
        return Err(Error::DegeneratePoint {
            u: c.t_range.0,
            what: format!("containment residual {containment:.3e} above tolerance"),
        });
    }
    check_nondegenerate(&c, samples.max(256), cfg)?;
    let curve = reparam_darboux(c, samples, gauge, cfg)?;
    let field = darboux_field(curve, cfg)?;
    complete_frame(field, lambda0)
}

/// A constant point detected across the samples, with its spread.
#[derive(Debug, Clone)]
pub struct ConstantPoint {
    pub point: VecD,
    pub spread: f64,
}

/// Visual contour test: when sigma is constant and nonzero, all tangent
/// planes of M along the curve pass through O = phi + xi / sigma.
pub fn visual_contour_test(frame: &DarbouxFrame, cfg: &ToleranceConfig) -> Option<ConstantPoint> {
    constant_point(frame, frame.sigma(), &frame.field.xi, cfg)
}

/// Constant-Q test: when mu is constant and nonzero, Q = phi + eta / mu is a
/// fixed point of all affine normal planes. The point itself depends on the
/// lambda0 gauge when sigma is constant too (it slides along the focal
/// line); the focal line does not.
pub fn constant_q_test(frame: &DarbouxFrame, cfg: &ToleranceConfig) -> Option<ConstantPoint> {
    constant_point(frame, &frame.mu, &frame.eta, cfg)
}

fn constant_point(
    frame: &DarbouxFrame,
    values: &[f64],
    field: &[VecD],
    cfg: &ToleranceConfig,
) -> Option<ConstantPoint> {
    if spread(values) >= cfg.tol_residual {
        return None;
    }
    let mean_value = values.iter().sum::<f64>() / values.len() as f64;
    if mean_value.abs() < cfg.tol_zero {
        return None;
    }
    let pts: Vec<VecD> = (0..frame.len())
        .map(|i| frame.phi(i).axpy(1.0 / mean_value, &field[i]))
        .collect();
    let mut mean = VecD::zeros(3);
    for p in &pts {
        mean = &mean + p;
    }
    mean = mean.scale(1.0 / pts.len() as f64);
    let spread = pts.iter().fold(0.0_f64, |m, p| m.max(p.dist(&mean)));
    Some(ConstantPoint { point: mean, spread })
}

/// Flattening census: zeros of tau along the curve.
#[derive(Debug, Clone)]
pub struct FlatteningReport {
    pub identically_zero: bool,
    pub zeros: Vec<ZeroHit>,
    pub count: usize,
}

pub fn flattening_points(frame: &DarbouxFrame, cfg: &ToleranceConfig) -> FlatteningReport {
    let tau = frame.tau();
    if crate::numkit::identically_zero(tau, cfg) {
        return FlatteningReport { identically_zero: true, zeros: Vec::new(), count: 0 };
    }
    let zeros = if frame.is_periodic() {
        crate::affine_curves::cyclic_zeros(frame.grid(), tau, cfg)
    } else {
        locate_zeros(frame.grid(), tau, cfg)
    };
    let count = zeros.iter().filter(|z| !z.tangential).count();
    FlatteningReport { identically_zero: false, zeros, count }
}

/// Developability certificate: sup over the grid of the normalized triple
/// product |[Q', O', O - Q]| / (|Q'| |O'| |O - Q|). Samples where either
/// center has a pole inside the derivative stencil (sigma or mu about to
/// cross zero) or where the centers are stationary are skipped, since the
/// ruled centers run to infinity there and the raw certificate is vacuous.
pub fn developability_residual(frame: &DarbouxFrame, cfg: &ToleranceConfig) -> f64 {
    let n = frame.len();
    let h = frame.field.curve.jets.spacing();
    let sigma_p = fd_derive(frame.sigma(), h, 1, 7, frame.is_periodic());
    let mu_p = fd_derive(&frame.mu, h, 1, 7, frame.is_periodic());
    let mut o_pts = Vec::with_capacity(n);
    let mut q_pts = Vec::with_capacity(n);
    let mut usable = vec![true; n];
    for i in 0..n {
        let s = frame.sigma()[i];
        let m = frame.mu[i];
        // pole of O or Q within reach of the 7-point stencil
        if s.abs() < (4.0 * h * sigma_p[i]).abs().max(cfg.tol_zero)
            || m.abs() < (4.0 * h * mu_p[i]).abs().max(cfg.tol_zero)
        {
            usable[i] = false;
            o_pts.push(frame.phi(i).clone());
            q_pts.push(frame.phi(i).clone());
            continue;
        }
        o_pts.push(frame.phi(i).axpy(1.0 / s, &frame.field.xi[i]));
        q_pts.push(frame.phi(i).axpy(1.0 / m, &frame.eta[i]));
    }
    let o_prime = crate::numkit::fd_derive_vec(&o_pts, h, 1, 7, frame.is_periodic());
    let q_prime = crate::numkit::fd_derive_vec(&q_pts, h, 1, 7, frame.is_periodic());
    let mut worst = 0.0_f64;
    for i in 0..n {
        // the whole stencil must be clean
        let clean = (0..7).all(|k| {
            let idx = if frame.is_periodic() {
                (i + n - 1 + k + n - 1 - 3) % (n - 1)
            } else {
                (i + k).saturating_sub(3).min(n - 1)
            };
            usable[idx]
        });
        if !clean || sigma_p[i].abs() < cfg.tol_zero || mu_p[i].abs() < cfg.tol_zero {
            continue;
        }
        let sep = &o_pts[i] - &q_pts[i];
        let scale = q_prime[i].norm() * o_prime[i].norm() * sep.norm();
        if scale < 1e-30 {
            continue;
        }
        worst = worst.max(vol3(&q_prime[i], &o_prime[i], &sep).abs() / scale);
    }
    worst
}

/// Worst relative deviation of the scaled frame's sigma from the gauge
/// rescaling law sigma -> a^{-3} sigma under t'(u0) = a.
pub fn sigma_scale_check(base: &DarbouxFrame, scaled: &DarbouxFrame, a: f64) -> f64 {
    let factor = a.powi(-3);
    let mut worst: f64 = 0.0;
    for i in 0..base.len().min(scaled.len()) {
        let expect = base.sigma()[i] * factor;
        let rel = (scaled.sigma()[i] - expect).abs() / expect.abs().max(1e-12);
        worst = worst.max(rel);
    }
    worst
}
