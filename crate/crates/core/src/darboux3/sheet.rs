//! The affine focal set of a curve in a surface: the envelope of affine
//! normal planes, ruled by the lines a sigma(u) + b mu(u) = 1 in the frame
//! (xi, eta), with its singularity labels.

use super::frame::DarbouxFrame;
use crate::numkit::{fd_derive, fit_hyperplane, interp, locate_zeros, vol3, ToleranceConfig, VecD};
use crate::{Error, Result};

/// Singularity type of a focal-sheet point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingLabel {
    Smooth,
    CuspidalEdge,
    Swallowtail,
    Degenerate,
}

impl SingLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SingLabel::Smooth => "Smooth",
            SingLabel::CuspidalEdge => "CuspidalEdge",
            SingLabel::Swallowtail => "Swallowtail",
            SingLabel::Degenerate => "Degenerate",
        }
    }
}

/// One sampled point of the ruled sheet.
#[derive(Debug, Clone)]
pub struct SheetPoint {
    pub a: f64,
    pub b: f64,
    pub pos: VecD,
    pub label: Option<SingLabel>,
}

/// The line l(u) of the sheet at one parameter sample.
#[derive(Debug, Clone)]
pub struct SheetRow {
    pub u: f64,
    /// O(u) = phi + xi / sigma, absent when sigma vanishes.
    pub o_point: Option<VecD>,
    /// Q(u) = phi + eta / mu, absent when mu vanishes.
    pub q_point: Option<VecD>,
    pub points: Vec<SheetPoint>,
}

/// The sampled focal sheet.
pub struct FocalSheet {
    pub rows: Vec<SheetRow>,
}

impl FocalSheet {
    pub fn all_points(&self) -> impl Iterator<Item = &SheetPoint> {
        self.rows.iter().flat_map(|r| r.points.iter())
    }

    /// Largest distance from any sheet point to the best-fit line through
    /// the whole sample; small values certify a degenerate (line) sheet.
    pub fn line_collapse_residual(&self) -> f64 {
        let pts: Vec<VecD> = self.all_points().map(|p| p.pos.clone()).collect();
        let n = pts.len() as f64;
        let mut mean = VecD::zeros(3);
        for p in &pts {
            mean = &mean + p;
        }
        mean = mean.scale(1.0 / n);
        // principal direction of the scatter
        let mut cov = vec![vec![0.0; 3]; 3];
        for p in &pts {
            let q = p - &mean;
            for i in 0..3 {
                for j in 0..3 {
                    cov[i][j] += q[i] * q[j];
                }
            }
        }
        let (_, vecs) = crate::numkit::eigen_sym(cov);
        let dir = VecD::new((0..3).map(|r| vecs[r][2]).collect()).normalized();
        pts.iter()
            .map(|p| {
                let q = p - &mean;
                q.axpy(-q.dot(&dir), &dir).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Samples the focal sheet: for each u the line {phi + a xi + b eta :
/// a sigma + b mu = 1}, swept over `s_range` in the line parameter.
pub fn focal_sheet(
    frame: &DarbouxFrame,
    s_range: (f64, f64),
    s_samples: usize,
    cfg: &ToleranceConfig,
) -> Result<FocalSheet> {
    let mut rows = Vec::with_capacity(frame.len());
    for i in 0..frame.len() {
        let u = frame.grid()[i];
        let sigma = frame.sigma()[i];
        let mu = frame.mu[i];
        let norm2 = sigma * sigma + mu * mu;
        if norm2 < cfg.tol_zero * cfg.tol_zero {
            return Err(Error::EmptyLocus { u });
        }
        let phi = frame.phi(i);
        let xi = &frame.field.xi[i];
        let eta = &frame.eta[i];
        let o_point = (sigma.abs() >= cfg.tol_zero).then(|| phi.axpy(1.0 / sigma, xi));
        let q_point = (mu.abs() >= cfg.tol_zero).then(|| phi.axpy(1.0 / mu, eta));
        // anchor: closest coefficient point of the line to phi; direction
        // normalized in the coefficient plane
        let (a0, b0) = (sigma / norm2, mu / norm2);
        let scale = norm2.sqrt();
        let (da, db) = (mu / scale, -sigma / scale);
        let mut points = Vec::with_capacity(s_samples);
        for k in 0..s_samples {
            let s = s_range.0 + (s_range.1 - s_range.0) * k as f64 / (s_samples - 1) as f64;
            let (a, b) = (a0 + s * da, b0 + s * db);
            let pos = phi.axpy(a, xi).axpy(b, eta);
            points.push(SheetPoint { a, b, pos, label: None });
        }
        rows.push(SheetRow { u, o_point, q_point, points });
    }
    Ok(FocalSheet { rows })
}

/// Finite-difference jets of the invariant pair (sigma, mu) up to third
/// order, used by the classifier.
pub struct InvariantJets {
    pub sigma: [Vec<f64>; 3],
    pub mu: [Vec<f64>; 3],
}

pub fn invariant_jets(frame: &DarbouxFrame) -> Result<InvariantJets> {
    if frame.len() < 9 {
        return Err(Error::InsufficientJets { needed: 3, got: 0 });
    }
    let h = frame.field.curve.jets.spacing();
    let per = frame.is_periodic();
    let d = |vals: &[f64], m: usize, w: usize| fd_derive(vals, h, m, w, per);
    Ok(InvariantJets {
        sigma: [
            d(frame.sigma(), 1, 7),
            d(frame.sigma(), 2, 5),
            d(frame.sigma(), 3, 5),
        ],
        mu: [d(&frame.mu, 1, 7), d(&frame.mu, 2, 5), d(&frame.mu, 3, 5)],
    })
}

/// Classifies the focal-sheet point x = phi(u) + a xi(u) + b eta(u) through
/// the derivative ladder a sigma^(k) + b mu^(k):
/// smooth while the first combination stays away from zero, cuspidal edge /
/// swallowtail when it vanishes transversally and the next one does not.
///
/// A vanishing first combination is only accepted at a sign change; the
/// higher combinations are then evaluated at the refined zero.
pub fn classify_singularity(
    frame: &DarbouxFrame,
    jets: &InvariantJets,
    u: f64,
    a: f64,
    b: f64,
    cfg: &ToleranceConfig,
) -> Result<SingLabel> {
    let grid = frame.grid();
    let on_line = a * interp(grid, frame.sigma(), u, 4) + b * interp(grid, &frame.mu, u, 4);
    if (on_line - 1.0).abs() > 100.0 * cfg.tol_residual.max(cfg.tol_zero) {
        return Err(Error::InvalidConfig(format!(
            "point (a, b) = ({a}, {b}) is not on the focal line at u = {u}"
        )));
    }
    let combo = |k: usize| -> Vec<f64> {
        jets.sigma[k]
            .iter()
            .zip(&jets.mu[k])
            .map(|(s, m)| a * s + b * m)
            .collect()
    };
    let v1 = combo(0);
    let v1_at = interp(grid, &v1, u, 4);
    if v1_at.abs() > cfg.tol_zero {
        return Ok(SingLabel::Smooth);
    }
    // refine the zero of the first combination near u
    let u_star = refine_near(grid, &v1, u, cfg).unwrap_or(u);
    let v2_at = interp(grid, &combo(1), u_star, 4);
    if v2_at.abs() > cfg.tol_zero {
        return Ok(SingLabel::CuspidalEdge);
    }
    let v3_at = interp(grid, &combo(2), u_star, 4);
    if v3_at.abs() > cfg.tol_zero {
        return Ok(SingLabel::Swallowtail);
    }
    Ok(SingLabel::Degenerate)
}

/// Independent classification through the distance-function derivative
/// F(x, u) = [x - phi(u), eta(u), xi(u)]: its u-derivative expands to
/// F_u = -mu [x - phi, T, xi] - sigma [x - phi, eta, T] - 1, and the higher
/// derivatives are read off the sampled F_u table. The first nonvanishing
/// derivative at the critical parameter decides the label.
pub fn classify_by_distance_jets(
    frame: &DarbouxFrame,
    u: f64,
    a: f64,
    b: f64,
    cfg: &ToleranceConfig,
) -> Result<SingLabel> {
    let grid = frame.grid();
    let n = frame.len();
    if n < 9 {
        return Err(Error::InsufficientJets { needed: 3, got: 0 });
    }
    // the fixed space point, interpolated at u rather than snapped to a sample
    let x = {
        let phi_u = interp_vec_frame(frame, u, |f, i| f.phi(i).clone());
        let xi_u = interp_vec_frame(frame, u, |f, i| f.field.xi[i].clone());
        let eta_u = interp_vec_frame(frame, u, |f, i| f.eta[i].clone());
        phi_u.axpy(a, &xi_u).axpy(b, &eta_u)
    };
    let mut f_u = Vec::with_capacity(n);
    for i in 0..n {
        let rel = &x - frame.phi(i);
        let t = frame.tangent(i);
        let xi = &frame.field.xi[i];
        let eta = &frame.eta[i];
        f_u.push(
            -frame.mu[i] * vol3(&rel, t, xi) - frame.sigma()[i] * vol3(&rel, eta, t) - 1.0,
        );
    }
    let h = frame.field.curve.jets.spacing();
    let per = frame.is_periodic();
    let f_uu = fd_derive(&f_u, h, 1, 7, per);
    let f_uuu = fd_derive(&f_u, h, 2, 5, per);
    let f_uuuu = fd_derive(&f_u, h, 3, 5, per);
    // derivative scale of the distance function near x
    let scale = crate::numkit::sup_norm(&f_uu).max(1.0);
    let tol = cfg.tol_zero * scale;

    let at = |tab: &[f64], p: f64| interp(grid, tab, p, 4);
    if at(&f_uu, u).abs() > tol {
        return Ok(SingLabel::Smooth);
    }
    let u_star = refine_near(grid, &f_uu, u, cfg).unwrap_or(u);
    if at(&f_uuu, u_star).abs() > tol {
        return Ok(SingLabel::CuspidalEdge);
    }
    if at(&f_uuuu, u_star).abs() > tol {
        return Ok(SingLabel::Swallowtail);
    }
    Ok(SingLabel::Degenerate)
}

fn interp_vec_frame(
    frame: &DarbouxFrame,
    u: f64,
    take: impl Fn(&DarbouxFrame, usize) -> VecD,
) -> VecD {
    let grid = frame.grid();
    let cols: Vec<VecD> = (0..frame.len()).map(|i| take(frame, i)).collect();
    crate::numkit::interp_vec(grid, &cols, u, 4)
}

/// Nearest sign-change zero of the table within a few cells of u.
fn refine_near(grid: &[f64], values: &[f64], u: f64, cfg: &ToleranceConfig) -> Option<f64> {
    let zeros = locate_zeros(grid, values, cfg);
    let h = grid[1] - grid[0];
    zeros
        .iter()
        .filter(|z| !z.tangential && (z.u - u).abs() < 4.0 * h)
        .min_by(|a, b| {
            (a.u - u).abs().partial_cmp(&(b.u - u).abs()).unwrap()
        })
        .map(|z| z.u)
}

/// Labels every sheet point in place using the invariant-jet classifier.
pub fn label_sheet(frame: &DarbouxFrame, sheet: &mut FocalSheet, cfg: &ToleranceConfig) -> Result<()> {
    let jets = invariant_jets(frame)?;
    for row in &mut sheet.rows {
        for pt in &mut row.points {
            pt.label = Some(classify_singularity(frame, &jets, row.u, pt.a, pt.b, cfg)?);
        }
    }
    Ok(())
}

/// Coefficients (a, b) of the regression point of the line l(u): the unique
/// point with a sigma' + b mu' = 0, where cuspidal edges live. None when the
/// line is stationary (sigma', mu' both essentially zero).
pub fn regression_point(
    frame: &DarbouxFrame,
    jets: &InvariantJets,
    i: usize,
    cfg: &ToleranceConfig,
) -> Option<(f64, f64)> {
    let (s, m) = (frame.sigma()[i], frame.mu[i]);
    let (sp, mp) = (jets.sigma[0][i], jets.mu[0][i]);
    let det = s * mp - m * sp;
    if det.abs() < cfg.tol_zero || (sp.abs() < cfg.tol_zero && mp.abs() < cfg.tol_zero) {
        return None;
    }
    Some((mp / det, -sp / det))
}

/// Swallowtail candidates: parameters u* where the regression point of the
/// focal lines also kills the second combination, i.e. zeros of
/// W = mu' sigma'' - sigma' mu''. Returns (u*, a, b) with the coefficients
/// evaluated at the refined zero, skipping candidates that run off to
/// infinity along the line.
pub fn swallowtail_candidates(
    frame: &DarbouxFrame,
    jets: &InvariantJets,
    coeff_bound: f64,
    cfg: &ToleranceConfig,
) -> Vec<(f64, f64, f64)> {
    let grid = frame.grid();
    let w: Vec<f64> = (0..frame.len())
        .map(|i| jets.mu[0][i] * jets.sigma[1][i] - jets.sigma[0][i] * jets.mu[1][i])
        .collect();
    let zeros = if frame.is_periodic() {
        crate::affine_curves::cyclic_zeros(grid, &w, cfg)
    } else {
        locate_zeros(grid, &w, cfg)
    };
    // a pair of W-zeros within a few cells is one near-tangential event
    // (higher degeneracy), not a stable swallowtail; drop such clusters
    let h = grid[1] - grid[0];
    let simple: Vec<&crate::numkit::ZeroHit> = zeros
        .iter()
        .filter(|z| {
            !z.tangential
                && zeros
                    .iter()
                    .all(|o| std::ptr::eq(*z, o) || (o.u - z.u).abs() > 3.0 * h)
        })
        .collect();
    let mut out = Vec::new();
    for z in simple {
        let sigma = interp(grid, frame.sigma(), z.u, 4);
        let mu = interp(grid, &frame.mu, z.u, 4);
        let sp = interp(grid, &jets.sigma[0], z.u, 4);
        let mp = interp(grid, &jets.mu[0], z.u, 4);
        let det = sigma * mp - mu * sp;
        if det.abs() < cfg.tol_zero {
            continue;
        }
        let (a, b) = (mp / det, -sp / det);
        if a.abs() > coeff_bound || b.abs() > coeff_bound {
            continue;
        }
        out.push((z.u, a, b));
    }
    out
}

/// Writes the sheet as a Wavefront OBJ string: a quad mesh over (u, s), or
/// polyline records when the sheet collapses to a line.
pub fn sheet_to_obj(sheet: &FocalSheet, collapse_tol: f64) -> String {
    let mut out = String::new();
    let rows = sheet.rows.len();
    if rows == 0 {
        return out;
    }
    let cols = sheet.rows[0].points.len();
    let digits = 17;
    if sheet.line_collapse_residual() < collapse_tol {
        // degenerate sheet: emit the line as polylines along u
        for row in &sheet.rows {
            for p in &row.points {
                out.push_str(&format!(
                    "v {:.*e} {:.*e} {:.*e}\n",
                    digits, p.pos[0], digits, p.pos[1], digits, p.pos[2]
                ));
            }
        }
        for k in 0..cols {
            let indices: Vec<String> = (0..rows).map(|r| (r * cols + k + 1).to_string()).collect();
            out.push_str(&format!("l {}\n", indices.join(" ")));
        }
        return out;
    }
    for row in &sheet.rows {
        for p in &row.points {
            out.push_str(&format!(
                "v {:.*e} {:.*e} {:.*e}\n",
                digits, p.pos[0], digits, p.pos[1], digits, p.pos[2]
            ));
        }
    }
    for r in 0..rows - 1 {
        for k in 0..cols - 1 {
            let base = r * cols + k + 1;
            out.push_str(&format!(
                "f {} {} {} {}\n",
                base,
                base + 1,
                base + cols + 1,
                base + cols
            ));
        }
    }
    out
}

/// Best-fit hyperplane residual of the sheet sample (diagnostic helper).
pub fn sheet_plane_residual(sheet: &FocalSheet) -> f64 {
    let pts: Vec<VecD> = sheet.all_points().map(|p| p.pos.clone()).collect();
    fit_hyperplane(&pts).1
}
