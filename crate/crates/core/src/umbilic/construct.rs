//! The co-normal construction phi = (nu, nu . (f - O)): an umbilic, normally
//! flat immersion of codimension 2 for every hypersurface f and origin O,
//! together with its verification suite.

use crate::blaschke::{laplacian_curve, laplacian_patch, BlaschkeApparatus};
use crate::numkit::{solve, Hyperplane, VecD};
use crate::{Error, Result};

/// Grid layout of an immersion table: a curve (nv = 1) or a patch, row-major.
#[derive(Debug, Clone)]
pub struct GridShape {
    pub nu: usize,
    pub nv: usize,
    pub hu: f64,
    pub hv: f64,
    /// curve closes up / patch closes in v
    pub periodic: bool,
}

impl GridShape {
    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_curve(&self) -> bool {
        self.nv == 1
    }

    /// Centered-stencil mask for derivative-based residuals.
    pub fn interior(&self, k: usize) -> bool {
        if self.is_curve() {
            self.periodic || (k >= 3 && k + 3 < self.nu)
        } else {
            let (iu, iv) = (k / self.nv, k % self.nv);
            let u_ok = iu >= 3 && iu + 3 < self.nu;
            let v_ok = self.periodic || (iv >= 3 && iv + 3 < self.nv);
            u_ok && v_ok
        }
    }
}

/// The constructed immersion with its verification residuals.
pub struct UmbilicImmersion {
    pub n: usize,
    pub shape: GridShape,
    /// phi = (nu, nu . (f - O)), dimension n + 2.
    pub phi: Vec<VecD>,
    /// First derivatives along each parameter axis.
    pub dphi: Vec<Vec<VecD>>,
    pub origin: VecD,
    /// The distinguished point (0, ..., 0, 1).
    pub q_point: VecD,
    /// sup |[phi_* X_1, .., phi_* X_n, phi, Q] + 1| for the oriented
    /// h-orthonormal tangent frame.
    pub frame_det_residual: f64,
    /// Worst deviation of the induced metric from the source Blaschke metric.
    pub metric_agreement: f64,
    /// Distance of the origin of R^{n+2} from the tangent spaces of the cone
    /// swept by phi (visual-contour certificate).
    pub contour_residual: f64,
}

/// Builds phi = (nu, nu . (f - O)) from a Blaschke apparatus and verifies the
/// frame-determinant, metric-agreement and visual-contour certificates.
pub fn construct_umbilic(
    apparatus: &BlaschkeApparatus,
    origin: &VecD,
) -> Result<UmbilicImmersion> {
    match apparatus {
        BlaschkeApparatus::Curve(c) => {
            let m = c.curve.len();
            let shape = GridShape {
                nu: m,
                nv: 1,
                hu: c.curve.grid()[1] - c.curve.grid()[0],
                hv: 0.0,
                periodic: c.curve.is_closed(),
            };
            let mut phi = Vec::with_capacity(m);
            let mut dphi_u = Vec::with_capacity(m);
            for i in 0..m {
                let f = c.curve.jets().position(i);
                let fu = c.curve.jets().jet_at(1, i);
                let rel = f - origin;
                phi.push(c.conormal[i].concat_scalar(c.conormal[i].dot(&rel)));
                let dz = c.conormal_prime[i].dot(&rel) + c.conormal[i].dot(fu);
                dphi_u.push(c.conormal_prime[i].concat_scalar(dz));
            }
            let h_unit = vec![1.0; phi.len()];
            finish_construction(1, shape, phi, vec![dphi_u], origin.clone(), &h_unit)
        }
        BlaschkeApparatus::Patch(p) => {
            let m = p.f.len();
            let shape = GridShape {
                nu: p.nu_samples,
                nv: p.nv_samples,
                hu: p.hu,
                hv: p.hv,
                periodic: p.periodic_v,
            };
            let mut phi = Vec::with_capacity(m);
            let mut dphi_u = Vec::with_capacity(m);
            let mut dphi_v = Vec::with_capacity(m);
            let mut h_entries = Vec::with_capacity(3 * m);
            for k in 0..m {
                let rel = &p.f[k] - origin;
                phi.push(p.conormal[k].concat_scalar(p.conormal[k].dot(&rel)));
                let dz_u = p.conormal_u[k].dot(&rel) + p.conormal[k].dot(&p.f_u[k]);
                let dz_v = p.conormal_v[k].dot(&rel) + p.conormal[k].dot(&p.f_v[k]);
                dphi_u.push(p.conormal_u[k].concat_scalar(dz_u));
                dphi_v.push(p.conormal_v[k].concat_scalar(dz_v));
                h_entries.extend_from_slice(&p.metric.h[k]);
            }
            finish_construction(2, shape, phi, vec![dphi_u, dphi_v], origin.clone(), &h_entries)
        }
    }
}

/// Shared verification pass: frame determinant, induced metric, visual
/// contour.
fn finish_construction(
    n: usize,
    shape: GridShape,
    phi: Vec<VecD>,
    dphi: Vec<Vec<VecD>>,
    origin: VecD,
    h_entries: &[f64],
) -> Result<UmbilicImmersion> {
    let dim = n + 2;
    let m = phi.len();
    let mut q_point = VecD::zeros(dim);
    q_point[dim - 1] = 1.0;

    // h-orthonormal frame per sample (Gram-Schmidt in the metric), with a
    // single global orientation flip chosen to make the determinant -1
    let mut dets = Vec::with_capacity(m);
    for k in 0..m {
        let mut cols: Vec<VecD> = Vec::with_capacity(dim);
        if n == 1 {
            cols.push(dphi[0][k].clone());
        } else {
            let [h11, h12, h22] = [h_entries[3 * k], h_entries[3 * k + 1], h_entries[3 * k + 2]];
            if h11 <= 0.0 {
                return Err(Error::DegenerateMetric("h11 not positive".into()));
            }
            let x1 = dphi[0][k].scale(1.0 / h11.sqrt());
            let rest = h22 - h12 * h12 / h11;
            if rest <= 0.0 {
                return Err(Error::DegenerateMetric("metric not definite".into()));
            }
            let x2 = dphi[1][k]
                .axpy(-h12 / h11, &dphi[0][k])
                .scale(1.0 / rest.sqrt());
            cols.push(x1);
            cols.push(x2);
        }
        cols.push(phi[k].clone());
        cols.push(q_point.clone());
        dets.push(crate::numkit::volume_form(&cols)?);
    }
    let flip = if dets[0] > 0.0 { -1.0 } else { 1.0 };
    let frame_det_residual = dets
        .iter()
        .fold(0.0_f64, |acc, d| acc.max((flip * d + 1.0).abs()));

    // metric agreement: the -Q coefficient of the second derivatives of phi
    // against the source metric
    let metric_agreement = metric_agreement(n, &shape, &phi, &dphi, h_entries)?;

    // visual contour: distance of the ambient origin from the tangent space
    // of the cone {t phi} at probe samples (spanned by phi and the dphi)
    let mut contour_residual = 0.0_f64;
    let probes = (m / 10).max(1);
    for k in (0..m).step_by(probes) {
        let mut dirs: Vec<VecD> = dphi.iter().map(|axis| axis[k].clone()).collect();
        dirs.push(phi[k].clone());
        contour_residual = contour_residual.max(offset_from_affine_span(&phi[k], &dirs));
    }

    Ok(UmbilicImmersion {
        n,
        shape,
        phi,
        dphi,
        origin,
        q_point,
        frame_det_residual,
        metric_agreement,
        contour_residual,
    })
}

/// Coefficient check h^2 = h: second derivatives of phi are decomposed in
/// the moving basis (tangents, phi, Q); the Q coefficient must equal -h_ij.
fn metric_agreement(
    n: usize,
    shape: &GridShape,
    phi: &[VecD],
    dphi: &[Vec<VecD>],
    h_entries: &[f64],
) -> Result<f64> {
    let dim = n + 2;
    let m = phi.len();
    let mut q_point = VecD::zeros(dim);
    q_point[dim - 1] = 1.0;
    // second derivatives by finite differences of the phi table
    let second: Vec<Vec<VecD>> = if n == 1 {
        vec![crate::numkit::fd_derive_vec(
            phi,
            shape.hu,
            2,
            5,
            shape.periodic,
        )]
    } else {
        let d = |du: usize, dv: usize| {
            crate::blaschke::patch_fd_vec(
                phi, shape.nu, shape.nv, shape.hu, shape.hv, du, dv, shape.periodic,
            )
        };
        vec![d(2, 0), d(1, 1), d(0, 2)]
    };
    let mut worst = 0.0_f64;
    for k in 0..m {
        if !shape.interior(k) {
            continue;
        }
        // basis (dphi..., phi, Q)
        let mut basis: Vec<VecD> = dphi.iter().map(|axis| axis[k].clone()).collect();
        basis.push(phi[k].clone());
        basis.push(q_point.clone());
        for (slot, table) in second.iter().enumerate() {
            let a: Vec<Vec<f64>> = (0..dim)
                .map(|r| basis.iter().map(|b| b[r]).collect())
                .collect();
            let coeffs = solve(a, (0..dim).map(|r| table[k][r]).collect())
                .map_err(|_| Error::SingularSystem { index: k })?;
            let h_ij = if n == 1 {
                h_entries[k]
            } else {
                h_entries[3 * k + slot]
            };
            worst = worst.max((coeffs[dim - 1] + h_ij).abs());
        }
    }
    Ok(worst)
}

fn offset_from_affine_span(base: &VecD, dirs: &[VecD]) -> f64 {
    // distance from the ambient origin to {base + span(dirs)}
    let mut m = vec![vec![0.0; dirs.len()]; dirs.len()];
    let mut rhs = vec![0.0; dirs.len()];
    let target = -base;
    for (i, di) in dirs.iter().enumerate() {
        for (j, dj) in dirs.iter().enumerate() {
            m[i][j] = di.dot(dj);
        }
        rhs[i] = di.dot(&target);
    }
    match solve(m, rhs) {
        Ok(c) => {
            let mut p = base.clone();
            for (ci, di) in c.iter().zip(dirs) {
                p = p.axpy(*ci, di);
            }
            p.norm()
        }
        Err(_) => f64::INFINITY,
    }
}

/// Residual of the Laplacian identity (1/n) Lap phi + H phi + Q over the
/// centered-stencil samples, with the metric and mean curvature of the
/// source hypersurface.
pub fn verify_laplacian_identity(
    immersion: &UmbilicImmersion,
    apparatus: &BlaschkeApparatus,
) -> Result<f64> {
    let lap = match apparatus {
        BlaschkeApparatus::Curve(_) => laplacian_curve(
            &immersion.phi,
            immersion.shape.hu,
            immersion.shape.periodic,
        ),
        BlaschkeApparatus::Patch(p) => laplacian_patch(&immersion.phi, &p.metric)?,
    };
    let h = apparatus.mean_curvature();
    let mut worst = 0.0_f64;
    for k in 0..immersion.phi.len() {
        if !immersion.shape.interior(k) {
            continue;
        }
        let res = lap[k]
            .scale(1.0 / immersion.n as f64)
            .axpy(h[k], &immersion.phi[k])
            .axpy(1.0, &immersion.q_point);
        worst = worst.max(res.norm());
    }
    Ok(worst)
}

/// Hyperplanarity of the immersion in the sense of the affine-sphere
/// characterization: phi = (psi, z) lies in a hyperplane transversal to the
/// distance coordinate exactly when z is an affine function of psi (then a
/// shift of the origin makes the distance constant). Vertical hyperplanes
/// (psi . e = const, which every improper affine sphere produces through
/// nu . xi = 1 with constant xi) deliberately do not count.
///
/// Least-squares affine regression of z on psi; the plane is returned when
/// the sup-norm misfit stays below the threshold.
pub fn hyperplanarity_test(
    immersion: &UmbilicImmersion,
    threshold: f64,
) -> (Option<Hyperplane>, f64) {
    let dim = immersion.n + 1;
    // normal equations for z ~ w . psi + beta, solved through the symmetric
    // eigendecomposition so collinear psi columns (vertical degeneracies)
    // are handled by a pseudo-inverse
    let cols = dim + 1;
    let mut gram = vec![vec![0.0; cols]; cols];
    let mut rhs = vec![0.0; cols];
    let row = |p: &VecD| -> Vec<f64> {
        let mut r: Vec<f64> = (0..dim).map(|c| p[c]).collect();
        r.push(1.0);
        r
    };
    for p in &immersion.phi {
        let r = row(p);
        let z = p[dim];
        for i in 0..cols {
            for j in 0..cols {
                gram[i][j] += r[i] * r[j];
            }
            rhs[i] += r[i] * z;
        }
    }
    let (vals, vecs) = crate::numkit::eigen_sym(gram);
    let vmax = vals.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mut coeffs = vec![0.0; cols];
    for (e, val) in vals.iter().enumerate() {
        if val.abs() < 1e-12 * vmax {
            continue;
        }
        let mut proj = 0.0;
        for i in 0..cols {
            proj += vecs[i][e] * rhs[i];
        }
        for i in 0..cols {
            coeffs[i] += vecs[i][e] * proj / val;
        }
    }
    let mut residual = 0.0_f64;
    for p in &immersion.phi {
        let r = row(p);
        let fit: f64 = r.iter().zip(&coeffs).map(|(a, b)| a * b).sum();
        residual = residual.max((p[dim] - fit).abs());
    }
    if residual < threshold {
        // {x : -w . psi + z = beta} as a unit-normal hyperplane
        let mut normal = VecD::zeros(dim + 1);
        for c in 0..dim {
            normal[c] = -coeffs[c];
        }
        normal[dim] = 1.0;
        let scale = normal.norm();
        (
            Some(Hyperplane {
                normal: normal.scale(1.0 / scale),
                offset: coeffs[dim] / scale,
            }),
            residual,
        )
    } else {
        (None, residual)
    }
}
