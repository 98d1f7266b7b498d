//! Blaschke apparatus of analytic surface patches f(u, v) in R^3:
//! L_ij = [f_u, f_v, f_ij], metric h = L / |det L|^{1/4}, affine normal
//! xi = (1/2) Lap_h f, co-normal nu and affine mean curvature H.

use crate::numkit::{fd_derive, solve, vol3, VecD};
use crate::{Error, Result};

/// An analytic surface patch given by its mixed partial derivatives:
/// `partial(u, v, i, j)` returns d^i_u d^j_v f for i + j <= 4.
pub struct SurfacePatch {
    partial: Box<dyn Fn(f64, f64, usize, usize) -> VecD + Send + Sync>,
    pub u_grid: Vec<f64>,
    pub v_grid: Vec<f64>,
    /// The v-axis closes up (seam sample duplicated), e.g. a full revolution.
    pub periodic_v: bool,
}

impl SurfacePatch {
    pub fn new(
        partial: impl Fn(f64, f64, usize, usize) -> VecD + Send + Sync + 'static,
        u_grid: Vec<f64>,
        v_grid: Vec<f64>,
        periodic_v: bool,
    ) -> Self {
        SurfacePatch { partial: Box::new(partial), u_grid, v_grid, periodic_v }
    }

    /// Samples whose finite-difference stencils are fully centered; boundary
    /// bands (one-sided stencils) are low-confidence for derivative data.
    pub fn is_interior(&self, k: usize) -> bool {
        let (nu, nv) = (self.nu(), self.nv());
        let (iu, iv) = (k / nv, k % nv);
        let u_ok = iu >= 3 && iu + 3 < nu;
        let v_ok = self.periodic_v || (iv >= 3 && iv + 3 < nv);
        u_ok && v_ok
    }

    pub fn partial(&self, u: f64, v: f64, i: usize, j: usize) -> VecD {
        (self.partial)(u, v, i, j)
    }

    pub fn nu(&self) -> usize {
        self.u_grid.len()
    }

    pub fn nv(&self) -> usize {
        self.v_grid.len()
    }

    pub fn index(&self, iu: usize, iv: usize) -> usize {
        iu * self.nv() + iv
    }
}

/// Symmetric 2x2 metric entries (h11, h12, h22) per grid point.
pub type Sym2 = [f64; 3];

/// A metric table over a patch grid together with its first derivatives
/// (needed for Levi-Civita symbols).
pub struct MetricField {
    pub nu: usize,
    pub nv: usize,
    pub hu: f64,
    pub hv: f64,
    pub periodic_v: bool,
    pub h: Vec<Sym2>,
    /// dh[0] = d/du of h entries, dh[1] = d/dv.
    pub dh: [Vec<Sym2>; 2],
}

impl MetricField {
    /// Builds the derivative tables by finite differences when only the
    /// metric values are known.
    pub fn from_values(
        h: Vec<Sym2>,
        nu: usize,
        nv: usize,
        hu: f64,
        hv: f64,
        periodic_v: bool,
    ) -> Self {
        let mut dh = [vec![[0.0; 3]; h.len()], vec![[0.0; 3]; h.len()]];
        for comp in 0..3 {
            let vals: Vec<f64> = h.iter().map(|e| e[comp]).collect();
            let du = patch_fd(&vals, nu, nv, hu, hv, 1, 0, periodic_v);
            let dv = patch_fd(&vals, nu, nv, hu, hv, 0, 1, periodic_v);
            for k in 0..h.len() {
                dh[0][k][comp] = du[k];
                dh[1][k][comp] = dv[k];
            }
        }
        MetricField { nu, nv, hu, hv, periodic_v, h, dh }
    }

    fn inverse_at(&self, k: usize) -> Result<[f64; 3]> {
        let [a, b, c] = self.h[k];
        let det = a * c - b * b;
        if det.abs() < 1e-14 {
            return Err(Error::DegenerateMetric(format!("det h = {det:.3e} at sample {k}")));
        }
        Ok([c / det, -b / det, a / det])
    }

    /// Christoffel symbols G^k_ij at sample k: [G^u_uu, G^u_uv, G^u_vv,
    /// G^v_uu, G^v_uv, G^v_vv].
    fn christoffel_at(&self, k: usize) -> Result<[f64; 6]> {
        let hinv = self.inverse_at(k)?;
        // dh[m][k] = (d_m h11, d_m h12, d_m h22)
        let d = [self.dh[0][k], self.dh[1][k]];
        // lower symbols: G_{l,ij} = (d_i h_jl + d_j h_il - d_l h_ij) / 2
        let entry = |l: usize, i: usize, j: usize| -> f64 {
            let h_of = |x: usize, y: usize| -> usize { x + y }; // (0,0)->0,(0,1)->1,(1,1)->2
            0.5 * (d[i][h_of(j, l)] + d[j][h_of(i, l)] - d[l][h_of(i, j)])
        };
        let mut out = [0.0; 6];
        for kk in 0..2 {
            for (slot, (i, j)) in [(0, 0), (0, 1), (1, 1)].iter().enumerate() {
                let lowered = (0..2)
                    .map(|l| {
                        let hkl = match (kk, l) {
                            (0, 0) => hinv[0],
                            (1, 1) => hinv[2],
                            _ => hinv[1],
                        };
                        hkl * entry(l, *i, *j)
                    })
                    .sum::<f64>();
                out[kk * 3 + slot] = lowered;
            }
        }
        Ok(out)
    }
}

/// Finite-difference mixed derivative of order (du, dv) of a scalar table
/// over the patch grid (row-major, index = iu * nv + iv).
pub fn patch_fd(
    values: &[f64],
    nu: usize,
    nv: usize,
    hu: f64,
    hv: f64,
    du: usize,
    dv: usize,
    periodic_v: bool,
) -> Vec<f64> {
    let mut out = values.to_vec();
    if du > 0 {
        for iv in 0..nv {
            let col: Vec<f64> = (0..nu).map(|iu| out[iu * nv + iv]).collect();
            let d = fd_derive(&col, hu, du, 5, false);
            for iu in 0..nu {
                out[iu * nv + iv] = d[iu];
            }
        }
    }
    if dv > 0 {
        for iu in 0..nu {
            let row: Vec<f64> = (0..nv).map(|iv| out[iu * nv + iv]).collect();
            let d = fd_derive(&row, hv, dv, 5, periodic_v);
            for iv in 0..nv {
                out[iu * nv + iv] = d[iv];
            }
        }
    }
    out
}

/// Componentwise [`patch_fd`] for vector tables.
pub fn patch_fd_vec(
    values: &[VecD],
    nu: usize,
    nv: usize,
    hu: f64,
    hv: f64,
    du: usize,
    dv: usize,
    periodic_v: bool,
) -> Vec<VecD> {
    let dim = values[0].dim();
    let mut comps = Vec::with_capacity(dim);
    for c in 0..dim {
        let col: Vec<f64> = values.iter().map(|v| v[c]).collect();
        comps.push(patch_fd(&col, nu, nv, hu, hv, du, dv, periodic_v));
    }
    (0..values.len())
        .map(|k| VecD::new(comps.iter().map(|col| col[k]).collect()))
        .collect()
}

/// Laplace-Beltrami operator of the metric applied componentwise to a vector
/// table: trace_h of the Hessian, Lap F = h^{ij} (F_ij - G^k_ij F_k).
pub fn laplacian_patch(field: &[VecD], metric: &MetricField) -> Result<Vec<VecD>> {
    let (nu, nv, hu, hv, per) = (metric.nu, metric.nv, metric.hu, metric.hv, metric.periodic_v);
    let fu = patch_fd_vec(field, nu, nv, hu, hv, 1, 0, per);
    let fv = patch_fd_vec(field, nu, nv, hu, hv, 0, 1, per);
    let fuu = patch_fd_vec(field, nu, nv, hu, hv, 2, 0, per);
    let fuv = patch_fd_vec(field, nu, nv, hu, hv, 1, 1, per);
    let fvv = patch_fd_vec(field, nu, nv, hu, hv, 0, 2, per);
    let mut out = Vec::with_capacity(field.len());
    for k in 0..field.len() {
        let hinv = metric.inverse_at(k)?;
        let g = metric.christoffel_at(k)?;
        // Hessian entries: H_ij = F_ij - G^u_ij F_u - G^v_ij F_v
        let h_uu = fuu[k].axpy(-g[0], &fu[k]).axpy(-g[3], &fv[k]);
        let h_uv = fuv[k].axpy(-g[1], &fu[k]).axpy(-g[4], &fv[k]);
        let h_vv = fvv[k].axpy(-g[2], &fu[k]).axpy(-g[5], &fv[k]);
        let lap = (h_uu.scale(hinv[0]))
            .axpy(2.0 * hinv[1], &h_uv)
            .axpy(hinv[2], &h_vv);
        out.push(lap);
    }
    Ok(out)
}

/// Blaschke data of a patch, tabulated over its grid.
pub struct PatchApparatus {
    pub nu_samples: usize,
    pub nv_samples: usize,
    /// Centered-stencil mask: false on the low-confidence boundary bands.
    pub interior: Vec<bool>,
    pub hu: f64,
    pub hv: f64,
    pub periodic_v: bool,
    pub u_grid: Vec<f64>,
    pub v_grid: Vec<f64>,
    pub f: Vec<VecD>,
    pub f_u: Vec<VecD>,
    pub f_v: Vec<VecD>,
    pub metric: MetricField,
    pub xi: Vec<VecD>,
    pub conormal: Vec<VecD>,
    pub conormal_u: Vec<VecD>,
    pub conormal_v: Vec<VecD>,
    pub mean_curvature: Vec<f64>,
    /// sup of the transversal component of d xi (exactly zero for the true
    /// affine normal; measures discretization error here).
    pub parallelism_residual: f64,
}

/// Assembles the Blaschke apparatus of an analytic patch. The metric and its
/// derivatives are exact; derivatives of xi (for H and the co-normal jets)
/// are finite differences over the grid.
pub fn patch_apparatus(patch: &SurfacePatch) -> Result<PatchApparatus> {
    let (nu, nv) = (patch.nu(), patch.nv());
    let hu = patch.u_grid[1] - patch.u_grid[0];
    let hv = patch.v_grid[1] - patch.v_grid[0];
    let npts = nu * nv;

    let mut f = Vec::with_capacity(npts);
    let mut f_u = Vec::with_capacity(npts);
    let mut f_v = Vec::with_capacity(npts);
    let mut f_ij = [
        Vec::with_capacity(npts), // uu
        Vec::with_capacity(npts), // uv
        Vec::with_capacity(npts), // vv
    ];
    let mut h_tab: Vec<Sym2> = Vec::with_capacity(npts);
    let mut dh_u: Vec<Sym2> = Vec::with_capacity(npts);
    let mut dh_v: Vec<Sym2> = Vec::with_capacity(npts);
    let mut orientation = 0.0_f64;

    for &u in &patch.u_grid {
        for &v in &patch.v_grid {
            let p = |i: usize, j: usize| patch.partial(u, v, i, j);
            let (pu, pv) = (p(1, 0), p(0, 1));
            let second = [p(2, 0), p(1, 1), p(0, 2)];
            let third = [p(3, 0), p(2, 1), p(1, 2), p(0, 3)];

            let l_of = |ij: usize| vol3(&pu, &pv, &second[ij]);
            let l = [l_of(0), l_of(1), l_of(2)];
            let det_l = l[0] * l[2] - l[1] * l[1];
            if det_l <= 0.0 {
                return Err(Error::DegenerateMetric(format!(
                    "det L = {det_l:.3e} at (u, v) = ({u:.4}, {v:.4}); indefinite or degenerate"
                )));
            }
            if orientation == 0.0 {
                orientation = l[0].signum();
            } else if l[0].signum() != orientation {
                return Err(Error::DegenerateMetric(
                    "metric orientation flips across the patch".into(),
                ));
            }

            // dL_ij/du and /dv: [f_u, f_v, f_ij] differentiated
            let dl = |k: usize, ij: usize| -> f64 {
                // index gymnastics: third[i+j] holds d^i_u d^j_v with i+j=3
                let (i, _) = [(2usize, 0usize), (1, 1), (0, 2)][ij];
                let (fi, fj) = if k == 0 { (p(2, 0), p(1, 1)) } else { (p(1, 1), p(0, 2)) };
                let dfij = if k == 0 { &third[2 - i] } else { &third[3 - i] };
                vol3(&fi, &pv, &second[ij]) + vol3(&pu, &fj, &second[ij]) + vol3(&pu, &pv, dfij)
            };
            let s = orientation;
            let lt = [s * l[0], s * l[1], s * l[2]];
            let dltu = [s * dl(0, 0), s * dl(0, 1), s * dl(0, 2)];
            let dltv = [s * dl(1, 0), s * dl(1, 1), s * dl(1, 2)];
            let det = lt[0] * lt[2] - lt[1] * lt[1];
            let ddet_u = dltu[0] * lt[2] + lt[0] * dltu[2] - 2.0 * lt[1] * dltu[1];
            let ddet_v = dltv[0] * lt[2] + lt[0] * dltv[2] - 2.0 * lt[1] * dltv[1];
            let q = det.powf(-0.25);
            let dq_u = -0.25 * det.powf(-1.25) * ddet_u;
            let dq_v = -0.25 * det.powf(-1.25) * ddet_v;

            let mut h_entry = [0.0; 3];
            let mut dhu_entry = [0.0; 3];
            let mut dhv_entry = [0.0; 3];
            for c in 0..3 {
                h_entry[c] = lt[c] * q;
                dhu_entry[c] = dltu[c] * q + lt[c] * dq_u;
                dhv_entry[c] = dltv[c] * q + lt[c] * dq_v;
            }
            h_tab.push(h_entry);
            dh_u.push(dhu_entry);
            dh_v.push(dhv_entry);
            f.push(p(0, 0));
            f_u.push(pu);
            f_v.push(pv);
            for (slot, sec) in second.into_iter().enumerate() {
                f_ij[slot].push(sec);
            }
        }
    }

    let metric = MetricField {
        nu,
        nv,
        hu,
        hv,
        periodic_v: patch.periodic_v,
        h: h_tab,
        dh: [dh_u, dh_v],
    };

    // affine normal xi = (1/2) Lap_h f per sample (exact metric derivatives)
    let mut xi = Vec::with_capacity(npts);
    for k in 0..npts {
        let hinv = metric.inverse_at(k)?;
        let g = metric.christoffel_at(k)?;
        let h_uu = f_ij[0][k].axpy(-g[0], &f_u[k]).axpy(-g[3], &f_v[k]);
        let h_uv = f_ij[1][k].axpy(-g[1], &f_u[k]).axpy(-g[4], &f_v[k]);
        let h_vv = f_ij[2][k].axpy(-g[2], &f_u[k]).axpy(-g[5], &f_v[k]);
        let lap = (h_uu.scale(hinv[0]))
            .axpy(2.0 * hinv[1], &h_uv)
            .axpy(hinv[2], &h_vv);
        xi.push(lap.scale(0.5));
    }

    // shape operator from finite differences of xi
    let xi_u = patch_fd_vec(&xi, nu, nv, hu, hv, 1, 0, patch.periodic_v);
    let xi_v = patch_fd_vec(&xi, nu, nv, hu, hv, 0, 1, patch.periodic_v);
    let mut mean_curvature = Vec::with_capacity(npts);
    let mut parallelism_residual = 0.0_f64;
    let mut conormal = Vec::with_capacity(npts);
    for k in 0..npts {
        let decompose = |w: &VecD| -> Result<Vec<f64>> {
            let a: Vec<Vec<f64>> = (0..3)
                .map(|r| vec![f_u[k][r], f_v[k][r], xi[k][r]])
                .collect();
            solve(a, (0..3).map(|r| w[r]).collect())
        };
        let cu = decompose(&xi_u[k]).map_err(|_| {
            Error::DegenerateMetric(format!("tangent frame degenerate at sample {k}"))
        })?;
        let cv = decompose(&xi_v[k])?;
        mean_curvature.push(-0.5 * (cu[0] + cv[1]));
        parallelism_residual = parallelism_residual.max(cu[2].abs()).max(cv[2].abs());

        let n_e = f_u[k].cross3(&f_v[k]);
        let denom = n_e.dot(&xi[k]);
        if denom.abs() < 1e-14 {
            return Err(Error::DegenerateMetric(format!(
                "affine normal tangent to the patch at sample {k}"
            )));
        }
        conormal.push(n_e.scale(1.0 / denom));
    }
    let conormal_u = patch_fd_vec(&conormal, nu, nv, hu, hv, 1, 0, patch.periodic_v);
    let conormal_v = patch_fd_vec(&conormal, nu, nv, hu, hv, 0, 1, patch.periodic_v);

    Ok(PatchApparatus {
        nu_samples: nu,
        nv_samples: nv,
        interior: (0..npts).map(|k| patch.is_interior(k)).collect(),
        hu,
        hv,
        periodic_v: patch.periodic_v,
        u_grid: patch.u_grid.clone(),
        v_grid: patch.v_grid.clone(),
        f,
        f_u,
        f_v,
        metric,
        xi,
        conormal,
        conormal_u,
        conormal_v,
        mean_curvature,
        parallelism_residual,
    })
}

/// Analytic patch constructors used by fixtures and the CLI.
pub mod patches {
    use super::SurfacePatch;
    use crate::numkit::{uniform_grid as ug, VecD};

    fn d_sin(k: usize, x: f64) -> f64 {
        match k % 4 {
            0 => x.sin(),
            1 => x.cos(),
            2 => -x.sin(),
            _ => -x.cos(),
        }
    }

    fn d_cos(k: usize, x: f64) -> f64 {
        d_sin(k + 1, x)
    }

    /// Ellipsoid (a sin u cos v, b sin u sin v, c cos u) on a polar-cap-free
    /// band, periodic in v.
    pub fn ellipsoid(a: f64, b: f64, c: f64, n_u: usize, n_v: usize) -> SurfacePatch {
        let u_grid = ug(0.45, std::f64::consts::PI - 0.45, n_u);
        let v_grid = ug(0.0, std::f64::consts::TAU, n_v);
        SurfacePatch::new(
            move |u, v, i, j| {
                VecD::new(vec![
                    a * d_sin(i, u) * d_cos(j, v),
                    b * d_sin(i, u) * d_sin(j, v),
                    c * d_cos(i, u) * if j == 0 { 1.0 } else { 0.0 },
                ])
            },
            u_grid,
            v_grid,
            true,
        )
    }

    pub fn sphere(r: f64, n_u: usize, n_v: usize) -> SurfacePatch {
        ellipsoid(r, r, r, n_u, n_v)
    }

    /// Graph z = p(x, y) from monomial terms (i, j, coeff) over a square.
    pub fn graph(terms: Vec<(usize, usize, f64)>, half_width: f64, n: usize) -> SurfacePatch {
        let u_grid = ug(-half_width, half_width, n);
        let v_grid = u_grid.clone();
        SurfacePatch::new(
            move |u, v, i, j| {
                let mut z = 0.0;
                for &(a, b, c) in &terms {
                    if i <= a && j <= b {
                        let mut coeff = c;
                        for k in 0..i {
                            coeff *= (a - k) as f64;
                        }
                        for k in 0..j {
                            coeff *= (b - k) as f64;
                        }
                        z += coeff * u.powi((a - i) as i32) * v.powi((b - j) as i32);
                    }
                }
                let x = match (i, j) {
                    (0, 0) => u,
                    (1, 0) => 1.0,
                    _ => 0.0,
                };
                let y = match (i, j) {
                    (0, 0) => v,
                    (0, 1) => 1.0,
                    _ => 0.0,
                };
                VecD::new(vec![x, y, z])
            },
            u_grid,
            v_grid,
            false,
        )
    }

    /// Elliptic paraboloid z = (x^2 + y^2) / 2.
    pub fn paraboloid(half_width: f64, n: usize) -> SurfacePatch {
        graph(vec![(2, 0, 0.5), (0, 2, 0.5)], half_width, n)
    }
}
